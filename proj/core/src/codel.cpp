#include "gwp/codel.hpp"

#include <cmath>

#include "gwp/error.hpp"

namespace gwp {

void CodelConfig::validate() const {
  if (!(target_sojourn_s > 0.0) || !(interval_s > 0.0) || queue_limit == 0) {
    throw ConfigError("CoDel target, interval and queue limit must be positive");
  }
}

CodelQueue::CodelQueue(CodelConfig config) : config_(config) { config_.validate(); }

bool CodelQueue::enqueue(const QueuedPacket& packet, double now) {
  if (packets_.size() >= config_.queue_limit) {
    ++tail_drops_;
    return false;
  }
  QueuedPacket p = packet;
  p.enqueue_time_s = now;
  packets_.push_back(p);
  bits_ += p.size_bits;
  return true;
}

CodelQueue::Head CodelQueue::pop_head(double now) {
  Head head;
  if (packets_.empty()) {
    above_target_ = false;
    return head;
  }
  head.packet = packets_.front();
  packets_.pop_front();
  bits_ -= head.packet->size_bits;

  const double sojourn = now - head.packet->enqueue_time_s;
  if (sojourn < config_.target_sojourn_s || bits_ / 8 <= config_.min_bytes) {
    above_target_ = false;
  } else if (!above_target_) {
    above_target_ = true;
    first_above_time_ = now + config_.interval_s;
  } else if (now >= first_above_time_) {
    head.ok_to_drop = true;
  }
  return head;
}

double CodelQueue::control_law(double t) const { return t + config_.interval_s / std::sqrt(double(count_)); }

void CodelQueue::drop() { ++codel_drops_; }

std::optional<QueuedPacket> CodelQueue::dequeue(double now) {
  Head head = pop_head(now);
  if (!head.packet) {
    dropping_ = false;
    return std::nullopt;
  }

  if (dropping_) {
    if (!head.ok_to_drop) {
      dropping_ = false;
    } else {
      while (dropping_ && now >= drop_next_) {
        drop();
        ++count_;
        head = pop_head(now);
        if (!head.packet || !head.ok_to_drop) {
          dropping_ = false;
        } else {
          drop_next_ = control_law(drop_next_);
        }
      }
    }
  } else if (head.ok_to_drop) {
    drop();
    head = pop_head(now);
    dropping_ = true;
    const std::uint32_t delta = count_ - last_count_;
    count_ = (delta > 1 && now - drop_next_ < 16.0 * config_.interval_s) ? delta : 1;
    drop_next_ = control_law(now);
    last_count_ = count_;
  }
  return head.packet;
}

}  // namespace gwp
