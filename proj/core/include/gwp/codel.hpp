#pragma once

// CoDel (controlled delay) queue: drops at dequeue once the sojourn time has
// stayed above target for a full interval, with drop spacing shrinking as
// interval / sqrt(count). Tail drop at queue_limit.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>

namespace gwp {

struct CodelConfig {
  double target_sojourn_s = 0.005;
  double interval_s = 0.100;
  std::size_t queue_limit = 1000;
  // A backlog of at most this many bytes never counts as standing queue.
  std::size_t min_bytes = 1500;

  void validate() const;
};

struct QueuedPacket {
  double generation_time_s = 0.0;
  double enqueue_time_s = 0.0;
  std::uint32_t size_bits = 0;
};

class CodelQueue {
 public:
  explicit CodelQueue(CodelConfig config = {});

  // False when the packet was tail-dropped.
  bool enqueue(const QueuedPacket& packet, double now);
  // Next packet to send, after any CoDel drops; nullopt when the queue drains.
  std::optional<QueuedPacket> dequeue(double now);

  std::size_t size() const noexcept { return packets_.size(); }
  bool empty() const noexcept { return packets_.empty(); }
  std::uint64_t bytes() const noexcept { return bits_ / 8; }
  std::uint64_t codel_drops() const noexcept { return codel_drops_; }
  std::uint64_t tail_drops() const noexcept { return tail_drops_; }
  bool dropping() const noexcept { return dropping_; }
  const CodelConfig& config() const noexcept { return config_; }

 private:
  struct Head {
    std::optional<QueuedPacket> packet;
    bool ok_to_drop = false;
  };

  Head pop_head(double now);
  double control_law(double t) const;
  void drop();

  CodelConfig config_;
  std::deque<QueuedPacket> packets_;
  std::uint64_t bits_ = 0;

  bool above_target_ = false;
  double first_above_time_ = 0.0;
  double drop_next_ = 0.0;
  std::uint32_t count_ = 0;
  std::uint32_t last_count_ = 0;
  bool dropping_ = false;

  std::uint64_t codel_drops_ = 0;
  std::uint64_t tail_drops_ = 0;
};

}  // namespace gwp
