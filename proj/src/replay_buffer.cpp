#include "vlcnet/replay_buffer.hpp"

#include <stdexcept>

namespace vlcnet {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("replay capacity must be positive");
  storage_.reserve(capacity_);
}

void ReplayBuffer::push(Transition t) {
  if (storage_.size() < capacity_) {
    storage_.push_back(std::move(t));
  } else {
    storage_[next_] = std::move(t);
  }
  next_ = (next_ + 1) % capacity_;
}

const Transition& ReplayBuffer::at(std::size_t i) const {
  if (i >= storage_.size()) throw std::out_of_range("replay index");
  if (storage_.size() < capacity_) return storage_[i];
  return storage_[(next_ + i) % capacity_];
}

Batch ReplayBuffer::sample(int batch_size, Rng& rng) const {
  if (batch_size <= 0) throw std::invalid_argument("batch size must be positive");
  if (storage_.empty()) throw std::logic_error("sampling from an empty buffer");
  const auto& first = storage_.front();
  Batch b;
  b.obs_power.resize(batch_size, first.obs_power.size());
  b.obs_angles.resize(batch_size, first.obs_angles.size());
  b.act_power.resize(batch_size, first.act_power.size());
  b.act_angles.resize(batch_size, first.act_angles.size());
  b.rewards.resize(batch_size);
  b.next_obs_power.resize(batch_size, first.next_obs_power.size());
  b.next_obs_angles.resize(batch_size, first.next_obs_angles.size());
  b.terminal.resize(batch_size);
  for (int i = 0; i < batch_size; ++i) {
    const Transition& t = storage_[rng.uniform_index(storage_.size())];
    b.obs_power.row(i) = t.obs_power.transpose();
    b.obs_angles.row(i) = t.obs_angles.transpose();
    b.act_power.row(i) = t.act_power.transpose();
    b.act_angles.row(i) = t.act_angles.transpose();
    b.rewards(i) = t.reward;
    b.next_obs_power.row(i) = t.next_obs_power.transpose();
    b.next_obs_angles.row(i) = t.next_obs_angles.transpose();
    b.terminal(i) = t.terminal ? 1.0 : 0.0;
  }
  return b;
}

}  // namespace vlcnet
