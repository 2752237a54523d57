#pragma once

#include <span>
#include <vector>

#include "connections/semantics.hpp"

namespace connections {

// Player i's running estimates d_{i<-j} of every other seat's discourse
// vector. All estimates start at the common-knowledge prior, the zero vector.
//
// Components are held in 64.64 fixed point. Each update adds or subtracts the
// same quantized increment round(eta * v * 2^64), so updates commute and an
// update followed by its inverse restores the estimate bit for bit. The
// increment for a double eta * v whose binary exponent is at least -64 is
// exact (eta = 0.05 on a basis vector gives exactly 0.05).
class PerceivedDiscourse {
 public:
  using Fixed = __int128;

  PerceivedDiscourse() = default;
  // Estimates for seats 0..num_seats-1 except `owner`.
  PerceivedDiscourse(int owner, int num_seats, int dim, double step);

  int owner() const noexcept { return owner_; }
  int num_seats() const noexcept { return num_seats_; }
  int dim() const noexcept { return dim_; }
  double step() const noexcept { return step_; }

  bool tracks(int seat) const noexcept { return seat >= 0 && seat < num_seats_ && seat != owner_; }

  // Materialized estimate. Throws std::out_of_range for an untracked seat.
  Vector estimate(int seat) const;

  // estimate(seat) += step * v on success, -= on failure.
  void update(int observed_seat, std::span<const double> word_vec, bool success);

  // Back to the prior.
  void reset();

  friend bool operator==(const PerceivedDiscourse&, const PerceivedDiscourse&) = default;

 private:
  std::size_t offset(int seat) const;

  int owner_ = 0;
  int num_seats_ = 0;
  int dim_ = 0;
  double step_ = 0.05;
  std::vector<Fixed> values_;  // num_seats * dim; the owner's row stays zero
};

PerceivedDiscourse update_perceived_discourse(PerceivedDiscourse perceived, int observed_seat,
                                              std::span<const double> word_vec, bool success);

}  // namespace connections
