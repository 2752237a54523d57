#include "connections/discourse.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace connections {
namespace {

using Fixed = PerceivedDiscourse::Fixed;

Fixed to_fixed(double x) { return static_cast<Fixed>(std::nearbyint(std::ldexp(x, 64))); }

double from_fixed(Fixed q) { return std::ldexp(static_cast<double>(q), -64); }

}  // namespace

PerceivedDiscourse::PerceivedDiscourse(int owner, int num_seats, int dim, double step)
    : owner_(owner), num_seats_(num_seats), dim_(dim), step_(step),
      values_(static_cast<std::size_t>(num_seats) * static_cast<std::size_t>(dim), Fixed{0}) {
  if (num_seats < 1 || dim < 1) throw std::invalid_argument("PerceivedDiscourse: empty shape");
  if (!(step >= 0.0)) throw std::invalid_argument("PerceivedDiscourse: step must be >= 0");
}

std::size_t PerceivedDiscourse::offset(int seat) const {
  if (!tracks(seat)) {
    throw std::out_of_range("seat " + std::to_string(seat) + " is not tracked by seat " +
                            std::to_string(owner_));
  }
  return static_cast<std::size_t>(seat) * static_cast<std::size_t>(dim_);
}

Vector PerceivedDiscourse::estimate(int seat) const {
  const std::size_t base = offset(seat);
  Vector out(static_cast<std::size_t>(dim_));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = from_fixed(values_[base + i]);
  return out;
}

void PerceivedDiscourse::update(int observed_seat, std::span<const double> word_vec, bool success) {
  const std::size_t base = offset(observed_seat);
  if (word_vec.size() != static_cast<std::size_t>(dim_)) {
    throw std::invalid_argument("discourse update: dimension mismatch");
  }
  for (std::size_t i = 0; i < word_vec.size(); ++i) {
    const Fixed delta = to_fixed(step_ * word_vec[i]);
    values_[base + i] += success ? delta : -delta;
  }
}

void PerceivedDiscourse::reset() { std::fill(values_.begin(), values_.end(), Fixed{0}); }

PerceivedDiscourse update_perceived_discourse(PerceivedDiscourse perceived, int observed_seat,
                                              std::span<const double> word_vec, bool success) {
  perceived.update(observed_seat, word_vec, success);
  return perceived;
}

}  // namespace connections
