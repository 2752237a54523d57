#pragma once

#include <string>
#include <variant>
#include <vector>

namespace connections {

// Similarity band (λ_L, λ_U) a clue should land in: close enough to its
// target to be recoverable, far enough that it is not a giveaway.
struct ClueWindow {
  double low = 0.35;
  double high = 0.75;

  bool valid() const { return -1.0 < low && low < high && high < 1.0; }
};

// A clue as a probe vector in embedding space, plus the window the giver
// checked it against.
struct ClueVector {
  std::vector<double> vec;
  ClueWindow window;
};

// Simulated players exchange vectors; human and LLM players exchange text.
using CluePayload = std::variant<ClueVector, std::string>;

inline bool is_text(const CluePayload& c) { return std::holds_alternative<std::string>(c); }

}  // namespace connections
