#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "connections/clue.hpp"
#include "connections/engine.hpp"

namespace connections {

enum class Role { Setter, Guesser };

struct ClueDecision {
  std::optional<Word> intended;  // absent: pass
  CluePayload clue = std::string{};
};

// A clue as delivered to listeners.
struct PosedClue {
  int giver = 1;
  CluePayload payload = std::string{};
  // Text shown to text-based listeners: the clue itself, or for a vector clue
  // the giver's nearest words that do not share the prefix.
  std::string rendering;
  // Vector stand-in for a text clue so simulated listeners can respond.
  std::optional<ClueVector> proxy;

  const ClueVector* vector() const {
    if (auto* v = std::get_if<ClueVector>(&payload)) return v;
    return proxy ? &*proxy : nullptr;
  }
};

struct RoundReport {
  PublicView view;  // before adjudication
  int giver = 1;
  std::optional<Word> intended;
  std::optional<Word> setter_guess;
  std::vector<Guess> guesses;
  RoundOutcome outcome;
};

// One seat at the table. Decisions are made from the public view only; the
// setter additionally learns the secret in begin_game.
class Player {
 public:
  virtual ~Player() = default;

  virtual int seat() const = 0;
  virtual Role role() const = 0;
  virtual std::string kind() const = 0;

  // Setters that choose their own secret return it here; others defer to the
  // experiment's secret policy.
  virtual std::optional<Word> propose_secret(int /*num_guessers*/, int /*min_length*/) {
    return std::nullopt;
  }

  virtual void begin_game(std::uint64_t game_seed, const std::optional<Word>& secret) = 0;

  virtual ClueDecision pose_clue(const PublicView& view) = 0;

  // A guesser's guess or the setter's block attempt.
  virtual std::optional<Word> respond(const PublicView& view, const PosedClue& clue) = 0;

  // Called after adjudication, in seat order.
  virtual void observe(const RoundReport& /*report*/) {}

  virtual void end_game(const GameState& /*final_state*/) {}
};

}  // namespace connections
