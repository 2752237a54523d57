#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "connections/clue.hpp"
#include "connections/vocab.hpp"

namespace connections {

// Seat 0 is the setter; seats 1..num_guessers are guessers.
inline constexpr int kSetterSeat = 0;

enum class Phase { InProgress, GuessersWon, SetterWon };
enum class Winner { Guessers, Setter };
enum class OutcomeKind { SetterBlocked, GuesserWrong, Connection, FinalConnection };

std::string_view to_string(OutcomeKind k);
std::string_view to_string(Winner w);
std::optional<OutcomeKind> outcome_from_string(std::string_view s);
std::optional<Winner> winner_from_string(std::string_view s);

struct ClueGiverPolicy {
  enum class Kind { Fixed, RoundRobin };
  Kind kind = Kind::RoundRobin;
  int seat = 1;  // used by Fixed

  static ClueGiverPolicy fixed(int seat) { return {Kind::Fixed, seat}; }
  static ClueGiverPolicy round_robin() { return {Kind::RoundRobin, 1}; }
};

struct GameConfig {
  int num_guessers = 2;
  int max_iterations = 200;
  ClueGiverPolicy clue_giver = ClueGiverPolicy::round_robin();
  int min_secret_length = 2;
  // When set, words guessed wrongly by guessers are excluded as well.
  bool exclude_wrong_guesses = false;

  // Throws ConfigError.
  void validate() const;
};

int clue_giver_for_round(const GameConfig& config, int round_index);

struct Metrics {
  int reveals = 0;
  int guesser_wrong = 0;
  int setter_blocked = 0;
  int iterations = 0;

  bool consistent() const { return iterations == reveals + guesser_wrong + setter_blocked; }
  friend bool operator==(const Metrics&, const Metrics&) = default;
};

struct Guess {
  int seat = 1;
  std::optional<Word> word;
};

struct RoundSubmission {
  int giver = 1;
  // Absent when the giver has no legal word and passes.
  std::optional<Word> intended;
  CluePayload clue = std::string{};
  std::optional<Word> setter_guess;
  std::vector<Guess> guesses;
};

struct RoundOutcome {
  OutcomeKind kind = OutcomeKind::GuesserWrong;
  std::optional<Word> blocking_word;
  std::optional<int> connecting_seat;
};

class GameState {
 public:
  // Starts a game without a vocabulary check (transcript replay uses this).
  static GameState start(const GameConfig& config, Word secret);

  const GameConfig& config() const noexcept { return config_; }
  const Word& secret() const noexcept { return secret_; }
  std::size_t revealed_len() const noexcept { return revealed_len_; }
  std::string revealed_prefix() const { return secret_.prefix(revealed_len_); }
  bool fully_revealed() const noexcept { return revealed_len_ == secret_.length(); }
  const std::set<Word>& excluded() const noexcept { return excluded_; }
  bool is_excluded(const Word& w) const { return excluded_.contains(w); }
  int round_index() const noexcept { return round_index_; }
  const Metrics& metrics() const noexcept { return metrics_; }
  Phase phase() const noexcept { return phase_; }

 private:
  GameState(GameConfig config, Word secret);

  GameConfig config_;
  Word secret_;
  std::size_t revealed_len_ = 1;
  std::set<Word> excluded_;
  int round_index_ = 0;
  Metrics metrics_;
  Phase phase_ = Phase::InProgress;

  friend std::pair<RoundOutcome, GameState> adjudicate_round(const GameState&,
                                                             const RoundSubmission&);
};

// What every player may see: no secret.
struct PublicView {
  std::string prefix;
  std::vector<Word> excluded;  // sorted
  int round_index = 0;
  int num_guessers = 2;
  // Every letter of the secret has been revealed.
  bool complete = false;

  bool is_excluded(const Word& w) const;
  // Excluded words that still match the prefix; what prompts list.
  std::vector<Word> relevant_excluded() const;
};

PublicView public_view(const GameState& state);

// Throws ConfigError when the secret is unknown or shorter than allowed.
GameState new_game(const GameConfig& config, const Word& secret, const Vocabulary& vocab);

// Pool members that may be intended this round: matching the prefix and not
// excluded. Once every letter is out, only the secret itself remains legal.
std::vector<Word> legal_intended_words(const GameState& state, std::span<const Word> pool);
std::vector<Word> legal_intended_words(const PublicView& view, std::span<const Word> pool);

// Throws ProtocolViolation naming the offending seat.
std::pair<RoundOutcome, GameState> adjudicate_round(const GameState& state,
                                                    const RoundSubmission& sub);

std::optional<Winner> is_terminal(const GameState& state);

inline Metrics metrics_of(const GameState& state) { return state.metrics(); }

}  // namespace connections
