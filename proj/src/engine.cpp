#include "connections/engine.hpp"

#include <algorithm>

#include "connections/errors.hpp"

namespace connections {

std::string_view to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::SetterBlocked: return "SetterBlocked";
    case OutcomeKind::GuesserWrong: return "GuesserWrong";
    case OutcomeKind::Connection: return "Connection";
    case OutcomeKind::FinalConnection: return "FinalConnection";
  }
  return "?";
}

std::string_view to_string(Winner w) { return w == Winner::Guessers ? "guessers" : "setter"; }

std::optional<OutcomeKind> outcome_from_string(std::string_view s) {
  for (auto k : {OutcomeKind::SetterBlocked, OutcomeKind::GuesserWrong, OutcomeKind::Connection,
                 OutcomeKind::FinalConnection}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::optional<Winner> winner_from_string(std::string_view s) {
  if (s == "guessers") return Winner::Guessers;
  if (s == "setter") return Winner::Setter;
  return std::nullopt;
}

void GameConfig::validate() const {
  if (num_guessers < 2) throw ConfigError("game.num_guessers must be >= 2");
  if (max_iterations < 1) throw ConfigError("game.max_iterations must be >= 1");
  if (min_secret_length < 2) throw ConfigError("game.min_secret_length must be >= 2");
  if (clue_giver.kind == ClueGiverPolicy::Kind::Fixed &&
      (clue_giver.seat < 1 || clue_giver.seat > num_guessers)) {
    throw ConfigError("game.clue_giver: fixed seat must be a guesser seat");
  }
}

int clue_giver_for_round(const GameConfig& config, int round_index) {
  if (config.clue_giver.kind == ClueGiverPolicy::Kind::Fixed) return config.clue_giver.seat;
  return 1 + round_index % config.num_guessers;
}

GameState::GameState(GameConfig config, Word secret)
    : config_(std::move(config)), secret_(std::move(secret)) {}

GameState GameState::start(const GameConfig& config, Word secret) {
  config.validate();
  return GameState(config, std::move(secret));
}

bool PublicView::is_excluded(const Word& w) const {
  return std::binary_search(excluded.begin(), excluded.end(), w);
}

std::vector<Word> PublicView::relevant_excluded() const {
  std::vector<Word> out;
  for (const Word& w : excluded) {
    if (w.starts_with(prefix)) out.push_back(w);
  }
  return out;
}

PublicView public_view(const GameState& state) {
  PublicView v;
  v.prefix = state.revealed_prefix();
  v.excluded.assign(state.excluded().begin(), state.excluded().end());
  v.round_index = state.round_index();
  v.num_guessers = state.config().num_guessers;
  v.complete = state.fully_revealed();
  return v;
}

GameState new_game(const GameConfig& config, const Word& secret, const Vocabulary& vocab) {
  if (!vocab.contains(secret)) {
    throw ConfigError("secret " + secret.text() + " is not in the vocabulary");
  }
  if (static_cast<int>(secret.length()) < config.min_secret_length) {
    throw ConfigError("secret " + secret.text() + " is shorter than game.min_secret_length");
  }
  return GameState::start(config, secret);
}

std::vector<Word> legal_intended_words(const PublicView& view, std::span<const Word> pool) {
  std::vector<Word> out;
  for (const Word& w : pool) {
    if (!w.starts_with(view.prefix) || view.is_excluded(w)) continue;
    if (view.complete && w.text() != view.prefix) continue;
    out.push_back(w);
  }
  return out;
}

std::vector<Word> legal_intended_words(const GameState& state, std::span<const Word> pool) {
  const std::string prefix = state.revealed_prefix();
  std::vector<Word> out;
  for (const Word& w : pool) {
    if (!w.starts_with(prefix) || state.is_excluded(w)) continue;
    if (state.fully_revealed() && w != state.secret()) continue;
    out.push_back(w);
  }
  return out;
}

namespace {

void check_submission(const GameState& state, const RoundSubmission& sub) {
  const int n = state.config().num_guessers;
  const std::string prefix = state.revealed_prefix();
  if (state.phase() != Phase::InProgress) {
    throw ProtocolViolation(sub.giver, "game is already over");
  }
  if (sub.giver < 1 || sub.giver > n) {
    throw ProtocolViolation(sub.giver, "clue-giver must be a guesser seat");
  }
  if (sub.intended) {
    const Word& w = *sub.intended;
    if (!w.starts_with(prefix)) {
      throw ProtocolViolation(sub.giver, "intended word " + w.text() + " does not start with " + prefix);
    }
    if (state.is_excluded(w)) {
      throw ProtocolViolation(sub.giver, "intended word " + w.text() + " is excluded");
    }
    if (state.fully_revealed() && w != state.secret()) {
      throw ProtocolViolation(sub.giver, "every letter is revealed; only the secret may be intended");
    }
  }
  if (sub.setter_guess) {
    if (!sub.setter_guess->starts_with(prefix)) {
      throw ProtocolViolation(kSetterSeat, "guess " + sub.setter_guess->text() +
                                               " does not start with " + prefix);
    }
    if (*sub.setter_guess == state.secret()) {
      throw ProtocolViolation(kSetterSeat, "the setter may not block with the secret");
    }
  }
  std::vector<int> seen;
  for (const Guess& g : sub.guesses) {
    if (g.seat < 1 || g.seat > n || g.seat == sub.giver) {
      throw ProtocolViolation(g.seat, "not a guessing seat this round");
    }
    if (std::find(seen.begin(), seen.end(), g.seat) != seen.end()) {
      throw ProtocolViolation(g.seat, "more than one guess in a round");
    }
    seen.push_back(g.seat);
    if (g.word && !g.word->starts_with(prefix)) {
      throw ProtocolViolation(g.seat, "guess " + g.word->text() + " does not start with " + prefix);
    }
  }
}

}  // namespace

std::pair<RoundOutcome, GameState> adjudicate_round(const GameState& state,
                                                    const RoundSubmission& sub) {
  check_submission(state, sub);
  GameState next = state;
  RoundOutcome outcome;

  std::optional<int> connecting;
  if (sub.intended) {
    for (const Guess& g : sub.guesses) {
      if (g.word && *g.word == *sub.intended && (!connecting || g.seat < *connecting)) {
        connecting = g.seat;
      }
    }
  }

  if (!sub.intended) {
    outcome.kind = OutcomeKind::GuesserWrong;
  } else if (sub.setter_guess && *sub.setter_guess == *sub.intended) {
    outcome.kind = OutcomeKind::SetterBlocked;
    outcome.blocking_word = sub.intended;
    next.excluded_.insert(*sub.intended);
  } else if (connecting && *sub.intended == state.secret()) {
    outcome.kind = OutcomeKind::FinalConnection;
    outcome.connecting_seat = connecting;
    next.phase_ = Phase::GuessersWon;
  } else if (connecting) {
    outcome.kind = OutcomeKind::Connection;
    outcome.connecting_seat = connecting;
    next.excluded_.insert(*sub.intended);
    ++next.revealed_len_;
  } else {
    outcome.kind = OutcomeKind::GuesserWrong;
    // A spent intended word is retired, except the secret, which stays live.
    if (*sub.intended != state.secret()) next.excluded_.insert(*sub.intended);
    if (state.config().exclude_wrong_guesses) {
      for (const Guess& g : sub.guesses) {
        if (g.word && *g.word != state.secret()) next.excluded_.insert(*g.word);
      }
    }
  }

  switch (outcome.kind) {
    case OutcomeKind::SetterBlocked: ++next.metrics_.setter_blocked; break;
    case OutcomeKind::GuesserWrong: ++next.metrics_.guesser_wrong; break;
    case OutcomeKind::Connection: ++next.metrics_.reveals; break;
    case OutcomeKind::FinalConnection: break;
  }
  if (outcome.kind != OutcomeKind::FinalConnection) ++next.metrics_.iterations;
  ++next.round_index_;
  if (next.phase_ == Phase::InProgress &&
      next.metrics_.iterations >= state.config().max_iterations) {
    next.phase_ = Phase::SetterWon;
  }
  return {std::move(outcome), std::move(next)};
}

std::optional<Winner> is_terminal(const GameState& state) {
  switch (state.phase()) {
    case Phase::GuessersWon: return Winner::Guessers;
    case Phase::SetterWon: return Winner::Setter;
    case Phase::InProgress: break;
  }
  if (state.metrics().iterations >= state.config().max_iterations) return Winner::Setter;
  return std::nullopt;
}

}  // namespace connections
