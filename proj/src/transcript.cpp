#include "connections/transcript.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "connections/errors.hpp"
#include "connections/rng.hpp"

namespace connections {

using json = nlohmann::ordered_json;

namespace {

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

constexpr EventKind kAllKinds[] = {
    EventKind::GameStarted,     EventKind::CluePosed,      EventKind::SetterAttempt,
    EventKind::GuesserAttempt,  EventKind::OutcomeDeclared, EventKind::LetterRevealed,
    EventKind::GameEnded,
};

json metrics_json(const Metrics& m) {
  return json{{"reveals", m.reveals},
              {"guesser_wrong", m.guesser_wrong},
              {"setter_blocked", m.setter_blocked},
              {"iterations", m.iterations}};
}

}  // namespace

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::GameStarted: return "GameStarted";
    case EventKind::CluePosed: return "CluePosed";
    case EventKind::SetterAttempt: return "SetterAttempt";
    case EventKind::GuesserAttempt: return "GuesserAttempt";
    case EventKind::OutcomeDeclared: return "OutcomeDeclared";
    case EventKind::LetterRevealed: return "LetterRevealed";
    case EventKind::GameEnded: return "GameEnded";
  }
  return "?";
}

std::string secret_hash(std::string_view salt, const Word& secret) {
  std::uint64_t h = fnv1a(salt);
  h = fnv1a(":", h);
  return hex64(fnv1a(secret.text(), h));
}

TranscriptRecorder::TranscriptRecorder(const GameState& initial, std::uint64_t salt_seed) {
  Event e;
  e.kind = EventKind::GameStarted;
  e.prefix = initial.revealed_prefix();
  e.salt = hex64(mix64(salt_seed));
  e.secret_hash = secret_hash(e.salt, initial.secret());
  events_.push_back(std::move(e));
}

void TranscriptRecorder::record_round(const GameState& before, const RoundSubmission& sub,
                                      const std::string& clue_text, const RoundOutcome& outcome,
                                      const GameState& after) {
  const int round = before.round_index();
  Event clue;
  clue.kind = EventKind::CluePosed;
  clue.round = round;
  clue.seat = sub.giver;
  clue.word = sub.intended;
  clue.clue = sub.intended ? clue_text : std::string{};
  if (!sub.intended) clue.note = "pass";
  events_.push_back(std::move(clue));

  if (sub.intended) {
    Event setter;
    setter.kind = EventKind::SetterAttempt;
    setter.round = round;
    setter.seat = kSetterSeat;
    setter.word = sub.setter_guess;
    events_.push_back(std::move(setter));
    for (const Guess& g : sub.guesses) {
      Event guess;
      guess.kind = EventKind::GuesserAttempt;
      guess.round = round;
      guess.seat = g.seat;
      guess.word = g.word;
      events_.push_back(std::move(guess));
    }
  }

  Event decl;
  decl.kind = EventKind::OutcomeDeclared;
  decl.round = round;
  decl.outcome = outcome.kind;
  decl.word = outcome.blocking_word;
  decl.seat = outcome.connecting_seat;
  events_.push_back(std::move(decl));

  if (outcome.kind == OutcomeKind::Connection) {
    Event reveal;
    reveal.kind = EventKind::LetterRevealed;
    reveal.round = round;
    reveal.prefix = after.revealed_prefix();
    events_.push_back(std::move(reveal));
  }
}

void TranscriptRecorder::record_end(const GameState& final_state, Winner winner, std::string note) {
  Event e;
  e.kind = EventKind::GameEnded;
  e.winner = winner;
  e.secret = final_state.secret();
  e.metrics = final_state.metrics();
  e.note = std::move(note);
  events_.push_back(std::move(e));
}

void write_transcript(std::ostream& out, const Transcript& t) {
  for (const Event& e : t) {
    json j;
    j["event"] = to_string(e.kind);
    if (e.round) j["round"] = *e.round;
    if (e.seat) j["seat"] = *e.seat;
    if (e.kind == EventKind::CluePosed || e.kind == EventKind::SetterAttempt ||
        e.kind == EventKind::GuesserAttempt || e.word) {
      j["word"] = e.word ? json(e.word->text()) : json(nullptr);
    }
    if (e.outcome) j["outcome"] = to_string(*e.outcome);
    if (e.kind == EventKind::CluePosed) j["clue"] = e.clue;
    if (!e.prefix.empty()) j["prefix"] = e.prefix;
    if (!e.salt.empty()) j["salt"] = e.salt;
    if (!e.secret_hash.empty()) j["secret_hash"] = e.secret_hash;
    if (e.winner) j["winner"] = to_string(*e.winner);
    if (e.secret) j["secret"] = e.secret->text();
    if (e.metrics) j["metrics"] = metrics_json(*e.metrics);
    if (!e.note.empty()) j["note"] = e.note;
    out << j.dump() << '\n';
  }
}

void write_transcript_file(const std::filesystem::path& path, const Transcript& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write transcript " + path.string());
  write_transcript(out, t);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

namespace {

std::optional<Word> word_field(const json& j, const char* key, std::size_t line) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  auto w = Word::parse(j[key].get<std::string>());
  if (!w) throw ParseError("line " + std::to_string(line) + ": bad word in '" + key + "'");
  return w;
}

}  // namespace

Transcript read_transcript(std::istream& in) {
  Transcript t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& ex) {
      throw ParseError("line " + std::to_string(line_no) + ": " + ex.what());
    }
    try {
      Event e;
      const std::string kind = j.at("event").get<std::string>();
      bool known = false;
      for (EventKind k : kAllKinds) {
        if (to_string(k) == kind) {
          e.kind = k;
          known = true;
        }
      }
      if (!known) throw ParseError("line " + std::to_string(line_no) + ": unknown event " + kind);
      if (j.contains("round")) e.round = j["round"].get<int>();
      if (j.contains("seat") && !j["seat"].is_null()) e.seat = j["seat"].get<int>();
      e.word = word_field(j, "word", line_no);
      if (j.contains("outcome")) {
        e.outcome = outcome_from_string(j["outcome"].get<std::string>());
        if (!e.outcome) throw ParseError("line " + std::to_string(line_no) + ": unknown outcome");
      }
      e.clue = j.value("clue", "");
      e.prefix = j.value("prefix", "");
      e.salt = j.value("salt", "");
      e.secret_hash = j.value("secret_hash", "");
      if (j.contains("winner")) {
        e.winner = winner_from_string(j["winner"].get<std::string>());
        if (!e.winner) throw ParseError("line " + std::to_string(line_no) + ": unknown winner");
      }
      e.secret = word_field(j, "secret", line_no);
      if (j.contains("metrics")) {
        const json& m = j["metrics"];
        e.metrics = Metrics{m.at("reveals").get<int>(), m.at("guesser_wrong").get<int>(),
                            m.at("setter_blocked").get<int>(), m.at("iterations").get<int>()};
      }
      e.note = j.value("note", "");
      t.push_back(std::move(e));
    } catch (const json::exception& ex) {
      throw ParseError("line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return t;
}

Transcript read_transcript_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open transcript " + path.string());
  return read_transcript(in);
}

Metrics replay_transcript(const Transcript& events, const GameConfig& config) {
  if (events.empty() || events.front().kind != EventKind::GameStarted) {
    throw ReplayError(0, "transcript must begin with GameStarted");
  }
  std::size_t end_index = events.size();
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].kind == EventKind::GameEnded) {
      end_index = i;
      break;
    }
  }
  if (end_index == events.size()) throw ReplayError(events.size(), "missing GameEnded");
  if (end_index + 1 != events.size()) throw ReplayError(end_index + 1, "event after GameEnded");

  const Event& started = events.front();
  const Event& ended = events[end_index];
  if (!ended.secret) throw ReplayError(end_index, "GameEnded carries no secret");
  if (!started.salt.empty() || !started.secret_hash.empty()) {
    if (secret_hash(started.salt, *ended.secret) != started.secret_hash) {
      throw ReplayError(0, "secret does not match the committed hash");
    }
  }

  GameState state = [&] {
    try {
      return GameState::start(config, *ended.secret);
    } catch (const ConfigError& ex) {
      throw ReplayError(0, ex.what());
    }
  }();
  if (started.prefix != state.revealed_prefix()) {
    throw ReplayError(0, "first letter does not match the secret");
  }

  std::size_t i = 1;
  while (i < end_index) {
    const Event& clue = events[i];
    if (clue.kind != EventKind::CluePosed) {
      throw ReplayError(i, "expected CluePosed, found " + std::string(to_string(clue.kind)));
    }
    if (state.phase() != Phase::InProgress) throw ReplayError(i, "round after the game ended");
    if (clue.round != state.round_index()) throw ReplayError(i, "round index out of sequence");
    if (!clue.seat) throw ReplayError(i, "CluePosed without a seat");

    RoundSubmission sub;
    sub.giver = *clue.seat;
    sub.intended = clue.word;
    sub.clue = clue.clue;
    ++i;
    for (; i < end_index; ++i) {
      const Event& e = events[i];
      if (e.kind == EventKind::SetterAttempt) {
        if (e.round != state.round_index()) throw ReplayError(i, "round index out of sequence");
        sub.setter_guess = e.word;
      } else if (e.kind == EventKind::GuesserAttempt) {
        if (e.round != state.round_index() || !e.seat) throw ReplayError(i, "malformed GuesserAttempt");
        sub.guesses.push_back({*e.seat, e.word});
      } else {
        break;
      }
    }
    if (i >= end_index || events[i].kind != EventKind::OutcomeDeclared) {
      throw ReplayError(i, "expected OutcomeDeclared");
    }
    const Event& decl = events[i];
    std::optional<std::pair<RoundOutcome, GameState>> result;
    try {
      result.emplace(adjudicate_round(state, sub));
    } catch (const ProtocolViolation& ex) {
      throw ReplayError(i, ex.what());
    }
    auto& [outcome, next] = *result;
    if (decl.outcome != outcome.kind) {
      throw ReplayError(i, "declared " + std::string(decl.outcome ? to_string(*decl.outcome) : "nothing") +
                               " but the rules give " + std::string(to_string(outcome.kind)));
    }
    ++i;
    if (outcome.kind == OutcomeKind::Connection) {
      if (i >= end_index || events[i].kind != EventKind::LetterRevealed) {
        throw ReplayError(i, "Connection without LetterRevealed");
      }
      if (events[i].prefix != next.revealed_prefix()) {
        throw ReplayError(i, "revealed prefix does not match the secret");
      }
      ++i;
    } else if (i < end_index && events[i].kind == EventKind::LetterRevealed) {
      throw ReplayError(i, "LetterRevealed without a Connection");
    }
    state = std::move(next);
  }

  if (ended.metrics && *ended.metrics != state.metrics()) {
    throw ReplayError(end_index, "recorded metrics differ from replayed metrics");
  }
  const auto winner = is_terminal(state);
  if (ended.winner) {
    if (winner && *ended.winner != *winner) throw ReplayError(end_index, "wrong winner");
    if (!winner && *ended.winner == Winner::Guessers) {
      throw ReplayError(end_index, "guessers declared winners of an unfinished game");
    }
  }
  return state.metrics();
}

}  // namespace connections
