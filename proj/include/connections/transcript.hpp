#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "connections/engine.hpp"

namespace connections {

enum class EventKind {
  GameStarted,
  CluePosed,
  SetterAttempt,
  GuesserAttempt,
  OutcomeDeclared,
  LetterRevealed,
  GameEnded,
};

std::string_view to_string(EventKind k);

// One line of a transcript. Which fields are set depends on the kind:
//   GameStarted     prefix (first letter), salt, secret_hash
//   CluePosed       round, seat (giver), word (intended; absent on a pass), clue
//   SetterAttempt   round, seat 0, word (absent when abstaining)
//   GuesserAttempt  round, seat, word (absent when abstaining)
//   OutcomeDeclared round, outcome, word (blocking word), seat (connecting seat)
//   LetterRevealed  round, prefix (after the reveal)
//   GameEnded       winner, secret, metrics, note
struct Event {
  EventKind kind = EventKind::GameStarted;
  std::optional<int> round;
  std::optional<int> seat;
  std::optional<Word> word;
  std::optional<OutcomeKind> outcome;
  std::string clue;
  std::string prefix;
  std::string salt;
  std::string secret_hash;
  std::optional<Winner> winner;
  std::optional<Word> secret;
  std::optional<Metrics> metrics;
  std::string note;

  friend bool operator==(const Event&, const Event&) = default;
};

using Transcript = std::vector<Event>;

std::string secret_hash(std::string_view salt, const Word& secret);

// Builds a transcript while a game is played.
class TranscriptRecorder {
 public:
  TranscriptRecorder(const GameState& initial, std::uint64_t salt_seed);

  // `clue_text` is what was said aloud; simulated vector clues pass a
  // rendering of their own.
  void record_round(const GameState& before, const RoundSubmission& sub,
                    const std::string& clue_text, const RoundOutcome& outcome,
                    const GameState& after);
  void record_end(const GameState& final_state, Winner winner, std::string note = {});

  const Transcript& transcript() const noexcept { return events_; }
  Transcript take() && { return std::move(events_); }

 private:
  Transcript events_;
};

// One JSON object per line.
void write_transcript(std::ostream& out, const Transcript& t);
void write_transcript_file(const std::filesystem::path& path, const Transcript& t);
// Throws ParseError naming the line.
Transcript read_transcript(std::istream& in);
Transcript read_transcript_file(const std::filesystem::path& path);

// Re-adjudicates every round and checks the log against the rules. Throws
// ReplayError naming the first inconsistent event.
Metrics replay_transcript(const Transcript& events, const GameConfig& config);

}  // namespace connections
