#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "connections/agents.hpp"
#include "connections/engine.hpp"
#include "connections/llm.hpp"
#include "connections/transcript.hpp"

namespace connections {

enum class SecretPolicy { FixedList, SampledFromSetterVocab };
enum class SeatKind { Simulated, Llm, Human };

struct EnsembleSettings {
  int dim = 64;
  double omega = 0.1;
  std::uint64_t seed = 7;
  // Reused when present, written after building otherwise. Empty: no snapshot.
  std::string snapshot;
};

struct ExperimentConfig {
  GameConfig game;
  EnsembleSettings ensemble;
  AgentParams agents;
  int num_games = 1;
  SecretPolicy secret_policy = SecretPolicy::SampledFromSetterVocab;
  std::vector<Word> secrets;  // for FixedList, used in order and cycled
  // Every per-game seed is derive_seed(master_seed, game_index).
  std::uint64_t master_seed = 1;
  bool carry_learning = true;
  std::string vocab_path;  // empty: the bundled default list
  std::vector<SeatKind> seats;  // empty: all simulated; otherwise one per seat
  LlmSettings llm;
  std::vector<std::string> personas;  // per seat, may be shorter than the table
  std::string output_dir;  // empty: nothing persisted

  int num_players() const { return game.num_guessers + 1; }
  SeatKind seat_kind(int seat) const;

  // Throws ConfigError.
  void validate() const;
};

std::filesystem::path default_vocab_path();

struct CurvePoint {
  int iteration = 0;
  int revealed_len = 1;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

struct RunRecord {
  std::size_t game_index = 0;
  Word word = Word::from("A");
  Metrics metrics;
  Winner winner = Winner::Setter;
  std::string note;  // protocol violations and similar annotations
  Transcript transcript;
  std::string transcript_path;
  std::vector<CurvePoint> reveal_curve;  // one point per counted iteration
};

// Shared, immutable inputs of a batch.
struct World {
  std::shared_ptr<const Vocabulary> vocab;
  std::shared_ptr<const SpaceEnsemble> spaces;
};

World build_world(const ExperimentConfig& config);

// Seats 0..n. Simulated seats share the world's ensemble; true discourse
// vectors come from derive_seed(ensemble.seed, 1000 + seat).
std::vector<std::unique_ptr<Player>> make_seats(const ExperimentConfig& config, const World& world,
                                                std::istream& in, std::ostream& out,
                                                std::shared_ptr<ChatTransport> transport = nullptr);
std::vector<std::unique_ptr<Player>> make_simulated_seats(const ExperimentConfig& config,
                                                          const World& world);

// Plays one game to the end. Same config, seats state, secret and index give
// the same record.
RunRecord run_game(const ExperimentConfig& config, const Word& secret,
                   std::span<const std::unique_ptr<Player>> seats, const World& world,
                   std::size_t game_index);

// Secret for game `game_index` under the configured policy.
Word choose_secret(const ExperimentConfig& config, std::span<const std::unique_ptr<Player>> seats,
                   const World& world, std::size_t game_index);

// Games in index order. Writes transcripts, metrics.csv and curves/ when
// config.output_dir is set.
std::vector<RunRecord> run_batch(const ExperimentConfig& config, const World& world,
                                 std::span<const std::unique_ptr<Player>> seats);
std::vector<RunRecord> run_batch(const ExperimentConfig& config);

struct TableRow {
  Word word = Word::from("A");
  Metrics metrics;

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

inline constexpr const char* kMetricsHeader = "word,reveals,guesser_wrong,setter_blocked,iterations";

// Header plus rows sorted by iterations, then word. Throws std::logic_error
// before writing anything if a row breaks iterations = reveals +
// guesser_wrong + setter_blocked; std::runtime_error if the sink fails.
void export_metrics_table(std::span<const TableRow> rows, std::ostream& sink);
void export_metrics_table(std::span<const RunRecord> records, std::ostream& sink);
// Throws ParseError.
std::vector<TableRow> parse_metrics_table(std::istream& in);

// "iteration,revealed_len" then one line per point.
void export_reveal_curve(const RunRecord& record, std::ostream& sink);

std::vector<CurvePoint> reveal_curve_from_transcript(const Transcript& transcript);
// Rebuilds word, metrics, winner and curve from a stored transcript.
RunRecord record_from_transcript(const Transcript& transcript);

// Rows with strictly more than `threshold` iterations, in table order.
std::vector<TableRow> rows_over_iterations(std::span<const TableRow> rows, int threshold);

}  // namespace connections
