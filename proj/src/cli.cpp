#include "connections/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>

#include "connections/arena.hpp"
#include "connections/config.hpp"
#include "connections/errors.hpp"

namespace connections {

namespace {

std::string metrics_line(const Metrics& m) {
  return std::to_string(m.reveals) + ", " + std::to_string(m.guesser_wrong) + ", " +
         std::to_string(m.setter_blocked) + " / " + std::to_string(m.iterations);
}

std::string keys_help() {
  std::string out = "Configuration keys (config file lines or --set key=value):\n";
  for (const auto& k : config_keys()) {
    out += "  " + k.name;
    out.append(k.name.size() < 30 ? 30 - k.name.size() : 1, ' ');
    out += k.description + "\n";
  }
  return out;
}

struct ConfigOptions {
  std::string file;
  std::vector<std::string> sets;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", file, "configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--set", sets, "override one key, key=value (repeatable)");
  }

  ExperimentConfig load(const std::vector<std::string>& extra = {}) const {
    std::vector<std::string> all = extra;
    all.insert(all.end(), sets.begin(), sets.end());
    return load_config(file.empty() ? std::nullopt : std::optional<std::filesystem::path>(file), all);
  }
};

// Parses "a..b" or a single number.
std::pair<int, int> parse_range(const std::string& text) {
  static const std::regex re(R"(^\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw ConfigError("--n: expected N or A..B, got '" + text + "'");
  const int lo = std::stoi(m[1]);
  const int hi = m[2].matched ? std::stoi(m[2]) : lo;
  if (lo < 2 || hi < lo) throw ConfigError("--n: range must satisfy 2 <= A <= B");
  return {lo, hi};
}

void print_records(std::ostream& out, const std::vector<RunRecord>& records) {
  for (const RunRecord& r : records) {
    out << r.game_index << ' ' << r.word << ' ' << metrics_line(r.metrics) << ' '
        << to_string(r.winner);
    if (!r.note.empty()) out << " (" << r.note << ')';
    out << '\n';
  }
}

int cmd_simulate(const ConfigOptions& opts, const std::string& out_dir, int games, std::ostream& out) {
  std::vector<std::string> extra;
  if (!out_dir.empty()) extra.push_back("experiment.output_dir=" + out_dir);
  if (games != -1) {
    if (games < 1) throw ConfigError("--games must be at least 1");
    extra.push_back("experiment.num_games=" + std::to_string(games));
  }
  const ExperimentConfig config = opts.load(extra);
  const auto records = run_batch(config);
  print_records(out, records);
  if (!config.output_dir.empty()) out << "wrote " << config.output_dir << '\n';
  return 0;
}

int cmd_play(const ConfigOptions& opts, int human_seat, std::istream& in, std::ostream& out) {
  ExperimentConfig config = opts.load();
  if (human_seat < 0 || human_seat >= config.num_players()) {
    throw ConfigError("--human-seat must be between 0 and " + std::to_string(config.num_players() - 1));
  }
  if (config.seats.empty()) config.seats.assign(static_cast<std::size_t>(config.num_players()), SeatKind::Simulated);
  config.seats[static_cast<std::size_t>(human_seat)] = SeatKind::Human;
  config.validate();

  const World world = build_world(config);
  auto seats = make_seats(config, world, in, out);
  for (std::size_t i = 0; i < static_cast<std::size_t>(config.num_games); ++i) {
    auto proposed = seats[kSetterSeat]->propose_secret(config.game.num_guessers,
                                                       config.game.min_secret_length);
    const Word secret = proposed ? *proposed : choose_secret(config, seats, world, i);
    const RunRecord r = run_game(config, secret, seats, world, i);
    if (!config.output_dir.empty()) {
      std::filesystem::create_directories(config.output_dir);
      char name[32];
      std::snprintf(name, sizeof name, "%04zu_", i);
      write_transcript_file(std::filesystem::path(config.output_dir) / (name + r.word.text() + ".jsonl"),
                            r.transcript);
    }
    if (!r.note.empty()) out << r.note << '\n';
  }
  return 0;
}

int cmd_replay(const ConfigOptions& opts, const std::string& path, std::ostream& out) {
  const ExperimentConfig config = opts.load();
  const Transcript t = read_transcript_file(path);
  out << metrics_line(replay_transcript(t, config.game)) << '\n';
  return 0;
}

int cmd_calibrate(const ConfigOptions& opts, const std::string& range, const std::string& word,
                  std::ostream& out) {
  const auto [lo, hi] = parse_range(range);
  for (int n = lo; n <= hi; ++n) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "n=%d p*=%.4f", n, optimal_target_probability(n));
    out << buf << '\n';
  }
  if (word.empty()) return 0;

  const ExperimentConfig config = opts.load();
  const World world = build_world(config);
  const Word target = Word::from(word);
  const PlayerSpace& space = world.spaces->space(1);
  if (!space.has(target)) throw ConfigError(target.text() + " is not in the vocabulary");
  const auto pool = world.vocab->words();
  Rng rng(derive_seed(config.master_seed, 0));
  for (double sigma : config.agents.sigma_grid) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "sigma=%.3f recovery=%.4f", sigma,
                  estimate_recovery(space, target, pool, sigma, config.agents.rollouts, rng));
    out << buf << '\n';
  }
  return 0;
}

int cmd_export(const std::string& dir, int over, std::ostream& out) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  const fs::path tdir = root / "transcripts";
  if (!fs::is_directory(tdir)) throw ConfigError("no transcripts directory under " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(tdir)) {
    if (e.path().extension() == ".jsonl") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<RunRecord> records;
  fs::create_directories(root / "curves");
  for (std::size_t i = 0; i < files.size(); ++i) {
    RunRecord r = record_from_transcript(read_transcript_file(files[i]));
    r.game_index = i;
    std::ofstream curve(root / "curves" / (files[i].stem().string() + ".csv"), std::ios::binary);
    export_reveal_curve(r, curve);
    records.push_back(std::move(r));
  }
  {
    std::ofstream table(root / "metrics.csv", std::ios::binary);
    export_metrics_table(std::span<const RunRecord>(records), table);
  }
  out << "exported " << records.size() << " games to " << (root / "metrics.csv").string() << '\n';
  if (over >= 0) {
    std::vector<TableRow> rows;
    for (const RunRecord& r : records) rows.push_back({r.word, r.metrics});
    std::stable_sort(rows.begin(), rows.end(), [](const TableRow& a, const TableRow& b) {
      if (a.metrics.iterations != b.metrics.iterations) return a.metrics.iterations < b.metrics.iterations;
      return a.word < b.word;
    });
    for (const TableRow& r : rows_over_iterations(rows, over)) {
      out << r.word << ' ' << metrics_line(r.metrics) << '\n';
    }
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Connections: a word game for setter and guesser agents"};
  app.footer(keys_help());
  app.require_subcommand(1);

  ConfigOptions sim_opts, play_opts, replay_opts, cal_opts, show_opts;
  std::string out_dir;
  int games = -1;
  auto* simulate = app.add_subcommand("simulate", "run a batch of games");
  sim_opts.attach(simulate);
  simulate->add_option("--out", out_dir, "directory for transcripts, metrics.csv and curves");
  simulate->add_option("--games", games, "number of games");

  int human_seat = 1;
  auto* play = app.add_subcommand("play", "play interactively from one seat");
  play_opts.attach(play);
  play->add_option("--human-seat", human_seat, "seat played from the terminal (0 is the setter)");

  std::string transcript_path;
  auto* replay = app.add_subcommand("replay", "check a transcript and print its metrics");
  replay_opts.attach(replay);
  replay->add_option("transcript", transcript_path, "JSONL transcript")->required()->check(CLI::ExistingFile);

  std::string range = "2..5";
  std::string word;
  auto* calibrate = app.add_subcommand("calibrate", "print optimal target probabilities");
  cal_opts.attach(calibrate);
  calibrate->add_option("--n", range, "guesser count or range A..B");
  calibrate->add_option("--word", word, "also estimate recovery rates for this word over the sigma grid");

  std::string export_dir;
  int over = -1;
  auto* exporter = app.add_subcommand("export", "rebuild metrics.csv and curves from transcripts");
  exporter->add_option("dir", export_dir, "batch output directory")->required();
  exporter->add_option("--curves-over", over, "also list games with more iterations than this");

  auto* show = app.add_subcommand("show-config", "print the effective configuration");
  show_opts.attach(show);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*simulate) return cmd_simulate(sim_opts, out_dir, games, out);
    if (*play) return cmd_play(play_opts, human_seat, in, out);
    if (*replay) return cmd_replay(replay_opts, transcript_path, out);
    if (*calibrate) return cmd_calibrate(cal_opts, range, word, out);
    if (*exporter) return cmd_export(export_dir, over, out);
    if (*show) {
      write_config(out, show_opts.load());
      return 0;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ReplayError& e) {
    err << "replay error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace connections
