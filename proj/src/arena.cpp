#include "connections/arena.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "connections/errors.hpp"
#include "connections/human.hpp"
#include "connections/prompts.hpp"

namespace connections {

SeatKind ExperimentConfig::seat_kind(int seat) const {
  if (seats.empty()) return SeatKind::Simulated;
  return seats.at(static_cast<std::size_t>(seat));
}

void ExperimentConfig::validate() const {
  game.validate();
  agents.validate();
  if (ensemble.dim < 2) throw ConfigError("ensemble.dim must be >= 2");
  if (!(ensemble.omega >= 0.0)) throw ConfigError("ensemble.omega must be >= 0");
  if (num_games < 1) throw ConfigError("experiment.num_games must be >= 1");
  if (secret_policy == SecretPolicy::FixedList && secrets.empty()) {
    throw ConfigError("experiment.secrets must list words when experiment.secret_policy = fixed_list");
  }
  if (!seats.empty() && static_cast<int>(seats.size()) != num_players()) {
    throw ConfigError("experiment.seats must name one kind per seat (" +
                      std::to_string(num_players()) + ")");
  }
  if (llm.reply_attempts < 1) throw ConfigError("llm.reply_attempts must be >= 1");
  if (llm.http_retries < 0) throw ConfigError("llm.http_retries must be >= 0");
  if (llm.timeout_seconds < 1) throw ConfigError("llm.timeout_seconds must be >= 1");
}

std::filesystem::path default_vocab_path() {
  return std::filesystem::path(CONNECTIONS_DATA_DIR) / "words" / "default.txt";
}

World build_world(const ExperimentConfig& config) {
  World world;
  const auto path = config.vocab_path.empty() ? default_vocab_path()
                                              : std::filesystem::path(config.vocab_path);
  world.vocab = std::make_shared<const Vocabulary>(load_vocabulary_file(path).vocabulary);

  const auto& es = config.ensemble;
  if (!es.snapshot.empty() && std::filesystem::exists(es.snapshot)) {
    SpaceEnsemble loaded = load_ensemble_file(es.snapshot);
    if (loaded.vocab_fingerprint != world.vocab->fingerprint() || loaded.dim != es.dim ||
        loaded.seed != es.seed || loaded.omega != es.omega ||
        static_cast<int>(loaded.spaces.size()) != config.num_players()) {
      throw ConfigError("ensemble snapshot " + es.snapshot + " does not match the configuration");
    }
    world.spaces = std::make_shared<const SpaceEnsemble>(std::move(loaded));
  } else {
    auto built = build_space_ensemble(*world.vocab, es.dim, es.omega, config.num_players(), es.seed);
    if (!es.snapshot.empty()) save_ensemble_file(es.snapshot, built);
    world.spaces = std::make_shared<const SpaceEnsemble>(std::move(built));
  }
  return world;
}

namespace {

std::unique_ptr<Player> make_simulated(const ExperimentConfig& config, const World& world, int seat) {
  Rng rng(derive_seed(config.ensemble.seed, 1000 + static_cast<std::uint64_t>(seat)));
  Vector discourse = random_unit_vector(config.ensemble.dim, rng);
  const Role role = seat == kSetterSeat ? Role::Setter : Role::Guesser;
  AgentProfile profile = build_profile(seat, role, *world.vocab, world.spaces->latent,
                                       std::move(discourse), config.agents.knowledge_fraction);
  return std::make_unique<SimulatedPlayer>(std::move(profile), config.agents, world.spaces,
                                           config.game.num_guessers);
}

}  // namespace

std::vector<std::unique_ptr<Player>> make_simulated_seats(const ExperimentConfig& config,
                                                          const World& world) {
  std::vector<std::unique_ptr<Player>> seats;
  for (int s = 0; s < config.num_players(); ++s) seats.push_back(make_simulated(config, world, s));
  return seats;
}

std::vector<std::unique_ptr<Player>> make_seats(const ExperimentConfig& config, const World& world,
                                                std::istream& in, std::ostream& out,
                                                std::shared_ptr<ChatTransport> transport) {
  std::shared_ptr<const PromptLibrary> prompts;
  std::vector<std::unique_ptr<Player>> seats;
  for (int s = 0; s < config.num_players(); ++s) {
    const Role role = s == kSetterSeat ? Role::Setter : Role::Guesser;
    switch (config.seat_kind(s)) {
      case SeatKind::Simulated:
        seats.push_back(make_simulated(config, world, s));
        break;
      case SeatKind::Human:
        seats.push_back(std::make_unique<HumanPlayer>(s, role, in, out));
        break;
      case SeatKind::Llm: {
        if (!prompts) {
          prompts = std::make_shared<const PromptLibrary>(PromptLibrary::load(PromptLibrary::default_dir()));
        }
        if (!transport) transport = std::make_shared<HttpChatTransport>(config.llm);
        const std::string persona =
            static_cast<std::size_t>(s) < config.personas.size() ? config.personas[s] : std::string{};
        seats.push_back(std::make_unique<LlmPlayer>(s, role, transport, prompts, config.llm, persona));
        break;
      }
    }
  }
  return seats;
}

Word choose_secret(const ExperimentConfig& config, std::span<const std::unique_ptr<Player>> seats,
                   const World& world, std::size_t game_index) {
  if (config.secret_policy == SecretPolicy::FixedList) {
    return config.secrets[game_index % config.secrets.size()];
  }
  std::span<const Word> pool = world.vocab->words();
  if (auto* sim = dynamic_cast<const SimulatedPlayer*>(seats[kSetterSeat].get())) {
    pool = sim->profile().working_vocab;
  }
  std::vector<Word> eligible;
  for (const Word& w : pool) {
    if (static_cast<int>(w.length()) >= config.game.min_secret_length) eligible.push_back(w);
  }
  if (eligible.empty()) throw ConfigError("no word is long enough to be a secret");
  Rng rng(derive_seed(derive_seed(config.master_seed, game_index), 1));
  return eligible[rng.below(eligible.size())];
}

namespace {

// Nearest words to a vector clue that do not share the revealed prefix, so a
// text listener gets a hint without being handed the answer.
std::string neighbor_rendering(const PlayerSpace& space, const Vocabulary& vocab,
                               const ClueVector& clue, const std::string& prefix) {
  std::vector<Word> pool;
  for (const Word& w : vocab) {
    if (!w.starts_with(prefix)) pool.push_back(w);
  }
  const auto best = top_k_candidates(space, clue.vec, pool, 3);
  std::string out = "related words: ";
  for (std::size_t i = 0; i < best.size(); ++i) {
    if (i) out += ", ";
    out += best[i].word.text();
  }
  return out + " (simulation aid)";
}

std::string vector_clue_label(const PlayerSpace& space, const ClueVector& clue, const Word& intended) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "[vector clue, similarity %.3f]",
                dot(space.vector_of(intended), clue.vec));
  return buf;
}

}  // namespace

RunRecord run_game(const ExperimentConfig& config, const Word& secret,
                   std::span<const std::unique_ptr<Player>> seats, const World& world,
                   std::size_t game_index) {
  const std::uint64_t seed = derive_seed(config.master_seed, game_index);
  Rng aid_rng(derive_seed(seed, 2));

  GameState state = world.vocab->contains(secret)
                        ? new_game(config.game, secret, *world.vocab)
                        : GameState::start(config.game, secret);
  const bool text_listeners = std::any_of(seats.begin(), seats.end(), [](const auto& p) {
    return p->kind() != "simulated";
  });

  for (const auto& p : seats) {
    p->begin_game(seed, p->seat() == kSetterSeat ? std::optional<Word>(secret) : std::nullopt);
  }

  RunRecord record;
  record.game_index = game_index;
  record.word = secret;
  TranscriptRecorder recorder(state, seed);

  while (!is_terminal(state)) {
    const PublicView view = public_view(state);
    const int giver = clue_giver_for_round(config.game, state.round_index());
    ClueDecision decision = seats[static_cast<std::size_t>(giver)]->pose_clue(view);

    RoundSubmission sub;
    sub.giver = giver;
    sub.intended = decision.intended;
    sub.clue = decision.clue;
    std::string clue_text;

    if (sub.intended) {
      PosedClue posed;
      posed.giver = giver;
      posed.payload = decision.clue;
      if (const auto* text = std::get_if<std::string>(&decision.clue)) {
        posed.rendering = *text;
        clue_text = *text;
        posed.proxy = clue_vector_for(world.spaces->latent, *sub.intended,
                                      config.agents.text_clue_sigma, aid_rng, config.agents.window);
      } else {
        const auto& vec = std::get<ClueVector>(decision.clue);
        const PlayerSpace& giver_space = world.spaces->space(giver);
        clue_text = vector_clue_label(giver_space, vec, *sub.intended);
        if (text_listeners) {
          posed.rendering = neighbor_rendering(giver_space, *world.vocab, vec, view.prefix);
          clue_text += " " + posed.rendering;
        }
      }
      sub.setter_guess = seats[kSetterSeat]->respond(view, posed);
      for (const auto& p : seats) {
        if (p->seat() == kSetterSeat || p->seat() == giver) continue;
        sub.guesses.push_back({p->seat(), p->respond(view, posed)});
      }
    }

    std::optional<std::pair<RoundOutcome, GameState>> result;
    try {
      result.emplace(adjudicate_round(state, sub));
    } catch (const ProtocolViolation& ex) {
      record.note = std::string("protocol violation: ") + ex.what();
      break;
    }
    auto& [outcome, next] = *result;
    recorder.record_round(state, sub, clue_text, outcome, next);
    if (outcome.kind != OutcomeKind::FinalConnection) {
      record.reveal_curve.push_back(
          {next.metrics().iterations, static_cast<int>(next.revealed_len())});
    }

    RoundReport report{view, giver, sub.intended, sub.setter_guess, sub.guesses, outcome};
    for (const auto& p : seats) p->observe(report);
    state = std::move(next);
  }

  record.winner = is_terminal(state).value_or(Winner::Setter);
  record.metrics = state.metrics();
  recorder.record_end(state, record.winner, record.note);
  record.transcript = std::move(recorder).take();
  for (const auto& p : seats) p->end_game(state);
  return record;
}

namespace {

std::string record_stem(const RunRecord& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04zu_", r.game_index);
  return buf + r.word.text();
}

}  // namespace

std::vector<RunRecord> run_batch(const ExperimentConfig& config, const World& world,
                                 std::span<const std::unique_ptr<Player>> seats) {
  config.validate();
  std::vector<RunRecord> records;
  records.reserve(static_cast<std::size_t>(config.num_games));
  for (std::size_t i = 0; i < static_cast<std::size_t>(config.num_games); ++i) {
    if (!config.carry_learning) {
      for (const auto& p : seats) {
        if (auto* sim = dynamic_cast<SimulatedPlayer*>(p.get())) sim->reset_learning();
      }
    }
    std::optional<Word> proposed = seats[kSetterSeat]->propose_secret(
        config.game.num_guessers, config.game.min_secret_length);
    const Word secret = proposed ? *proposed : choose_secret(config, seats, world, i);
    records.push_back(run_game(config, secret, seats, world, i));
  }

  if (!config.output_dir.empty()) {
    namespace fs = std::filesystem;
    const fs::path root(config.output_dir);
    fs::create_directories(root / "transcripts");
    fs::create_directories(root / "curves");
    for (RunRecord& r : records) {
      const fs::path tpath = root / "transcripts" / (record_stem(r) + ".jsonl");
      write_transcript_file(tpath, r.transcript);
      r.transcript_path = tpath.string();
      std::ofstream curve(root / "curves" / (record_stem(r) + ".csv"), std::ios::binary);
      export_reveal_curve(r, curve);
    }
    std::ofstream table(root / "metrics.csv", std::ios::binary);
    export_metrics_table(std::span<const RunRecord>(records), table);
  }
  return records;
}

std::vector<RunRecord> run_batch(const ExperimentConfig& config) {
  config.validate();
  const World world = build_world(config);
  std::istringstream no_input;
  std::ostringstream no_output;
  auto seats = make_seats(config, world, no_input, no_output);
  return run_batch(config, world, seats);
}

void export_metrics_table(std::span<const TableRow> rows, std::ostream& sink) {
  std::vector<TableRow> sorted(rows.begin(), rows.end());
  for (const TableRow& r : sorted) {
    if (!r.metrics.consistent()) {
      throw std::logic_error("metrics for " + r.word.text() +
                             " break iterations = reveals + guesser_wrong + setter_blocked");
    }
  }
  std::stable_sort(sorted.begin(), sorted.end(), [](const TableRow& a, const TableRow& b) {
    if (a.metrics.iterations != b.metrics.iterations) return a.metrics.iterations < b.metrics.iterations;
    return a.word < b.word;
  });
  sink << kMetricsHeader << '\n';
  for (const TableRow& r : sorted) {
    sink << r.word << ',' << r.metrics.reveals << ',' << r.metrics.guesser_wrong << ','
         << r.metrics.setter_blocked << ',' << r.metrics.iterations << '\n';
  }
  if (!sink) throw std::runtime_error("failed to write metrics table");
}

void export_metrics_table(std::span<const RunRecord> records, std::ostream& sink) {
  std::vector<TableRow> rows;
  rows.reserve(records.size());
  for (const RunRecord& r : records) rows.push_back({r.word, r.metrics});
  export_metrics_table(std::span<const TableRow>(rows), sink);
}

std::vector<TableRow> parse_metrics_table(std::istream& in) {
  std::vector<TableRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (line == kMetricsHeader) continue;
    std::istringstream ss(line);
    std::string word;
    std::vector<int> values;
    std::getline(ss, word, ',');
    for (std::string cell; std::getline(ss, cell, ',');) {
      try {
        std::size_t used = 0;
        values.push_back(std::stoi(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ParseError("metrics line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
    }
    auto w = Word::parse(word);
    if (!w || values.size() != 4) {
      throw ParseError("metrics line " + std::to_string(line_no) + ": expected word and 4 counts");
    }
    rows.push_back({*w, Metrics{values[0], values[1], values[2], values[3]}});
  }
  return rows;
}

void export_reveal_curve(const RunRecord& record, std::ostream& sink) {
  sink << "iteration,revealed_len\n";
  for (const CurvePoint& p : record.reveal_curve) sink << p.iteration << ',' << p.revealed_len << '\n';
}

std::vector<CurvePoint> reveal_curve_from_transcript(const Transcript& transcript) {
  std::vector<CurvePoint> curve;
  int iterations = 0;
  int revealed = 1;
  for (const Event& e : transcript) {
    if (e.kind != EventKind::OutcomeDeclared || !e.outcome) continue;
    if (*e.outcome == OutcomeKind::FinalConnection) continue;
    ++iterations;
    if (*e.outcome == OutcomeKind::Connection) ++revealed;
    curve.push_back({iterations, revealed});
  }
  return curve;
}

RunRecord record_from_transcript(const Transcript& transcript) {
  if (transcript.empty() || transcript.back().kind != EventKind::GameEnded ||
      !transcript.back().secret) {
    throw ParseError("transcript does not end with a GameEnded event");
  }
  const Event& end = transcript.back();
  RunRecord r;
  r.word = *end.secret;
  r.metrics = end.metrics.value_or(Metrics{});
  r.winner = end.winner.value_or(Winner::Setter);
  r.note = end.note;
  r.transcript = transcript;
  r.reveal_curve = reveal_curve_from_transcript(transcript);
  return r;
}

std::vector<TableRow> rows_over_iterations(std::span<const TableRow> rows, int threshold) {
  std::vector<TableRow> out;
  for (const TableRow& r : rows) {
    if (r.metrics.iterations > threshold) out.push_back(r);
  }
  return out;
}

}  // namespace connections
