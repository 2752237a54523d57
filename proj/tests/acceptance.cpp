// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "connections/agents.hpp"
#include "connections/arena.hpp"
#include "connections/discourse.hpp"
#include "connections/errors.hpp"
#include "connections/llm.hpp"
#include "connections/prompts.hpp"
#include "connections/transcript.hpp"
#include "expected_prompts.hpp"

using namespace connections;

namespace {

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 10) failures_.push_back(what);
    if (!ok) ++count_;
  }
  bool ok() const { return count_ == 0; }
  const std::vector<std::string>& failures() const { return failures_; }
  int count() const { return count_; }

 private:
  std::vector<std::string> failures_;
  int count_ = 0;
};

std::filesystem::path data_path(const char* rel) {
  return std::filesystem::path(CONNECTIONS_DATA_DIR) / rel;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// 1

void closed_form_maximizer(Check& c) {
  for (int n = 2; n <= 10; ++n) {
    double best_p = 0, best = -1;
    for (int i = 0; i <= 10000; ++i) {
      const double p = i * 1e-4;
      const double v = round_success_probability(p, n);
      if (v > best) {
        best = v;
        best_p = p;
      }
    }
    const double star = optimal_target_probability(n);
    c.expect(std::abs(star - best_p) <= 1e-3,
             fmt("n=%.0f: p*=%.6f, grid argmax %.4f", n, star, best_p));
    c.expect(round_success_probability(star, n) >= best - 1e-12, fmt("n=%.0f: p* below grid max", n));
  }
  const double printed[] = {0.5, 0.43, 0.37, 0.33};
  for (int n = 2; n <= 5; ++n) {
    const double star = optimal_target_probability(n);
    char two[16];
    std::snprintf(two, sizeof two, "%.2f", star);
    std::printf("      n=%d p*=%.4f (%s)\n", n, star, two);
    c.expect(std::abs(star - printed[n - 2]) <= 0.01,
             fmt("n=%.0f: %.4f vs printed %.2f", n, star, printed[n - 2]));
  }
}

// 2

void xenophobia_fixture(Check& c) {
  const Transcript t = read_transcript_file(data_path("fixtures/xenophobia_game.jsonl"));
  const Metrics m = replay_transcript(t, GameConfig{});
  c.expect(m == Metrics{1, 2, 4, 7}, fmt("replayed %.0f, %.0f, ...", m.reveals, m.guesser_wrong));
  std::ifstream table(data_path("fixtures/reference_games.csv"));
  const auto rows = parse_metrics_table(table);
  const auto it = std::find_if(rows.begin(), rows.end(),
                               [](const TableRow& r) { return r.word == Word::from("XENOPHOBIA"); });
  c.expect(it != rows.end() && it->metrics == m, "replay differs from the table row");
}

// 3

void table_identity(Check& c) {
  std::ifstream in(data_path("fixtures/reference_games.csv"));
  const auto rows = parse_metrics_table(in);
  c.expect(rows.size() == 19, "expected 19 rows");
  for (const auto& r : rows) c.expect(r.metrics.consistent(), r.word.text() + " breaks the identity");

  std::ostringstream out;
  export_metrics_table(rows, out);
  std::istringstream back(out.str());
  std::string header;
  std::getline(back, header);
  c.expect(header == kMetricsHeader, "header: " + header);
  std::istringstream again(out.str());
  const auto exported = parse_metrics_table(again);
  c.expect(exported.size() == rows.size(), "row count changed");
  for (std::size_t i = 1; i < exported.size(); ++i) {
    c.expect(exported[i - 1].metrics.iterations <= exported[i].metrics.iterations,
             "not ascending at row " + std::to_string(i));
  }
  c.expect(!exported.empty() && exported.front().word == Word::from("XENOPHOBIA"),
           "xenophobia should lead");
  std::vector<TableRow> sorted_in = rows, sorted_out = exported;
  auto by_word = [](const TableRow& a, const TableRow& b) { return a.word < b.word; };
  std::sort(sorted_in.begin(), sorted_in.end(), by_word);
  std::sort(sorted_out.begin(), sorted_out.end(), by_word);
  c.expect(sorted_in == sorted_out, "export changed row contents");
}

// 4

const std::vector<const char*> kEngineWords = {
    "cat",     "catalan",  "catamaran", "catch",   "cater",  "carpet", "cart",   "comma",
    "comet",   "come",     "dog",       "dodge",   "door",   "dove",   "dover",  "xenon",
    "xenial",  "xerox",    "xeric",     "xenophobia", "xylograph", "xylophone", "tea", "team",
    "tear",    "teardrop", "ten",       "tent",    "tenth",  "tender"};

void engine_properties(Check& c) {
  std::vector<Word> list;
  for (const char* w : kEngineWords) list.push_back(Word::from(w));
  const Vocabulary vocab(std::move(list));
  const auto words = vocab.words();
  Rng rng(20240);

  for (int game = 0; game < 10000; ++game) {
    GameConfig cfg;
    cfg.num_guessers = 2 + static_cast<int>(rng.below(3));
    cfg.max_iterations = 3 + static_cast<int>(rng.below(40));
    cfg.clue_giver = rng.below(2) ? ClueGiverPolicy::round_robin()
                                  : ClueGiverPolicy::fixed(1 + static_cast<int>(rng.below(
                                                                   static_cast<std::uint64_t>(cfg.num_guessers))));
    cfg.exclude_wrong_guesses = rng.below(4) == 0;
    const Word secret = words[rng.below(words.size())];
    GameState state = new_game(cfg, secret, vocab);
    TranscriptRecorder recorder(state, static_cast<std::uint64_t>(game));

    auto random_matching = [&](const std::string& prefix) -> std::optional<Word> {
      const auto pool = vocab.with_prefix(prefix);
      if (pool.empty()) return std::nullopt;
      return pool[rng.below(pool.size())];
    };

    while (!is_terminal(state)) {
      const std::string prefix = state.revealed_prefix();
      RoundSubmission sub;
      sub.giver = clue_giver_for_round(cfg, state.round_index());
      const auto legal = legal_intended_words(state, words);
      if (!legal.empty() && rng.below(10) != 0) sub.intended = legal[rng.below(legal.size())];
      sub.clue = std::string("clue");
      if (sub.intended) {
        switch (rng.below(3)) {
          case 0: break;
          case 1:
            if (*sub.intended != secret) sub.setter_guess = sub.intended;
            break;
          default:
            if (auto w = random_matching(prefix); w && *w != secret) sub.setter_guess = w;
        }
        for (int s = 1; s <= cfg.num_guessers; ++s) {
          if (s == sub.giver) continue;
          Guess g{s, std::nullopt};
          const auto r = rng.below(3);
          if (r == 1) g.word = sub.intended;
          if (r == 2) g.word = random_matching(prefix);
          sub.guesses.push_back(g);
        }
      }

      const auto [outcome, next] = adjudicate_round(state, sub);

      c.expect(!sub.intended || sub.intended->starts_with(prefix), "intended breaks the prefix");
      c.expect(next.revealed_prefix().starts_with(prefix), "prefix shrank");
      c.expect(next.revealed_len() <= secret.length(), "revealed past the end");
      c.expect(std::includes(next.excluded().begin(), next.excluded().end(),
                             state.excluded().begin(), state.excluded().end()),
               "excluded set shrank");
      c.expect(!next.is_excluded(secret), "secret excluded");
      const bool blocked = sub.intended && sub.setter_guess && *sub.setter_guess == *sub.intended;
      c.expect(blocked == (outcome.kind == OutcomeKind::SetterBlocked), "block precedence");
      c.expect(next.metrics().consistent(), "metrics identity");

      recorder.record_round(state, sub, "clue", outcome, next);
      state = next;
    }

    const Winner winner = *is_terminal(state);
    c.expect(state.revealed_len() == 1 + static_cast<std::size_t>(state.metrics().reveals),
             "revealed_len != 1 + reveals");
    c.expect((winner == Winner::Guessers) == (state.phase() == Phase::GuessersWon), "winner");
    recorder.record_end(state, winner);
    const Transcript& t = recorder.transcript();
    std::stringstream ss;
    write_transcript(ss, t);
    const Transcript back = read_transcript(ss);
    c.expect(back == t, "transcript round-trip in game " + std::to_string(game));
    c.expect(replay_transcript(back, cfg) == state.metrics(), "replay metrics");
  }
}

// 5

void semantics_oracles(Check& c) {
  const auto full = load_vocabulary_file(default_vocab_path()).vocabulary;
  std::vector<Word> picked;
  for (std::size_t i = 0; i < full.size(); i += 11) picked.push_back(full[i]);
  const Vocabulary vocab(picked);
  const auto ensemble = build_space_ensemble(vocab, 16, 0.1, 3, 77);
  Rng rng(505);

  for (int q = 0; q < 1000; ++q) {
    const PlayerSpace& space = ensemble.space(static_cast<int>(rng.below(3)));
    const std::size_t size = 1 + rng.below(100);
    std::vector<Word> pool;
    for (std::size_t i = 0; i < size; ++i) pool.push_back(vocab[rng.below(vocab.size())]);
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    Vector query;
    if (q % 2) {
      query = gaussian_direction(16, rng);
      normalize_in_place(query);
    } else {
      const auto v = space.vector_of(pool.front());
      query.assign(v.begin(), v.end());
    }
    const int k = 1 + static_cast<int>(rng.below(pool.size() + 5));

    std::vector<std::pair<double, Word>> brute;
    for (const Word& w : pool) brute.push_back({dot(space.vector_of(w), query), w});
    std::sort(brute.begin(), brute.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    if (brute.size() > static_cast<std::size_t>(k)) brute.erase(brute.begin() + k, brute.end());
    const auto got = top_k_candidates(space, query, pool, k);
    bool same = got.size() == brute.size();
    for (std::size_t i = 0; same && i < got.size(); ++i) {
      same = got[i].word == brute[i].second && got[i].score == brute[i].first;
    }
    c.expect(same, "top-k differs from brute force on query " + std::to_string(q));
  }

  const auto flat = build_space_ensemble(vocab, 16, 0.0, 3, 77);
  c.expect(measured_epsilon(flat, 10) == 0.0, "epsilon at omega 0");

  // Zero estimates: every legal word has weight exp(0).
  AgentProfile profile;
  profile.seat = 1;
  profile.role = Role::Guesser;
  const std::vector<Word> legal(vocab.begin(), vocab.begin() + 7);
  profile.working_vocab = legal;
  profile.true_discourse = Vector(16, 0.0);
  const PerceivedDiscourse zero(1, 3, 16, 0.05);
  std::map<Word, int> counts;
  Rng draws(99);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[*select_target_word(profile, zero, legal, ensemble, draws, 10)];
  const double p = 1.0 / static_cast<double>(legal.size());
  const double sd = std::sqrt(n * p * (1 - p));
  for (const Word& w : legal) {
    c.expect(std::abs(counts[w] - n * p) <= 3 * sd,
             w.text() + fmt(": %.0f draws, expected %.1f +- %.1f", counts[w], n * p, 3 * sd));
  }
}

// 6

void learning_effect(Check& c) {
  const auto full = load_vocabulary_file(default_vocab_path()).vocabulary;
  std::vector<Word> picked;
  for (std::size_t i = 0; i < full.size(); i += 3) picked.push_back(full[i]);
  const auto vocab = std::make_shared<const Vocabulary>(std::move(picked));

  int wins = 0;
  double totals[2] = {0, 0};
  for (int b = 0; b < 20; ++b) {
    double second_half[2];
    for (int arm = 0; arm < 2; ++arm) {
      ExperimentConfig config;
      config.ensemble.dim = 16;
      config.ensemble.seed = 100 + static_cast<std::uint64_t>(b);
      config.master_seed = 1000 + static_cast<std::uint64_t>(b);
      config.agents.knowledge_fraction = 0.3;
      config.agents.rollouts = 16;
      config.agents.eta = arm == 0 ? 0.0 : 0.05;
      config.game.max_iterations = 60;
      config.num_games = 100;
      World world;
      world.vocab = vocab;
      world.spaces = std::make_shared<const SpaceEnsemble>(build_space_ensemble(
          *vocab, config.ensemble.dim, config.ensemble.omega, config.num_players(), config.ensemble.seed));
      const auto seats = make_simulated_seats(config, world);
      const auto records = run_batch(config, world, seats);
      double blocked = 0;
      for (std::size_t i = 50; i < 100; ++i) blocked += records[i].metrics.setter_blocked;
      second_half[arm] = blocked / 50.0;
      totals[arm] += second_half[arm];
    }
    wins += second_half[1] < second_half[0];
  }
  std::printf("      eta 0.05 beats eta 0 in %d/20 batches (mean blocks %.3f vs %.3f)\n", wins,
              totals[1] / 20, totals[0] / 20);
  c.expect(wins >= 16, fmt("only %.0f of 20 batches", wins));
}

// 7

void discourse_exactness(Check& c) {
  const Vector e1 = {1.0, 0.0, 0.0, 0.0};
  const Vector zero(4, 0.0);
  PerceivedDiscourse d(1, 3, 4, 0.05);
  d.update(0, e1, true);
  c.expect(d.estimate(0) == Vector{0.05, 0.0, 0.0, 0.0}, "single step is not exactly 0.05");
  d.update(0, e1, false);
  c.expect(d.estimate(0) == zero, "success then failure does not restore the estimate");
  d.update(2, e1, false);
  c.expect(d.estimate(2) == Vector{-0.05, 0.0, 0.0, 0.0}, "failure from zero");

  Rng rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    PerceivedDiscourse p(0, 3, 4, 0.05);
    std::vector<std::pair<Vector, bool>> steps;
    for (int i = 0; i < 20; ++i) {
      steps.push_back({random_unit_vector(4, rng), rng.below(2) == 0});
      p.update(1 + static_cast<int>(i % 2), steps.back().first, steps.back().second);
    }
    const PerceivedDiscourse before = p;
    Vector extra = random_unit_vector(4, rng);
    p.update(1, extra, true);
    p.update(1, extra, false);
    c.expect(p == before, "inverse pair is not exact");
    for (int i = 19; i >= 0; --i) {
      p.update(1 + (i % 2), steps[static_cast<std::size_t>(i)].first,
               !steps[static_cast<std::size_t>(i)].second);
    }
    c.expect(p.estimate(1) == Vector(4, 0.0) && p.estimate(2) == Vector(4, 0.0),
             "undoing every step does not return to zero");
  }
}

// 8

class ScriptedTransport final : public ChatTransport {
 public:
  explicit ScriptedTransport(std::vector<std::string> replies)
      : replies_(replies.begin(), replies.end()) {}
  std::string complete(const ChatRequest&) override {
    ++calls;
    if (replies_.empty()) return "";
    std::string r = replies_.front();
    replies_.pop_front();
    return r;
  }
  int calls = 0;

 private:
  std::deque<std::string> replies_;
};

void adapter_contract(Check& c) {
  const PromptLibrary lib = PromptLibrary::load(PromptLibrary::default_dir());
  const Slots xe{{"revealed", "XE"}, {"excluded_list", "XENON, XERIC"}, {"clue", "Fear of foreigners"}};
  const std::vector<std::pair<std::string, std::string>> cases = {
      {render_prompt(lib.get(PromptName::NewWord), {{"num_guessers", "2"}}), expected::kNewWord},
      {render_prompt(lib.get(PromptName::SetterRules), {}), expected::kSetterRules},
      {render_prompt(lib.get(PromptName::GuesserRules), {}), expected::kGuesserRules},
      {render_prompt(lib.get(PromptName::GuessFromClue),
                     {{"clue", "Woodblock printing technique"}, {"revealed", "X"}, {"excluded_list", ""}}),
       expected::kGuessFromClue},
      {render_prompt(lib.get(PromptName::MakeClue), xe), expected::kMakeClue},
      {render_prompt(lib.get(PromptName::CorrectionPrefixMake), xe), expected::kCorrectionPrefixMake},
      {render_prompt(lib.get(PromptName::CorrectionPrefixGuess), xe), expected::kCorrectionPrefixGuess},
      {render_prompt(lib.get(PromptName::CorrectionExcludedMake), xe), expected::kCorrectionExcludedMake},
      {render_prompt(lib.get(PromptName::CorrectionExcludedGuess), xe),
       expected::kCorrectionExcludedGuess},
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    c.expect(cases[i].first == cases[i].second, "template " + std::to_string(i) + " differs");
  }

  c.expect(parse_word_reply(" Xylograph \n") == Word::from("XYLOGRAPH"), "trimmed reply");
  c.expect(parse_word_reply("xenophobia.") == Word::from("XENOPHOBIA"), "punctuated reply");
  bool rejected = false;
  try {
    parse_word_reply("The word is CAT");
  } catch (const ParseError&) {
    rejected = true;
  }
  c.expect(rejected, "multi-token reply accepted");

  auto transport = std::make_shared<ScriptedTransport>(
      std::vector<std::string>{"The word is CAT", "cat", "xenon", "xerox"});
  LlmPlayer player(1, Role::Guesser, transport,
                   std::make_shared<const PromptLibrary>(lib), LlmSettings{});
  PublicView view;
  view.prefix = "XE";
  view.excluded = {Word::from("XENON")};
  PosedClue clue;
  clue.rendering = "copier";
  const auto answer = player.respond(view, clue);
  c.expect(!answer && player.forfeits() == 1 && transport->calls == 3,
           "expected a forfeit after three refused replies");
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "closed-form maximizer", closed_form_maximizer},
      {2, "worked-example transcript replay", xenophobia_fixture},
      {3, "metrics table identity and export", table_identity},
      {4, "engine properties over 10^4 games", engine_properties},
      {5, "semantics oracles", semantics_oracles},
      {6, "learning effect", learning_effect},
      {7, "discourse update exactness", discourse_exactness},
      {8, "chat adapter contract", adapter_contract},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& ex) {
      check.expect(false, std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %d %s (%.2f s)\n", check.ok() ? "PASS" : "FAIL", cr.id, cr.name, secs);
    for (const auto& f : check.failures()) std::printf("      %s\n", f.c_str());
    if (check.count() > static_cast<int>(check.failures().size())) {
      std::printf("      ... %d failures in total\n", check.count());
    }
    std::fflush(stdout);
    failed += !check.ok();
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
