#include "connections/agents.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "connections/errors.hpp"

namespace connections {

bool AgentProfile::knows(const Word& w) const {
  return std::binary_search(working_vocab.begin(), working_vocab.end(), w);
}

void AgentParams::validate() const {
  if (!(eta >= 0.0)) throw ConfigError("agents.eta must be >= 0");
  if (!(knowledge_fraction > 0.0 && knowledge_fraction <= 1.0)) {
    throw ConfigError("agents.knowledge_fraction must be in (0, 1]");
  }
  if (generation_k < 1) throw ConfigError("agents.generation_k must be >= 1");
  if (guess_k < 1) throw ConfigError("agents.guess_k must be >= 1");
  if (!window.valid()) throw ConfigError("agents.lambda_low < agents.lambda_high, both in (-1, 1)");
  if (sigma_grid.empty()) throw ConfigError("agents.sigma_grid must not be empty");
  if (!std::is_sorted(sigma_grid.begin(), sigma_grid.end()) || sigma_grid.front() < 0.0) {
    throw ConfigError("agents.sigma_grid must be ascending and non-negative");
  }
  if (rollouts < 1) throw ConfigError("agents.rollouts must be >= 1");
  if (window_attempts < 1) throw ConfigError("agents.window_attempts must be >= 1");
  if (!(text_clue_sigma >= 0.0)) throw ConfigError("agents.text_clue_sigma must be >= 0");
}

Vector random_unit_vector(int dim, Rng& rng) {
  Vector v(static_cast<std::size_t>(dim));
  do {
    for (double& x : v) x = rng.normal();
  } while (norm(v) == 0.0);
  normalize_in_place(v);
  return v;
}

AgentProfile build_profile(int seat, Role role, const Vocabulary& vocab, const PlayerSpace& latent,
                           Vector true_discourse, double fraction) {
  AgentProfile p;
  p.seat = seat;
  p.role = role;
  p.true_discourse = std::move(true_discourse);
  if (vocab.empty()) return p;

  std::vector<double> sims;
  sims.reserve(vocab.size());
  for (const Word& w : vocab) sims.push_back(dot(latent.vector_of(w), p.true_discourse));
  std::vector<double> sorted = sims;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const auto want = static_cast<std::size_t>(
      std::clamp<double>(std::ceil(fraction * static_cast<double>(vocab.size())), 1.0,
                         static_cast<double>(vocab.size())));
  p.knowledge_threshold = sorted[want - 1];

  char last_letter = 0;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    const Word& w = vocab[i];
    const bool floor_word = w[0] != last_letter;
    last_letter = w[0];
    if (floor_word || sims[i] >= p.knowledge_threshold) p.working_vocab.push_back(w);
  }
  return p;
}

double round_success_probability(double p, int n) {
  return (1.0 - p) * (1.0 - std::pow(1.0 - p, n - 1));
}

double optimal_target_probability(int n) {
  if (n < 2) throw std::domain_error("optimal_target_probability needs n >= 2");
  return 1.0 - std::pow(1.0 / n, 1.0 / (n - 1));
}

std::vector<double> target_log_weights(int owner, const PerceivedDiscourse& perceived,
                                       std::span<const Word> legal, const PlayerSpace& space) {
  const std::size_t m = static_cast<std::size_t>(space.dim());
  Vector guesser_avg(m, 0.0);
  int count = 0;
  for (int j = 1; j < perceived.num_seats(); ++j) {
    if (j == owner) continue;
    const Vector e = perceived.estimate(j);
    for (std::size_t i = 0; i < m; ++i) guesser_avg[i] += e[i];
    ++count;
  }
  if (count > 0) {
    for (double& x : guesser_avg) x /= count;
  }
  const Vector setter = perceived.tracks(kSetterSeat) ? perceived.estimate(kSetterSeat) : Vector(m, 0.0);

  std::vector<double> out;
  out.reserve(legal.size());
  for (const Word& w : legal) {
    const auto v = space.vector_of(w);
    out.push_back(dot(v, guesser_avg) - dot(v, setter));
  }
  return out;
}

std::optional<Word> select_target_word(const AgentProfile& profile,
                                       const PerceivedDiscourse& perceived,
                                       std::span<const Word> legal, const SpaceEnsemble& spaces,
                                       Rng& rng, int k) {
  if (legal.empty()) return std::nullopt;
  const std::vector<double> logw =
      target_log_weights(profile.seat, perceived, legal, spaces.space(profile.seat));

  std::vector<std::size_t> order(legal.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t keep = std::min(order.size(), static_cast<std::size_t>(std::max(k, 1)));
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (logw[a] != logw[b]) return logw[a] > logw[b];
                      return legal[a] < legal[b];
                    });
  order.resize(keep);

  const double top = logw[order.front()];
  std::vector<double> weights;
  weights.reserve(keep);
  double total = 0.0;
  for (std::size_t idx : order) {
    weights.push_back(std::exp(logw[idx] - top));
    total += weights.back();
  }
  const double u = rng.uniform() * total;
  double acc = 0.0;
  for (std::size_t t = 0; t < keep; ++t) {
    acc += weights[t];
    if (u < acc) return legal[order[t]];
  }
  return legal[order.back()];
}

double estimate_recovery(const PlayerSpace& space, const Word& target, std::span<const Word> pool,
                         double sigma, int rollouts, Rng& rng) {
  int hits = 0;
  for (int r = 0; r < rollouts; ++r) {
    const ClueVector clue = clue_vector_for(space, target, sigma, rng);
    const auto best = top_k_candidates(space, clue.vec, pool, 1);
    if (!best.empty() && best.front().word == target) ++hits;
  }
  return static_cast<double>(hits) / rollouts;
}

double calibrate_clue_vagueness(const AgentProfile& profile, const Word& target, int n,
                                const SpaceEnsemble& spaces, std::span<const Word> pool,
                                std::span<const double> sigma_grid, int rollouts, Rng& rng) {
  const double goal = optimal_target_probability(n);
  const PlayerSpace& space = spaces.space(profile.seat);
  double best_sigma = sigma_grid.front();
  double best_gap = 2.0;
  for (double sigma : sigma_grid) {
    const double gap = std::abs(estimate_recovery(space, target, pool, sigma, rollouts, rng) - goal);
    if (gap < best_gap) {
      best_gap = gap;
      best_sigma = sigma;
    }
  }
  return best_sigma;
}

namespace {

std::optional<ScoredWord> best_known(const AgentProfile& profile, const PublicView& view,
                                     const ClueVector& clue, const SpaceEnsemble& spaces, int k) {
  const std::vector<Word> pool = legal_intended_words(view, profile.working_vocab);
  const auto ranked = top_k_candidates(spaces.space(profile.seat), clue.vec, pool, k);
  if (ranked.empty() || ranked.front().score <= clue.window.low) return std::nullopt;
  return ranked.front();
}

}  // namespace

std::optional<Word> guess_from_clue(const AgentProfile& profile, const PublicView& view,
                                    const ClueVector& clue, const SpaceEnsemble& spaces, int k) {
  auto best = best_known(profile, view, clue, spaces, k);
  if (!best) return std::nullopt;
  return best->word;
}

std::optional<Word> setter_block_policy(const AgentProfile& profile, const PublicView& view,
                                        const ClueVector& clue, const SpaceEnsemble& spaces,
                                        const Word& secret, int k) {
  auto best = best_known(profile, view, clue, spaces, k);
  if (!best || best->word == secret) return std::nullopt;
  return best->word;
}

SimulatedPlayer::SimulatedPlayer(AgentProfile profile, AgentParams params,
                                 std::shared_ptr<const SpaceEnsemble> spaces, int num_guessers)
    : profile_(std::move(profile)),
      params_(std::move(params)),
      spaces_(std::move(spaces)),
      num_guessers_(num_guessers),
      perceived_(profile_.seat, num_guessers + 1, spaces_->dim, params_.eta) {}

void SimulatedPlayer::begin_game(std::uint64_t game_seed, const std::optional<Word>& secret) {
  rng_ = Rng(derive_seed(game_seed, 100 + static_cast<std::uint64_t>(profile_.seat)));
  secret_ = secret;
}

ClueDecision SimulatedPlayer::pose_clue(const PublicView& view) {
  ClueDecision d;
  const std::vector<Word> legal = legal_intended_words(view, profile_.working_vocab);
  const auto target =
      select_target_word(profile_, perceived_, legal, *spaces_, rng_, params_.generation_k);
  if (!target) return d;

  const PlayerSpace& space = spaces_->space(profile_.seat);
  last_sigma_ = calibrate_clue_vagueness(profile_, *target, num_guessers_, *spaces_, legal,
                                         params_.sigma_grid, params_.rollouts, rng_);
  ClueVector clue;
  for (int attempt = 0; attempt < params_.window_attempts; ++attempt) {
    clue = clue_vector_for(space, *target, last_sigma_, rng_, params_.window);
    const auto rivals = top_k_candidates(space, clue.vec, legal, params_.guess_k);
    if (passes_clue_window(space, clue, *target, rivals)) break;
  }
  d.intended = target;
  d.clue = std::move(clue);
  return d;
}

std::optional<Word> SimulatedPlayer::respond(const PublicView& view, const PosedClue& posed) {
  const ClueVector* clue = posed.vector();
  if (!clue) return std::nullopt;
  if (profile_.role == Role::Setter) {
    if (!secret_) return std::nullopt;
    return setter_block_policy(profile_, view, *clue, *spaces_, *secret_, params_.guess_k);
  }
  return guess_from_clue(profile_, view, *clue, *spaces_, params_.guess_k);
}

void SimulatedPlayer::observe(const RoundReport& report) {
  if (!report.intended) return;
  if (profile_.role == Role::Setter && !params_.setter_learning) return;
  const Word& w = *report.intended;
  const auto v = spaces_->space(profile_.seat).vector_of(w);
  const int self = profile_.seat;

  if (profile_.role == Role::Guesser) {
    perceived_.update(kSetterSeat, v, report.setter_guess == w);
  }
  for (const Guess& g : report.guesses) {
    if (g.seat == self) continue;
    perceived_.update(g.seat, v, g.word == w);
  }
  // Whoever chose to clue w presumably leans toward it.
  if (report.giver != self) perceived_.update(report.giver, v, true);
}

}  // namespace connections
