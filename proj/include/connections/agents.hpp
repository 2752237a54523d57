#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "connections/discourse.hpp"
#include "connections/engine.hpp"
#include "connections/player.hpp"
#include "connections/rng.hpp"
#include "connections/semantics.hpp"

namespace connections {

struct AgentProfile {
  int seat = 0;
  Role role = Role::Guesser;
  std::vector<Word> working_vocab;  // sorted
  Vector true_discourse;
  double knowledge_threshold = 0.0;

  bool knows(const Word& w) const;
};

struct AgentParams {
  double eta = 0.05;
  double knowledge_fraction = 0.7;
  int generation_k = 10;
  int guess_k = 5;
  ClueWindow window;
  std::vector<double> sigma_grid = {0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0};
  int rollouts = 64;
  int window_attempts = 8;
  bool setter_learning = true;
  // Displacement of the vector stand-in built for text clues.
  double text_clue_sigma = 1.0;

  // Throws ConfigError.
  void validate() const;
};

// Random unit vector.
Vector random_unit_vector(int dim, Rng& rng);

// Working vocabulary: words whose latent vector has similarity >= θ with the
// true discourse vector, θ picked so that about `fraction` of the vocabulary
// qualifies, plus the lexicographically smallest word of every first letter.
AgentProfile build_profile(int seat, Role role, const Vocabulary& vocab, const PlayerSpace& latent,
                           Vector true_discourse, double fraction);

// (1 - p)(1 - (1 - p)^(n - 1)): the setter misses and at least one of the
// other n - 1 guessers connects.
double round_success_probability(double p, int n);

// 1 - (1/n)^(1/(n-1)), the maximizer of round_success_probability. Throws
// std::domain_error for n < 2.
double optimal_target_probability(int n);

// Log-weights <v_w, mean of perceived guesser estimates> - <v_w, perceived
// setter estimate>, using the owner's own embeddings.
std::vector<double> target_log_weights(int owner, const PerceivedDiscourse& perceived,
                                       std::span<const Word> legal, const PlayerSpace& space);

// Samples from the log-linear distribution truncated to the `k` heaviest
// candidates (ties lexicographic). nullopt when `legal` is empty.
std::optional<Word> select_target_word(const AgentProfile& profile,
                                       const PerceivedDiscourse& perceived,
                                       std::span<const Word> legal, const SpaceEnsemble& spaces,
                                       Rng& rng, int k = 10);

// Rollout estimate of how often a proxy listener (the giver's own space)
// recovers `target` by top-1 over `pool` from a fresh clue at this sigma.
double estimate_recovery(const PlayerSpace& space, const Word& target, std::span<const Word> pool,
                         double sigma, int rollouts, Rng& rng);

// Grid sigma whose estimated recovery rate is closest to
// optimal_target_probability(n); ties go to the smaller sigma.
double calibrate_clue_vagueness(const AgentProfile& profile, const Word& target, int n,
                                const SpaceEnsemble& spaces, std::span<const Word> pool,
                                std::span<const double> sigma_grid, int rollouts, Rng& rng);

// Top-1 over the legal words the guesser knows, in the guesser's own space;
// abstains when the best score is <= λ_L.
std::optional<Word> guess_from_clue(const AgentProfile& profile, const PublicView& view,
                                    const ClueVector& clue, const SpaceEnsemble& spaces, int k = 5);

// Like guess_from_clue over the setter's vocabulary, but never names the
// secret: a clue pointing at the secret cannot be blocked.
std::optional<Word> setter_block_policy(const AgentProfile& profile, const PublicView& view,
                                        const ClueVector& clue, const SpaceEnsemble& spaces,
                                        const Word& secret, int k = 5);

// Simulated player driven by the embedding model.
class SimulatedPlayer final : public Player {
 public:
  SimulatedPlayer(AgentProfile profile, AgentParams params,
                  std::shared_ptr<const SpaceEnsemble> spaces, int num_guessers);

  int seat() const override { return profile_.seat; }
  Role role() const override { return profile_.role; }
  std::string kind() const override { return "simulated"; }

  void begin_game(std::uint64_t game_seed, const std::optional<Word>& secret) override;
  ClueDecision pose_clue(const PublicView& view) override;
  std::optional<Word> respond(const PublicView& view, const PosedClue& clue) override;
  void observe(const RoundReport& report) override;

  const AgentProfile& profile() const noexcept { return profile_; }
  const PerceivedDiscourse& perceived() const noexcept { return perceived_; }
  void reset_learning() { perceived_.reset(); }
  // Sigma chosen for the most recent clue.
  double last_sigma() const noexcept { return last_sigma_; }

 private:
  AgentProfile profile_;
  AgentParams params_;
  std::shared_ptr<const SpaceEnsemble> spaces_;
  int num_guessers_;
  PerceivedDiscourse perceived_;
  Rng rng_;
  std::optional<Word> secret_;
  double last_sigma_ = 0.0;
};

}  // namespace connections
