#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "connections/clue.hpp"
#include "connections/rng.hpp"
#include "connections/vocab.hpp"

namespace connections {

using Vector = std::vector<double>;

// Throws std::invalid_argument on a dimension mismatch.
double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> v);
// Scales to unit length; a zero vector is left unchanged.
void normalize_in_place(Vector& v);

// One player's embedding map: a unit vector per vocabulary word.
class PlayerSpace {
 public:
  PlayerSpace() = default;
  // `words` sorted and unique; `flat` holds words.size() * dim values.
  PlayerSpace(int seat, int dim, std::vector<Word> words, std::vector<double> flat);

  int seat() const noexcept { return seat_; }
  int dim() const noexcept { return dim_; }
  std::span<const Word> words() const noexcept { return words_; }

  bool has(const Word& w) const;
  // Throws std::out_of_range for a word without an entry.
  std::span<const double> vector_of(const Word& w) const;
  std::span<const double> vector_at(std::size_t index) const {
    return {data_.data() + index * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }

  friend bool operator==(const PlayerSpace&, const PlayerSpace&) = default;

 private:
  int seat_ = 0;
  int dim_ = 0;
  std::vector<Word> words_;
  std::vector<double> data_;
};

// Dot product of two unit vectors in the space's dimension.
double similarity(const PlayerSpace& space, std::span<const double> a, std::span<const double> b);

struct ScoredWord {
  Word word;
  double score = 0.0;

  friend bool operator==(const ScoredWord&, const ScoredWord&) = default;
};

// The k best candidates by dot product with `query`, descending, ties broken
// lexicographically.
std::vector<ScoredWord> top_k_candidates(const PlayerSpace& space, std::span<const double> query,
                                         std::span<const Word> candidates, int k);

// Isotropic gaussian with covariance I/dim, so its expected squared norm is 1
// and perturbation strengths do not depend on the dimension.
Vector gaussian_direction(int dim, Rng& rng);

// normalize(Φ(target) + sigma * noise). Always consumes `dim` normals so that
// streams stay aligned across sigma values; sigma = 0 returns Φ(target) as is.
ClueVector clue_vector_for(const PlayerSpace& space, const Word& target, double sigma, Rng& rng,
                           ClueWindow window = {});

// λ_L < sim(clue, target) < λ_U and every non-target rival scores below λ_U.
bool passes_clue_window(const PlayerSpace& space, const ClueVector& clue, const Word& target,
                        std::span<const ScoredWord> others_topk);

struct SpaceEnsemble {
  int dim = 0;
  double omega = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t vocab_fingerprint = 0;
  PlayerSpace latent;               // shared structure, seat -1
  std::vector<PlayerSpace> spaces;  // one per seat

  const PlayerSpace& space(int seat) const { return spaces.at(static_cast<std::size_t>(seat)); }
  friend bool operator==(const SpaceEnsemble&, const SpaceEnsemble&) = default;
};

// Latent vectors come from stream derive_seed(seed, 0), one word at a time in
// lexicographic order; player j's perturbation from stream derive_seed(seed, 1 + j).
// Player vectors are normalize(latent + omega * noise); omega = 0 copies the
// latent exactly. Throws ConfigError for dim < 2 or num_players < 1.
SpaceEnsemble build_space_ensemble(const Vocabulary& vocab, int dim, double omega,
                                   int num_players, std::uint64_t seed);

// Smallest ε with (1-ε)s_j <= s_j' <= (1+ε)s_j over every ordered player pair
// and every (probe, word) where the word is in player j's top-k for the probe.
// Probes are the vocabulary words themselves (σ = 0 clues). Zero with fewer
// than two players.
double measured_epsilon(const SpaceEnsemble& ensemble, int k);

// Versioned text snapshot: header lines then one line per vector, values in
// fixed-point decimal.
void save_ensemble(std::ostream& out, const SpaceEnsemble& ensemble);
SpaceEnsemble load_ensemble(std::istream& in);
void save_ensemble_file(const std::filesystem::path& path, const SpaceEnsemble& ensemble);
SpaceEnsemble load_ensemble_file(const std::filesystem::path& path);

}  // namespace connections
