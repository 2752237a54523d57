#include "connections/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "connections/errors.hpp"

namespace connections {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

void normalize_in_place(Vector& v) {
  const double n = norm(v);
  if (n == 0.0) return;
  for (double& x : v) x /= n;
}

PlayerSpace::PlayerSpace(int seat, int dim, std::vector<Word> words, std::vector<double> flat)
    : seat_(seat), dim_(dim), words_(std::move(words)), data_(std::move(flat)) {
  if (data_.size() != words_.size() * static_cast<std::size_t>(dim_)) {
    throw std::invalid_argument("PlayerSpace: data size does not match words * dim");
  }
}

bool PlayerSpace::has(const Word& w) const {
  return std::binary_search(words_.begin(), words_.end(), w);
}

std::span<const double> PlayerSpace::vector_of(const Word& w) const {
  auto it = std::lower_bound(words_.begin(), words_.end(), w);
  if (it == words_.end() || *it != w) {
    throw std::out_of_range("no embedding for " + w.text());
  }
  return vector_at(static_cast<std::size_t>(it - words_.begin()));
}

double similarity(const PlayerSpace& space, std::span<const double> a, std::span<const double> b) {
  if (a.size() != static_cast<std::size_t>(space.dim()) || b.size() != a.size()) {
    throw std::invalid_argument("similarity: vectors must have the space's dimension");
  }
  return dot(a, b);
}

std::vector<ScoredWord> top_k_candidates(const PlayerSpace& space, std::span<const double> query,
                                         std::span<const Word> candidates, int k) {
  std::vector<ScoredWord> scored;
  scored.reserve(candidates.size());
  for (const Word& w : candidates) scored.push_back({w, dot(space.vector_of(w), query)});
  auto better = [](const ScoredWord& a, const ScoredWord& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.word < b.word;
  };
  const std::size_t keep = std::min(scored.size(), static_cast<std::size_t>(std::max(k, 0)));
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end(),
                    better);
  scored.erase(scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end());
  return scored;
}

Vector gaussian_direction(int dim, Rng& rng) {
  Vector g(static_cast<std::size_t>(dim));
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (double& x : g) x = rng.normal() * scale;
  return g;
}

ClueVector clue_vector_for(const PlayerSpace& space, const Word& target, double sigma, Rng& rng,
                           ClueWindow window) {
  auto base = space.vector_of(target);
  const Vector noise = gaussian_direction(space.dim(), rng);
  ClueVector clue;
  clue.window = window;
  clue.vec.assign(base.begin(), base.end());
  if (sigma > 0.0) {
    for (std::size_t i = 0; i < clue.vec.size(); ++i) clue.vec[i] += sigma * noise[i];
    normalize_in_place(clue.vec);
  }
  return clue;
}

bool passes_clue_window(const PlayerSpace& space, const ClueVector& clue, const Word& target,
                        std::span<const ScoredWord> others_topk) {
  const double s = similarity(space, clue.vec, space.vector_of(target));
  if (!(clue.window.low < s && s < clue.window.high)) return false;
  for (const ScoredWord& r : others_topk) {
    if (r.word != target && r.score >= clue.window.high) return false;
  }
  return true;
}

SpaceEnsemble build_space_ensemble(const Vocabulary& vocab, int dim, double omega, int num_players,
                                   std::uint64_t seed) {
  if (dim < 2) throw ConfigError("ensemble.dim must be >= 2");
  if (num_players < 1) throw ConfigError("ensemble needs at least one player");
  if (!(omega >= 0.0)) throw ConfigError("ensemble.omega must be >= 0");

  std::vector<Word> words(vocab.begin(), vocab.end());
  const std::size_t m = static_cast<std::size_t>(dim);

  std::vector<double> latent(words.size() * m);
  Rng latent_rng(derive_seed(seed, 0));
  for (std::size_t w = 0; w < words.size(); ++w) {
    Vector v(m);
    for (double& x : v) x = latent_rng.normal();
    normalize_in_place(v);
    std::copy(v.begin(), v.end(), latent.begin() + static_cast<std::ptrdiff_t>(w * m));
  }

  SpaceEnsemble ens;
  ens.dim = dim;
  ens.omega = omega;
  ens.seed = seed;
  ens.vocab_fingerprint = vocab.fingerprint();
  for (int j = 0; j < num_players; ++j) {
    std::vector<double> flat = latent;
    Rng noise_rng(derive_seed(seed, 1 + static_cast<std::uint64_t>(j)));
    for (std::size_t w = 0; w < words.size(); ++w) {
      const Vector noise = gaussian_direction(dim, noise_rng);
      if (omega == 0.0) continue;
      Vector v(flat.begin() + static_cast<std::ptrdiff_t>(w * m),
               flat.begin() + static_cast<std::ptrdiff_t>((w + 1) * m));
      for (std::size_t i = 0; i < m; ++i) v[i] += omega * noise[i];
      normalize_in_place(v);
      std::copy(v.begin(), v.end(), flat.begin() + static_cast<std::ptrdiff_t>(w * m));
    }
    ens.spaces.emplace_back(j, dim, words, std::move(flat));
  }
  ens.latent = PlayerSpace(-1, dim, std::move(words), std::move(latent));
  return ens;
}

double measured_epsilon(const SpaceEnsemble& ensemble, int k) {
  const std::size_t players = ensemble.spaces.size();
  if (players < 2) return 0.0;
  const std::size_t n = ensemble.latent.words().size();

  // scores[j][p * n + u] = Φ_j(u)·Φ_j(p)
  std::vector<std::vector<double>> scores(players, std::vector<double>(n * n));
  for (std::size_t j = 0; j < players; ++j) {
    const PlayerSpace& s = ensemble.spaces[j];
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t u = 0; u < n; ++u) scores[j][p * n + u] = dot(s.vector_at(u), s.vector_at(p));
    }
  }

  double eps = 0.0;
  std::vector<std::size_t> order(n);
  for (std::size_t j = 0; j < players; ++j) {
    for (std::size_t p = 0; p < n; ++p) {
      const double* row = &scores[j][p * n];
      for (std::size_t u = 0; u < n; ++u) order[u] = u;
      const std::size_t keep = std::min(n, static_cast<std::size_t>(std::max(k, 0)));
      std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                        [&](std::size_t a, std::size_t b) {
                          if (row[a] != row[b]) return row[a] > row[b];
                          return a < b;  // words are stored sorted
                        });
      for (std::size_t t = 0; t < keep; ++t) {
        const std::size_t u = order[t];
        const double sj = row[u];
        for (std::size_t jp = 0; jp < players; ++jp) {
          if (jp == j) continue;
          const double sjp = scores[jp][p * n + u];
          const double gap = std::abs(sjp - sj);
          if (gap == 0.0) continue;
          if (sj == 0.0) return std::numeric_limits<double>::infinity();
          eps = std::max(eps, gap / std::abs(sj));
        }
      }
    }
  }
  return eps;
}

namespace {

constexpr const char* kSnapshotMagic = "connections-ensemble v1";

void write_row(std::ostream& out, std::span<const double> v) {
  char buf[32];
  for (double x : v) {
    std::snprintf(buf, sizeof buf, " %.17g", x);
    out << buf;
  }
  out << '\n';
}

}  // namespace

void save_ensemble(std::ostream& out, const SpaceEnsemble& e) {
  char omega[64];
  std::snprintf(omega, sizeof omega, "%.17g", e.omega);
  out << kSnapshotMagic << '\n'
      << "dim " << e.dim << '\n'
      << "omega " << omega << '\n'
      << "seed " << e.seed << '\n'
      << "players " << e.spaces.size() << '\n'
      << "vocab_hash " << e.vocab_fingerprint << '\n'
      << "words " << e.latent.words().size() << '\n';
  const auto words = e.latent.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    out << "latent " << words[w];
    write_row(out, e.latent.vector_at(w));
  }
  for (const PlayerSpace& s : e.spaces) {
    for (std::size_t w = 0; w < words.size(); ++w) {
      out << "player " << s.seat() << ' ' << words[w];
      write_row(out, s.vector_at(w));
    }
  }
}

SpaceEnsemble load_ensemble(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSnapshotMagic) {
    throw ParseError("not an ensemble snapshot (bad header)");
  }
  auto header = [&](const char* key) {
    if (!std::getline(in, line)) throw ParseError(std::string("snapshot truncated before ") + key);
    std::istringstream ss(line);
    std::string name, value;
    ss >> name >> value;
    if (name != key) throw ParseError(std::string("snapshot: expected ") + key);
    return value;
  };
  SpaceEnsemble e;
  e.dim = std::stoi(header("dim"));
  e.omega = std::stod(header("omega"));
  e.seed = std::stoull(header("seed"));
  const int players = std::stoi(header("players"));
  e.vocab_fingerprint = std::stoull(header("vocab_hash"));
  const std::size_t n = std::stoull(header("words"));
  const std::size_t m = static_cast<std::size_t>(e.dim);

  std::vector<Word> words;
  auto read_block = [&](const std::string& tag, int seat, bool collect_words) {
    std::vector<double> flat;
    flat.reserve(n * m);
    for (std::size_t w = 0; w < n; ++w) {
      if (!std::getline(in, line)) throw ParseError("snapshot truncated in " + tag + " block");
      std::istringstream ss(line);
      std::string t, text;
      ss >> t;
      if (t != tag) throw ParseError("snapshot: expected " + tag + " row");
      if (tag == "player") {
        int s = -1;
        ss >> s;
        if (s != seat) throw ParseError("snapshot: player rows out of order");
      }
      ss >> text;
      auto word = Word::parse(text);
      if (!word) throw ParseError("snapshot: bad word " + text);
      if (collect_words) {
        words.push_back(*word);
      } else if (words[w] != *word) {
        throw ParseError("snapshot: word order differs between blocks");
      }
      for (std::size_t i = 0; i < m; ++i) {
        double x;
        if (!(ss >> x)) throw ParseError("snapshot: short vector for " + text);
        flat.push_back(x);
      }
    }
    return flat;
  };
  auto latent = read_block("latent", -1, true);
  for (int j = 0; j < players; ++j) e.spaces.emplace_back(j, e.dim, words, read_block("player", j, false));
  e.latent = PlayerSpace(-1, e.dim, std::move(words), std::move(latent));
  return e;
}

void save_ensemble_file(const std::filesystem::path& path, const SpaceEnsemble& ensemble) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write snapshot " + path.string());
  save_ensemble(out, ensemble);
}

SpaceEnsemble load_ensemble_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open snapshot " + path.string());
  return load_ensemble(in);
}

}  // namespace connections
