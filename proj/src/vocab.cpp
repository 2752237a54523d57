#include "connections/vocab.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "connections/errors.hpp"
#include "connections/rng.hpp"

namespace connections {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

}  // namespace

std::string normalize(std::string_view raw) {
  std::size_t first = 0;
  std::size_t last = raw.size();
  while (first < last && is_space(raw[first])) ++first;
  while (last > first && is_space(raw[last - 1])) --last;
  std::string out(raw.substr(first, last - first));
  for (char& c : out) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

std::optional<Word> Word::parse(std::string_view raw) {
  std::string text = normalize(raw);
  if (text.empty()) return std::nullopt;
  for (char c : text) {
    if (c < 'A' || c > 'Z') return std::nullopt;
  }
  return Word(std::move(text));
}

Word Word::from(std::string_view raw) {
  auto w = parse(raw);
  if (!w) throw std::invalid_argument("not a word over A-Z: '" + std::string(raw) + "'");
  return *std::move(w);
}

std::ostream& operator<<(std::ostream& os, const Word& w) { return os << w.text(); }

Vocabulary::Vocabulary(std::vector<Word> words) : words_(std::move(words)) {
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

std::span<const Word> Vocabulary::with_prefix(std::string_view prefix) const {
  auto by_text = [](const Word& w, std::string_view p) { return std::string_view(w.text()) < p; };
  auto lo = std::lower_bound(words_.begin(), words_.end(), prefix, by_text);
  auto hi = lo;
  while (hi != words_.end() && hi->starts_with(prefix)) ++hi;
  return {lo, hi};
}

bool Vocabulary::contains(const Word& w) const {
  return std::binary_search(words_.begin(), words_.end(), w);
}

std::optional<std::size_t> Vocabulary::index_of(const Word& w) const {
  auto it = std::lower_bound(words_.begin(), words_.end(), w);
  if (it == words_.end() || *it != w) return std::nullopt;
  return static_cast<std::size_t>(it - words_.begin());
}

std::uint64_t Vocabulary::fingerprint() const {
  std::uint64_t h = fnv1a("");
  for (const Word& w : words_) {
    h = fnv1a(w.text(), h);
    h = fnv1a("\n", h);
  }
  return h;
}

VocabularyLoad load_vocabulary(std::istream& in) {
  VocabularyLoad out;
  std::vector<Word> words;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string token = normalize(line);
    if (token.empty() || token.front() == '#') continue;
    if (auto w = Word::parse(token)) {
      words.push_back(*std::move(w));
    } else {
      out.rejected_lines.push_back(line_no);
    }
  }
  out.vocabulary = Vocabulary(std::move(words));
  if (out.vocabulary.empty()) {
    std::ostringstream msg;
    msg << "vocabulary is empty after filtering";
    if (!out.rejected_lines.empty()) {
      msg << "; rejected";
      for (std::size_t i = 0; i < out.rejected_lines.size(); ++i) {
        msg << (i ? ", line " : " line ") << out.rejected_lines[i];
      }
    }
    throw ConfigError(msg.str());
  }
  return out;
}

VocabularyLoad load_vocabulary_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open word list " + path.string());
  return load_vocabulary(in);
}

std::vector<Word> words_with_prefix(const Vocabulary& vocab, std::string_view prefix) {
  auto span = vocab.with_prefix(prefix);
  return {span.begin(), span.end()};
}

bool contains(const Vocabulary& vocab, const Word& w) { return vocab.contains(w); }

}  // namespace connections
