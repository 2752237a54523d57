#pragma once

#include <compare>
#include <cstdint>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace connections {

inline constexpr int kAlphabetSize = 26;

// Trims surrounding whitespace and uppercases ASCII letters. Other bytes are
// left alone so validation can report them. Idempotent.
std::string normalize(std::string_view raw);

// A non-empty token over A-Z.
class Word {
 public:
  // Normalizes and validates; nullopt when empty or any character is outside A-Z.
  static std::optional<Word> parse(std::string_view raw);

  // Like parse, but throws std::invalid_argument.
  static Word from(std::string_view raw);

  const std::string& text() const noexcept { return text_; }
  std::size_t length() const noexcept { return text_.size(); }
  char operator[](std::size_t i) const { return text_[i]; }

  bool starts_with(std::string_view prefix) const noexcept {
    return std::string_view(text_).starts_with(prefix);
  }

  std::string prefix(std::size_t n) const { return text_.substr(0, n); }

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word&, const Word&) = default;

 private:
  explicit Word(std::string text) : text_(std::move(text)) {}

  std::string text_;
};

std::ostream& operator<<(std::ostream& os, const Word& w);

// Immutable, deduplicated, lexicographically sorted word set. Prefix queries
// are answered as a contiguous slice of the sorted storage.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<Word> words);

  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }
  std::span<const Word> words() const noexcept { return words_; }
  auto begin() const noexcept { return words_.begin(); }
  auto end() const noexcept { return words_.end(); }
  const Word& operator[](std::size_t i) const { return words_[i]; }

  // All members starting with `prefix`, in lexicographic order.
  std::span<const Word> with_prefix(std::string_view prefix) const;

  bool contains(const Word& w) const;
  std::optional<std::size_t> index_of(const Word& w) const;

  // Order-sensitive FNV-1a over the sorted words; identifies a list in snapshots.
  std::uint64_t fingerprint() const;

 private:
  std::vector<Word> words_;
};

struct VocabularyLoad {
  Vocabulary vocabulary;
  std::vector<std::size_t> rejected_lines;  // 1-based
};

// Newline-separated tokens; blank lines and lines starting with '#' are
// skipped. Tokens with characters outside A-Z (after case folding) are
// rejected and their line numbers reported. Throws ConfigError when nothing
// usable remains.
VocabularyLoad load_vocabulary(std::istream& in);
VocabularyLoad load_vocabulary_file(const std::filesystem::path& path);

std::vector<Word> words_with_prefix(const Vocabulary& vocab, std::string_view prefix);
bool contains(const Vocabulary& vocab, const Word& w);

}  // namespace connections

template <>
struct std::hash<connections::Word> {
  std::size_t operator()(const connections::Word& w) const noexcept {
    return std::hash<std::string>{}(w.text());
  }
};
