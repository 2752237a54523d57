#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "connections/vocab.hpp"

namespace connections {

enum class PromptName {
  NewWord,
  SetterRules,
  GuesserRules,
  GuessFromClue,
  MakeClue,
  CorrectionPrefixMake,
  CorrectionPrefixGuess,
  CorrectionExcludedMake,
  CorrectionExcludedGuess,
  CluePhrase,
};

inline constexpr PromptName kAllPrompts[] = {
    PromptName::NewWord,
    PromptName::SetterRules,
    PromptName::GuesserRules,
    PromptName::GuessFromClue,
    PromptName::MakeClue,
    PromptName::CorrectionPrefixMake,
    PromptName::CorrectionPrefixGuess,
    PromptName::CorrectionExcludedMake,
    PromptName::CorrectionExcludedGuess,
    PromptName::CluePhrase,
};

// File stem under the prompt directory, e.g. "guess_from_clue".
std::string_view prompt_file_stem(PromptName name);

// A body with `{slot}` placeholders.
struct PromptTemplate {
  PromptName name = PromptName::NewWord;
  std::string body;

  std::vector<std::string> slots() const;
};

using Slots = std::map<std::string, std::string, std::less<>>;

// Substitutes every `{slot}` verbatim. Throws RenderError naming the first
// slot without a value.
std::string render_prompt(const PromptTemplate& tmpl, const Slots& slots);

// "A, B, C"; empty for an empty list.
std::string render_word_list(std::span<const Word> words);

class PromptLibrary {
 public:
  // Reads <dir>/<stem>.txt for every prompt; a single trailing newline is
  // dropped. Throws ConfigError for a missing file.
  static PromptLibrary load(const std::filesystem::path& dir);
  static std::filesystem::path default_dir();

  const PromptTemplate& get(PromptName name) const { return templates_.at(name); }

 private:
  std::map<PromptName, PromptTemplate> templates_;
};

// Accepts exactly one alphabetic token after trimming whitespace and
// surrounding punctuation; uppercases it. Throws ParseError otherwise.
Word parse_word_reply(std::string_view raw);

}  // namespace connections
