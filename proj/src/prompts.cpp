#include "connections/prompts.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "connections/errors.hpp"

namespace connections {

std::string_view prompt_file_stem(PromptName name) {
  switch (name) {
    case PromptName::NewWord: return "new_word";
    case PromptName::SetterRules: return "setter_rules";
    case PromptName::GuesserRules: return "guesser_rules";
    case PromptName::GuessFromClue: return "guess_from_clue";
    case PromptName::MakeClue: return "make_clue";
    case PromptName::CorrectionPrefixMake: return "correction_prefix_make";
    case PromptName::CorrectionPrefixGuess: return "correction_prefix_guess";
    case PromptName::CorrectionExcludedMake: return "correction_excluded_make";
    case PromptName::CorrectionExcludedGuess: return "correction_excluded_guess";
    case PromptName::CluePhrase: return "clue_phrase";
  }
  return "";
}

namespace {

bool is_slot_char(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }

// Calls on_text / on_slot for each piece of the body in order.
template <typename Text, typename Slot>
void scan(std::string_view body, Text on_text, Slot on_slot) {
  std::size_t i = 0;
  while (i < body.size()) {
    const std::size_t open = body.find('{', i);
    if (open == std::string_view::npos) break;
    std::size_t close = open + 1;
    while (close < body.size() && is_slot_char(body[close])) ++close;
    if (close < body.size() && body[close] == '}' && close > open + 1) {
      on_text(body.substr(i, open - i));
      on_slot(body.substr(open + 1, close - open - 1));
      i = close + 1;
    } else {
      on_text(body.substr(i, open + 1 - i));
      i = open + 1;
    }
  }
  on_text(body.substr(std::min(i, body.size())));
}

}  // namespace

std::vector<std::string> PromptTemplate::slots() const {
  std::vector<std::string> out;
  scan(
      body, [](std::string_view) {},
      [&](std::string_view s) {
        if (std::find(out.begin(), out.end(), s) == out.end()) out.emplace_back(s);
      });
  return out;
}

std::string render_prompt(const PromptTemplate& tmpl, const Slots& slots) {
  std::string out;
  scan(
      tmpl.body, [&](std::string_view t) { out.append(t); },
      [&](std::string_view s) {
        auto it = slots.find(s);
        if (it == slots.end()) {
          throw RenderError(std::string(s), "prompt " + std::string(prompt_file_stem(tmpl.name)) +
                                                ": no value for slot '" + std::string(s) + "'");
        }
        out.append(it->second);
      });
  return out;
}

std::string render_word_list(std::span<const Word> words) {
  std::string out;
  for (const Word& w : words) {
    if (!out.empty()) out += ", ";
    out += w.text();
  }
  return out;
}

PromptLibrary PromptLibrary::load(const std::filesystem::path& dir) {
  PromptLibrary lib;
  for (PromptName name : kAllPrompts) {
    const auto path = dir / (std::string(prompt_file_stem(name)) + ".txt");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("missing prompt template " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string body = ss.str();
    if (!body.empty() && body.back() == '\n') body.pop_back();
    lib.templates_[name] = PromptTemplate{name, std::move(body)};
  }
  return lib;
}

std::filesystem::path PromptLibrary::default_dir() {
  return std::filesystem::path(CONNECTIONS_DATA_DIR) / "prompts";
}

Word parse_word_reply(std::string_view raw) {
  std::vector<std::string> tokens;
  std::istringstream ss{std::string(raw)};
  std::string tok;
  while (ss >> tok) {
    std::size_t a = 0;
    std::size_t b = tok.size();
    while (a < b && std::ispunct(static_cast<unsigned char>(tok[a]))) ++a;
    while (b > a && std::ispunct(static_cast<unsigned char>(tok[b - 1]))) --b;
    if (a < b) tokens.push_back(tok.substr(a, b - a));
  }
  if (tokens.size() != 1) {
    throw ParseError("expected exactly one word, got " + std::to_string(tokens.size()) + " tokens");
  }
  auto w = Word::parse(tokens.front());
  if (!w) throw ParseError("reply '" + tokens.front() + "' is not a single alphabetic word");
  return *w;
}

}  // namespace connections
