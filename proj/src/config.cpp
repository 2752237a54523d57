#include "connections/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "connections/errors.hpp"

namespace connections {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
  throw ConfigError(std::string(key) + ": expected " + std::string(expected) + ", got '" +
                    std::string(value) + "'");
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    if constexpr (std::is_floating_point_v<T>) bad_value(key, value, "a number");
    else bad_value(key, value, "an integer");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value, "true or false");
}

Word parse_word(std::string_view key, std::string_view value) {
  auto w = Word::parse(value);
  if (!w) bad_value(key, value, "a word of letters A-Z");
  return *w;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view key, std::string_view value)>;

struct Entry {
  ConfigKey key;
  Setter set;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {{"game.num_guessers", "guessers at the table (seats 1..n), at least 2"},
       [](auto& c, auto k, auto v) { c.game.num_guessers = parse_number<int>(k, v); }},
      {{"game.max_iterations", "iteration budget before the setter wins"},
       [](auto& c, auto k, auto v) { c.game.max_iterations = parse_number<int>(k, v); }},
      {{"game.clue_giver", "round_robin or fixed:SEAT"},
       [](auto& c, auto k, auto v) {
         if (v == "round_robin") {
           c.game.clue_giver = ClueGiverPolicy::round_robin();
         } else if (v.starts_with("fixed:")) {
           c.game.clue_giver = ClueGiverPolicy::fixed(parse_number<int>(k, v.substr(6)));
         } else {
           bad_value(k, v, "round_robin or fixed:SEAT");
         }
       }},
      {{"game.min_secret_length", "shortest allowed secret"},
       [](auto& c, auto k, auto v) { c.game.min_secret_length = parse_number<int>(k, v); }},
      {{"game.exclude_wrong_guesses", "also retire words guessed wrongly"},
       [](auto& c, auto k, auto v) { c.game.exclude_wrong_guesses = parse_bool(k, v); }},
      {{"ensemble.dim", "embedding dimension"},
       [](auto& c, auto k, auto v) { c.ensemble.dim = parse_number<int>(k, v); }},
      {{"ensemble.omega", "per-player perturbation strength"},
       [](auto& c, auto k, auto v) { c.ensemble.omega = parse_number<double>(k, v); }},
      {{"ensemble.seed", "seed of the latent and player spaces"},
       [](auto& c, auto k, auto v) { c.ensemble.seed = parse_number<std::uint64_t>(k, v); }},
      {{"ensemble.snapshot", "ensemble file to reuse or create"},
       [](auto& c, auto, auto v) { c.ensemble.snapshot = std::string(v); }},
      {{"agents.eta", "learning step for perceived discourse"},
       [](auto& c, auto k, auto v) { c.agents.eta = parse_number<double>(k, v); }},
      {{"agents.knowledge_fraction", "share of the vocabulary each agent knows"},
       [](auto& c, auto k, auto v) { c.agents.knowledge_fraction = parse_number<double>(k, v); }},
      {{"agents.generation_k", "candidates kept when choosing a target"},
       [](auto& c, auto k, auto v) { c.agents.generation_k = parse_number<int>(k, v); }},
      {{"agents.guess_k", "rivals checked against the clue window"},
       [](auto& c, auto k, auto v) { c.agents.guess_k = parse_number<int>(k, v); }},
      {{"agents.lambda_low", "lower clue similarity bound"},
       [](auto& c, auto k, auto v) { c.agents.window.low = parse_number<double>(k, v); }},
      {{"agents.lambda_high", "upper clue similarity bound"},
       [](auto& c, auto k, auto v) { c.agents.window.high = parse_number<double>(k, v); }},
      {{"agents.sigma_grid", "comma-separated vagueness levels"},
       [](auto& c, auto k, auto v) {
         c.agents.sigma_grid.clear();
         for (const auto& s : split_list(v)) c.agents.sigma_grid.push_back(parse_number<double>(k, s));
       }},
      {{"agents.rollouts", "rollouts per vagueness level"},
       [](auto& c, auto k, auto v) { c.agents.rollouts = parse_number<int>(k, v); }},
      {{"agents.window_attempts", "clue draws before giving up on the window"},
       [](auto& c, auto k, auto v) { c.agents.window_attempts = parse_number<int>(k, v); }},
      {{"agents.setter_learning", "whether the setter tracks discourse too"},
       [](auto& c, auto k, auto v) { c.agents.setter_learning = parse_bool(k, v); }},
      {{"agents.text_clue_sigma", "displacement of vector stand-ins for text clues"},
       [](auto& c, auto k, auto v) { c.agents.text_clue_sigma = parse_number<double>(k, v); }},
      {{"experiment.num_games", "games per batch"},
       [](auto& c, auto k, auto v) { c.num_games = parse_number<int>(k, v); }},
      {{"experiment.secret_policy", "sampled or fixed_list"},
       [](auto& c, auto k, auto v) {
         if (v == "sampled") c.secret_policy = SecretPolicy::SampledFromSetterVocab;
         else if (v == "fixed_list") c.secret_policy = SecretPolicy::FixedList;
         else bad_value(k, v, "sampled or fixed_list");
       }},
      {{"experiment.secrets", "comma-separated secrets for fixed_list"},
       [](auto& c, auto k, auto v) {
         c.secrets.clear();
         for (const auto& s : split_list(v)) c.secrets.push_back(parse_word(k, s));
       }},
      {{"experiment.master_seed", "seed every game seed derives from"},
       [](auto& c, auto k, auto v) { c.master_seed = parse_number<std::uint64_t>(k, v); }},
      {{"experiment.carry_learning", "keep learned discourse across games"},
       [](auto& c, auto k, auto v) { c.carry_learning = parse_bool(k, v); }},
      {{"experiment.vocab", "word list file; empty for the bundled list"},
       [](auto& c, auto, auto v) { c.vocab_path = std::string(v); }},
      {{"experiment.seats", "comma-separated simulated, llm or human per seat"},
       [](auto& c, auto k, auto v) {
         c.seats.clear();
         for (const auto& s : split_list(v)) {
           if (s == "simulated") c.seats.push_back(SeatKind::Simulated);
           else if (s == "llm") c.seats.push_back(SeatKind::Llm);
           else if (s == "human") c.seats.push_back(SeatKind::Human);
           else bad_value(k, s, "simulated, llm or human");
         }
       }},
      {{"experiment.personas", "'|'-separated persona text per seat"},
       [](auto& c, auto, auto v) {
         c.personas.clear();
         std::string_view rest = v;
         while (true) {
           const auto bar = rest.find('|');
           c.personas.emplace_back(trim(rest.substr(0, bar)));
           if (bar == std::string_view::npos) break;
           rest.remove_prefix(bar + 1);
         }
       }},
      {{"experiment.output_dir", "where transcripts and tables go"},
       [](auto& c, auto, auto v) { c.output_dir = std::string(v); }},
      {{"llm.endpoint", "chat completions URL"},
       [](auto& c, auto, auto v) { c.llm.endpoint = std::string(v); }},
      {{"llm.model", "model name sent with each request"},
       [](auto& c, auto, auto v) { c.llm.model = std::string(v); }},
      {{"llm.api_key_env", "environment variable holding the API key"},
       [](auto& c, auto, auto v) { c.llm.api_key_env = std::string(v); }},
      {{"llm.timeout_seconds", "per-request timeout"},
       [](auto& c, auto k, auto v) { c.llm.timeout_seconds = parse_number<int>(k, v); }},
      {{"llm.http_retries", "retries after transport failures"},
       [](auto& c, auto k, auto v) { c.llm.http_retries = parse_number<int>(k, v); }},
      {{"llm.reply_attempts", "attempts at a legal reply before forfeiting"},
       [](auto& c, auto k, auto v) { c.llm.reply_attempts = parse_number<int>(k, v); }},
  };
  return entries;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> out;
    for (const auto& e : registry()) out.push_back(e.key);
    return out;
  }();
  return keys;
}

void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  for (const auto& e : registry()) {
    if (e.key.name == key) {
      e.set(config, key, value);
      return;
    }
  }
  throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

void apply_config_stream(ExperimentConfig& config, std::istream& in, const std::string& origin) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    apply_setting(config, body.substr(0, eq), body.substr(eq + 1));
  }
}

void apply_override(ExperimentConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
  }
  apply_setting(config, assignment.substr(0, eq), assignment.substr(eq + 1));
}

ExperimentConfig load_config(const std::optional<std::filesystem::path>& path,
                             const std::vector<std::string>& overrides) {
  ExperimentConfig config;
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("cannot open config file " + path->string());
    apply_config_stream(config, in, path->string());
  }
  for (const auto& o : overrides) apply_override(config, o);
  config.validate();
  return config;
}

void write_config(std::ostream& out, const ExperimentConfig& c) {
  auto num = [](double d) {
    std::ostringstream ss;
    ss.precision(17);
    ss << d;
    return ss.str();
  };
  std::vector<std::string> grid, secrets, seats;
  for (double s : c.agents.sigma_grid) grid.push_back(num(s));
  for (const Word& w : c.secrets) secrets.push_back(w.text());
  for (SeatKind k : c.seats) {
    seats.push_back(k == SeatKind::Simulated ? "simulated" : k == SeatKind::Llm ? "llm" : "human");
  }
  const std::map<std::string, std::string> values = {
      {"game.num_guessers", std::to_string(c.game.num_guessers)},
      {"game.max_iterations", std::to_string(c.game.max_iterations)},
      {"game.clue_giver", c.game.clue_giver.kind == ClueGiverPolicy::Kind::RoundRobin
                              ? std::string("round_robin")
                              : "fixed:" + std::to_string(c.game.clue_giver.seat)},
      {"game.min_secret_length", std::to_string(c.game.min_secret_length)},
      {"game.exclude_wrong_guesses", c.game.exclude_wrong_guesses ? "true" : "false"},
      {"ensemble.dim", std::to_string(c.ensemble.dim)},
      {"ensemble.omega", num(c.ensemble.omega)},
      {"ensemble.seed", std::to_string(c.ensemble.seed)},
      {"ensemble.snapshot", c.ensemble.snapshot},
      {"agents.eta", num(c.agents.eta)},
      {"agents.knowledge_fraction", num(c.agents.knowledge_fraction)},
      {"agents.generation_k", std::to_string(c.agents.generation_k)},
      {"agents.guess_k", std::to_string(c.agents.guess_k)},
      {"agents.lambda_low", num(c.agents.window.low)},
      {"agents.lambda_high", num(c.agents.window.high)},
      {"agents.sigma_grid", join(grid, ",")},
      {"agents.rollouts", std::to_string(c.agents.rollouts)},
      {"agents.window_attempts", std::to_string(c.agents.window_attempts)},
      {"agents.setter_learning", c.agents.setter_learning ? "true" : "false"},
      {"agents.text_clue_sigma", num(c.agents.text_clue_sigma)},
      {"experiment.num_games", std::to_string(c.num_games)},
      {"experiment.secret_policy",
       c.secret_policy == SecretPolicy::FixedList ? "fixed_list" : "sampled"},
      {"experiment.secrets", join(secrets, ",")},
      {"experiment.master_seed", std::to_string(c.master_seed)},
      {"experiment.carry_learning", c.carry_learning ? "true" : "false"},
      {"experiment.vocab", c.vocab_path},
      {"experiment.seats", join(seats, ",")},
      {"experiment.personas", join(c.personas, "|")},
      {"experiment.output_dir", c.output_dir},
      {"llm.endpoint", c.llm.endpoint},
      {"llm.model", c.llm.model},
      {"llm.api_key_env", c.llm.api_key_env},
      {"llm.timeout_seconds", std::to_string(c.llm.timeout_seconds)},
      {"llm.http_retries", std::to_string(c.llm.http_retries)},
      {"llm.reply_attempts", std::to_string(c.llm.reply_attempts)},
  };
  for (const auto& key : config_keys()) {
    out << "# " << key.description << '\n' << key.name << " = " << values.at(key.name) << '\n';
  }
}

}  // namespace connections
