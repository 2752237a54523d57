#include "connections/llm.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include <httplib.h>
#include <json.hpp>

#include "connections/errors.hpp"

namespace connections {

using json = nlohmann::json;

std::string to_json(const ChatRequest& request) {
  json j;
  j["model"] = request.model;
  j["messages"] = json::array();
  for (const ChatMessage& m : request.messages) {
    j["messages"].push_back({{"role", m.role}, {"content", m.content}});
  }
  return j.dump();
}

std::string extract_reply(const std::string& response_body) {
  json j;
  try {
    j = json::parse(response_body);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("response is not JSON: ") + ex.what());
  }
  const json* msg = nullptr;
  if (j.contains("choices") && j["choices"].is_array() && !j["choices"].empty() &&
      j["choices"][0].contains("message")) {
    msg = &j["choices"][0]["message"];
  } else if (j.contains("message")) {
    msg = &j["message"];
  }
  if (!msg || !msg->contains("content") || !(*msg)["content"].is_string()) {
    throw ParseError("response has no message content");
  }
  return (*msg)["content"].get<std::string>();
}

HttpChatTransport::HttpChatTransport(LlmSettings settings) : settings_(std::move(settings)) {}

std::string HttpChatTransport::complete(const ChatRequest& request) {
  const std::string& url = settings_.endpoint;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("llm.endpoint must be an absolute URL");
  const auto path_start = url.find('/', scheme_end + 3);
  const std::string origin = url.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

  httplib::Client client(origin);
  client.set_connection_timeout(settings_.timeout_seconds, 0);
  client.set_read_timeout(settings_.timeout_seconds, 0);
  client.set_write_timeout(settings_.timeout_seconds, 0);
  httplib::Headers headers;
  if (const char* key = std::getenv(settings_.api_key_env.c_str()); key && *key) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  const std::string body = to_json(request);
  std::string last_error;
  for (int attempt = 0; attempt <= settings_.http_retries; ++attempt) {
    auto res = client.Post(path, headers, body, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 200 && res->status < 300) return extract_reply(res->body);
    last_error = "HTTP " + std::to_string(res->status);
    if (res->status < 500 && res->status != 429) break;
  }
  throw std::runtime_error("chat request to " + url + " failed: " + last_error);
}

AskResult ask_for_word(ChatTransport& transport, const std::string& model, const WordAsk& ask,
                       int max_attempts) {
  AskResult result;
  std::string prompt = ask.prompt;
  while (result.attempts < max_attempts) {
    ++result.attempts;
    ChatRequest req{model, {}};
    if (!ask.system.empty()) req.messages.push_back({"system", ask.system});
    req.messages.push_back({"user", prompt});
    std::optional<ReplyProblem> problem;
    std::optional<Word> word;
    try {
      word = parse_word_reply(transport.complete(req));
      if (ask.check) problem = ask.check(*word);
    } catch (const ParseError&) {
      problem = ReplyProblem::Unparseable;
    }
    if (!problem) {
      result.word = word;
      return result;
    }
    switch (*problem) {
      case ReplyProblem::Unparseable: prompt = ask.prompt; break;
      case ReplyProblem::WrongPrefix: prompt = ask.prefix_correction; break;
      case ReplyProblem::Excluded: prompt = ask.excluded_correction; break;
    }
  }
  return result;
}

}  // namespace connections

namespace connections {

LlmPlayer::LlmPlayer(int seat, Role role, std::shared_ptr<ChatTransport> transport,
                     std::shared_ptr<const PromptLibrary> prompts, LlmSettings settings,
                     std::string persona)
    : seat_(seat),
      role_(role),
      transport_(std::move(transport)),
      prompts_(std::move(prompts)),
      settings_(std::move(settings)),
      persona_(std::move(persona)) {}

std::string LlmPlayer::system_prompt() const {
  const PromptName rules = role_ == Role::Setter ? PromptName::SetterRules : PromptName::GuesserRules;
  std::string out = render_prompt(prompts_->get(rules), {});
  if (!persona_.empty()) out = persona_ + "\n\n" + out;
  return out;
}

Slots LlmPlayer::base_slots(const PublicView& view) const {
  const auto excluded = view.relevant_excluded();
  return Slots{{"revealed", view.prefix}, {"excluded_list", render_word_list(excluded)}};
}

namespace {

std::function<std::optional<ReplyProblem>(const Word&)> legality_check(const PublicView& view) {
  return [view](const Word& w) -> std::optional<ReplyProblem> {
    if (!w.starts_with(view.prefix)) return ReplyProblem::WrongPrefix;
    if (view.is_excluded(w)) return ReplyProblem::Excluded;
    if (view.complete && w.text() != view.prefix) return ReplyProblem::WrongPrefix;
    return std::nullopt;
  };
}

bool contains_ignoring_case(const std::string& haystack, const std::string& upper_needle) {
  return normalize(haystack).find(upper_needle) != std::string::npos;
}

}  // namespace

std::optional<Word> LlmPlayer::propose_secret(int num_guessers, int min_length) {
  if (role_ != Role::Setter) return std::nullopt;
  WordAsk ask;
  ask.system = system_prompt();
  ask.prompt = render_prompt(prompts_->get(PromptName::NewWord),
                             {{"num_guessers", std::to_string(num_guessers)}});
  ask.prefix_correction = ask.excluded_correction = ask.prompt;
  ask.check = [min_length](const Word& w) -> std::optional<ReplyProblem> {
    if (static_cast<int>(w.length()) < min_length) return ReplyProblem::Unparseable;
    return std::nullopt;
  };
  auto result = ask_for_word(*transport_, settings_.model, ask, settings_.reply_attempts);
  if (!result.word) ++forfeits_;
  return result.word;
}

void LlmPlayer::begin_game(std::uint64_t, const std::optional<Word>& secret) { secret_ = secret; }

ClueDecision LlmPlayer::pose_clue(const PublicView& view) {
  ClueDecision decision;
  Slots slots = base_slots(view);
  WordAsk ask;
  ask.system = system_prompt();
  ask.prompt = render_prompt(prompts_->get(PromptName::MakeClue), slots);
  ask.prefix_correction = render_prompt(prompts_->get(PromptName::CorrectionPrefixMake), slots);
  ask.excluded_correction = render_prompt(prompts_->get(PromptName::CorrectionExcludedMake), slots);
  ask.check = legality_check(view);
  auto word = ask_for_word(*transport_, settings_.model, ask, settings_.reply_attempts).word;
  if (!word) {
    ++forfeits_;
    return decision;
  }

  const std::string phrase_prompt =
      render_prompt(prompts_->get(PromptName::CluePhrase), {{"word", word->text()}});
  for (int attempt = 0; attempt < settings_.reply_attempts; ++attempt) {
    ChatRequest req{settings_.model, {{"system", ask.system}, {"user", phrase_prompt}}};
    std::string text = transport_->complete(req);
    const std::string trimmed = [&] {
      const auto a = text.find_first_not_of(" \t\r\n\"");
      const auto b = text.find_last_not_of(" \t\r\n\"");
      return a == std::string::npos ? std::string{} : text.substr(a, b - a + 1);
    }();
    if (trimmed.empty() || contains_ignoring_case(trimmed, word->text())) continue;
    decision.intended = word;
    decision.clue = trimmed;
    return decision;
  }
  ++forfeits_;
  return decision;
}

std::optional<Word> LlmPlayer::respond(const PublicView& view, const PosedClue& clue) {
  Slots slots = base_slots(view);
  slots["clue"] = clue.rendering;
  WordAsk ask;
  ask.system = system_prompt();
  ask.prompt = render_prompt(prompts_->get(PromptName::GuessFromClue), slots);
  ask.prefix_correction = render_prompt(prompts_->get(PromptName::CorrectionPrefixGuess), slots);
  ask.excluded_correction = render_prompt(prompts_->get(PromptName::CorrectionExcludedGuess), slots);
  ask.check = legality_check(view);
  auto word = ask_for_word(*transport_, settings_.model, ask, settings_.reply_attempts).word;
  if (!word) {
    ++forfeits_;
    return std::nullopt;
  }
  // The setter cannot block with its own word.
  if (role_ == Role::Setter && secret_ && *word == *secret_) return std::nullopt;
  return word;
}

}  // namespace connections
