#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "connections/player.hpp"
#include "connections/prompts.hpp"

namespace connections {

struct ChatMessage {
  std::string role;  // "system" or "user"
  std::string content;
};

struct ChatRequest {
  std::string model;
  std::vector<ChatMessage> messages;
};

// {"model": ..., "messages": [{"role": ..., "content": ...}, ...]}
std::string to_json(const ChatRequest& request);

// First message content in a chat-completion response: choices[0].message.content,
// or message.content. Throws ParseError.
std::string extract_reply(const std::string& response_body);

// One blocking request/response exchange; returns the reply content.
class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  virtual std::string complete(const ChatRequest& request) = 0;
};

struct LlmSettings {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model = "gpt-4o";
  std::string api_key_env = "CONNECTIONS_LLM_API_KEY";
  int timeout_seconds = 60;
  int http_retries = 2;
  int reply_attempts = 3;  // replies per decision before the agent forfeits
};

// POSTs to settings.endpoint with a bearer credential read from the named
// environment variable. Transport-level failures are retried http_retries
// times, then surface as std::runtime_error.
class HttpChatTransport final : public ChatTransport {
 public:
  explicit HttpChatTransport(LlmSettings settings);
  std::string complete(const ChatRequest& request) override;

 private:
  LlmSettings settings_;
};

// Why a reply was refused; selects the correction prompt.
enum class ReplyProblem { Unparseable, WrongPrefix, Excluded };

struct WordAsk {
  std::string system;
  std::string prompt;                      // first attempt
  std::string prefix_correction;           // sent after a WrongPrefix reply
  std::string excluded_correction;         // sent after an Excluded reply
  std::function<std::optional<ReplyProblem>(const Word&)> check;
};

struct AskResult {
  std::optional<Word> word;  // absent: forfeited
  int attempts = 0;
};

// Asks for one word up to `max_attempts` times, steering with the matching
// correction prompt after each refused reply.
AskResult ask_for_word(ChatTransport& transport, const std::string& model, const WordAsk& ask,
                       int max_attempts);

// Player backed by a chat model, prompted with the stored templates.
class LlmPlayer final : public Player {
 public:
  LlmPlayer(int seat, Role role, std::shared_ptr<ChatTransport> transport,
            std::shared_ptr<const PromptLibrary> prompts, LlmSettings settings,
            std::string persona = {});

  int seat() const override { return seat_; }
  Role role() const override { return role_; }
  std::string kind() const override { return "llm"; }

  std::optional<Word> propose_secret(int num_guessers, int min_length) override;
  void begin_game(std::uint64_t game_seed, const std::optional<Word>& secret) override;
  ClueDecision pose_clue(const PublicView& view) override;
  std::optional<Word> respond(const PublicView& view, const PosedClue& clue) override;

  // Number of forfeited decisions so far.
  int forfeits() const noexcept { return forfeits_; }

 private:
  std::string system_prompt() const;
  Slots base_slots(const PublicView& view) const;

  int seat_;
  Role role_;
  std::shared_ptr<ChatTransport> transport_;
  std::shared_ptr<const PromptLibrary> prompts_;
  LlmSettings settings_;
  std::string persona_;
  std::optional<Word> secret_;
  int forfeits_ = 0;
};

}  // namespace connections
