#include "connections/human.hpp"

#include <iostream>
#include <istream>
#include <ostream>

#include <termios.h>
#include <unistd.h>

#include "connections/prompts.hpp"

namespace connections {
namespace {

// Disables echo on stdin for its lifetime.
class EchoGuard {
 public:
  explicit EchoGuard(bool active) {
    if (!active || !isatty(STDIN_FILENO) || tcgetattr(STDIN_FILENO, &saved_) != 0) return;
    termios quiet = saved_;
    quiet.c_lflag &= ~static_cast<tcflag_t>(ECHO);
    engaged_ = tcsetattr(STDIN_FILENO, TCSANOW, &quiet) == 0;
  }
  ~EchoGuard() {
    if (engaged_) tcsetattr(STDIN_FILENO, TCSANOW, &saved_);
  }
  EchoGuard(const EchoGuard&) = delete;
  EchoGuard& operator=(const EchoGuard&) = delete;

 private:
  termios saved_{};
  bool engaged_ = false;
};

std::string_view outcome_text(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::SetterBlocked: return "Setter Blocked!";
    case OutcomeKind::GuesserWrong: return "Guesser Wrong!";
    case OutcomeKind::Connection: return "Success!";
    case OutcomeKind::FinalConnection: return "Guessed Correctly. Game Over.";
  }
  return "";
}

}  // namespace

HumanPlayer::HumanPlayer(int seat, Role role, std::istream& in, std::ostream& out, bool hide_secret)
    : seat_(seat), role_(role), in_(in), out_(out), hide_secret_(hide_secret) {}

std::optional<std::string> HumanPlayer::read_line(bool hidden) {
  EchoGuard guard(hidden && &in_ == &std::cin);
  std::string line;
  if (!std::getline(in_, line)) return std::nullopt;
  if (hidden) out_ << '\n';
  return line;
}

void HumanPlayer::show_view(const PublicView& view) {
  out_ << "Revealed: " << view.prefix;
  const auto excluded = view.relevant_excluded();
  if (!excluded.empty()) out_ << "   Blocked: " << render_word_list(excluded);
  out_ << '\n';
}

std::optional<Word> HumanPlayer::propose_secret(int, int min_length) {
  if (role_ != Role::Setter) return std::nullopt;
  for (;;) {
    out_ << "Setter, type your secret word (input hidden): " << std::flush;
    auto line = read_line(hide_secret_);
    if (!line) return std::nullopt;
    auto w = Word::parse(*line);
    if (w && static_cast<int>(w->length()) >= min_length) return w;
    out_ << "Need a single word of at least " << min_length << " letters A-Z.\n";
  }
}

void HumanPlayer::begin_game(std::uint64_t, const std::optional<Word>& secret) {
  secret_ = secret;
  out_ << "Seat " << seat_ << (role_ == Role::Setter ? " (setter)" : " (guesser)") << '\n';
}

ClueDecision HumanPlayer::pose_clue(const PublicView& view) {
  ClueDecision d;
  show_view(view);
  for (;;) {
    out_ << "Seat " << seat_ << ", your word (empty line to pass): " << std::flush;
    auto line = read_line();
    if (!line || normalize(*line).empty()) return d;
    auto w = Word::parse(*line);
    if (!w || !w->starts_with(view.prefix)) {
      out_ << "The word must start with " << view.prefix << ".\n";
      continue;
    }
    if (view.is_excluded(*w)) {
      out_ << "That word is no longer available.\n";
      continue;
    }
    if (view.complete && w->text() != view.prefix) {
      out_ << "Every letter is revealed; only " << view.prefix << " is left.\n";
      continue;
    }
    for (;;) {
      out_ << "Clue for the other guessers: " << std::flush;
      auto clue = read_line();
      if (!clue) return d;
      if (normalize(*clue).empty()) continue;
      if (normalize(*clue).find(w->text()) != std::string::npos) {
        out_ << "The clue may not contain the word itself.\n";
        continue;
      }
      d.intended = w;
      d.clue = *clue;
      return d;
    }
  }
}

std::optional<Word> HumanPlayer::respond(const PublicView& view, const PosedClue& clue) {
  show_view(view);
  out_ << "Clue from seat " << clue.giver << ": " << clue.rendering << '\n';
  for (;;) {
    out_ << "Seat " << seat_ << (role_ == Role::Setter ? ", block with" : ", your guess")
         << " (empty line to abstain): " << std::flush;
    auto line = read_line();
    if (!line || normalize(*line).empty()) return std::nullopt;
    auto w = Word::parse(*line);
    if (!w || !w->starts_with(view.prefix)) {
      out_ << "The word must start with " << view.prefix << ".\n";
      continue;
    }
    if (role_ == Role::Setter && secret_ && *w == *secret_) {
      out_ << "(Cannot block with your own word.)\n";
      return std::nullopt;
    }
    return w;
  }
}

void HumanPlayer::observe(const RoundReport& report) {
  if (report.intended) out_ << "The intended word was " << *report.intended << ". ";
  out_ << outcome_text(report.outcome.kind) << '\n';
}

void HumanPlayer::end_game(const GameState& final_state) {
  const auto winner = is_terminal(final_state);
  out_ << "The word was " << final_state.secret() << ". "
       << (winner == Winner::Guessers ? "Guessers win." : "Setter wins.") << '\n';
  const Metrics& m = final_state.metrics();
  out_ << "Reveals, GuesserWrong, SetterBlocked: " << m.reveals << ", " << m.guesser_wrong << ", "
       << m.setter_blocked << " / " << m.iterations << '\n';
}

}  // namespace connections
