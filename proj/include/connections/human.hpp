#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "connections/player.hpp"

namespace connections {

// A person at a terminal. The engine still enforces legality; this adapter
// only re-asks until the input is well formed. End of input means pass or
// abstain.
class HumanPlayer final : public Player {
 public:
  // `hide_secret` turns off terminal echo while the setter types the secret
  // (only effective when `in` is std::cin attached to a terminal).
  HumanPlayer(int seat, Role role, std::istream& in, std::ostream& out, bool hide_secret = true);

  int seat() const override { return seat_; }
  Role role() const override { return role_; }
  std::string kind() const override { return "human"; }

  std::optional<Word> propose_secret(int num_guessers, int min_length) override;
  void begin_game(std::uint64_t game_seed, const std::optional<Word>& secret) override;
  ClueDecision pose_clue(const PublicView& view) override;
  std::optional<Word> respond(const PublicView& view, const PosedClue& clue) override;
  void observe(const RoundReport& report) override;
  void end_game(const GameState& final_state) override;

 private:
  std::optional<std::string> read_line(bool hidden = false);
  void show_view(const PublicView& view);

  int seat_;
  Role role_;
  std::istream& in_;
  std::ostream& out_;
  bool hide_secret_;
  std::optional<Word> secret_;
};

}  // namespace connections
