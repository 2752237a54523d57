#include <gtest/gtest.h>

#include "connections/engine.hpp"
#include "connections/errors.hpp"

using namespace connections;

namespace {

Word W(const char* s) { return Word::from(s); }

Vocabulary vocab_of(std::initializer_list<const char*> words) {
  std::vector<Word> v;
  for (const char* w : words) v.push_back(W(w));
  return Vocabulary(std::move(v));
}

RoundSubmission sub(const char* intended, std::optional<const char*> setter,
                    std::optional<const char*> guess, int giver = 1, int guesser = 2) {
  RoundSubmission s;
  s.giver = giver;
  s.intended = W(intended);
  if (setter) s.setter_guess = W(*setter);
  s.guesses.push_back({guesser, guess ? std::optional<Word>(W(*guess)) : std::nullopt});
  return s;
}

GameState play(GameState state, const RoundSubmission& s, OutcomeKind expected) {
  auto [outcome, next] = adjudicate_round(state, s);
  EXPECT_EQ(outcome.kind, expected) << s.intended->text();
  return next;
}

// The eight attempts of the sample XENOPHOBIA game, as submissions.
std::vector<std::pair<RoundSubmission, OutcomeKind>> xenophobia_rounds() {
  return {
      {sub("XYLOGRAPH", "XYLOGRAPHY", "XYLOGRAPHY"), OutcomeKind::GuesserWrong},
      {sub("XANTHOPHYLL", "XANTHOPHYLL", std::nullopt), OutcomeKind::SetterBlocked},
      {sub("XENOGLOSSY", "XENOGLOSSY", std::nullopt), OutcomeKind::SetterBlocked},
      {sub("XIPHOPHYLLOUS", "XIPHOID", "XIPHOPHYLLOUS"), OutcomeKind::Connection},
      {sub("XENOLITHIC", "XENOLITH", "XENOLITH"), OutcomeKind::GuesserWrong},
      {sub("XENOGENESIS", "XENOGENESIS", std::nullopt), OutcomeKind::SetterBlocked},
      {sub("XEROPHTHALMIA", "XEROPHTHALMIA", std::nullopt), OutcomeKind::SetterBlocked},
      {sub("XENOPHOBIA", std::nullopt, "XENOPHOBIA"), OutcomeKind::FinalConnection},
  };
}

}  // namespace

TEST(NewGame, RevealsFirstLetter) {
  const auto v = vocab_of({"XENOPHOBIA", "CATAMARAN", "A"});
  EXPECT_EQ(new_game({}, W("XENOPHOBIA"), v).revealed_prefix(), "X");
  EXPECT_EQ(new_game({}, W("CATAMARAN"), v).revealed_prefix(), "C");
  GameConfig c;
  c.min_secret_length = 2;
  EXPECT_THROW(new_game(c, W("A"), v), ConfigError);
  EXPECT_THROW(new_game({}, W("DOG"), v), ConfigError);
}

TEST(NewGame, FreshStateIsEmpty) {
  const auto s = GameState::start({}, W("XENOPHOBIA"));
  EXPECT_EQ(s.metrics(), Metrics{});
  EXPECT_FALSE(is_terminal(s).has_value());
  EXPECT_TRUE(s.excluded().empty());
}

TEST(GameConfig, Validation) {
  GameConfig c;
  c.num_guessers = 1;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.max_iterations = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.clue_giver = ClueGiverPolicy::fixed(3);
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(ClueGiver, RoundRobinAndFixed) {
  GameConfig c;
  c.num_guessers = 3;
  EXPECT_EQ(clue_giver_for_round(c, 0), 1);
  EXPECT_EQ(clue_giver_for_round(c, 1), 2);
  EXPECT_EQ(clue_giver_for_round(c, 2), 3);
  EXPECT_EQ(clue_giver_for_round(c, 3), 1);
  c.clue_giver = ClueGiverPolicy::fixed(2);
  EXPECT_EQ(clue_giver_for_round(c, 5), 2);
}

TEST(LegalIntendedWords, Examples) {
  auto s = GameState::start({}, W("XENOPHOBIA"));
  s = play(s, sub("XIPHOPHYLLOUS", "XIPHOID", "XIPHOPHYLLOUS"), OutcomeKind::Connection);
  s = play(s, sub("XENOGLOSSY", "XENOGLOSSY", std::nullopt), OutcomeKind::SetterBlocked);
  const std::vector<Word> pool = {W("XENOLITH"), W("XENOGLOSSY"), W("XENOPHOBIA")};
  EXPECT_EQ(legal_intended_words(s, pool), (std::vector<Word>{W("XENOLITH"), W("XENOPHOBIA")}));

  const auto c = GameState::start({}, W("CATAMARAN"));
  EXPECT_EQ(legal_intended_words(c, std::vector<Word>{W("COMMA")}), std::vector<Word>{W("COMMA")});
  EXPECT_EQ(legal_intended_words(public_view(c), std::vector<Word>{W("COMMA"), W("DOG")}),
            std::vector<Word>{W("COMMA")});
}

TEST(LegalIntendedWords, PrefixMismatchIsEmpty) {
  auto s = GameState::start({}, W("CATAMARAN"));
  // Walk the prefix out to CATAM with connections on unrelated-but-legal words.
  s = play(s, sub("CAB", std::nullopt, "CAB"), OutcomeKind::Connection);
  s = play(s, sub("CATS", std::nullopt, "CATS"), OutcomeKind::Connection);
  s = play(s, sub("CATALAN", std::nullopt, "CATALAN"), OutcomeKind::Connection);
  s = play(s, sub("CATAMOUNT", std::nullopt, "CATAMOUNT"), OutcomeKind::Connection);
  ASSERT_EQ(s.revealed_prefix(), "CATAM");
  EXPECT_TRUE(legal_intended_words(s, std::vector<Word>{W("CATACOMB")}).empty());
}

TEST(Adjudicate, XenophobiaAttempts) {
  auto s = GameState::start({}, W("XENOPHOBIA"));
  const auto rounds = xenophobia_rounds();
  for (std::size_t i = 0; i < rounds.size(); ++i) {
    auto [outcome, next] = adjudicate_round(s, rounds[i].first);
    EXPECT_EQ(outcome.kind, rounds[i].second) << "attempt " << i + 1;
    if (i == 1) {
      EXPECT_TRUE(next.is_excluded(W("XANTHOPHYLL")));
    }
    if (i == 3) {
      EXPECT_EQ(next.revealed_prefix(), "XE");
    }
    s = next;
  }
  EXPECT_EQ(is_terminal(s), Winner::Guessers);
  EXPECT_EQ(s.metrics(), (Metrics{1, 2, 4, 7}));
  EXPECT_TRUE(s.metrics().consistent());
}

TEST(Adjudicate, BlockTakesPrecedenceOverConnection) {
  const auto s = GameState::start({}, W("XENOPHOBIA"));
  auto [outcome, next] = adjudicate_round(s, sub("XANTHOPHYLL", "XANTHOPHYLL", "XANTHOPHYLL"));
  EXPECT_EQ(outcome.kind, OutcomeKind::SetterBlocked);
  EXPECT_EQ(next.revealed_len(), 1u);
  EXPECT_EQ(outcome.blocking_word, W("XANTHOPHYLL"));
}

TEST(Adjudicate, LowestConnectingSeatIsCredited) {
  GameConfig c;
  c.num_guessers = 3;
  const auto s = GameState::start(c, W("XENOPHOBIA"));
  RoundSubmission r;
  r.giver = 1;
  r.intended = W("XYST");
  r.guesses = {{3, W("XYST")}, {2, W("XYST")}};
  auto [outcome, next] = adjudicate_round(s, r);
  EXPECT_EQ(outcome.kind, OutcomeKind::Connection);
  EXPECT_EQ(outcome.connecting_seat, 2);
}

TEST(Adjudicate, PassIsGuesserWrong) {
  const auto s = GameState::start({}, W("XENOPHOBIA"));
  RoundSubmission r;
  r.giver = 2;
  auto [outcome, next] = adjudicate_round(s, r);
  EXPECT_EQ(outcome.kind, OutcomeKind::GuesserWrong);
  EXPECT_EQ(next.metrics(), (Metrics{0, 1, 0, 1}));
}

TEST(Adjudicate, WrongIntendedWordIsRetiredButSecretIsNot) {
  auto s = GameState::start({}, W("XENOPHOBIA"));
  s = play(s, sub("XYLOGRAPH", std::nullopt, "XYST"), OutcomeKind::GuesserWrong);
  EXPECT_TRUE(s.is_excluded(W("XYLOGRAPH")));
  EXPECT_FALSE(s.is_excluded(W("XYST")));
  s = play(s, sub("XENOPHOBIA", std::nullopt, std::nullopt), OutcomeKind::GuesserWrong);
  EXPECT_FALSE(s.is_excluded(W("XENOPHOBIA")));
}

TEST(Adjudicate, ExcludeWrongGuessesFlag) {
  GameConfig c;
  c.exclude_wrong_guesses = true;
  auto s = GameState::start(c, W("XENOPHOBIA"));
  s = play(s, sub("XYLOGRAPH", std::nullopt, "XYST"), OutcomeKind::GuesserWrong);
  EXPECT_TRUE(s.is_excluded(W("XYST")));
}

TEST(Adjudicate, ProtocolViolations) {
  const auto s = GameState::start({}, W("XENOPHOBIA"));
  EXPECT_THROW(adjudicate_round(s, sub("CAT", std::nullopt, std::nullopt)), ProtocolViolation);
  EXPECT_THROW(adjudicate_round(s, sub("XYST", "CAT", std::nullopt)), ProtocolViolation);
  EXPECT_THROW(adjudicate_round(s, sub("XYST", "XENOPHOBIA", std::nullopt)), ProtocolViolation);
  EXPECT_THROW(adjudicate_round(s, sub("XYST", std::nullopt, "CAT")), ProtocolViolation);
  EXPECT_THROW(adjudicate_round(s, sub("XYST", std::nullopt, "XYST", 0)), ProtocolViolation);
  EXPECT_THROW(adjudicate_round(s, sub("XYST", std::nullopt, "XYST", 1, 1)), ProtocolViolation);
  auto dup = sub("XYST", std::nullopt, "XYST");
  dup.guesses.push_back({2, std::nullopt});
  EXPECT_THROW(adjudicate_round(s, dup), ProtocolViolation);

  auto blocked = play(s, sub("XYST", "XYST", std::nullopt), OutcomeKind::SetterBlocked);
  try {
    adjudicate_round(blocked, sub("XYST", std::nullopt, std::nullopt, 2, 1));
    FAIL();
  } catch (const ProtocolViolation& e) {
    EXPECT_EQ(e.seat(), 2);
  }
}

TEST(Adjudicate, FinishedGameRejectsRounds) {
  auto s = GameState::start({}, W("XENOPHOBIA"));
  s = play(s, sub("XENOPHOBIA", std::nullopt, "XENOPHOBIA"), OutcomeKind::FinalConnection);
  EXPECT_THROW(adjudicate_round(s, sub("XYST", std::nullopt, std::nullopt)), ProtocolViolation);
}

TEST(Adjudicate, FullRevealLeavesOnlyTheSecret) {
  auto s = GameState::start({}, W("AB"));
  s = play(s, sub("ABACUS", std::nullopt, "ABACUS"), OutcomeKind::Connection);
  ASSERT_TRUE(s.fully_revealed());
  EXPECT_THROW(adjudicate_round(s, sub("ABBEY", std::nullopt, std::nullopt)), ProtocolViolation);
  EXPECT_EQ(legal_intended_words(s, std::vector<Word>{W("AB"), W("ABBEY")}), std::vector<Word>{W("AB")});
  EXPECT_TRUE(public_view(s).complete);
  s = play(s, sub("AB", std::nullopt, "AB"), OutcomeKind::FinalConnection);
  EXPECT_EQ(s.metrics(), (Metrics{1, 0, 0, 1}));
}

TEST(IsTerminal, BudgetBoundary) {
  GameConfig c;
  c.max_iterations = 1;
  auto s = GameState::start(c, W("XENOPHOBIA"));
  s = play(s, sub("XYST", "XYST", std::nullopt), OutcomeKind::SetterBlocked);
  EXPECT_EQ(is_terminal(s), Winner::Setter);
  EXPECT_EQ(s.phase(), Phase::SetterWon);
  EXPECT_EQ(s.metrics().iterations, 1);
}

TEST(PublicView, HidesSecretAndListsRelevantExclusions) {
  auto s = GameState::start({}, W("XENOPHOBIA"));
  s = play(s, sub("XANTHOPHYLL", "XANTHOPHYLL", std::nullopt), OutcomeKind::SetterBlocked);
  s = play(s, sub("XENOGLOSSY", "XENOGLOSSY", std::nullopt), OutcomeKind::SetterBlocked);
  s = play(s, sub("XIPHOPHYLLOUS", "XIPHOID", "XIPHOPHYLLOUS"), OutcomeKind::Connection);
  const PublicView v = public_view(s);
  EXPECT_EQ(v.prefix, "XE");
  EXPECT_EQ(v.round_index, 3);
  EXPECT_EQ(v.relevant_excluded(), std::vector<Word>{W("XENOGLOSSY")});
  EXPECT_TRUE(v.is_excluded(W("XANTHOPHYLL")));
}

TEST(Strings, RoundTrip) {
  for (auto k : {OutcomeKind::SetterBlocked, OutcomeKind::GuesserWrong, OutcomeKind::Connection,
                 OutcomeKind::FinalConnection}) {
    EXPECT_EQ(outcome_from_string(to_string(k)), k);
  }
  for (auto w : {Winner::Setter, Winner::Guessers}) EXPECT_EQ(winner_from_string(to_string(w)), w);
  EXPECT_FALSE(outcome_from_string("Draw").has_value());
}
