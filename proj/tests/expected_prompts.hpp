#pragma once

#include <string>

// Reference prompt texts with sample values filled in by hand, kept separate
// from data/prompts so rendering is checked against an independent copy.
namespace expected {

inline const std::string kNewWord =
    "You are playing a wordplay game, where you are the setter player playing against 2 guesser "
    "players. You have to pick a legitimate English word of some suitable length. The guesser "
    "players have to guess the word gradually. For now, pick a totally random word and just output "
    "that word without any leading phrases. Do not output anything else, only one single word.";

inline const std::string kSetterRules =
    "Here are the rules of the game. Initially, you reveal the first letter to all guesser players. "
    "In every round, one guesser player will come up with a suitable clue phrase whose answer "
    "begins with your revealed letter(s). If you can guess the answer to their clue and it is not "
    "the same as the word you had picked, then you will output in that round the answer to their "
    "clue. If your guess is the same as the answer to the clue a guesser player came up with, then "
    "there is a new round. If your guess is different than the answer to the clue a guesser player "
    "came up with, a different guesser player will try to guess the clue word. If this different "
    "guesser player guesses the answer correctly, then you will have to reveal the next character "
    "of the word. In future rounds, the other guesser players have to come up with clues whose "
    "answers begin with the same letters as the characters you have revealed so far. Do you "
    "understand? Output Yes or No, just that.";

inline const std::string kGuesserRules =
    "You are playing a game with other guesser players against a setter player who is slowly "
    "revealing the initial letters of the word. The setter player will initially tell you just the "
    "first letter of the word. Each round, you can find a random word that starts with the initial "
    "letters revealed so far. Then, you need to come up with a meaningful clue or a description of "
    "this word and reveal it to other guesser players. You are not allowed to have a clue that is "
    "very similar to the word itself. If the word you found is not the same as the word that the "
    "setter came up with, the setter will try to guess your word and block it by saying your word. "
    "If some other guesser player can correctly guess your word, then the setter player will reveal "
    "one more letter. If the word both the guesser players guessed is the same as the word the "
    "setter player came up with, you all win. In every round, you can either choose to make a clue "
    "or try to guess from some other guesser player's clue. Note that in every round, your word "
    "must start with the initial letters revealed so far. Do you understand? Output Yes or No, just "
    "that";

// clue "Woodblock printing technique", prefix X, nothing excluded
inline const std::string kGuessFromClue =
    "You have been given the clue Woodblock printing technique. Now, guess a single word that could "
    "be a possible answer to this clue, starting with the letters X. Make sure your word is NOT one "
    "of these words:  and is different. Just output this word, do not output anything else.";

// prefix XE, excluded XENON and XERIC
inline const std::string kMakeClue =
    "The partial word you know so far is XE. Come up with a word that starts with XE. Make sure "
    "your word is NOT one of these words: XENON, XERIC and is different. Just output this word, do "
    "not output anything else.";

inline const std::string kMakeClueEmpty =
    "The partial word you know so far is X. Come up with a word that starts with X. Make sure your "
    "word is NOT one of these words:  and is different. Just output this word, do not output "
    "anything else.";

inline const std::string kCorrectionPrefixMake =
    "Your earlier word does not start with XE. Try again. Come up with a word that starts with XE. "
    "Make sure your word is NOT one of these words: XENON, XERIC and is different. Just output this "
    "word, do not output anything else.";

inline const std::string kCorrectionPrefixGuess =
    "Your earlier word does not start with XE. Try again. You have been given the clue Fear of "
    "foreigners. Now, guess a single word that could be a possible answer to this clue, starting "
    "with the letters XE. Make sure your word is NOT one of these words: XENON, XERIC and is "
    "different. Just output this word, do not output anything else.";

inline const std::string kCorrectionExcludedMake =
    "Your earlier word cannot be one of these words: XENON, XERIC. Try again. Come up with a word "
    "that starts with XE. Make sure your word is NOT one of these words: XENON, XERIC and is "
    "different. Just output this word, do not output anything else.";

inline const std::string kCorrectionExcludedGuess =
    "Your earlier word cannot be one of these words: XENON, XERIC. Try again. You have been given "
    "the clue Fear of foreigners. Now, guess a single word that could be a possible answer to this "
    "clue, starting with the letters XE. Make sure your word is NOT one of these words: XENON, "
    "XERIC and is different. Just output this word, do not output anything else.";

}  // namespace expected
