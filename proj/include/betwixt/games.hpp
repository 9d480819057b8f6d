#pragma once

#include <optional>
#include <vector>

#include "betwixt/alphabet.hpp"

namespace betwixt {

// Parameters for the k-round pebble game. theta(a) = 1 for every letter gives
// the plain jumped-letter-set game (FO²[<,bet]); larger thresholds give the
// θ-bounded game (FO²[<,Th]). Positions and rounds are validated against the
// caps, which exist to keep accidental huge inputs from running away; callers
// may raise them.
struct GameConfig {
  std::uint32_t rounds = 1;
  std::vector<std::uint32_t> theta;  // per letter; empty means all-ones
  std::uint32_t max_len = 64;
  std::uint32_t max_rounds = 8;

  std::uint32_t theta_of(std::uint32_t letter) const {
    return theta.empty() ? 1u : theta.at(letter);
  }
};

struct GamePosition {
  Word w1;
  std::uint32_t i1 = 1;
  Word w2;
  std::uint32_t i2 = 1;
  std::uint32_t remaining = 0;
};

// True iff Player 2 wins the marked game: letters at the pebbles agree and,
// for `remaining` rounds, every move of Player 1 (either word, any other
// position) has a response in the other word with the same direction, the
// same destination letter, and per-letter jumped counts equal up to theta.
bool solve_marked_game(const GamePosition& p, const GameConfig& cfg, const Alphabet& alphabet);

// Unmarked game: Player 1 opens by placing the pebble anywhere in either
// word; Player 2 must answer on an equal letter, then k-1 marked rounds are
// played. k = 0 returns true by convention.
bool equiv_k(const Word& w1, const Word& w2, const GameConfig& cfg, const Alphabet& alphabet);

// Least k <= max_k with !equiv_k, or nullopt.
std::optional<std::uint32_t> distinguishing_depth(const Word& w1, const Word& w2,
                                                  std::uint32_t max_k,
                                                  const GameConfig& cfg,
                                                  const Alphabet& alphabet);

}  // namespace betwixt
