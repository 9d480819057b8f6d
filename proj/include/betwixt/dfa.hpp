#pragma once

#include <string>
#include <vector>

#include "betwixt/alphabet.hpp"
#include "betwixt/regex.hpp"

#include "json.hpp"

namespace betwixt {

// Complete deterministic automaton: delta is total (a dead state is added
// during construction when needed and survives minimization when live states
// cannot absorb it).
struct Dfa {
  Alphabet alphabet;
  std::uint32_t num_states = 0;
  std::uint32_t initial = 0;
  std::vector<bool> accepting;         // per state
  std::vector<std::uint32_t> delta;    // num_states x |alphabet|, row-major

  std::uint32_t step(std::uint32_t q, std::uint32_t a) const {
    return delta[q * alphabet.size() + a];
  }
  std::uint32_t run(const Word& w) const;
};

// Minimal complete DFA for the regex's language, in canonical (BFS) state
// order so equal languages yield identical structures.
Dfa compile_min_dfa(const RegexPtr& r, const Alphabet& alphabet);

// Membership. Throws std::invalid_argument if the word's letter indices do
// not fit the automaton's alphabet.
bool accepts(const Dfa& d, const Word& w);

bool dfa_isomorphic(const Dfa& a, const Dfa& b);

nlohmann::ordered_json dfa_to_json(const Dfa& d);
Dfa dfa_from_json(const nlohmann::json& j);

}  // namespace betwixt
