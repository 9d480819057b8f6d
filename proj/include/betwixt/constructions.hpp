#pragma once

#include <optional>
#include <string>
#include <vector>

#include "betwixt/alphabet.hpp"
#include "betwixt/regex.hpp"

#include "json.hpp"

namespace betwixt {

// Parameters for the X_{S,T} word family over {a1..ar, b1..bs, c1..c(2r+2s)}.
struct XstParams {
  std::uint32_t r = 1, s = 1, S = 1, T = 1;
};

struct XstWords {
  Alphabet alphabet;
  Word v;       // each a_i and b_j flanked by two fresh c letters
  Word bold_a;  // a1..ar
  Word bold_b;  // b1..bs
  Word X;       // (v^S bold_a v^S bold_b v^S)^T
};

XstWords xst_words(const XstParams& p);

// Threshold-T signature of the block factorization of a word over a
// two-letter alphabet. Blocks pair maximal single-letter runs right to left;
// counts at or above T are capped (stored as T with the saturation flag).
struct BlockSignature {
  struct Capped {
    std::uint32_t value = 0;
    bool saturated = false;
    bool operator==(const Capped&) const = default;
  };
  struct Block {
    Capped k;  // run of the non-final letter
    Capped l;  // run of the final letter
    bool operator==(const Block&) const = default;
  };

  std::optional<std::uint32_t> last_letter;  // empty word has no blocks
  Capped block_count;
  std::vector<Block> blocks;  // first min(S,T) blocks, numbered right to left

  bool operator==(const BlockSignature&) const = default;
};

// Requires a word over a 2-letter alphabet (letter indices 0/1) and T >= 1.
BlockSignature block_signature(const Word& w, std::uint32_t threshold);

// Shortest word with the given signature (saturated counts use exactly T).
Word signature_representative(const BlockSignature& sig, std::uint32_t threshold);

nlohmann::ordered_json signature_to_json(const BlockSignature& sig, const Alphabet& alphabet);

// Prefix-encoded bounded-depth circuits: C_m all depth-m circuits, T_m those
// evaluating to true. Gate letters g1..gm alternate OR (odd index) / AND
// (even index); inputs are 0/1.
struct CircuitLangs {
  Alphabet alphabet;  // 0, 1, g1..gm
  RegexPtr C;
  RegexPtr T;
};

CircuitLangs circuit_langs(std::uint32_t m);

// Evaluates a prefix-encoded circuit word; throws std::invalid_argument when
// the word is not a valid encoding for any depth.
bool circuit_eval(const Word& w, const Alphabet& alphabet);

}  // namespace betwixt
