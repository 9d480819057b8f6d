#pragma once

#include <optional>
#include <string>
#include <vector>

#include "betwixt/alphabet.hpp"
#include "betwixt/fo2.hpp"

#include "json.hpp"

namespace betwixt {

// Corridor tiling instance with corridor width 2^n.
struct TilingInstance {
  std::vector<std::string> tiles;
  std::uint32_t s = 0, f = 0;  // indices into tiles
  std::vector<std::pair<std::uint32_t, std::uint32_t>> H, V;
  std::uint32_t n = 1;
};

TilingInstance tiling_from_json(const nlohmann::json& j);
nlohmann::ordered_json tiling_to_json(const TilingInstance& inst);

struct TilingSolution {
  std::uint32_t rows = 0;
  std::vector<std::vector<std::uint32_t>> grid;  // grid[row][col] -> tile index
};

TilingSolution solution_from_json(const nlohmann::json& j, const TilingInstance& inst);

// Sentence over {marker<tile,colour>} ∪ {0,1} that is satisfiable iff the
// instance has a solution; markers carry the tile and the row colour, each
// marker is followed by n counter bits (column index, least significant
// first), rows are red/green/blue cyclically.
struct TilingEncoding {
  Alphabet alphabet;   // markers first, then "0", "1"
  Fo2Ptr sentence{};
  // Conjuncts by role, for inspection and per-family tests.
  Fo2Ptr start{}, structure{}, increment{}, colours{}, final_cell{}, horizontal{}, vertical{};

  std::uint32_t n = 1;
  std::uint32_t num_tiles = 0;
  std::uint32_t marker_letter(std::uint32_t tile, std::uint32_t colour) const {
    return tile * 3 + colour;
  }
  std::uint32_t zero_letter() const { return num_tiles * 3; }
  std::uint32_t one_letter() const { return num_tiles * 3 + 1; }
};

TilingEncoding encode_tiling(const TilingInstance& inst);

// Serializes a candidate grid row-major as marker+bits cells; length is
// rows * (n+1) * 2^n. Validates shape, not the tiling constraints.
Word tiling_witness(const TilingInstance& inst, const TilingSolution& sol);

// FO²[<,Th] -> FO²[<,bet]: threshold atoms (k >= 2) are compiled away using
// global modulo-2^r counters and colour predicates realized as a product
// alphabet. The result is satisfiable iff the input is; witnesses project
// letter-wise onto witnesses of the input.
struct ThresholdReduction {
  struct Counter {
    std::uint32_t base_letter = 0;
    std::uint32_t bits = 0;
  };

  Alphabet alphabet;                        // product alphabet
  Fo2Ptr sentence{};                        // axioms ∧ translated formula
  std::vector<std::uint32_t> projection{};  // product letter -> base letter
  std::vector<Counter> counters{};
  std::vector<std::vector<std::uint32_t>> values{};   // product letter -> per-counter value
  std::vector<std::vector<std::uint32_t>> colours{};  // product letter -> per-counter colour

  Word project(const Word& w) const;
  // Attaches the (uniquely determined) counter values and colours to a base
  // word; the result satisfies the counter axioms by construction.
  Word lift(const Word& base_word) const;
};

ThresholdReduction reduce_th_to_bet(const Fo2Ptr& sentence, const Alphabet& base);

// First word (length order, then lexicographic by letter index) of length
// <= max_len satisfying the sentence. Workers > 1 shards each length's index
// space; the returned witness is the same regardless.
std::optional<Word> bounded_sat(const Fo2Ptr& sentence, const Alphabet& alphabet,
                                std::size_t max_len, unsigned workers = 1);

}  // namespace betwixt
