#include "betwixt/satgen.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

namespace betwixt {

// ---------------------------------------------------------------------------
// Tiling instances

TilingInstance tiling_from_json(const nlohmann::json& j) {
  TilingInstance inst;
  inst.tiles = j.at("tiles").get<std::vector<std::string>>();
  if (inst.tiles.empty()) throw std::invalid_argument("tiling instance needs tiles");
  std::map<std::string, std::uint32_t> idx;
  for (std::uint32_t i = 0; i < inst.tiles.size(); ++i)
    if (!idx.emplace(inst.tiles[i], i).second)
      throw std::invalid_argument("duplicate tile name: " + inst.tiles[i]);
  auto tile_of = [&](const std::string& name) {
    auto it = idx.find(name);
    if (it == idx.end()) throw std::invalid_argument("unknown tile name: " + name);
    return it->second;
  };
  inst.s = tile_of(j.at("s").get<std::string>());
  inst.f = tile_of(j.at("f").get<std::string>());
  for (const auto& pair : j.at("H")) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("H entries must be [tile, tile] pairs");
    inst.H.emplace_back(tile_of(pair[0].get<std::string>()), tile_of(pair[1].get<std::string>()));
  }
  for (const auto& pair : j.at("V")) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("V entries must be [tile, tile] pairs");
    inst.V.emplace_back(tile_of(pair[0].get<std::string>()), tile_of(pair[1].get<std::string>()));
  }
  inst.n = j.at("n").get<std::uint32_t>();
  if (inst.n < 1) throw std::invalid_argument("corridor exponent n must be at least 1");
  return inst;
}

nlohmann::ordered_json tiling_to_json(const TilingInstance& inst) {
  nlohmann::ordered_json j;
  j["tiles"] = inst.tiles;
  j["s"] = inst.tiles[inst.s];
  j["f"] = inst.tiles[inst.f];
  auto pairs = [&](const std::vector<std::pair<std::uint32_t, std::uint32_t>>& ps) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (auto [a, b] : ps) out.push_back({inst.tiles[a], inst.tiles[b]});
    return out;
  };
  j["H"] = pairs(inst.H);
  j["V"] = pairs(inst.V);
  j["n"] = inst.n;
  return j;
}

TilingSolution solution_from_json(const nlohmann::json& j, const TilingInstance& inst) {
  std::map<std::string, std::uint32_t> idx;
  for (std::uint32_t i = 0; i < inst.tiles.size(); ++i) idx.emplace(inst.tiles[i], i);
  TilingSolution sol;
  sol.rows = j.at("m").get<std::uint32_t>();
  for (const auto& row : j.at("grid")) {
    std::vector<std::uint32_t> r;
    for (const auto& cell : row) {
      auto it = idx.find(cell.get<std::string>());
      if (it == idx.end())
        throw std::invalid_argument("unknown tile name in grid: " + cell.get<std::string>());
      r.push_back(it->second);
    }
    sol.grid.push_back(std::move(r));
  }
  if (sol.grid.size() != sol.rows) throw std::invalid_argument("grid row count != m");
  return sol;
}

// ---------------------------------------------------------------------------
// Tiling encoder

namespace {

const char* kColourNames[3] = {"red", "green", "blue"};

Fo2Ptr class_atom(const std::vector<std::uint32_t>& cls, Var v) {
  std::vector<Fo2Ptr> alts;
  for (auto l : cls) alts.push_back(Fo2::letter_at(l, v));
  return Fo2::or_(std::move(alts));
}

Fo2Ptr class_between(const std::vector<std::uint32_t>& cls, Var lo, Var hi) {
  std::vector<Fo2Ptr> alts;
  for (auto l : cls) alts.push_back(Fo2::between(l, 1, lo, hi));
  return Fo2::or_(std::move(alts));
}

Fo2Ptr first_position(Var v) { return Fo2::not_(Fo2::exists(other(v), Fo2::less(other(v), v))); }

}  // namespace

TilingEncoding encode_tiling(const TilingInstance& inst) {
  if (inst.n < 1) throw std::invalid_argument("corridor exponent n must be at least 1");
  const std::uint32_t nt = static_cast<std::uint32_t>(inst.tiles.size());
  const std::uint32_t n = inst.n;

  std::vector<std::string> names;
  for (std::uint32_t t = 0; t < nt; ++t)
    for (std::uint32_t c = 0; c < 3; ++c)
      names.push_back(inst.tiles[t] + "@" + kColourNames[c]);
  names.push_back("0");
  names.push_back("1");
  Alphabet alphabet(std::move(names));

  TilingEncoding enc{alphabet};
  enc.n = n;
  enc.num_tiles = nt;

  std::vector<std::uint32_t> marks;
  for (std::uint32_t t = 0; t < nt; ++t)
    for (std::uint32_t c = 0; c < 3; ++c) marks.push_back(enc.marker_letter(t, c));
  std::vector<std::uint32_t> bits{enc.zero_letter(), enc.one_letter()};
  std::vector<std::vector<std::uint32_t>> tile_cls(nt), colour_cls(3);
  for (std::uint32_t t = 0; t < nt; ++t)
    for (std::uint32_t c = 0; c < 3; ++c) {
      tile_cls[t].push_back(enc.marker_letter(t, c));
      colour_cls[c].push_back(enc.marker_letter(t, c));
    }

  SerialCounter counter(marks, enc.zero_letter(), enc.one_letter(), n);

  auto mark_at = [&](Var v) { return class_atom(marks, v); };
  auto same_colour = [&](Var a, Var b) {
    std::vector<Fo2Ptr> alts;
    for (std::uint32_t c = 0; c < 3; ++c)
      alts.push_back(Fo2::and_({class_atom(colour_cls[c], a), class_atom(colour_cls[c], b)}));
    return Fo2::or_(std::move(alts));
  };
  auto next_colour = [&](Var a, Var b) {
    std::vector<Fo2Ptr> alts;
    for (std::uint32_t c = 0; c < 3; ++c)
      alts.push_back(
          Fo2::and_({class_atom(colour_cls[c], a), class_atom(colour_cls[(c + 1) % 3], b)}));
    return Fo2::or_(std::move(alts));
  };
  auto consecutive_marks = [&](Var a, Var b) {
    return Fo2::and_({mark_at(a), mark_at(b), Fo2::less(a, b),
                      Fo2::not_(class_between(marks, a, b))});
  };

  // Start: the word begins with the s tile, coloured red, at column 0.
  enc.start = Fo2::exists(
      Var::x,
      Fo2::and_({first_position(Var::x),
                 Fo2::letter_at(enc.marker_letter(inst.s, 0), Var::x),
                 counter.all_zeros(Var::x)}));

  // Structure: each marker is followed by exactly n bits, then a marker or
  // the end of the word.
  {
    std::function<Fo2Ptr(Var, std::uint32_t)> chain = [&](Var at, std::uint32_t i) -> Fo2Ptr {
      Var u = other(at);
      if (i == n)
        return Fo2::forall(u, Fo2::implies(Fo2::succ(at, u), mark_at(u)));
      return Fo2::exists(
          u, Fo2::and_({Fo2::succ(at, u), class_atom(bits, u), chain(u, i + 1)}));
    };
    enc.structure =
        Fo2::forall(Var::x, Fo2::implies(mark_at(Var::x), chain(Var::x, 0)));
  }

  // Counter increments modulo 2^n between consecutive markers.
  enc.increment = Fo2::forall(
      Var::x, Fo2::forall(Var::y, Fo2::implies(consecutive_marks(Var::x, Var::y),
                                               counter.inc1(Var::x, Var::y))));

  // Colour stays within a row and cycles exactly at the wrap.
  enc.colours = Fo2::forall(
      Var::x,
      Fo2::forall(
          Var::y,
          Fo2::implies(
              consecutive_marks(Var::x, Var::y),
              Fo2::and_({Fo2::implies(counter.all_ones(Var::x), next_colour(Var::x, Var::y)),
                         Fo2::implies(Fo2::not_(counter.all_ones(Var::x)),
                                      same_colour(Var::x, Var::y))}))));

  // The last marker carries the f tile in the last column.
  enc.final_cell = Fo2::forall(
      Var::x,
      Fo2::implies(
          Fo2::and_({mark_at(Var::x),
                     Fo2::not_(Fo2::exists(Var::y, Fo2::and_({Fo2::less(Var::x, Var::y),
                                                              mark_at(Var::y)})))}),
          Fo2::and_({class_atom(tile_cls[inst.f], Var::x), counter.all_ones(Var::x)})));

  // Horizontal compatibility: consecutive markers of the same colour are
  // adjacent cells of one row.
  {
    std::vector<Fo2Ptr> alts;
    for (auto [t1, t2] : inst.H)
      alts.push_back(Fo2::and_({class_atom(tile_cls[t1], Var::x),
                                class_atom(tile_cls[t2], Var::y)}));
    enc.horizontal = Fo2::forall(
        Var::x,
        Fo2::forall(Var::y, Fo2::implies(Fo2::and_({consecutive_marks(Var::x, Var::y),
                                                    same_colour(Var::x, Var::y)}),
                                         Fo2::or_(std::move(alts)))));
  }

  // Vertical compatibility: same column (counter equality), next colour, and
  // one colour missing strictly between pick out vertically adjacent cells.
  {
    std::vector<Fo2Ptr> missing;
    for (std::uint32_t c = 0; c < 3; ++c)
      missing.push_back(Fo2::not_(class_between(colour_cls[c], Var::x, Var::y)));
    std::vector<Fo2Ptr> alts;
    for (auto [t1, t2] : inst.V)
      alts.push_back(Fo2::and_({class_atom(tile_cls[t1], Var::x),
                                class_atom(tile_cls[t2], Var::y)}));
    enc.vertical = Fo2::forall(
        Var::x,
        Fo2::forall(
            Var::y,
            Fo2::implies(Fo2::and_({Fo2::less(Var::x, Var::y), counter.eq(Var::x, Var::y),
                                    next_colour(Var::x, Var::y), Fo2::or_(std::move(missing))}),
                         Fo2::or_(std::move(alts)))));
  }

  enc.sentence = Fo2::and_({enc.start, enc.structure, enc.increment, enc.colours,
                            enc.final_cell, enc.horizontal, enc.vertical});
  return enc;
}

Word tiling_witness(const TilingInstance& inst, const TilingSolution& sol) {
  TilingEncoding enc = encode_tiling(inst);
  const std::uint32_t width = 1u << inst.n;
  if (sol.rows == 0) throw std::invalid_argument("solution needs at least one row");
  if (sol.grid.size() != sol.rows) throw std::invalid_argument("grid row count != m");
  Word w;
  for (std::uint32_t row = 0; row < sol.rows; ++row) {
    if (sol.grid[row].size() != width)
      throw std::invalid_argument("grid row width != 2^n");
    std::uint32_t colour = row % 3;
    for (std::uint32_t col = 0; col < width; ++col) {
      std::uint32_t tile = sol.grid[row][col];
      if (tile >= inst.tiles.size()) throw std::invalid_argument("tile index out of range");
      w.letters.push_back(enc.marker_letter(tile, colour));
      for (std::uint32_t i = 0; i < inst.n; ++i)
        w.letters.push_back(((col >> i) & 1) ? enc.one_letter() : enc.zero_letter());
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// Threshold reduction

namespace {

struct CounterSpec {
  std::uint32_t base_letter;
  std::uint32_t bits;  // r
};

void collect_counters(const Fo2Ptr& f, std::vector<CounterSpec>& out) {
  if (f->kind == Fo2::Kind::Between && f->threshold >= 2) {
    std::uint32_t r = 1;
    while ((1ULL << r) < f->threshold + 1) ++r;
    CounterSpec spec{f->letter, r};
    bool found = false;
    for (const auto& c : out)
      if (c.base_letter == spec.base_letter && c.bits == spec.bits) found = true;
    if (!found) out.push_back(spec);
  }
  for (const auto& k : f->kids) collect_counters(k, out);
}

// Product-alphabet layout: one state per counter = (value, colour).
struct ProductAlphabet {
  std::vector<CounterSpec> counters;
  std::vector<std::uint32_t> base;                 // product letter -> base letter
  std::vector<std::vector<std::uint32_t>> value;   // product letter -> per-counter value
  std::vector<std::vector<std::uint32_t>> colour;  // product letter -> per-counter colour

  std::vector<std::uint32_t> letters_where(
      const std::function<bool(std::uint32_t)>& pred) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t l = 0; l < base.size(); ++l)
      if (pred(l)) out.push_back(l);
    return out;
  }
};

Fo2Ptr sym_eq(const ProductAlphabet& pa, std::size_t g, Var a, Var b) {
  const std::uint32_t r = pa.counters[g].bits;
  std::vector<Fo2Ptr> cs;
  for (std::uint32_t i = 0; i < r; ++i) {
    auto bit_set = pa.letters_where([&](std::uint32_t l) { return (pa.value[l][g] >> i) & 1; });
    cs.push_back(Fo2::iff(class_atom(bit_set, a), class_atom(bit_set, b)));
  }
  return Fo2::and_(std::move(cs));
}

// value(b) = value(a) + c  (mod 2^r), ripple with a constant addend.
Fo2Ptr sym_inc_const(const ProductAlphabet& pa, std::size_t g, std::uint64_t c, Var a, Var b) {
  const std::uint32_t r = pa.counters[g].bits;
  c &= (1ULL << r) - 1;
  std::vector<Fo2Ptr> cs;
  Fo2Ptr carry = Fo2::fls();
  for (std::uint32_t i = 0; i < r; ++i) {
    auto bit_set = pa.letters_where([&](std::uint32_t l) { return (pa.value[l][g] >> i) & 1; });
    bool ci = (c >> i) & 1;
    Fo2Ptr ai = class_atom(bit_set, a);
    Fo2Ptr x = Fo2::or_({Fo2::and_({ai, Fo2::not_(carry)}), Fo2::and_({Fo2::not_(ai), carry})});
    Fo2Ptr sum = ci ? Fo2::not_(x) : x;
    cs.push_back(Fo2::iff(class_atom(bit_set, b), std::move(sum)));
    carry = ci ? Fo2::or_({ai, carry}) : Fo2::and_({ai, carry});
  }
  return Fo2::and_(std::move(cs));
}

// value(a) < value(b) as plain binary comparison.
Fo2Ptr sym_lt(const ProductAlphabet& pa, std::size_t g, Var a, Var b) {
  const std::uint32_t r = pa.counters[g].bits;
  std::vector<Fo2Ptr> alts;
  for (std::uint32_t i = 0; i < r; ++i) {
    auto bit_set = pa.letters_where([&](std::uint32_t l) { return (pa.value[l][g] >> i) & 1; });
    std::vector<Fo2Ptr> cs{Fo2::not_(class_atom(bit_set, a)), class_atom(bit_set, b)};
    for (std::uint32_t k = i + 1; k < r; ++k) {
      auto hi = pa.letters_where([&](std::uint32_t l) { return (pa.value[l][g] >> k) & 1; });
      cs.push_back(Fo2::iff(class_atom(hi, a), class_atom(hi, b)));
    }
    alts.push_back(Fo2::and_(std::move(cs)));
  }
  return Fo2::or_(std::move(alts));
}

Fo2Ptr sym_colour(const ProductAlphabet& pa, std::size_t g, std::uint32_t c, Var v) {
  return class_atom(pa.letters_where([&](std::uint32_t l) { return pa.colour[l][g] == c; }), v);
}

// No colour change of counter g anywhere in [u..v]: both endpoints share a
// colour and no other colour occurs strictly between. Exactly "no wrap in
// [u..v-1]" on counter-correct words.
Fo2Ptr sym_colour_constant(const ProductAlphabet& pa, std::size_t g, Var u, Var v) {
  std::vector<Fo2Ptr> alts;
  for (std::uint32_t c = 0; c < 3; ++c) {
    std::vector<Fo2Ptr> cs{sym_colour(pa, g, c, u), sym_colour(pa, g, c, v)};
    for (std::uint32_t c2 = 0; c2 < 3; ++c2) {
      if (c2 == c) continue;
      auto cls = pa.letters_where([&](std::uint32_t l) { return pa.colour[l][g] == c2; });
      cs.push_back(Fo2::not_(class_between(cls, u, v)));
    }
    alts.push_back(Fo2::and_(std::move(cs)));
  }
  return Fo2::or_(std::move(alts));
}

// col(v) = col(u) + 1 (mod 3): the wrap count is 1 mod 3.
Fo2Ptr sym_colour_step(const ProductAlphabet& pa, std::size_t g, Var u, Var v) {
  std::vector<Fo2Ptr> alts;
  for (std::uint32_t c = 0; c < 3; ++c)
    alts.push_back(
        Fo2::and_({sym_colour(pa, g, c, u), sym_colour(pa, g, (c + 1) % 3, v)}));
  return Fo2::or_(std::move(alts));
}

// Some colour of counter g does not occur strictly between u and v; with a
// wrap count of 4 or more the strict interior carries all three colours, so
// colour-step plus this pins the wrap count to exactly 1.
Fo2Ptr sym_colour_missing(const ProductAlphabet& pa, std::size_t g, Var u, Var v) {
  std::vector<Fo2Ptr> alts;
  for (std::uint32_t c = 0; c < 3; ++c) {
    auto cls = pa.letters_where([&](std::uint32_t l) { return pa.colour[l][g] == c; });
    alts.push_back(Fo2::not_(class_between(cls, u, v)));
  }
  return Fo2::or_(std::move(alts));
}

// (C(v) - C(u)) mod 2^r >= m.
Fo2Ptr sym_diff_ge(const ProductAlphabet& pa, std::size_t g, std::uint64_t m, Var u, Var v) {
  const std::uint32_t r = pa.counters[g].bits;
  if (m == 0) return Fo2::tru();
  if (m >= (1ULL << r)) return Fo2::fls();
  std::vector<Fo2Ptr> cs;
  for (std::uint64_t c = 0; c < m; ++c) cs.push_back(Fo2::not_(sym_inc_const(pa, g, c, u, v)));
  return Fo2::and_(std::move(cs));
}

Fo2Ptr translate_atoms(const Fo2Ptr& f, const ProductAlphabet& pa) {
  switch (f->kind) {
    case Fo2::Kind::Letter: {
      auto cls = pa.letters_where([&](std::uint32_t l) { return pa.base[l] == f->letter; });
      return class_atom(cls, f->v1);
    }
    case Fo2::Kind::Between: {
      auto cls = pa.letters_where([&](std::uint32_t l) { return pa.base[l] == f->letter; });
      if (f->threshold == 1) return class_between(cls, f->v1, f->v2);
      // Locate the counter for (letter, r).
      std::uint32_t r = 1;
      while ((1ULL << r) < f->threshold + 1) ++r;
      std::size_t g = pa.counters.size();
      for (std::size_t i = 0; i < pa.counters.size(); ++i)
        if (pa.counters[i].base_letter == f->letter && pa.counters[i].bits == r) g = i;
      if (g == pa.counters.size())
        throw std::logic_error("threshold atom without a collected counter");
      Var u = f->v1, v = f->v2;
      // With q wraps across [u..v-1] and d = (C(v)-C(u)) mod 2^r, the count
      // of the letter there is q*2^r + d when C(v) >= C(u) and
      // (q-1)*2^r + d otherwise. Since the threshold k < 2^r, only q <= 1
      // with C(v) < C(u) (or q = 0) can fall below k, and those cases reduce
      // to d alone. q = 0 is colour constancy; q = 1 is a colour step with a
      // colour missing strictly between; anything else means q >= 2.
      Fo2Ptr q0 = sym_colour_constant(pa, g, u, v);
      Fo2Ptr q1 = Fo2::and_({sym_colour_step(pa, g, u, v), sym_colour_missing(pa, g, u, v)});
      Fo2Ptr v_lt_u = sym_lt(pa, g, v, u);  // C(v) < C(u)
      Fo2Ptr at_u = class_atom(cls, u);
      Fo2Ptr d_cond =
          Fo2::or_({Fo2::and_({at_u, sym_diff_ge(pa, g, f->threshold + 1, u, v)}),
                    Fo2::and_({Fo2::not_(at_u), sym_diff_ge(pa, g, f->threshold, u, v)})});
      Fo2Ptr many = Fo2::and_({Fo2::not_(q0), Fo2::not_(q1)});              // q >= 2
      Fo2Ptr one_no_borrow = Fo2::and_({q1, Fo2::not_(v_lt_u)});            // q = 1, full period
      Fo2Ptr small = Fo2::and_({Fo2::or_({q0, Fo2::and_({q1, v_lt_u})}), d_cond});
      return Fo2::and_({Fo2::less(u, v),
                        Fo2::or_({std::move(many), std::move(one_no_borrow), std::move(small)})});
    }
    case Fo2::Kind::Exists:
      return Fo2::exists(f->v1, translate_atoms(f->kids[0], pa));
    case Fo2::Kind::Forall:
      return Fo2::forall(f->v1, translate_atoms(f->kids[0], pa));
    case Fo2::Kind::Not:
      return Fo2::not_(translate_atoms(f->kids[0], pa));
    case Fo2::Kind::And:
    case Fo2::Kind::Or: {
      std::vector<Fo2Ptr> kids;
      for (const auto& k : f->kids) kids.push_back(translate_atoms(k, pa));
      return f->kind == Fo2::Kind::And ? Fo2::and_(std::move(kids)) : Fo2::or_(std::move(kids));
    }
    case Fo2::Kind::Implies:
      return Fo2::implies(translate_atoms(f->kids[0], pa), translate_atoms(f->kids[1], pa));
    case Fo2::Kind::Iff:
      return Fo2::iff(translate_atoms(f->kids[0], pa), translate_atoms(f->kids[1], pa));
    default:
      return f;  // True/False/Less/Leq/EqVar/Succ carry no letters
  }
}

}  // namespace

Word ThresholdReduction::project(const Word& w) const {
  Word out;
  for (auto l : w.letters) out.letters.push_back(projection.at(l));
  return out;
}

Word ThresholdReduction::lift(const Word& base_word) const {
  if (counters.empty()) return base_word;
  std::vector<std::uint32_t> value(counters.size(), 0), colour(counters.size(), 0);
  Word out;
  for (auto b : base_word.letters) {
    std::uint32_t letter = UINT32_MAX;
    for (std::uint32_t l = 0; l < projection.size(); ++l) {
      if (projection[l] != b) continue;
      if (values[l] == value && colours[l] == colour) {
        letter = l;
        break;
      }
    }
    if (letter == UINT32_MAX) throw std::logic_error("no product letter for counter state");
    out.letters.push_back(letter);
    for (std::size_t g = 0; g < counters.size(); ++g) {
      if (b != counters[g].base_letter) continue;
      std::uint32_t mod_mask = static_cast<std::uint32_t>((1ULL << counters[g].bits) - 1);
      if (value[g] == mod_mask) colour[g] = (colour[g] + 1) % 3;  // wrap
      value[g] = (value[g] + 1) & mod_mask;
    }
  }
  return out;
}

ThresholdReduction reduce_th_to_bet(const Fo2Ptr& sentence, const Alphabet& base) {
  if (!is_sentence(sentence))
    throw std::invalid_argument("reduce_th_to_bet requires a sentence");
  std::vector<CounterSpec> counters;
  collect_counters(sentence, counters);

  if (counters.empty()) {
    ThresholdReduction red{base};
    red.sentence = sentence;
    for (std::uint32_t l = 0; l < base.size(); ++l) red.projection.push_back(l);
    return red;
  }

  // Enumerate the product alphabet: base letter x per-counter (value, colour).
  ProductAlphabet pa;
  pa.counters = counters;
  std::vector<std::string> names;
  std::vector<std::uint64_t> radix;
  for (const auto& c : counters) radix.push_back((1ULL << c.bits) * 3);
  std::uint64_t states = 1;
  for (auto rx : radix) {
    states *= rx;
    if (states > 4096) throw std::invalid_argument("threshold reduction alphabet too large");
  }
  const char* colour_initial[3] = {"r", "g", "b"};
  for (std::uint32_t b = 0; b < base.size(); ++b) {
    for (std::uint64_t st = 0; st < states; ++st) {
      std::uint64_t rest = st;
      std::vector<std::uint32_t> vals, cols;
      std::string suffix;
      for (std::size_t g = 0; g < counters.size(); ++g) {
        std::uint64_t digit = rest % radix[g];
        rest /= radix[g];
        std::uint32_t val = static_cast<std::uint32_t>(digit % (1ULL << counters[g].bits));
        std::uint32_t col = static_cast<std::uint32_t>(digit / (1ULL << counters[g].bits));
        vals.push_back(val);
        cols.push_back(col);
        suffix += "#" + std::to_string(val) + colour_initial[col];
      }
      names.push_back(base.letter(b) + suffix);
      pa.base.push_back(b);
      pa.value.push_back(std::move(vals));
      pa.colour.push_back(std::move(cols));
    }
  }
  Alphabet product(std::move(names));

  // Axioms: counters start at 0/red and advance with the base letter.
  std::vector<Fo2Ptr> axioms;
  {
    std::vector<Fo2Ptr> init;
    for (std::size_t g = 0; g < counters.size(); ++g) {
      auto zero = pa.letters_where([&](std::uint32_t l) { return pa.value[l][g] == 0; });
      init.push_back(class_atom(zero, Var::x));
      init.push_back(sym_colour(pa, g, 0, Var::x));
    }
    axioms.push_back(
        Fo2::forall(Var::x, Fo2::implies(first_position(Var::x), Fo2::and_(std::move(init)))));
  }
  {
    std::vector<Fo2Ptr> step;
    for (std::size_t g = 0; g < counters.size(); ++g) {
      auto is_a = class_atom(
          pa.letters_where([&](std::uint32_t l) { return pa.base[l] == counters[g].base_letter; }),
          Var::x);
      auto wrap = Fo2::and_(
          {is_a, class_atom(pa.letters_where([&](std::uint32_t l) {
                   return pa.base[l] == counters[g].base_letter &&
                          pa.value[l][g] == (1ULL << counters[g].bits) - 1;
                 }),
                            Var::x)});
      std::vector<Fo2Ptr> same_col, next_col;
      for (std::uint32_t c = 0; c < 3; ++c) {
        same_col.push_back(Fo2::and_({sym_colour(pa, g, c, Var::x), sym_colour(pa, g, c, Var::y)}));
        next_col.push_back(
            Fo2::and_({sym_colour(pa, g, c, Var::x), sym_colour(pa, g, (c + 1) % 3, Var::y)}));
      }
      step.push_back(Fo2::implies(is_a, sym_inc_const(pa, g, 1, Var::x, Var::y)));
      step.push_back(Fo2::implies(Fo2::not_(is_a), sym_eq(pa, g, Var::x, Var::y)));
      step.push_back(Fo2::implies(wrap, Fo2::or_(std::move(next_col))));
      step.push_back(Fo2::implies(Fo2::not_(wrap), Fo2::or_(std::move(same_col))));
    }
    axioms.push_back(Fo2::forall(
        Var::x, Fo2::forall(Var::y, Fo2::implies(Fo2::succ(Var::x, Var::y),
                                                 Fo2::and_(std::move(step))))));
  }

  Fo2Ptr translated = translate_atoms(sentence, pa);
  std::vector<Fo2Ptr> all = std::move(axioms);
  all.push_back(std::move(translated));

  ThresholdReduction red{std::move(product)};
  red.sentence = Fo2::and_(std::move(all));
  red.projection = std::move(pa.base);
  for (const auto& c : counters) red.counters.push_back({c.base_letter, c.bits});
  red.values = std::move(pa.value);
  red.colours = std::move(pa.colour);
  return red;
}

// ---------------------------------------------------------------------------
// Bounded satisfiability search

namespace {

Word word_from_index(std::size_t len, std::uint64_t index, std::uint32_t k) {
  Word w;
  w.letters.resize(len);
  for (std::size_t i = len; i-- > 0;) {
    w.letters[i] = static_cast<std::uint32_t>(index % k);
    index /= k;
  }
  return w;
}

}  // namespace

std::optional<Word> bounded_sat(const Fo2Ptr& sentence, const Alphabet& alphabet,
                                std::size_t max_len, unsigned workers) {
  if (!is_sentence(sentence))
    throw std::invalid_argument("bounded_sat requires a sentence");
  const std::uint32_t k = static_cast<std::uint32_t>(alphabet.size());

  auto verify = [&](const Word& w) {
    Fo2Evaluator fresh;
    if (!fresh.eval(sentence, w, {}))
      throw std::logic_error("bounded_sat witness failed re-verification");
    return w;
  };

  for (std::size_t len = 0; len <= max_len; ++len) {
    // Total count of words of this length; saturate to the sequential path on
    // overflow (the search would never finish such a space anyway).
    unsigned __int128 total = 1;
    bool huge = false;
    for (std::size_t i = 0; i < len; ++i) {
      total *= k;
      if (total > static_cast<unsigned __int128>(UINT64_MAX)) {
        huge = true;
        break;
      }
    }

    if (workers <= 1 || huge || static_cast<std::uint64_t>(total) < 4096) {
      Fo2Evaluator ev;
      std::optional<Word> hit;
      Word w;
      w.letters.assign(len, 0);
      bool done = false;
      while (!done) {
        if (ev.eval(sentence, w, {})) {
          hit = w;
          break;
        }
        std::size_t i = len;
        while (i > 0) {
          if (++w.letters[i - 1] < k) break;
          w.letters[i - 1] = 0;
          --i;
        }
        if (i == 0) done = true;
      }
      if (hit) return verify(*hit);
      continue;
    }

    const std::uint64_t count = static_cast<std::uint64_t>(total);
    std::atomic<std::uint64_t> best{UINT64_MAX};
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (count + workers - 1) / workers;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        Fo2Evaluator ev;
        std::uint64_t lo = t * chunk;
        std::uint64_t hi = std::min(count, lo + chunk);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
          if (idx >= best.load(std::memory_order_relaxed)) break;
          Word w = word_from_index(len, idx, k);
          if (ev.eval(sentence, w, {})) {
            std::uint64_t cur = best.load(std::memory_order_relaxed);
            while (idx < cur &&
                   !best.compare_exchange_weak(cur, idx, std::memory_order_relaxed)) {
            }
            break;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    std::uint64_t found = best.load();
    if (found != UINT64_MAX) return verify(word_from_index(len, found, k));
  }
  return std::nullopt;
}

}  // namespace betwixt
