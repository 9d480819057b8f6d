#pragma once

#include <optional>
#include <string>
#include <vector>

#include "betwixt/dfa.hpp"

#include "json.hpp"

namespace betwixt {

// Bare finite-monoid multiplication structure. Derived monoids (eMe, eSe)
// reuse this so the variety checks apply unchanged.
struct MulTable {
  std::uint32_t size = 0;
  std::uint32_t identity = 0;
  std::vector<std::uint32_t> table;  // size x size, row-major: table[a*size+b] = a·b

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table[a * size + b]; }
  bool is_idempotent(std::uint32_t e) const { return mul(e, e) == e; }
  std::vector<std::uint32_t> idempotents() const;
};

// Syntactic monoid: transition monoid of a minimal complete DFA. Elements are
// canonicalized as state-transformation vectors; names come from shortest
// generating words ("1" for the identity).
struct FiniteMonoid {
  MulTable m;
  Alphabet alphabet;
  std::vector<std::uint32_t> letter_map;                   // letter -> element
  std::vector<std::vector<std::uint32_t>> element_repr;    // element -> transformation
  std::vector<std::string> element_names;

  std::uint32_t image_of(const Word& w) const;
};

// Syntactic semigroup of L ∩ A⁺: images of nonempty words.
struct SemigroupView {
  std::vector<std::uint32_t> elements;  // subset of parent element ids
};

struct LocalSubmonoid {
  std::uint32_t e = 0;
  std::vector<std::uint32_t> me_elements;     // M_e, as parent ids
  std::vector<std::uint32_t> local_elements;  // eM_ee, as parent ids
  MulTable local;                             // multiplication of eM_ee, unit e
};

FiniteMonoid syntactic_monoid(const Dfa& d);
SemigroupView semigroup_view(const FiniteMonoid& m);

// x^ω: the unique idempotent power of x.
std::uint32_t omega_power(const MulTable& m, std::uint32_t x);

// x ≤_J y: x = s·y·t for some s, t.
bool j_leq(const MulTable& m, std::uint32_t x, std::uint32_t y);

// Requires e idempotent.
LocalSubmonoid local_submonoid(const MulTable& m, std::uint32_t e);

bool is_aperiodic(const MulTable& m);                 // x·x^ω = x^ω
bool is_in_DA(const MulTable& m);                     // (xy)^ω x (xy)^ω = (xy)^ω
bool is_in_MeDA(const MulTable& m);                   // every eM_ee in DA

// Thérien–Wilke criterion for FO²[<,+1]: every eSe of the syntactic
// semigroup lies in DA.
bool fo2suc_definable(const Dfa& d);

struct DefinabilityReport {
  std::string regex;
  Alphabet alphabet;
  std::uint32_t dfa_states = 0;
  std::uint32_t monoid_size = 0;
  bool aperiodic = false;
  bool in_DA = false;
  bool in_MeDA = false;
  bool fo2suc = false;
  std::string verdict_fo{}, verdict_fo2{}, verdict_fo2suc{}, verdict_fo2bet{};
};

DefinabilityReport definability_report(const std::string& regex_text, const Alphabet& alphabet);
nlohmann::ordered_json report_to_json(const DefinabilityReport& r);

nlohmann::ordered_json monoid_to_json(const FiniteMonoid& m);

}  // namespace betwixt
