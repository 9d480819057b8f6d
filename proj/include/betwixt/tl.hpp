#pragma once

#include <memory>
#include <string>
#include <vector>

#include "betwixt/alphabet.hpp"
#include "betwixt/fo2.hpp"

namespace betwixt {

// #B ~ c over the strict interior of a position pair.
struct ThresholdConstraint {
  enum class Rel : std::uint8_t { Lt, Le, Gt, Ge, Eq };

  std::vector<std::uint32_t> letters;  // sorted, distinct; may be empty
  Rel rel = Rel::Eq;
  std::uint64_t bound = 0;

  bool holds(std::uint64_t count) const;
};

struct Guard;
using GuardPtr = std::shared_ptr<const Guard>;

struct Guard {
  enum class Kind : std::uint8_t { Constraint, And, Or, Not };

  Kind kind{};
  ThresholdConstraint c;
  std::vector<GuardPtr> kids;

  static GuardPtr constraint(ThresholdConstraint tc);
  static GuardPtr and_(std::vector<GuardPtr> gs);
  static GuardPtr or_(std::vector<GuardPtr> gs);
  static GuardPtr not_(GuardPtr g);
};

struct Tl;
using TlPtr = std::shared_ptr<const Tl>;

// Guarded temporal formula. Future/Past/Next are the sugar modalities with
// their own direct semantics; FutureG/PastG carry guards.
struct Tl {
  enum class Kind : std::uint8_t {
    True, False, Letter, Not, And, Or,
    FutureG, PastG,   // guard + kids[0]
    Future, Past, Next
  };

  Kind kind{};
  std::uint32_t letter = 0;
  GuardPtr guard;
  std::vector<TlPtr> kids;

  static TlPtr tru();
  static TlPtr fls();
  static TlPtr letter_at(std::uint32_t a);
  static TlPtr not_(TlPtr f);
  static TlPtr and_(std::vector<TlPtr> fs);
  static TlPtr or_(std::vector<TlPtr> fs);
  static TlPtr future_g(GuardPtr g, TlPtr f);
  static TlPtr past_g(GuardPtr g, TlPtr f);
  static TlPtr future(TlPtr f);
  static TlPtr past(TlPtr f);
  static TlPtr next(TlPtr f);
};

// Requires 1 <= i < j <= |w|; counts letters strictly between i and j.
bool guard_sat(const GuardPtr& g, const Word& w, std::uint32_t i, std::uint32_t j);

// Marked-word semantics; requires w nonempty and 1 <= i <= |w|.
bool eval_tl(const TlPtr& f, const Word& w, std::uint32_t i);
// Language acceptance: (w,1) |= f; false on the empty word.
bool accepts_tl(const TlPtr& f, const Word& w);

TlPtr parse_tl(const std::string& text, const Alphabet& alphabet);
std::string print_tl(const TlPtr& f, const Alphabet& alphabet);

// True when every guard is a boolean combination of invariant constraints
// (#B = 0 and #B > 0 shapes, after trivial folds).
bool tl_is_invariant(const TlPtr& f);
// True when every guard is a single #B = 0 constraint (or sugar F/P/X).
bool tl_is_unary_invariant(const TlPtr& f);

// BTL[Inv] -> UTL[Inv]: rewrites boolean guard combinations into nested
// single-constraint modalities. Throws std::invalid_argument when a guard is
// not invariant or a conjunction requires more than 6 distinct present
// letters.
TlPtr btlinv_to_utlinv(const TlPtr& f, const Alphabet& alphabet);

// Translation into FO²[<,Th] with one free variable x:
// (w,i) |= f  iff  eval_fo2(tl_to_fo2(f), w, {x:i}).
Fo2Ptr tl_to_fo2(const TlPtr& f, const Alphabet& alphabet);
// Sentence defining the same language (first-position adjustment conjunct).
Fo2Ptr tl_to_fo2_sentence(const TlPtr& f, const Alphabet& alphabet);

}  // namespace betwixt
