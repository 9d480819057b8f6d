#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "betwixt/alphabet.hpp"

namespace betwixt {

// The two variables of the logic.
enum class Var : std::uint8_t { x = 0, y = 1 };
inline Var other(Var v) { return v == Var::x ? Var::y : Var::x; }
inline const char* var_name(Var v) { return v == Var::x ? "x" : "y"; }

struct Fo2;
using Fo2Ptr = std::shared_ptr<const Fo2>;

// FO²[<,Th] formula. `between(a,k,u,v)` holds iff u's position is strictly
// below v's and letter a occurs at least k times strictly between them;
// FO²[<,bet] is the k=1 fragment.
struct Fo2 {
  enum class Kind : std::uint8_t {
    True, False,
    Letter,    // letter(v1)
    Between,   // between(letter, threshold, v1, v2)
    Less, Leq, EqVar, Succ,  // v1 ? v2
    Not, And, Or, Implies, Iff,
    Exists, Forall           // v1 bound, kids[0] body
  };

  Kind kind{};
  Var v1 = Var::x, v2 = Var::y;
  std::uint32_t letter = 0;
  std::uint64_t threshold = 0;
  std::vector<Fo2Ptr> kids;
  std::uint32_t id = 0;  // process-unique, for evaluator memo tables

  static Fo2Ptr tru();
  static Fo2Ptr fls();
  static Fo2Ptr letter_at(std::uint32_t a, Var v);
  static Fo2Ptr between(std::uint32_t a, std::uint64_t k, Var lo, Var hi);
  static Fo2Ptr less(Var a, Var b);
  static Fo2Ptr leq(Var a, Var b);
  static Fo2Ptr eq(Var a, Var b);
  static Fo2Ptr succ(Var a, Var b);
  static Fo2Ptr not_(Fo2Ptr f);
  // And/Or flatten nested nodes of the same kind and fold constants.
  static Fo2Ptr and_(std::vector<Fo2Ptr> fs);
  static Fo2Ptr or_(std::vector<Fo2Ptr> fs);
  static Fo2Ptr implies(Fo2Ptr a, Fo2Ptr b);
  static Fo2Ptr iff(Fo2Ptr a, Fo2Ptr b);
  static Fo2Ptr exists(Var v, Fo2Ptr body);
  static Fo2Ptr forall(Var v, Fo2Ptr body);
};

// Partial assignment of the two variables to 1-based positions.
struct Assignment {
  std::optional<std::uint32_t> x, y;

  std::optional<std::uint32_t> get(Var v) const { return v == Var::x ? x : y; }
  Assignment with(Var v, std::uint32_t pos) const {
    Assignment a = *this;
    (v == Var::x ? a.x : a.y) = pos;
    return a;
  }
};

Fo2Ptr parse_fo2(const std::string& text, const Alphabet& alphabet);
std::string print_fo2(const Fo2Ptr& f, const Alphabet& alphabet);

bool fo2_equal(const Fo2Ptr& a, const Fo2Ptr& b);
std::uint32_t quantifier_depth(const Fo2Ptr& f);
// Bit 0: x free, bit 1: y free.
std::uint8_t free_vars(const Fo2Ptr& f);
inline bool is_sentence(const Fo2Ptr& f) { return free_vars(f) == 0; }

// Tarskian evaluation with per-call memoization over (subformula, assignment).
class Fo2Evaluator {
 public:
  bool eval(const Fo2Ptr& root, const Word& w, const Assignment& asg);

 private:
  void index_formula(const Fo2Ptr& root);
  bool eval_node(const Fo2& f, std::uint32_t xv, std::uint32_t yv);

  std::uint32_t cached_root_id_ = 0;  // node ids are never reused
  std::vector<const Fo2*> nodes_;
  std::unordered_map<std::uint32_t, std::uint32_t> id_to_local_;

  const Word* word_ = nullptr;
  std::size_t n_ = 0;
  std::uint32_t num_letters_ = 0;
  std::vector<std::uint32_t> prefix_;      // (letter, pos) -> count of letter in w[1..pos]
  std::vector<std::uint8_t> memo_;         // node x (n+1) x (n+1): 0 unknown, 1 false, 2 true
};

bool eval_fo2(const Fo2Ptr& f, const Word& w, const Assignment& asg);

// All words of length <= max_len satisfying the sentence.
std::vector<Word> defined_language(const Fo2Ptr& sentence, const Alphabet& alphabet,
                                   std::size_t max_len);

// Serial counter encoding: an r-bit number is written least-significant-first
// on the r positions after a marker. Formulas are built over letter classes
// so other modules can reuse the construction with richer marker alphabets.
class SerialCounter {
 public:
  SerialCounter(std::vector<std::uint32_t> mark_class, std::uint32_t zero_letter,
                std::uint32_t one_letter, std::uint32_t bits);

  std::uint32_t bits() const { return r_; }

  Fo2Ptr mark(Var v) const;
  // suc^i(v) = b, i >= 1.
  Fo2Ptr bit_is(Var v, std::uint32_t i, bool one) const;
  Fo2Ptr chain_is(Var v, const std::vector<bool>& bits_lsb_first) const;
  Fo2Ptr value_is(Var v, std::uint64_t value) const;
  Fo2Ptr all_ones(Var v) const;
  Fo2Ptr all_zeros(Var v) const;
  Fo2Ptr eq(Var a, Var b) const;
  Fo2Ptr inc1(Var a, Var b) const;                 // value(b) = value(a)+1 mod 2^r
  Fo2Ptr inc_const(std::uint64_t c, Var a, Var b) const;  // value(b) = value(a)+c mod 2^r
  Fo2Ptr lt(Var a, Var b) const;
  Fo2Ptr gt(Var a, Var b) const;

 private:
  Fo2Ptr class_at(Var v, const std::vector<std::uint32_t>& cls) const;

  std::vector<std::uint32_t> mark_class_;
  std::uint32_t zero_, one_, r_;
};

// Ready-made counter toolkit over the alphabet {m, 0, 1}.
struct CounterFormulas {
  Alphabet alphabet;   // m, 0, 1
  std::uint32_t bits;
  SerialCounter counter;

  Fo2Ptr eq, inc1, lt, gt;                     // free variables x, y
  Fo2Ptr inc_const(std::uint64_t c) const;     // INC_c(x, y)
  Fo2Ptr suc_chain(Var v, const std::vector<bool>& bits_lsb_first) const;
};

CounterFormulas build_counter_formulas(std::uint32_t r);

}  // namespace betwixt
