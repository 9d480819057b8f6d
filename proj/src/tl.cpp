#include "betwixt/tl.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "betwixt/detail/lexer.hpp"

namespace betwixt {

bool ThresholdConstraint::holds(std::uint64_t count) const {
  switch (rel) {
    case Rel::Lt: return count < bound;
    case Rel::Le: return count <= bound;
    case Rel::Gt: return count > bound;
    case Rel::Ge: return count >= bound;
    case Rel::Eq: return count == bound;
  }
  return false;
}

GuardPtr Guard::constraint(ThresholdConstraint tc) {
  auto g = std::make_shared<Guard>();
  g->kind = Kind::Constraint;
  std::sort(tc.letters.begin(), tc.letters.end());
  tc.letters.erase(std::unique(tc.letters.begin(), tc.letters.end()), tc.letters.end());
  g->c = std::move(tc);
  return g;
}
GuardPtr Guard::and_(std::vector<GuardPtr> gs) {
  if (gs.size() == 1) return gs[0];
  auto g = std::make_shared<Guard>();
  g->kind = Kind::And;
  g->kids = std::move(gs);
  return g;
}
GuardPtr Guard::or_(std::vector<GuardPtr> gs) {
  if (gs.size() == 1) return gs[0];
  auto g = std::make_shared<Guard>();
  g->kind = Kind::Or;
  g->kids = std::move(gs);
  return g;
}
GuardPtr Guard::not_(GuardPtr x) {
  auto g = std::make_shared<Guard>();
  g->kind = Kind::Not;
  g->kids.push_back(std::move(x));
  return g;
}

TlPtr Tl::tru() {
  auto f = std::make_shared<Tl>();
  f->kind = Kind::True;
  return f;
}
TlPtr Tl::fls() {
  auto f = std::make_shared<Tl>();
  f->kind = Kind::False;
  return f;
}
TlPtr Tl::letter_at(std::uint32_t a) {
  auto f = std::make_shared<Tl>();
  f->kind = Kind::Letter;
  f->letter = a;
  return f;
}
TlPtr Tl::not_(TlPtr x) {
  auto f = std::make_shared<Tl>();
  f->kind = Kind::Not;
  f->kids.push_back(std::move(x));
  return f;
}
TlPtr Tl::and_(std::vector<TlPtr> fs) {
  if (fs.size() == 1) return fs[0];
  auto f = std::make_shared<Tl>();
  f->kind = Kind::And;
  f->kids = std::move(fs);
  return f;
}
TlPtr Tl::or_(std::vector<TlPtr> fs) {
  if (fs.size() == 1) return fs[0];
  auto f = std::make_shared<Tl>();
  f->kind = Kind::Or;
  f->kids = std::move(fs);
  return f;
}
TlPtr Tl::future_g(GuardPtr g, TlPtr x) {
  auto f = std::make_shared<Tl>();
  f->kind = Kind::FutureG;
  f->guard = std::move(g);
  f->kids.push_back(std::move(x));
  return f;
}
TlPtr Tl::past_g(GuardPtr g, TlPtr x) {
  auto f = std::make_shared<Tl>();
  f->kind = Kind::PastG;
  f->guard = std::move(g);
  f->kids.push_back(std::move(x));
  return f;
}
TlPtr Tl::future(TlPtr x) {
  auto f = std::make_shared<Tl>();
  f->kind = Kind::Future;
  f->kids.push_back(std::move(x));
  return f;
}
TlPtr Tl::past(TlPtr x) {
  auto f = std::make_shared<Tl>();
  f->kind = Kind::Past;
  f->kids.push_back(std::move(x));
  return f;
}
TlPtr Tl::next(TlPtr x) {
  auto f = std::make_shared<Tl>();
  f->kind = Kind::Next;
  f->kids.push_back(std::move(x));
  return f;
}

// ---------------------------------------------------------------------------
// Semantics

namespace {

std::uint64_t interior_count(const ThresholdConstraint& c, const Word& w, std::uint32_t lo,
                             std::uint32_t hi) {
  std::uint64_t n = 0;
  for (std::uint32_t p = lo + 1; p < hi; ++p)
    if (std::binary_search(c.letters.begin(), c.letters.end(), w.at_pos(p))) ++n;
  return n;
}

bool guard_sat_rec(const Guard& g, const Word& w, std::uint32_t i, std::uint32_t j) {
  switch (g.kind) {
    case Guard::Kind::Constraint: return g.c.holds(interior_count(g.c, w, i, j));
    case Guard::Kind::And:
      for (const auto& k : g.kids)
        if (!guard_sat_rec(*k, w, i, j)) return false;
      return true;
    case Guard::Kind::Or:
      for (const auto& k : g.kids)
        if (guard_sat_rec(*k, w, i, j)) return true;
      return false;
    case Guard::Kind::Not: return !guard_sat_rec(*g.kids[0], w, i, j);
  }
  return false;
}

}  // namespace

bool guard_sat(const GuardPtr& g, const Word& w, std::uint32_t i, std::uint32_t j) {
  if (!(1 <= i && i < j && j <= w.size()))
    throw std::invalid_argument("guard_sat requires 1 <= i < j <= |w|");
  return guard_sat_rec(*g, w, i, j);
}

bool eval_tl(const TlPtr& f, const Word& w, std::uint32_t i) {
  if (w.empty()) throw std::invalid_argument("eval_tl: the empty word has no positions");
  if (i < 1 || i > w.size()) throw std::invalid_argument("eval_tl: position out of range");
  switch (f->kind) {
    case Tl::Kind::True: return true;
    case Tl::Kind::False: return false;
    case Tl::Kind::Letter: return w.at_pos(i) == f->letter;
    case Tl::Kind::Not: return !eval_tl(f->kids[0], w, i);
    case Tl::Kind::And:
      for (const auto& k : f->kids)
        if (!eval_tl(k, w, i)) return false;
      return true;
    case Tl::Kind::Or:
      for (const auto& k : f->kids)
        if (eval_tl(k, w, i)) return true;
      return false;
    case Tl::Kind::FutureG:
      for (std::uint32_t j = i + 1; j <= w.size(); ++j)
        if (guard_sat_rec(*f->guard, w, i, j) && eval_tl(f->kids[0], w, j)) return true;
      return false;
    case Tl::Kind::PastG:
      for (std::uint32_t j = 1; j < i; ++j)
        if (guard_sat_rec(*f->guard, w, j, i) && eval_tl(f->kids[0], w, j)) return true;
      return false;
    case Tl::Kind::Future:
      for (std::uint32_t j = i + 1; j <= w.size(); ++j)
        if (eval_tl(f->kids[0], w, j)) return true;
      return false;
    case Tl::Kind::Past:
      for (std::uint32_t j = 1; j < i; ++j)
        if (eval_tl(f->kids[0], w, j)) return true;
      return false;
    case Tl::Kind::Next: return i + 1 <= w.size() && eval_tl(f->kids[0], w, i + 1);
  }
  return false;
}

bool accepts_tl(const TlPtr& f, const Word& w) {
  if (w.empty()) return false;
  return eval_tl(f, w, 1);
}

// ---------------------------------------------------------------------------
// Parsing and printing

namespace {

using detail::Lexer;
using detail::Token;

class TlParser {
 public:
  TlParser(const std::string& text, const Alphabet& alphabet)
      : lex_(text), alphabet_(alphabet) {}

  TlPtr parse() {
    TlPtr f = parse_or();
    if (!lex_.at_end()) throw ParseError("unexpected trailing input", lex_.peek().offset);
    return f;
  }

 private:
  TlPtr parse_or() {
    std::vector<TlPtr> kids{parse_and()};
    while (lex_.is_punct("|")) {
      lex_.next();
      kids.push_back(parse_and());
    }
    return Tl::or_(std::move(kids));
  }

  TlPtr parse_and() {
    std::vector<TlPtr> kids{parse_unary()};
    while (lex_.is_punct("&")) {
      lex_.next();
      kids.push_back(parse_unary());
    }
    return Tl::and_(std::move(kids));
  }

  TlPtr parse_unary() {
    if (lex_.is_punct("!")) {
      lex_.next();
      return Tl::not_(parse_unary());
    }
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Ident && (t.text == "F" || t.text == "P" || t.text == "X")) {
      char op = t.text[0];
      lex_.next();
      if (op != 'X' && lex_.is_punct("[")) {
        lex_.next();
        GuardPtr g = parse_guard();
        lex_.expect_punct("]");
        TlPtr body = parse_unary();
        return op == 'F' ? Tl::future_g(std::move(g), std::move(body))
                         : Tl::past_g(std::move(g), std::move(body));
      }
      TlPtr body = parse_unary();
      if (op == 'F') return Tl::future(std::move(body));
      if (op == 'P') return Tl::past(std::move(body));
      return Tl::next(std::move(body));
    }
    return parse_primary();
  }

  TlPtr parse_primary() {
    const Token& t = lex_.peek();
    if (lex_.is_punct("(")) {
      lex_.next();
      TlPtr f = parse_or();
      lex_.expect_punct(")");
      return f;
    }
    if (t.kind == Token::Kind::Ident && t.text == "true") {
      lex_.next();
      return Tl::tru();
    }
    if (t.kind == Token::Kind::Ident && t.text == "false") {
      lex_.next();
      return Tl::fls();
    }
    if (t.kind == Token::Kind::Ident || t.kind == Token::Kind::Quoted) {
      Token lt = lex_.next();
      auto idx = alphabet_.find(lt.text);
      if (idx < 0) throw ParseError("unknown letter symbol '" + lt.text + "'", lt.offset);
      return Tl::letter_at(static_cast<std::uint32_t>(idx));
    }
    throw ParseError("expected a temporal formula", t.offset);
  }

  GuardPtr parse_guard() {
    std::vector<GuardPtr> kids{parse_guard_and()};
    while (lex_.is_punct("|")) {
      lex_.next();
      kids.push_back(parse_guard_and());
    }
    return Guard::or_(std::move(kids));
  }

  GuardPtr parse_guard_and() {
    std::vector<GuardPtr> kids{parse_guard_unary()};
    while (lex_.is_punct("&")) {
      lex_.next();
      kids.push_back(parse_guard_unary());
    }
    return Guard::and_(std::move(kids));
  }

  GuardPtr parse_guard_unary() {
    if (lex_.is_punct("!")) {
      lex_.next();
      return Guard::not_(parse_guard_unary());
    }
    if (lex_.is_punct("(")) {
      lex_.next();
      GuardPtr g = parse_guard();
      lex_.expect_punct(")");
      return g;
    }
    lex_.expect_punct("#");
    lex_.expect_punct("{");
    ThresholdConstraint c;
    if (!lex_.is_punct("}")) {
      while (true) {
        Token lt = lex_.next();
        if (lt.kind != Token::Kind::Ident && lt.kind != Token::Kind::Quoted)
          throw ParseError("expected a letter symbol in guard", lt.offset);
        auto idx = alphabet_.find(lt.text);
        if (idx < 0) throw ParseError("unknown letter symbol '" + lt.text + "'", lt.offset);
        c.letters.push_back(static_cast<std::uint32_t>(idx));
        if (lex_.is_punct(",")) {
          lex_.next();
          continue;
        }
        break;
      }
    }
    lex_.expect_punct("}");
    Token rt = lex_.next();
    if (rt.kind != Token::Kind::Punct) throw ParseError("expected a comparison", rt.offset);
    if (rt.text == "<") c.rel = ThresholdConstraint::Rel::Lt;
    else if (rt.text == "<=") c.rel = ThresholdConstraint::Rel::Le;
    else if (rt.text == ">") c.rel = ThresholdConstraint::Rel::Gt;
    else if (rt.text == ">=") c.rel = ThresholdConstraint::Rel::Ge;
    else if (rt.text == "=") c.rel = ThresholdConstraint::Rel::Eq;
    else throw ParseError("expected one of < <= > >= =", rt.offset);
    Token bt = lex_.next();
    if (bt.kind != Token::Kind::Number) throw ParseError("expected a bound", bt.offset);
    if (bt.value > (1ULL << 63)) throw ParseError("threshold bound too large", bt.offset);
    c.bound = bt.value;
    return Guard::constraint(std::move(c));
  }

  Lexer lex_;
  const Alphabet& alphabet_;
};

void print_letter_name(std::ostream& out, const Alphabet& a, std::uint32_t idx) {
  const std::string& name = a.letter(idx);
  bool plain = !name.empty() &&
               (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
  for (char ch : name)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') plain = false;
  if (name == "F" || name == "P" || name == "X" || name == "true" || name == "false")
    plain = false;
  if (plain)
    out << name;
  else
    out << '\'' << name << '\'';
}

void print_guard_rec(std::ostream& out, const Guard& g, const Alphabet& a, int parent) {
  int self = g.kind == Guard::Kind::Or ? 1 : g.kind == Guard::Kind::And ? 2 : 3;
  bool paren = self < parent;
  if (paren) out << '(';
  switch (g.kind) {
    case Guard::Kind::Constraint: {
      out << "#{";
      for (std::size_t i = 0; i < g.c.letters.size(); ++i) {
        if (i) out << ',';
        print_letter_name(out, a, g.c.letters[i]);
      }
      out << "} ";
      switch (g.c.rel) {
        case ThresholdConstraint::Rel::Lt: out << "<"; break;
        case ThresholdConstraint::Rel::Le: out << "<="; break;
        case ThresholdConstraint::Rel::Gt: out << ">"; break;
        case ThresholdConstraint::Rel::Ge: out << ">="; break;
        case ThresholdConstraint::Rel::Eq: out << "="; break;
      }
      out << ' ' << g.c.bound;
      break;
    }
    case Guard::Kind::And:
      for (std::size_t i = 0; i < g.kids.size(); ++i) {
        if (i) out << " & ";
        print_guard_rec(out, *g.kids[i], a, 3);
      }
      break;
    case Guard::Kind::Or:
      for (std::size_t i = 0; i < g.kids.size(); ++i) {
        if (i) out << " | ";
        print_guard_rec(out, *g.kids[i], a, 2);
      }
      break;
    case Guard::Kind::Not:
      out << '!';
      print_guard_rec(out, *g.kids[0], a, 3);
      break;
  }
  if (paren) out << ')';
}

void print_tl_rec(std::ostream& out, const Tl& f, const Alphabet& a, int parent) {
  int self;
  switch (f.kind) {
    case Tl::Kind::Or: self = 1; break;
    case Tl::Kind::And: self = 2; break;
    case Tl::Kind::Not:
    case Tl::Kind::FutureG:
    case Tl::Kind::PastG:
    case Tl::Kind::Future:
    case Tl::Kind::Past:
    case Tl::Kind::Next: self = 3; break;
    default: self = 4; break;
  }
  bool paren = self < parent;
  if (paren) out << '(';
  switch (f.kind) {
    case Tl::Kind::True: out << "true"; break;
    case Tl::Kind::False: out << "false"; break;
    case Tl::Kind::Letter: print_letter_name(out, a, f.letter); break;
    case Tl::Kind::Not:
      out << '!';
      print_tl_rec(out, *f.kids[0], a, 3);
      break;
    case Tl::Kind::And:
      for (std::size_t i = 0; i < f.kids.size(); ++i) {
        if (i) out << " & ";
        print_tl_rec(out, *f.kids[i], a, 3);
      }
      break;
    case Tl::Kind::Or:
      for (std::size_t i = 0; i < f.kids.size(); ++i) {
        if (i) out << " | ";
        print_tl_rec(out, *f.kids[i], a, 2);
      }
      break;
    case Tl::Kind::FutureG:
    case Tl::Kind::PastG:
      out << (f.kind == Tl::Kind::FutureG ? "F[" : "P[");
      print_guard_rec(out, *f.guard, a, 0);
      out << "] ";
      print_tl_rec(out, *f.kids[0], a, 3);
      break;
    case Tl::Kind::Future:
      out << "F ";
      print_tl_rec(out, *f.kids[0], a, 3);
      break;
    case Tl::Kind::Past:
      out << "P ";
      print_tl_rec(out, *f.kids[0], a, 3);
      break;
    case Tl::Kind::Next:
      out << "X ";
      print_tl_rec(out, *f.kids[0], a, 3);
      break;
  }
  if (paren) out << ')';
}

}  // namespace

TlPtr parse_tl(const std::string& text, const Alphabet& alphabet) {
  return TlParser(text, alphabet).parse();
}

std::string print_tl(const TlPtr& f, const Alphabet& alphabet) {
  std::ostringstream out;
  print_tl_rec(out, *f, alphabet, 0);
  return out.str();
}

// ---------------------------------------------------------------------------
// Invariant-guard analysis and BTL[Inv] -> UTL[Inv]

namespace {

enum class InvShape { Zero, Positive, TriviallyTrue, TriviallyFalse, NotInvariant };

// Classifies #B ~ c up to semantic equivalence on counts.
InvShape classify(const ThresholdConstraint& c) {
  using Rel = ThresholdConstraint::Rel;
  switch (c.rel) {
    case Rel::Eq: return c.bound == 0 ? InvShape::Zero : InvShape::NotInvariant;
    case Rel::Le: return c.bound == 0 ? InvShape::Zero : InvShape::NotInvariant;
    case Rel::Lt:
      if (c.bound == 0) return InvShape::TriviallyFalse;
      return c.bound == 1 ? InvShape::Zero : InvShape::NotInvariant;
    case Rel::Ge:
      if (c.bound == 0) return InvShape::TriviallyTrue;
      return c.bound == 1 ? InvShape::Positive : InvShape::NotInvariant;
    case Rel::Gt: return c.bound == 0 ? InvShape::Positive : InvShape::NotInvariant;
  }
  return InvShape::NotInvariant;
}

// Literal over a single letter: present (count > 0) or absent (count = 0).
struct InvLiteral {
  std::uint32_t letter;
  bool present;
};

// DNF over singleton literals; an empty conjunct list means "true".
using InvConjunct = std::vector<InvLiteral>;
using InvDnf = std::vector<InvConjunct>;

InvDnf dnf_true() { return {InvConjunct{}}; }
InvDnf dnf_false() { return {}; }

InvDnf dnf_and(const InvDnf& a, const InvDnf& b) {
  InvDnf out;
  for (const auto& x : a)
    for (const auto& y : b) {
      InvConjunct c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(std::move(c));
    }
  return out;
}

InvDnf dnf_or(InvDnf a, const InvDnf& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// negated = whether an enclosing odd number of negations applies.
InvDnf guard_to_dnf(const Guard& g, bool negated) {
  switch (g.kind) {
    case Guard::Kind::Constraint: {
      InvShape s = classify(g.c);
      if (s == InvShape::NotInvariant)
        throw std::invalid_argument(
            "guard is not an invariant constraint (#B = 0 / #B > 0 after normalization)");
      if (s == InvShape::TriviallyTrue) return negated ? dnf_false() : dnf_true();
      if (s == InvShape::TriviallyFalse) return negated ? dnf_true() : dnf_false();
      bool present = (s == InvShape::Positive) != negated ? true : false;
      if (present) {
        // #B > 0 == some letter of B occurs.
        InvDnf out;
        for (auto l : g.c.letters) out.push_back({InvLiteral{l, true}});
        return out;  // empty B -> false
      }
      // #B = 0 == every letter of B absent.
      InvConjunct c;
      for (auto l : g.c.letters) c.push_back(InvLiteral{l, false});
      return {c};
    }
    case Guard::Kind::Not: return guard_to_dnf(*g.kids[0], !negated);
    case Guard::Kind::And: {
      InvDnf out = negated ? dnf_false() : dnf_true();
      for (const auto& k : g.kids) {
        InvDnf kd = guard_to_dnf(*k, negated);
        out = negated ? dnf_or(std::move(out), kd) : dnf_and(out, kd);
      }
      return out;
    }
    case Guard::Kind::Or: {
      InvDnf out = negated ? dnf_true() : dnf_false();
      for (const auto& k : g.kids) {
        InvDnf kd = guard_to_dnf(*k, negated);
        out = negated ? dnf_and(out, kd) : dnf_or(std::move(out), kd);
      }
      return out;
    }
  }
  return dnf_false();
}

bool guard_is_invariant(const Guard& g) {
  try {
    guard_to_dnf(g, false);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

GuardPtr zero_guard(std::vector<std::uint32_t> letters) {
  ThresholdConstraint c;
  c.letters = std::move(letters);
  c.rel = ThresholdConstraint::Rel::Eq;
  c.bound = 0;
  return Guard::constraint(std::move(c));
}

// One conjunct of an invariant guard: letters required absent / present.
struct ZeroPos {
  std::set<std::uint32_t> zero, pos;
  bool contradictory = false;
};

ZeroPos split_conjunct(const InvConjunct& c) {
  ZeroPos zp;
  for (const auto& lit : c) (lit.present ? zp.pos : zp.zero).insert(lit.letter);
  for (auto l : zp.pos)
    if (zp.zero.count(l)) zp.contradictory = true;
  return zp;
}

TlPtr expand_conjunct(bool future, const ZeroPos& zp, const TlPtr& body_translated) {
  std::vector<std::uint32_t> present(zp.pos.begin(), zp.pos.end());
  if (present.size() > 6)
    throw std::invalid_argument(
        "guard conjunction requires more than 6 present letters; the permutation "
        "expansion is capped at 6");
  std::vector<TlPtr> alts;
  std::sort(present.begin(), present.end());
  do {
    // Innermost modality sees only the absent set; each step towards the
    // outside also forbids the not-yet-consumed present letters.
    TlPtr cur = future ? Tl::future_g(zero_guard({zp.zero.begin(), zp.zero.end()}), body_translated)
                       : Tl::past_g(zero_guard({zp.zero.begin(), zp.zero.end()}), body_translated);
    for (std::size_t i = present.size(); i-- > 0;) {
      std::vector<std::uint32_t> forbid(zp.zero.begin(), zp.zero.end());
      for (std::size_t j = i; j < present.size(); ++j) forbid.push_back(present[j]);
      TlPtr step = Tl::and_({Tl::letter_at(present[i]), std::move(cur)});
      cur = future ? Tl::future_g(zero_guard(std::move(forbid)), std::move(step))
                   : Tl::past_g(zero_guard(std::move(forbid)), std::move(step));
    }
    alts.push_back(std::move(cur));
  } while (std::next_permutation(present.begin(), present.end()));
  if (alts.empty()) return Tl::fls();
  return Tl::or_(std::move(alts));
}

}  // namespace

bool tl_is_invariant(const TlPtr& f) {
  if ((f->kind == Tl::Kind::FutureG || f->kind == Tl::Kind::PastG) &&
      !guard_is_invariant(*f->guard))
    return false;
  for (const auto& k : f->kids)
    if (!tl_is_invariant(k)) return false;
  return true;
}

bool tl_is_unary_invariant(const TlPtr& f) {
  if (f->kind == Tl::Kind::FutureG || f->kind == Tl::Kind::PastG) {
    if (f->guard->kind != Guard::Kind::Constraint) return false;
    if (classify(f->guard->c) != InvShape::Zero) return false;
  }
  for (const auto& k : f->kids)
    if (!tl_is_unary_invariant(k)) return false;
  return true;
}

TlPtr btlinv_to_utlinv(const TlPtr& f, const Alphabet& alphabet) {
  switch (f->kind) {
    case Tl::Kind::True:
    case Tl::Kind::False:
    case Tl::Kind::Letter:
    case Tl::Kind::Future:
    case Tl::Kind::Past:
    case Tl::Kind::Next: {
      if (f->kids.empty()) return f;
      auto g = std::make_shared<Tl>(*f);
      g->kids[0] = btlinv_to_utlinv(f->kids[0], alphabet);
      return g;
    }
    case Tl::Kind::Not:
      return Tl::not_(btlinv_to_utlinv(f->kids[0], alphabet));
    case Tl::Kind::And:
    case Tl::Kind::Or: {
      std::vector<TlPtr> kids;
      for (const auto& k : f->kids) kids.push_back(btlinv_to_utlinv(k, alphabet));
      return f->kind == Tl::Kind::And ? Tl::and_(std::move(kids)) : Tl::or_(std::move(kids));
    }
    case Tl::Kind::FutureG:
    case Tl::Kind::PastG: {
      bool future = f->kind == Tl::Kind::FutureG;
      TlPtr body = btlinv_to_utlinv(f->kids[0], alphabet);
      InvDnf dnf = guard_to_dnf(*f->guard, false);
      std::vector<TlPtr> alts;
      for (const auto& conj : dnf) {
        ZeroPos zp = split_conjunct(conj);
        if (zp.contradictory) continue;
        alts.push_back(expand_conjunct(future, zp, body));
      }
      if (alts.empty()) return Tl::fls();
      return Tl::or_(std::move(alts));
    }
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Translation into FO²[<,Th]

namespace {

// #letters >= need on the interior of (lo, hi), as a disjunction over ways to
// split the demand across the letters of the set.
Fo2Ptr set_count_ge(const std::vector<std::uint32_t>& letters, std::uint64_t need, Var lo,
                    Var hi) {
  if (need == 0) return Fo2::tru();
  if (letters.empty()) return Fo2::fls();
  if (letters.size() == 1)
    return Fo2::between(letters[0], need, lo, hi);
  // Compositions of `need` into letters.size() nonnegative parts.
  std::vector<Fo2Ptr> alts;
  std::vector<std::uint64_t> parts(letters.size(), 0);
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) {
    if (i + 1 == parts.size()) {
      parts[i] = left;
      std::vector<Fo2Ptr> cs;
      for (std::size_t j = 0; j < parts.size(); ++j)
        if (parts[j] > 0) cs.push_back(Fo2::between(letters[j], parts[j], lo, hi));
      alts.push_back(Fo2::and_(std::move(cs)));
      return;
    }
    for (std::uint64_t v = 0; v <= left; ++v) {
      parts[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, need);
  return Fo2::or_(std::move(alts));
}

Fo2Ptr constraint_to_fo2(const ThresholdConstraint& c, Var lo, Var hi) {
  using Rel = ThresholdConstraint::Rel;
  switch (c.rel) {
    case Rel::Ge: return set_count_ge(c.letters, c.bound, lo, hi);
    case Rel::Gt: return set_count_ge(c.letters, c.bound + 1, lo, hi);
    case Rel::Lt: return Fo2::not_(set_count_ge(c.letters, c.bound, lo, hi));
    case Rel::Le: return Fo2::not_(set_count_ge(c.letters, c.bound + 1, lo, hi));
    case Rel::Eq:
      return Fo2::and_({set_count_ge(c.letters, c.bound, lo, hi),
                        Fo2::not_(set_count_ge(c.letters, c.bound + 1, lo, hi))});
  }
  return Fo2::fls();
}

Fo2Ptr guard_to_fo2(const Guard& g, Var lo, Var hi) {
  switch (g.kind) {
    case Guard::Kind::Constraint: return constraint_to_fo2(g.c, lo, hi);
    case Guard::Kind::Not: return Fo2::not_(guard_to_fo2(*g.kids[0], lo, hi));
    case Guard::Kind::And: {
      std::vector<Fo2Ptr> cs;
      for (const auto& k : g.kids) cs.push_back(guard_to_fo2(*k, lo, hi));
      return Fo2::and_(std::move(cs));
    }
    case Guard::Kind::Or: {
      std::vector<Fo2Ptr> cs;
      for (const auto& k : g.kids) cs.push_back(guard_to_fo2(*k, lo, hi));
      return Fo2::or_(std::move(cs));
    }
  }
  return Fo2::fls();
}

Fo2Ptr tl_to_fo2_rec(const Tl& f, Var at) {
  Var nv = other(at);
  switch (f.kind) {
    case Tl::Kind::True: return Fo2::tru();
    case Tl::Kind::False: return Fo2::fls();
    case Tl::Kind::Letter: return Fo2::letter_at(f.letter, at);
    case Tl::Kind::Not: return Fo2::not_(tl_to_fo2_rec(*f.kids[0], at));
    case Tl::Kind::And: {
      std::vector<Fo2Ptr> cs;
      for (const auto& k : f.kids) cs.push_back(tl_to_fo2_rec(*k, at));
      return Fo2::and_(std::move(cs));
    }
    case Tl::Kind::Or: {
      std::vector<Fo2Ptr> cs;
      for (const auto& k : f.kids) cs.push_back(tl_to_fo2_rec(*k, at));
      return Fo2::or_(std::move(cs));
    }
    case Tl::Kind::FutureG:
      return Fo2::exists(nv, Fo2::and_({Fo2::less(at, nv), guard_to_fo2(*f.guard, at, nv),
                                        tl_to_fo2_rec(*f.kids[0], nv)}));
    case Tl::Kind::PastG:
      return Fo2::exists(nv, Fo2::and_({Fo2::less(nv, at), guard_to_fo2(*f.guard, nv, at),
                                        tl_to_fo2_rec(*f.kids[0], nv)}));
    case Tl::Kind::Future:
      return Fo2::exists(nv, Fo2::and_({Fo2::less(at, nv), tl_to_fo2_rec(*f.kids[0], nv)}));
    case Tl::Kind::Past:
      return Fo2::exists(nv, Fo2::and_({Fo2::less(nv, at), tl_to_fo2_rec(*f.kids[0], nv)}));
    case Tl::Kind::Next:
      return Fo2::exists(nv, Fo2::and_({Fo2::succ(at, nv), tl_to_fo2_rec(*f.kids[0], nv)}));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Fo2Ptr tl_to_fo2(const TlPtr& f, const Alphabet& alphabet) {
  (void)alphabet;
  return tl_to_fo2_rec(*f, Var::x);
}

Fo2Ptr tl_to_fo2_sentence(const TlPtr& f, const Alphabet& alphabet) {
  Fo2Ptr at_first = tl_to_fo2(f, alphabet);
  // x is the first position: no y below it.
  Fo2Ptr first = Fo2::not_(Fo2::exists(Var::y, Fo2::less(Var::y, Var::x)));
  return Fo2::exists(Var::x, Fo2::and_({std::move(first), std::move(at_first)}));
}

}  // namespace betwixt
