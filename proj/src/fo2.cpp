#include "betwixt/fo2.hpp"

#include <atomic>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "betwixt/detail/lexer.hpp"

namespace betwixt {

namespace {

std::atomic<std::uint32_t> next_id{1};

std::shared_ptr<Fo2> make(Fo2::Kind k) {
  auto f = std::make_shared<Fo2>();
  f->kind = k;
  f->id = next_id.fetch_add(1, std::memory_order_relaxed);
  return f;
}

constexpr std::uint64_t kMaxThreshold = 1ULL << 63;

}  // namespace

Fo2Ptr Fo2::tru() { return make(Kind::True); }
Fo2Ptr Fo2::fls() { return make(Kind::False); }

Fo2Ptr Fo2::letter_at(std::uint32_t a, Var v) {
  auto f = make(Kind::Letter);
  f->letter = a;
  f->v1 = v;
  return f;
}

Fo2Ptr Fo2::between(std::uint32_t a, std::uint64_t k, Var lo, Var hi) {
  if (k == 0) throw std::invalid_argument("between threshold must be at least 1");
  if (k > kMaxThreshold) throw std::invalid_argument("between threshold too large");
  auto f = make(Kind::Between);
  f->letter = a;
  f->threshold = k;
  f->v1 = lo;
  f->v2 = hi;
  return f;
}

Fo2Ptr Fo2::less(Var a, Var b) {
  auto f = make(Kind::Less);
  f->v1 = a;
  f->v2 = b;
  return f;
}
Fo2Ptr Fo2::leq(Var a, Var b) {
  auto f = make(Kind::Leq);
  f->v1 = a;
  f->v2 = b;
  return f;
}
Fo2Ptr Fo2::eq(Var a, Var b) {
  auto f = make(Kind::EqVar);
  f->v1 = a;
  f->v2 = b;
  return f;
}
Fo2Ptr Fo2::succ(Var a, Var b) {
  auto f = make(Kind::Succ);
  f->v1 = a;
  f->v2 = b;
  return f;
}

Fo2Ptr Fo2::not_(Fo2Ptr x) {
  auto f = make(Kind::Not);
  f->kids.push_back(std::move(x));
  return f;
}

Fo2Ptr Fo2::and_(std::vector<Fo2Ptr> fs) {
  std::vector<Fo2Ptr> kids;
  for (auto& f : fs) {
    if (f->kind == Kind::True) continue;
    if (f->kind == Kind::False) return fls();
    if (f->kind == Kind::And) {
      kids.insert(kids.end(), f->kids.begin(), f->kids.end());
    } else {
      kids.push_back(std::move(f));
    }
  }
  if (kids.empty()) return tru();
  if (kids.size() == 1) return kids[0];
  auto f = make(Kind::And);
  f->kids = std::move(kids);
  return f;
}

Fo2Ptr Fo2::or_(std::vector<Fo2Ptr> fs) {
  std::vector<Fo2Ptr> kids;
  for (auto& f : fs) {
    if (f->kind == Kind::False) continue;
    if (f->kind == Kind::True) return tru();
    if (f->kind == Kind::Or) {
      kids.insert(kids.end(), f->kids.begin(), f->kids.end());
    } else {
      kids.push_back(std::move(f));
    }
  }
  if (kids.empty()) return fls();
  if (kids.size() == 1) return kids[0];
  auto f = make(Kind::Or);
  f->kids = std::move(kids);
  return f;
}

Fo2Ptr Fo2::implies(Fo2Ptr a, Fo2Ptr b) {
  auto f = make(Kind::Implies);
  f->kids = {std::move(a), std::move(b)};
  return f;
}
Fo2Ptr Fo2::iff(Fo2Ptr a, Fo2Ptr b) {
  auto f = make(Kind::Iff);
  f->kids = {std::move(a), std::move(b)};
  return f;
}
Fo2Ptr Fo2::exists(Var v, Fo2Ptr body) {
  auto f = make(Kind::Exists);
  f->v1 = v;
  f->kids.push_back(std::move(body));
  return f;
}
Fo2Ptr Fo2::forall(Var v, Fo2Ptr body) {
  auto f = make(Kind::Forall);
  f->v1 = v;
  f->kids.push_back(std::move(body));
  return f;
}

bool fo2_equal(const Fo2Ptr& a, const Fo2Ptr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind || a->v1 != b->v1 || a->v2 != b->v2 || a->letter != b->letter ||
      a->threshold != b->threshold || a->kids.size() != b->kids.size())
    return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!fo2_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

std::uint32_t quantifier_depth(const Fo2Ptr& f) {
  std::uint32_t d = 0;
  for (const auto& k : f->kids) d = std::max(d, quantifier_depth(k));
  if (f->kind == Fo2::Kind::Exists || f->kind == Fo2::Kind::Forall) ++d;
  return d;
}

std::uint8_t free_vars(const Fo2Ptr& f) {
  switch (f->kind) {
    case Fo2::Kind::True:
    case Fo2::Kind::False:
      return 0;
    case Fo2::Kind::Letter:
      return static_cast<std::uint8_t>(1u << static_cast<unsigned>(f->v1));
    case Fo2::Kind::Between:
    case Fo2::Kind::Less:
    case Fo2::Kind::Leq:
    case Fo2::Kind::EqVar:
    case Fo2::Kind::Succ:
      return static_cast<std::uint8_t>((1u << static_cast<unsigned>(f->v1)) |
                                       (1u << static_cast<unsigned>(f->v2)));
    case Fo2::Kind::Exists:
    case Fo2::Kind::Forall:
      return static_cast<std::uint8_t>(free_vars(f->kids[0]) &
                                       ~(1u << static_cast<unsigned>(f->v1)));
    default: {
      std::uint8_t r = 0;
      for (const auto& k : f->kids) r |= free_vars(k);
      return r;
    }
  }
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

using detail::Lexer;
using detail::Token;

class Fo2Parser {
 public:
  Fo2Parser(const std::string& text, const Alphabet& alphabet)
      : lex_(text), alphabet_(alphabet) {}

  Fo2Ptr parse() {
    Fo2Ptr f = parse_formula();
    if (!lex_.at_end()) throw ParseError("unexpected trailing input", lex_.peek().offset);
    return f;
  }

 private:
  Fo2Ptr parse_formula() { return parse_iff(); }

  Fo2Ptr parse_iff() {
    Fo2Ptr l = parse_implies();
    while (lex_.is_punct("<->")) {
      lex_.next();
      l = Fo2::iff(std::move(l), parse_implies());
    }
    return l;
  }

  Fo2Ptr parse_implies() {
    Fo2Ptr l = parse_or();
    if (lex_.is_punct("->")) {
      lex_.next();
      return Fo2::implies(std::move(l), parse_implies());
    }
    return l;
  }

  Fo2Ptr parse_or() {
    Fo2Ptr l = parse_and();
    while (lex_.is_punct("|")) {
      lex_.next();
      std::vector<Fo2Ptr> kids{std::move(l), parse_and()};
      l = Fo2::or_(std::move(kids));
    }
    return l;
  }

  Fo2Ptr parse_and() {
    Fo2Ptr l = parse_unary();
    while (lex_.is_punct("&")) {
      lex_.next();
      std::vector<Fo2Ptr> kids{std::move(l), parse_unary()};
      l = Fo2::and_(std::move(kids));
    }
    return l;
  }

  bool at_quantifier() const {
    const Token& t = lex_.peek();
    return t.kind == Token::Kind::Ident && t.text.size() >= 2 &&
           (t.text[0] == 'E' || t.text[0] == 'A') && peek2_is_dot();
  }

  bool peek2_is_dot() const { return lookahead_punct_ == "."; }

  Fo2Ptr parse_unary() {
    refresh_lookahead();
    if (lex_.is_punct("!")) {
      lex_.next();
      return Fo2::not_(parse_unary());
    }
    if (at_quantifier()) {
      Token t = lex_.next();
      std::string vn = t.text.substr(1);
      if (vn != "x" && vn != "y")
        throw ParseError("only the two variables x and y are allowed, got '" + vn + "'",
                         t.offset + 1);
      lex_.expect_punct(".");
      Var v = vn == "x" ? Var::x : Var::y;
      Fo2Ptr body = parse_formula();
      return t.text[0] == 'E' ? Fo2::exists(v, std::move(body)) : Fo2::forall(v, std::move(body));
    }
    return parse_primary();
  }

  Fo2Ptr parse_primary() {
    refresh_lookahead();
    const Token& t = lex_.peek();
    if (lex_.is_punct("(")) {
      lex_.next();
      Fo2Ptr f = parse_formula();
      lex_.expect_punct(")");
      return f;
    }
    if (t.kind == Token::Kind::Quoted) {
      Token q = lex_.next();
      return finish_letter_atom(q.text, q.offset);
    }
    if (t.kind != Token::Kind::Ident)
      throw ParseError("expected a formula", t.offset);

    bool next_is_paren = lookahead_punct_ == "(";
    if (t.text == "T" && !next_is_paren) {
      lex_.next();
      return Fo2::tru();
    }
    if (t.text == "F" && !next_is_paren) {
      lex_.next();
      return Fo2::fls();
    }
    if (t.text == "bet" && next_is_paren) {
      lex_.next();
      lex_.expect_punct("(");
      Token lt = lex_.next();
      if (lt.kind != Token::Kind::Ident && lt.kind != Token::Kind::Quoted)
        throw ParseError("expected a letter symbol", lt.offset);
      auto idx = alphabet_.find(lt.text);
      if (idx < 0) throw ParseError("unknown letter symbol '" + lt.text + "'", lt.offset);
      lex_.expect_punct(",");
      Token kt = lex_.next();
      if (kt.kind != Token::Kind::Number) throw ParseError("expected a threshold", kt.offset);
      if (kt.value == 0)
        throw ParseError("between threshold must be at least 1", kt.offset);
      if (kt.value > kMaxThreshold)
        throw ParseError("between threshold too large", kt.offset);
      lex_.expect_punct(",");
      Var a = parse_var();
      lex_.expect_punct(",");
      Var b = parse_var();
      lex_.expect_punct(")");
      return Fo2::between(static_cast<std::uint32_t>(idx), kt.value, a, b);
    }
    if (t.text == "succ" && next_is_paren) {
      lex_.next();
      lex_.expect_punct("(");
      Var a = parse_var();
      lex_.expect_punct(",");
      Var b = parse_var();
      lex_.expect_punct(")");
      return Fo2::succ(a, b);
    }
    if ((t.text == "x" || t.text == "y") && !next_is_paren) {
      Var a = parse_var();
      if (lex_.is_punct("<")) {
        lex_.next();
        return Fo2::less(a, parse_var());
      }
      if (lex_.is_punct("<=")) {
        lex_.next();
        return Fo2::leq(a, parse_var());
      }
      if (lex_.is_punct("=")) {
        lex_.next();
        return Fo2::eq(a, parse_var());
      }
      throw ParseError("expected comparison operator after variable", lex_.peek().offset);
    }
    Token id = lex_.next();
    return finish_letter_atom(id.text, id.offset);
  }

  Fo2Ptr finish_letter_atom(const std::string& name, std::size_t at) {
    auto idx = alphabet_.find(name);
    if (idx < 0) {
      if (name.size() == 1 && (name[0] == 'z' || name[0] == 'w'))
        throw ParseError("only the two variables x and y are allowed, got '" + name + "'", at);
      throw ParseError("unknown letter symbol '" + name + "'", at);
    }
    lex_.expect_punct("(");
    Var v = parse_var();
    lex_.expect_punct(")");
    return Fo2::letter_at(static_cast<std::uint32_t>(idx), v);
  }

  Var parse_var() {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Ident || (t.text != "x" && t.text != "y"))
      throw ParseError("only the two variables x and y are allowed, got '" + t.text + "'",
                       t.offset);
    return t.text == "x" ? Var::x : Var::y;
  }

  // One token of lookahead past the current token, for letter/keyword
  // disambiguation. The Lexer is single-token, so probe lazily.
  void refresh_lookahead() {
    Lexer probe = lex_;
    probe.next();
    lookahead_punct_ =
        probe.peek().kind == Token::Kind::Punct ? probe.peek().text : std::string();
  }

  Lexer lex_;
  const Alphabet& alphabet_;
  std::string lookahead_punct_;
};

bool plain_symbol(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  // Reserved words must be quoted to act as letters.
  return s != "T" && s != "F" && s != "x" && s != "y" && s != "bet" && s != "succ" &&
         !((s[0] == 'E' || s[0] == 'A') && s.size() == 2);
}

void print_letter(std::ostream& out, const Alphabet& a, std::uint32_t idx) {
  const std::string& name = a.letter(idx);
  if (plain_symbol(name))
    out << name;
  else
    out << '\'' << name << '\'';
}

int prec_of(Fo2::Kind k) {
  switch (k) {
    case Fo2::Kind::Exists:
    case Fo2::Kind::Forall: return 0;
    case Fo2::Kind::Iff: return 1;
    case Fo2::Kind::Implies: return 2;
    case Fo2::Kind::Or: return 3;
    case Fo2::Kind::And: return 4;
    case Fo2::Kind::Not: return 5;
    default: return 6;
  }
}

void print_rec(std::ostream& out, const Fo2Ptr& f, const Alphabet& a, int parent) {
  int self = prec_of(f->kind);
  bool paren = self < parent;
  if (paren) out << '(';
  switch (f->kind) {
    case Fo2::Kind::True: out << 'T'; break;
    case Fo2::Kind::False: out << 'F'; break;
    case Fo2::Kind::Letter:
      print_letter(out, a, f->letter);
      out << '(' << var_name(f->v1) << ')';
      break;
    case Fo2::Kind::Between:
      out << "bet(";
      print_letter(out, a, f->letter);
      out << ',' << f->threshold << ',' << var_name(f->v1) << ',' << var_name(f->v2) << ')';
      break;
    case Fo2::Kind::Less: out << var_name(f->v1) << '<' << var_name(f->v2); break;
    case Fo2::Kind::Leq: out << var_name(f->v1) << "<=" << var_name(f->v2); break;
    case Fo2::Kind::EqVar: out << var_name(f->v1) << '=' << var_name(f->v2); break;
    case Fo2::Kind::Succ:
      out << "succ(" << var_name(f->v1) << ',' << var_name(f->v2) << ')';
      break;
    case Fo2::Kind::Not:
      out << '!';
      print_rec(out, f->kids[0], a, 5);
      break;
    case Fo2::Kind::And:
      for (std::size_t i = 0; i < f->kids.size(); ++i) {
        if (i) out << " & ";
        print_rec(out, f->kids[i], a, 5);
      }
      break;
    case Fo2::Kind::Or:
      for (std::size_t i = 0; i < f->kids.size(); ++i) {
        if (i) out << " | ";
        print_rec(out, f->kids[i], a, 4);
      }
      break;
    case Fo2::Kind::Implies:
      print_rec(out, f->kids[0], a, 3);
      out << " -> ";
      print_rec(out, f->kids[1], a, 2);
      break;
    case Fo2::Kind::Iff:
      print_rec(out, f->kids[0], a, 2);
      out << " <-> ";
      print_rec(out, f->kids[1], a, 2);
      break;
    case Fo2::Kind::Exists:
    case Fo2::Kind::Forall:
      out << (f->kind == Fo2::Kind::Exists ? 'E' : 'A') << var_name(f->v1) << ". ";
      print_rec(out, f->kids[0], a, 0);
      break;
  }
  if (paren) out << ')';
}

}  // namespace

Fo2Ptr parse_fo2(const std::string& text, const Alphabet& alphabet) {
  return Fo2Parser(text, alphabet).parse();
}

std::string print_fo2(const Fo2Ptr& f, const Alphabet& alphabet) {
  std::ostringstream out;
  print_rec(out, f, alphabet, 0);
  return out.str();
}

// ---------------------------------------------------------------------------
// Evaluation

void Fo2Evaluator::index_formula(const Fo2Ptr& root) {
  nodes_.clear();
  std::uint32_t max_letter = 0;
  std::unordered_map<std::uint32_t, std::uint32_t> idx;
  std::vector<const Fo2*> stack{root.get()};
  while (!stack.empty()) {
    const Fo2* f = stack.back();
    stack.pop_back();
    if (idx.count(f->id)) continue;
    idx.emplace(f->id, static_cast<std::uint32_t>(nodes_.size()));
    nodes_.push_back(f);
    if (f->kind == Fo2::Kind::Letter || f->kind == Fo2::Kind::Between)
      max_letter = std::max(max_letter, f->letter);
    for (const auto& k : f->kids) stack.push_back(k.get());
  }
  id_to_local_ = std::move(idx);
  num_letters_ = max_letter + 1;
  cached_root_id_ = root->id;
}

bool Fo2Evaluator::eval(const Fo2Ptr& root, const Word& w, const Assignment& asg) {
  std::uint8_t fv = free_vars(root);
  if ((fv & 1u) && !asg.x) throw std::invalid_argument("unbound free variable x");
  if ((fv & 2u) && !asg.y) throw std::invalid_argument("unbound free variable y");
  if (asg.x && (*asg.x < 1 || *asg.x > w.size()))
    throw std::invalid_argument("assignment for x out of range");
  if (asg.y && (*asg.y < 1 || *asg.y > w.size()))
    throw std::invalid_argument("assignment for y out of range");

  if (cached_root_id_ != root->id) index_formula(root);
  word_ = &w;
  n_ = w.size();
  std::uint32_t letters = num_letters_;
  for (auto l : w.letters) letters = std::max(letters, l + 1);

  prefix_.assign(static_cast<std::size_t>(letters) * (n_ + 1), 0);
  for (std::uint32_t a = 0; a < letters; ++a)
    for (std::size_t p = 1; p <= n_; ++p)
      prefix_[a * (n_ + 1) + p] =
          prefix_[a * (n_ + 1) + p - 1] + (w.letters[p - 1] == a ? 1u : 0u);

  memo_.assign(nodes_.size() * (n_ + 1) * (n_ + 1), 0);
  return eval_node(*root, asg.x.value_or(0), asg.y.value_or(0));
}

bool Fo2Evaluator::eval_node(const Fo2& f, std::uint32_t xv, std::uint32_t yv) {
  const std::size_t stride = (n_ + 1) * (n_ + 1);
  std::size_t slot = id_to_local_.at(f.id) * stride + xv * (n_ + 1) + yv;
  if (memo_[slot]) return memo_[slot] == 2;

  auto val_of = [&](Var v) { return v == Var::x ? xv : yv; };
  bool r = false;
  switch (f.kind) {
    case Fo2::Kind::True: r = true; break;
    case Fo2::Kind::False: r = false; break;
    case Fo2::Kind::Letter: r = word_->at_pos(val_of(f.v1)) == f.letter; break;
    case Fo2::Kind::Between: {
      std::uint32_t lo = val_of(f.v1), hi = val_of(f.v2);
      if (lo >= hi) {
        r = false;
      } else {
        std::uint32_t cnt = prefix_[f.letter * (n_ + 1) + hi - 1] - prefix_[f.letter * (n_ + 1) + lo];
        r = cnt >= f.threshold;
      }
      break;
    }
    case Fo2::Kind::Less: r = val_of(f.v1) < val_of(f.v2); break;
    case Fo2::Kind::Leq: r = val_of(f.v1) <= val_of(f.v2); break;
    case Fo2::Kind::EqVar: r = val_of(f.v1) == val_of(f.v2); break;
    case Fo2::Kind::Succ: r = val_of(f.v2) == val_of(f.v1) + 1; break;
    case Fo2::Kind::Not: r = !eval_node(*f.kids[0], xv, yv); break;
    case Fo2::Kind::And:
      r = true;
      for (const auto& k : f.kids)
        if (!eval_node(*k, xv, yv)) {
          r = false;
          break;
        }
      break;
    case Fo2::Kind::Or:
      r = false;
      for (const auto& k : f.kids)
        if (eval_node(*k, xv, yv)) {
          r = true;
          break;
        }
      break;
    case Fo2::Kind::Implies:
      r = !eval_node(*f.kids[0], xv, yv) || eval_node(*f.kids[1], xv, yv);
      break;
    case Fo2::Kind::Iff:
      r = eval_node(*f.kids[0], xv, yv) == eval_node(*f.kids[1], xv, yv);
      break;
    case Fo2::Kind::Exists: {
      r = false;
      for (std::uint32_t p = 1; p <= n_; ++p) {
        std::uint32_t nx = f.v1 == Var::x ? p : xv;
        std::uint32_t ny = f.v1 == Var::y ? p : yv;
        if (eval_node(*f.kids[0], nx, ny)) {
          r = true;
          break;
        }
      }
      break;
    }
    case Fo2::Kind::Forall: {
      r = true;
      for (std::uint32_t p = 1; p <= n_; ++p) {
        std::uint32_t nx = f.v1 == Var::x ? p : xv;
        std::uint32_t ny = f.v1 == Var::y ? p : yv;
        if (!eval_node(*f.kids[0], nx, ny)) {
          r = false;
          break;
        }
      }
      break;
    }
  }
  memo_[slot] = r ? 2 : 1;
  return r;
}

bool eval_fo2(const Fo2Ptr& f, const Word& w, const Assignment& asg) {
  Fo2Evaluator ev;
  return ev.eval(f, w, asg);
}

std::vector<Word> defined_language(const Fo2Ptr& sentence, const Alphabet& alphabet,
                                   std::size_t max_len) {
  if (!is_sentence(sentence))
    throw std::invalid_argument("defined_language requires a sentence (no free variables)");
  std::vector<Word> out;
  Fo2Evaluator ev;
  for_each_word(alphabet, max_len, [&](const Word& w) {
    if (ev.eval(sentence, w, {})) out.push_back(w);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Serial counters

SerialCounter::SerialCounter(std::vector<std::uint32_t> mark_class, std::uint32_t zero_letter,
                             std::uint32_t one_letter, std::uint32_t bits)
    : mark_class_(std::move(mark_class)), zero_(zero_letter), one_(one_letter), r_(bits) {
  if (bits == 0) throw std::invalid_argument("counter needs at least one bit");
}

Fo2Ptr SerialCounter::class_at(Var v, const std::vector<std::uint32_t>& cls) const {
  std::vector<Fo2Ptr> alts;
  for (auto l : cls) alts.push_back(Fo2::letter_at(l, v));
  return Fo2::or_(std::move(alts));
}

Fo2Ptr SerialCounter::mark(Var v) const { return class_at(v, mark_class_); }

namespace {

// suc^steps(v) reached through alternating existentials; payload applied to
// the final variable.
Fo2Ptr suc_chain_to(Var v, std::uint32_t steps,
                    const std::function<Fo2Ptr(Var)>& payload) {
  if (steps == 0) return payload(v);
  Var u = other(v);
  return Fo2::exists(u, Fo2::and_({Fo2::succ(v, u), suc_chain_to(u, steps - 1, payload)}));
}

}  // namespace

Fo2Ptr SerialCounter::bit_is(Var v, std::uint32_t i, bool one) const {
  std::uint32_t letter = one ? one_ : zero_;
  return suc_chain_to(v, i, [&](Var u) { return Fo2::letter_at(letter, u); });
}

Fo2Ptr SerialCounter::chain_is(Var v, const std::vector<bool>& bits) const {
  // Single nested chain asserting each bit along the way.
  std::function<Fo2Ptr(Var, std::uint32_t)> rec = [&](Var at, std::uint32_t i) -> Fo2Ptr {
    if (i == bits.size()) return Fo2::tru();
    Var u = other(at);
    return Fo2::exists(
        u, Fo2::and_({Fo2::succ(at, u), Fo2::letter_at(bits[i] ? one_ : zero_, u), rec(u, i + 1)}));
  };
  return rec(v, 0);
}

Fo2Ptr SerialCounter::value_is(Var v, std::uint64_t value) const {
  std::vector<bool> bits(r_);
  for (std::uint32_t i = 0; i < r_; ++i) bits[i] = (value >> i) & 1;
  return chain_is(v, bits);
}

Fo2Ptr SerialCounter::all_ones(Var v) const { return chain_is(v, std::vector<bool>(r_, true)); }
Fo2Ptr SerialCounter::all_zeros(Var v) const { return chain_is(v, std::vector<bool>(r_, false)); }

Fo2Ptr SerialCounter::eq(Var a, Var b) const {
  std::vector<Fo2Ptr> cs{mark(a), mark(b)};
  for (std::uint32_t i = 1; i <= r_; ++i)
    cs.push_back(Fo2::iff(bit_is(a, i, false), bit_is(b, i, false)));
  return Fo2::and_(std::move(cs));
}

Fo2Ptr SerialCounter::inc1(Var a, Var b) const {
  std::vector<Fo2Ptr> cs{mark(a), mark(b)};
  // Lowest 0 bit flips to 1, lower 1s flip to 0, higher bits unchanged.
  for (std::uint32_t i = 1; i <= r_; ++i) {
    std::vector<Fo2Ptr> pre{bit_is(a, i, false)};
    for (std::uint32_t j = 1; j < i; ++j) pre.push_back(bit_is(a, j, true));
    std::vector<Fo2Ptr> post{bit_is(b, i, true)};
    for (std::uint32_t j = 1; j < i; ++j) post.push_back(bit_is(b, j, false));
    for (std::uint32_t k = i + 1; k <= r_; ++k)
      post.push_back(Fo2::iff(bit_is(a, k, false), bit_is(b, k, false)));
    cs.push_back(Fo2::implies(Fo2::and_(std::move(pre)), Fo2::and_(std::move(post))));
  }
  std::vector<Fo2Ptr> allones, allzeros;
  for (std::uint32_t i = 1; i <= r_; ++i) {
    allones.push_back(bit_is(a, i, true));
    allzeros.push_back(bit_is(b, i, false));
  }
  cs.push_back(Fo2::implies(Fo2::and_(std::move(allones)), Fo2::and_(std::move(allzeros))));
  return Fo2::and_(std::move(cs));
}

Fo2Ptr SerialCounter::inc_const(std::uint64_t c, Var a, Var b) const {
  if (r_ < 64) c &= (1ULL << r_) - 1;
  std::vector<Fo2Ptr> cs{mark(a), mark(b)};
  Fo2Ptr carry = Fo2::fls();
  for (std::uint32_t i = 1; i <= r_; ++i) {
    bool ci = (c >> (i - 1)) & 1;
    Fo2Ptr ai = bit_is(a, i, true);
    Fo2Ptr x = Fo2::or_({Fo2::and_({ai, Fo2::not_(carry)}), Fo2::and_({Fo2::not_(ai), carry})});
    Fo2Ptr sum = ci ? Fo2::not_(x) : x;
    cs.push_back(Fo2::iff(bit_is(b, i, true), std::move(sum)));
    carry = ci ? Fo2::or_({ai, carry}) : Fo2::and_({ai, carry});
  }
  return Fo2::and_(std::move(cs));
}

Fo2Ptr SerialCounter::lt(Var a, Var b) const {
  std::vector<Fo2Ptr> alts;
  for (std::uint32_t i = 1; i <= r_; ++i) {
    std::vector<Fo2Ptr> cs{bit_is(a, i, false), bit_is(b, i, true)};
    for (std::uint32_t k = i + 1; k <= r_; ++k)
      cs.push_back(Fo2::iff(bit_is(a, k, false), bit_is(b, k, false)));
    alts.push_back(Fo2::and_(std::move(cs)));
  }
  return Fo2::and_({mark(a), mark(b), Fo2::or_(std::move(alts))});
}

Fo2Ptr SerialCounter::gt(Var a, Var b) const { return lt(b, a); }

CounterFormulas build_counter_formulas(std::uint32_t r) {
  if (r == 0) throw std::invalid_argument("counter width r must be at least 1");
  Alphabet alphabet({"m", "0", "1"});
  SerialCounter counter({0}, 1, 2, r);
  CounterFormulas cf{alphabet, r, counter,
                     counter.eq(Var::x, Var::y), counter.inc1(Var::x, Var::y),
                     counter.lt(Var::x, Var::y), counter.gt(Var::x, Var::y)};
  return cf;
}

Fo2Ptr CounterFormulas::inc_const(std::uint64_t c) const {
  return counter.inc_const(c, Var::x, Var::y);
}

Fo2Ptr CounterFormulas::suc_chain(Var v, const std::vector<bool>& bits_lsb_first) const {
  return Fo2::and_({counter.mark(v), counter.chain_is(v, bits_lsb_first)});
}

}  // namespace betwixt
