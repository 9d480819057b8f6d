#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "betwixt/dfa.hpp"
#include "betwixt/games.hpp"
#include "betwixt/fo2.hpp"

using namespace betwixt;

namespace {

const Alphabet kAB({"a", "b"});
const Alphabet kABC({"a", "b", "c"});

Word w(const std::string& s, const Alphabet& a = kAB) { return parse_word(s, a); }

// The constructed (ab)* sentence: first letter a, last letter b, no two
// adjacent equal letters. All conjuncts hold vacuously on the empty word.
Fo2Ptr ab_star_sentence(const Alphabet& a) {
  return parse_fo2(
      "(Ax. (Ay. x<=y) -> a(x))"
      " & (Ax. (Ay. y<=x) -> b(x))"
      " & !(Ex. a(x) & Ey. (succ(x,y) & a(y)))"
      " & !(Ex. b(x) & Ey. (succ(x,y) & b(y)))",
      a);
}

// Integer read back from a counter word "m b1..br m b1..br ..." at a mark.
std::uint64_t counter_value_at(const Word& word, std::uint32_t mark_pos, std::uint32_t r) {
  std::uint64_t v = 0;
  for (std::uint32_t i = 1; i <= r; ++i)
    if (word.at_pos(mark_pos + i) == 2) v |= 1ULL << (i - 1);  // letter "1" has index 2
  return v;
}

Word counter_word(const CounterFormulas& cf, std::vector<std::uint64_t> values) {
  Word word;
  for (auto v : values) {
    word.letters.push_back(0);  // m
    for (std::uint32_t i = 0; i < cf.bits; ++i)
      word.letters.push_back(((v >> i) & 1) ? 2 : 1);
  }
  return word;
}

}  // namespace

TEST_CASE("parsing accepts the grammar and rejects a third variable") {
  CHECK_NOTHROW(parse_fo2("Ex. Ey. (x<y & bet(a,1,x,y))", kAB));
  CHECK_THROWS_AS(parse_fo2("Ex. Ey. Ez. a(z)", kAB), ParseError);
  CHECK_THROWS_AS(parse_fo2("Ex. a(z)", kAB), ParseError);
  CHECK_NOTHROW(parse_fo2("Ax. (Ay. (x<=y)) -> a(x)", kAB));
  CHECK_THROWS_AS(parse_fo2("Ex. c(x)", kAB), ParseError);
  CHECK_THROWS_AS(parse_fo2("Ex. bet(a,0,x,y)", kAB), ParseError);
  CHECK_THROWS_AS(parse_fo2("Ex. a(x", kAB), ParseError);
}

TEST_CASE("between counts the strict interior") {
  Fo2Ptr fa = parse_fo2("bet(a,1,x,y)", kAB);
  Fo2Ptr fb = parse_fo2("bet(b,1,x,y)", kAB);
  Word bab = w("bab");
  Assignment asg;
  asg.x = 1;
  asg.y = 3;
  CHECK(eval_fo2(fa, bab, asg));
  CHECK(!eval_fo2(fb, bab, asg));
  // x >= y is always false, including x = y.
  Assignment same;
  same.x = 2;
  same.y = 2;
  CHECK(!eval_fo2(fa, bab, same));
  Assignment rev;
  rev.x = 3;
  rev.y = 1;
  CHECK(!eval_fo2(fa, bab, rev));
}

TEST_CASE("threshold witness from the staircase language") {
  Fo2Ptr f = parse_fo2("Ex. Ey. (x<y & bet(a,3,x,y) & !bet(b,1,x,y))", kAB);
  CHECK(eval_fo2(f, w("baaab"), {}));
  CHECK(!eval_fo2(f, w("baab"), {}));
}

TEST_CASE("sentences on the empty word") {
  CHECK(!eval_fo2(parse_fo2("Ex. a(x)", kAB), Word{}, {}));
  CHECK(eval_fo2(parse_fo2("Ax. a(x)", kAB), Word{}, {}));
}

TEST_CASE("unbound free variables are rejected") {
  Fo2Ptr f = parse_fo2("a(x)", kAB);
  CHECK_THROWS_AS(eval_fo2(f, w("a"), {}), std::invalid_argument);
}

TEST_CASE("quantifier depth") {
  CHECK(quantifier_depth(parse_fo2("a(x)", kAB)) == 0);
  CHECK(quantifier_depth(parse_fo2("Ex. Ey. x<y", kAB)) == 2);
  CHECK(quantifier_depth(ab_star_sentence(kAB)) >= 2);
}

TEST_CASE("the (ab)* sentence defines (ab)* including the empty word") {
  Fo2Ptr f = ab_star_sentence(kAB);
  auto lang = defined_language(f, kAB, 4);
  std::vector<std::string> got;
  for (const auto& word : lang) got.push_back(print_word(word, kAB));
  CHECK(got == std::vector<std::string>{"", "ab", "abab"});

  Dfa d = compile_min_dfa(parse_regex("(ab)*", kAB), kAB);
  for_each_word(kAB, 7, [&](const Word& word) {
    REQUIRE(eval_fo2(f, word, {}) == accepts(d, word));
    return true;
  });
}

TEST_CASE("defined_language basics") {
  auto lang = defined_language(parse_fo2("Ex. a(x)", kAB), kAB, 1);
  REQUIRE(lang.size() == 1);
  CHECK(print_word(lang[0], kAB) == "a");
  CHECK(defined_language(parse_fo2("F", kAB), kAB, 3).empty());
  CHECK_THROWS_AS(defined_language(parse_fo2("a(x)", kAB), kAB, 2), std::invalid_argument);
}

TEST_CASE("printing round-trips") {
  for (const char* text :
       {"Ex. Ey. (x<y & bet(a,1,x,y))", "Ax. (Ay. (x<=y)) -> a(x)",
        "!(Ex. a(x)) | (T <-> b(y))", "succ(x,y) -> x<y", "bet(b,3,y,x) & x=y",
        "Ex. a(x) & Ey. b(y)"}) {
    Fo2Ptr f = parse_fo2(text, kAB);
    std::string printed = print_fo2(f, kAB);
    Fo2Ptr g = parse_fo2(printed, kAB);
    CAPTURE(text);
    CAPTURE(printed);
    CHECK(fo2_equal(f, g));
  }
}

TEST_CASE("succ sugar equals its between definition on short words") {
  Fo2Ptr lhs = parse_fo2("succ(x,y)", kABC);
  Fo2Ptr rhs = parse_fo2("x<y & !bet(a,1,x,y) & !bet(b,1,x,y) & !bet(c,1,x,y)", kABC);
  Fo2Evaluator ev;
  for_each_word(kABC, 5, [&](const Word& word) {
    for (std::uint32_t i = 1; i <= word.size(); ++i)
      for (std::uint32_t j = 1; j <= word.size(); ++j) {
        Assignment asg;
        asg.x = i;
        asg.y = j;
        REQUIRE(ev.eval(lhs, word, asg) == ev.eval(rhs, word, asg));
      }
    return true;
  });
}

TEST_CASE("between thresholds are monotone") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> len(0, 9);
  std::uniform_int_distribution<std::uint32_t> letter(0, 1);
  std::uniform_int_distribution<std::uint64_t> kdist(1, 4);
  Fo2Evaluator ev;
  for (int trial = 0; trial < 500; ++trial) {
    Word word;
    for (int i = len(rng); i-- > 0;) word.letters.push_back(letter(rng));
    if (word.size() < 2) continue;
    std::uint64_t k = kdist(rng);
    Fo2Ptr strong = Fo2::between(0, k + 1, Var::x, Var::y);
    Fo2Ptr weak = Fo2::between(0, k, Var::x, Var::y);
    std::uniform_int_distribution<std::uint32_t> pos(1, static_cast<std::uint32_t>(word.size()));
    Assignment asg;
    asg.x = pos(rng);
    asg.y = pos(rng);
    if (ev.eval(strong, word, asg)) CHECK(ev.eval(weak, word, asg));
  }
}

TEST_CASE("evaluation is invariant under swapping the two variables") {
  auto swap_vars = [](const Fo2Ptr& f) {
    std::function<Fo2Ptr(const Fo2Ptr&)> rec = [&](const Fo2Ptr& g) -> Fo2Ptr {
      auto copy = std::make_shared<Fo2>(*g);
      copy->v1 = other(g->v1);
      copy->v2 = other(g->v2);
      copy->kids.clear();
      for (const auto& k : g->kids) copy->kids.push_back(rec(k));
      return copy;
    };
    return rec(f);
  };
  std::vector<const char*> texts{"Ex. Ey. (x<y & bet(a,1,x,y))",
                                 "Ax. (Ay. (x<=y)) -> a(x)",
                                 "Ex. (a(x) & Ey. (succ(x,y) & b(y)))"};
  for (const char* text : texts) {
    Fo2Ptr f = parse_fo2(text, kAB);
    Fo2Ptr g = swap_vars(f);
    for_each_word(kAB, 5, [&](const Word& word) {
      REQUIRE(eval_fo2(f, word, {}) == eval_fo2(g, word, {}));
      return true;
    });
  }
}

TEST_CASE("defined languages are unions of game-equivalence classes") {
  // Sentences of depth k cannot split a ≡_k class (bet-1 atoms, theta = 1).
  std::vector<const char*> texts{"Ex. a(x)", "Ex. Ey. (x<y & bet(a,1,x,y))",
                                 "Ax. (Ay. (x<=y)) -> a(x)"};
  auto words = enumerate_words(kAB, 6);
  for (const char* text : texts) {
    Fo2Ptr f = parse_fo2(text, kAB);
    GameConfig cfg;
    cfg.rounds = quantifier_depth(f);
    auto lang = defined_language(f, kAB, 6);
    auto in_lang = [&](const Word& w) {
      return std::find(lang.begin(), lang.end(), w) != lang.end();
    };
    for (const auto& w1 : words)
      for (const auto& w2 : words) {
        if (!equiv_k(w1, w2, cfg, kAB)) continue;
        CAPTURE(text);
        REQUIRE(in_lang(w1) == in_lang(w2));
      }
  }
}

TEST_CASE("counter formulas match the integer oracle") {
  for (std::uint32_t r = 1; r <= 3; ++r) {
    CounterFormulas cf = build_counter_formulas(r);
    const std::uint64_t mod = 1ULL << r;
    Fo2Evaluator ev;
    for (std::uint64_t v1 = 0; v1 < mod; ++v1)
      for (std::uint64_t v2 = 0; v2 < mod; ++v2) {
        Word word = counter_word(cf, {v1, v2});
        Assignment asg;
        asg.x = 1;
        asg.y = r + 2;
        CAPTURE(r);
        CAPTURE(v1);
        CAPTURE(v2);
        REQUIRE(ev.eval(cf.eq, word, asg) == (v1 == v2));
        REQUIRE(ev.eval(cf.inc1, word, asg) == (v2 == (v1 + 1) % mod));
        REQUIRE(ev.eval(cf.lt, word, asg) == (v1 < v2));
        REQUIRE(ev.eval(cf.gt, word, asg) == (v1 > v2));
        for (std::uint64_t c = 0; c < mod; ++c)
          REQUIRE(ev.eval(cf.inc_const(c), word, asg) == (v2 == (v1 + c) % mod));
      }
  }
}

TEST_CASE("counter formula spec words") {
  CounterFormulas cf = build_counter_formulas(2);
  Fo2Evaluator ev;
  Assignment asg;
  asg.x = 1;
  asg.y = 4;
  Word eq_word = parse_word("m 1 0 m 1 0", cf.alphabet);
  CHECK(ev.eval(cf.eq, eq_word, asg));
  Word inc_word = parse_word("m 1 0 m 0 1", cf.alphabet);
  CHECK(!ev.eval(cf.eq, inc_word, asg));
  CHECK(ev.eval(cf.inc1, inc_word, asg));
  Word wrap_word = parse_word("m 1 1 m 0 0", cf.alphabet);
  CHECK(ev.eval(cf.inc1, wrap_word, asg));
  CHECK_THROWS_AS(build_counter_formulas(0), std::invalid_argument);
}

TEST_CASE("parser survives fuzzed inputs") {
  std::mt19937_64 rng(0xf022);
  const std::string chars = "abxyETF()&|!<->=., 0123456789betsucc'";
  std::uniform_int_distribution<std::size_t> len(0, 30);
  std::uniform_int_distribution<std::size_t> pick(0, chars.size() - 1);
  int parsed = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    std::string text;
    for (std::size_t i = len(rng); i-- > 0;) text.push_back(chars[pick(rng)]);
    try {
      Fo2Ptr f = parse_fo2(text, kAB);
      ++parsed;
      // Whatever parses must round-trip.
      CHECK(fo2_equal(f, parse_fo2(print_fo2(f, kAB), kAB)));
    } catch (const ParseError&) {
    } catch (const std::invalid_argument&) {
    }
  }
  CHECK(parsed >= 0);  // no crashes or unexpected exception types
}

TEST_CASE("suc_chain pins the bits after a marker") {
  CounterFormulas cf = build_counter_formulas(2);
  Fo2Ptr chain = cf.suc_chain(Var::x, {true, false});  // value 1
  Fo2Evaluator ev;
  Assignment asg;
  asg.x = 1;
  CHECK(ev.eval(chain, counter_word(cf, {1}), asg));
  CHECK(!ev.eval(chain, counter_word(cf, {2}), asg));
  CHECK(!ev.eval(chain, counter_word(cf, {3}), asg));
  // Read-back helper agrees.
  CHECK(counter_value_at(counter_word(cf, {1}), 1, 2) == 1);
}
