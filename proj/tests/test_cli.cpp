#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include "betwixt/cli.hpp"
#include "betwixt/fo2.hpp"
#include "betwixt/tl.hpp"

using namespace betwixt;
using nlohmann::json;

namespace {

json out_json(const CliResult& r) { return json::parse(r.out); }

}  // namespace

TEST_CASE("analyze reports the strict-inclusion witness") {
  CliResult r = run_cli({"analyze", "(a(ab)*b)*"});
  REQUIRE(r.exit_code == 0);
  json j = out_json(r);
  CHECK(j["verdicts"]["FO"] == "yes");
  CHECK(j["verdicts"]["FO2bet"] == "no");
  CHECK(j["aperiodic"] == true);
  CHECK(j["in_MeDA"] == false);
}

TEST_CASE("analyze is byte-deterministic") {
  CliResult a = run_cli({"analyze", "(a+b)*bab^+ab(a+b)*"});
  CliResult b = run_cli({"analyze", "(a+b)*bab^+ab(a+b)*"});
  CHECK(a.out == b.out);
  CHECK(a.exit_code == 0);
  json j = out_json(a);
  CHECK(j["fo2suc"] == false);
  CHECK(j["in_MeDA"] == true);
}

TEST_CASE("equiv uses the exit code as the verdict channel") {
  CliResult r = run_cli({"equiv", "--depth", "2", "ab", "ba"});
  CHECK(r.exit_code == 1);
  json j = out_json(r);
  CHECK(j["equivalent"] == false);
  CHECK(j["depth"] == 2);

  CliResult eq = run_cli({"equiv", "--depth", "1", "ab", "ba"});
  CHECK(eq.exit_code == 0);
  json je = out_json(eq);
  CHECK(je["equivalent"] == true);
  CHECK(je["depth"].is_null());

  CliResult theta = run_cli({"equiv", "--depth", "2", "--theta", "a=2,b=1", "aab", "aab"});
  CHECK(theta.exit_code == 0);
}

TEST_CASE("eval on the empty word is the footnote convention") {
  CliResult r = run_cli({"eval", "--logic", "fo2", "Ex. a(x)", ""});
  CHECK(r.exit_code == 1);
  CHECK(out_json(r)["value"] == false);
  CliResult u = run_cli({"eval", "--logic", "fo2", "Ax. a(x)", ""});
  CHECK(u.exit_code == 0);
  CHECK(out_json(u)["value"] == true);
  CliResult tl = run_cli({"eval", "--logic", "tl", "a & X b", "ab"});
  CHECK(tl.exit_code == 0);
}

TEST_CASE("usage errors exit 2, parse errors exit 3") {
  CHECK(run_cli({"frobnicate"}).exit_code == 2);
  CHECK(run_cli({"equiv", "ab", "ba"}).exit_code == 2);       // missing --depth
  CHECK(run_cli({"analyze", "(ab"}).exit_code == 3);          // regex parse error
  CHECK(run_cli({"eval", "--logic", "fo2", "Ex. Ez. a(z)", ""}).exit_code == 3);
  CHECK(run_cli({"eval", "--logic", "fo2", "a(x)", "a"}).exit_code == 3);  // free variable
  CHECK(run_cli({}).exit_code == 2);
}

TEST_CASE("sat finds and prints witnesses") {
  CliResult r = run_cli({"sat", "Ex. Ey. (x<y & bet(a,1,x,y))", "--max-len", "5"});
  CHECK(r.exit_code == 0);
  json j = out_json(r);
  CHECK(j["witness"] == "aaa");
  CliResult none =
      run_cli({"sat", "Ex. (a(x) & !a(x))", "--max-len", "4", "--parallel", "2"});
  CHECK(none.exit_code == 1);
  CHECK(out_json(none)["witness"].is_null());
}

TEST_CASE("translate output re-parses to a semantically equal formula") {
  Alphabet abc({"a", "b", "c"});

  CliResult r1 = run_cli({"translate", "--from", "btl-inv", "--to", "utl-inv",
                          "F[#{a} = 0 & #{b} > 0] c"});
  REQUIRE(r1.exit_code == 0);
  json j1 = out_json(r1);
  TlPtr original = parse_tl("F[#{a} = 0 & #{b} > 0] c", abc);
  TlPtr reparsed = parse_tl(j1["formula"].get<std::string>(), abc);
  for_each_word(abc, 5, [&](const Word& w) {
    for (std::uint32_t i = 1; i <= w.size(); ++i)
      REQUIRE(eval_tl(original, w, i) == eval_tl(reparsed, w, i));
    return true;
  });

  CliResult r2 = run_cli({"translate", "--from", "tl", "--to", "fo2", "a & X b"});
  REQUIRE(r2.exit_code == 0);
  json j2 = out_json(r2);
  Alphabet ab({"a", "b"});
  Fo2Ptr sentence = parse_fo2(j2["formula"].get<std::string>(), ab);
  TlPtr tl_form = parse_tl("a & X b", ab);
  for_each_word(ab, 5, [&](const Word& w) {
    REQUIRE(eval_fo2(sentence, w, {}) == accepts_tl(tl_form, w));
    return true;
  });

  CliResult r3 = run_cli({"translate", "--from", "fo2-th", "--to", "fo2-bet",
                          "Ex. Ey. bet(a,2,x,y)", "--alphabet", "a"});
  REQUIRE(r3.exit_code == 0);
  json j3 = out_json(r3);
  CHECK(j3["alphabet"].size() == 12);  // 4 counter values x 3 colours
  CHECK(j3["formula"].get<std::string>().find("bet(") != std::string::npos);

  CliResult bad = run_cli({"translate", "--from", "tl", "--to", "utl-inv", "a"});
  CHECK(bad.exit_code == 2);
}

TEST_CASE("generate xst") {
  CliResult r = run_cli({"generate", "xst", "--r", "1", "--s", "1", "--S", "1", "--T", "1"});
  REQUIRE(r.exit_code == 0);
  json j = out_json(r);
  CHECK(j["v"] == "c1 a1 c2 c3 b1 c4");
  CHECK(j["x_length"] == 20);
}

TEST_CASE("generate circuit") {
  CliResult r = run_cli({"generate", "circuit", "--m", "1"});
  REQUIRE(r.exit_code == 0);
  json j = out_json(r);
  CHECK(j["T"] == "'g1'(0+1)*1(0+1)*");
  CHECK(j["C"] == "'g1'(0+1)^+");
}

TEST_CASE("congruence signature output") {
  CliResult r = run_cli({"congruence", "--threshold", "3", "aaaabbaaaaabaabbbba"});
  REQUIRE(r.exit_code == 0);
  json j = out_json(r);
  CHECK(j["last_letter"] == "a");
  CHECK(j["block_count"] == 3);
  CHECK(j["block_count_saturated"] == true);
  REQUIRE(j["blocks"].size() == 3);
  CHECK(j["blocks"][0]["k"] == 3);
  CHECK(j["blocks"][0]["k_saturated"] == true);
  CHECK(j["blocks"][0]["l"] == 1);
}

TEST_CASE("tiling encode and witness from inline JSON") {
  std::string instance = R"({"tiles":["s","f"],"s":"s","f":"f",
    "H":[["s","f"],["f","f"]],"V":[["s","s"],["f","f"]],"n":1})";
  CliResult enc = run_cli({"tiling", "encode", instance});
  REQUIRE(enc.exit_code == 0);
  json je = out_json(enc);
  CHECK(je["alphabet"].size() == 8);  // 2 tiles x 3 colours + bits

  std::string solution = R"({"m":2,"grid":[["s","f"],["s","f"]]})";
  CliResult wit = run_cli({"tiling", "witness", instance, solution});
  REQUIRE(wit.exit_code == 0);
  json jw = out_json(wit);
  CHECK(jw["length"] == 8);  // 2 rows x 2 cols x (1+1)

  // The emitted witness satisfies the emitted sentence end to end.
  Alphabet alphabet(je["alphabet"].get<std::vector<std::string>>());
  Fo2Ptr sentence = parse_fo2(je["formula"].get<std::string>(), alphabet);
  Word w = parse_word(jw["word"].get<std::string>(), alphabet);
  CHECK(eval_fo2(sentence, w, {}));
}

TEST_CASE("monoid table output shape") {
  CliResult r = run_cli({"monoid", "(ab)*"});
  REQUIRE(r.exit_code == 0);
  json j = out_json(r);
  CHECK(j["size"] == 6);
  CHECK(j["table"].size() == 6);
  CHECK(j["letter_map"]["a"] == 1);
}

TEST_CASE("help is available and exits cleanly") {
  CliResult r = run_cli({"--help"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("analyze") != std::string::npos);
  CliResult sub = run_cli({"equiv", "--help"});
  CHECK(sub.exit_code == 0);
}

TEST_CASE("monoid size warning cap honours the environment override") {
  setenv("BETWIXT_MAX_MONOID", "3", 1);
  CliResult r = run_cli({"analyze", "(ab)*"});
  unsetenv("BETWIXT_MAX_MONOID");
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("warning") != std::string::npos);  // size 6 > cap 3
  CliResult quiet = run_cli({"analyze", "(ab)*"});
  CHECK(quiet.err.empty());
}

TEST_CASE("pretty output stays valid JSON") {
  CliResult r = run_cli({"analyze", "(ab)*", "--pretty"});
  REQUIRE(r.exit_code == 0);
  CHECK(out_json(r)["monoid_size"] == 6);
  CHECK(r.out.find('\n') != std::string::npos);
}
