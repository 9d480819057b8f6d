#include "betwixt/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "betwixt/constructions.hpp"
#include "betwixt/detail/lexer.hpp"
#include "betwixt/fo2.hpp"
#include "betwixt/games.hpp"
#include "betwixt/monoid.hpp"
#include "betwixt/satgen.hpp"
#include "betwixt/tl.hpp"

namespace betwixt {

namespace {

using nlohmann::ordered_json;

std::string dump(const ordered_json& j, bool pretty) {
  return pretty ? j.dump(2) + "\n" : j.dump() + "\n";
}

// Letters mentioned in formula text: identifiers and quoted symbols that are
// not grammar keywords. Used only when --alphabet is not given.
std::set<std::string> formula_symbols(const std::string& text, bool temporal) {
  static const std::set<std::string> fo2_reserved{"T", "F", "x", "y", "bet", "succ",
                                                  "Ex", "Ey", "Ax", "Ay"};
  static const std::set<std::string> tl_reserved{"F", "P", "X", "true", "false"};
  const auto& reserved = temporal ? tl_reserved : fo2_reserved;
  std::set<std::string> out;
  detail::Lexer lex(text);
  while (!lex.at_end()) {
    auto t = lex.next();
    if (t.kind == detail::Token::Kind::Quoted) out.insert(t.text);
    if (t.kind == detail::Token::Kind::Ident && !reserved.count(t.text)) out.insert(t.text);
  }
  return out;
}

// Letters mentioned in a word argument (token or per-character form).
std::set<std::string> word_symbols(const std::string& text) {
  std::set<std::string> out;
  bool tokens = text.find('\'') != std::string::npos ||
                text.find_first_of(" \t\n") != std::string::npos;
  if (tokens) {
    std::size_t i = 0;
    while (i < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
        continue;
      }
      if (text[i] == '\'') {
        auto j = text.find('\'', i + 1);
        if (j == std::string::npos) break;
        out.insert(text.substr(i + 1, j - i - 1));
        i = j + 1;
      } else {
        auto j = text.find_first_of(" \t\n'", i);
        if (j == std::string::npos) j = text.size();
        out.insert(text.substr(i, j - i));
        i = j;
      }
    }
  } else {
    for (char c : text) out.insert(std::string(1, c));
  }
  return out;
}

Alphabet alphabet_from_flag_or(const std::string& flag, const std::set<std::string>& inferred) {
  if (!flag.empty()) return Alphabet::from_spec(flag);
  if (inferred.empty()) throw std::invalid_argument("cannot infer an alphabet; pass --alphabet");
  return Alphabet(std::vector<std::string>(inferred.begin(), inferred.end()));
}

std::uint64_t monoid_warn_cap() {
  if (const char* env = std::getenv("BETWIXT_MAX_MONOID")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 5000;
}

nlohmann::json read_json_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '{') return nlohmann::json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw std::invalid_argument("cannot open file: " + arg);
  nlohmann::json j;
  in >> j;
  return j;
}

std::vector<std::uint32_t> parse_theta(const std::string& spec, const Alphabet& alphabet) {
  std::vector<std::uint32_t> theta(alphabet.size(), 1);
  if (spec.empty()) return theta;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("theta entries look like letter=threshold");
    std::string letter = item.substr(0, eq);
    std::uint32_t v = static_cast<std::uint32_t>(std::stoul(item.substr(eq + 1)));
    theta.at(alphabet.index_of(letter)) = v;
  }
  return theta;
}

struct Ctx {
  std::ostringstream out, err;
  int exit_code = 0;
};

void cmd_analyze(Ctx& ctx, const std::string& regex, const std::string& alpha, bool pretty) {
  std::set<std::string> inferred;
  for (const auto& s : regex_letter_symbols(regex)) inferred.insert(s);
  Alphabet alphabet = alphabet_from_flag_or(alpha, inferred);
  DefinabilityReport rep = definability_report(regex, alphabet);
  if (rep.monoid_size > monoid_warn_cap())
    ctx.err << "warning: monoid size " << rep.monoid_size << " exceeds the cap "
            << monoid_warn_cap() << "; J-order checks are brute force\n";
  ctx.out << dump(report_to_json(rep), pretty);
}

void cmd_monoid(Ctx& ctx, const std::string& regex, const std::string& alpha, bool pretty) {
  std::set<std::string> inferred;
  for (const auto& s : regex_letter_symbols(regex)) inferred.insert(s);
  Alphabet alphabet = alphabet_from_flag_or(alpha, inferred);
  Dfa d = compile_min_dfa(parse_regex(regex, alphabet), alphabet);
  FiniteMonoid m = syntactic_monoid(d);
  if (m.m.size > monoid_warn_cap())
    ctx.err << "warning: monoid size " << m.m.size << " exceeds the cap " << monoid_warn_cap()
            << "; J-order checks are brute force\n";
  ordered_json j;
  j["regex"] = regex;
  auto mj = monoid_to_json(m);
  for (auto& [key, val] : mj.items()) j[key] = val;
  ctx.out << dump(j, pretty);
}

void cmd_eval(Ctx& ctx, const std::string& logic, const std::string& formula,
              const std::string& word_text, const std::string& alpha, bool pretty) {
  bool temporal = logic == "tl";
  auto inferred = formula_symbols(formula, temporal);
  if (!word_text.empty())
    for (const auto& s : word_symbols(word_text)) inferred.insert(s);
  Alphabet alphabet = alphabet_from_flag_or(alpha, inferred);
  Word w = parse_word(word_text, alphabet);
  bool value = false;
  if (temporal) {
    TlPtr f = parse_tl(formula, alphabet);
    value = accepts_tl(f, w);
  } else {
    Fo2Ptr f = parse_fo2(formula, alphabet);
    if (!is_sentence(f))
      throw std::invalid_argument("eval requires a sentence (no free variables)");
    value = eval_fo2(f, w, {});
  }
  ordered_json j;
  j["value"] = value;
  ctx.out << dump(j, pretty);
  ctx.exit_code = value ? 0 : 1;
}

void cmd_equiv(Ctx& ctx, std::uint32_t depth, const std::string& theta_spec,
               const std::string& w1_text, const std::string& w2_text, const std::string& alpha,
               std::uint32_t max_len, std::uint32_t max_rounds, bool pretty) {
  std::set<std::string> inferred = word_symbols(w1_text);
  for (const auto& s : word_symbols(w2_text)) inferred.insert(s);
  if (w1_text.empty() && w2_text.empty() && alpha.empty()) inferred.insert("a");
  Alphabet alphabet = alphabet_from_flag_or(alpha, inferred);
  Word w1 = parse_word(w1_text, alphabet);
  Word w2 = parse_word(w2_text, alphabet);
  GameConfig cfg;
  cfg.rounds = depth;
  cfg.theta = parse_theta(theta_spec, alphabet);
  cfg.max_len = max_len;
  cfg.max_rounds = max_rounds;
  bool eq = equiv_k(w1, w2, cfg, alphabet);
  auto d = distinguishing_depth(w1, w2, depth, cfg, alphabet);
  ordered_json j;
  j["equivalent"] = eq;
  j["depth"] = d ? ordered_json(*d) : ordered_json(nullptr);
  ctx.out << dump(j, pretty);
  ctx.exit_code = eq ? 0 : 1;
}

void cmd_translate(Ctx& ctx, const std::string& from, const std::string& to,
                   const std::string& formula, const std::string& alpha, bool pretty) {
  ordered_json j;
  if (from == "btl-inv" && to == "utl-inv") {
    Alphabet alphabet = alphabet_from_flag_or(alpha, formula_symbols(formula, true));
    TlPtr f = parse_tl(formula, alphabet);
    TlPtr g = btlinv_to_utlinv(f, alphabet);
    j["formula"] = print_tl(g, alphabet);
    j["alphabet"] = alphabet.letters();
  } else if (from == "tl" && to == "fo2") {
    Alphabet alphabet = alphabet_from_flag_or(alpha, formula_symbols(formula, true));
    TlPtr f = parse_tl(formula, alphabet);
    Fo2Ptr g = tl_to_fo2_sentence(f, alphabet);
    j["formula"] = print_fo2(g, alphabet);
    j["alphabet"] = alphabet.letters();
  } else if (from == "fo2-th" && to == "fo2-bet") {
    Alphabet alphabet = alphabet_from_flag_or(alpha, formula_symbols(formula, false));
    Fo2Ptr f = parse_fo2(formula, alphabet);
    ThresholdReduction red = reduce_th_to_bet(f, alphabet);
    j["formula"] = print_fo2(red.sentence, red.alphabet);
    j["alphabet"] = red.alphabet.letters();
  } else {
    throw CLI::ValidationError("translate",
                               "supported directions: btl-inv->utl-inv, tl->fo2, fo2-th->fo2-bet");
  }
  ctx.out << dump(j, pretty);
}

void cmd_sat(Ctx& ctx, const std::string& formula, const std::string& alpha,
             std::uint32_t max_len, unsigned parallel, bool pretty) {
  Alphabet alphabet = alphabet_from_flag_or(alpha, formula_symbols(formula, false));
  Fo2Ptr f = parse_fo2(formula, alphabet);
  auto witness = bounded_sat(f, alphabet, max_len, parallel);
  ordered_json j;
  j["witness"] = witness ? ordered_json(print_word(*witness, alphabet)) : ordered_json(nullptr);
  if (witness) j["length"] = witness->size();
  ctx.out << dump(j, pretty);
  ctx.exit_code = witness ? 0 : 1;
}

void cmd_tiling_encode(Ctx& ctx, const std::string& instance_arg, bool pretty) {
  TilingInstance inst = tiling_from_json(read_json_arg(instance_arg));
  TilingEncoding enc = encode_tiling(inst);
  ordered_json j;
  j["alphabet"] = enc.alphabet.letters();
  j["formula"] = print_fo2(enc.sentence, enc.alphabet);
  ctx.out << dump(j, pretty);
}

void cmd_tiling_witness(Ctx& ctx, const std::string& instance_arg, const std::string& solution_arg,
                        bool pretty) {
  TilingInstance inst = tiling_from_json(read_json_arg(instance_arg));
  TilingSolution sol = solution_from_json(read_json_arg(solution_arg), inst);
  TilingEncoding enc = encode_tiling(inst);
  Word w = tiling_witness(inst, sol);
  ordered_json j;
  j["word"] = print_word(w, enc.alphabet);
  j["length"] = w.size();
  ctx.out << dump(j, pretty);
}

void cmd_generate_xst(Ctx& ctx, std::uint32_t r, std::uint32_t s, std::uint32_t S,
                      std::uint32_t T, bool pretty) {
  XstWords xw = xst_words({r, s, S, T});
  ordered_json j;
  j["alphabet"] = xw.alphabet.letters();
  j["v"] = print_word(xw.v, xw.alphabet);
  j["bold_a"] = print_word(xw.bold_a, xw.alphabet);
  j["bold_b"] = print_word(xw.bold_b, xw.alphabet);
  j["x"] = print_word(xw.X, xw.alphabet);
  j["x_length"] = xw.X.size();
  ctx.out << dump(j, pretty);
}

void cmd_generate_circuit(Ctx& ctx, std::uint32_t m, bool pretty) {
  CircuitLangs cl = circuit_langs(m);
  ordered_json j;
  j["m"] = m;
  j["alphabet"] = cl.alphabet.letters();
  j["C"] = print_regex(cl.C, cl.alphabet);
  j["T"] = print_regex(cl.T, cl.alphabet);
  ctx.out << dump(j, pretty);
}

void cmd_congruence(Ctx& ctx, std::uint32_t threshold, const std::string& word_text,
                    const std::string& alpha, bool pretty) {
  Alphabet alphabet =
      alpha.empty() ? Alphabet({"a", "b"}) : Alphabet::from_spec(alpha);
  if (alphabet.size() != 2)
    throw std::invalid_argument("congruence signatures are defined over a 2-letter alphabet");
  Word w = parse_word(word_text, alphabet);
  BlockSignature sig = block_signature(w, threshold);
  ordered_json j;
  j["word"] = print_word(w, alphabet);
  j["threshold"] = threshold;
  auto sj = signature_to_json(sig, alphabet);
  for (auto& [key, val] : sj.items()) j[key] = val;
  ctx.out << dump(j, pretty);
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  Ctx ctx;

  CLI::App app{"decision procedures and tooling for two-variable logics with betweenness"};
  app.name("betwixt");
  app.require_subcommand(1);
  app.fallthrough(true);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "indent JSON output");

  std::string regex, alpha, formula, word1, word2, logic = "fo2";
  std::string from, to, theta_spec, instance_arg, solution_arg;
  std::uint32_t depth = 1, max_len = 64, max_rounds = 8, threshold = 1;
  std::uint32_t xr = 1, xs = 1, xS = 1, xT = 1, cm = 1;
  unsigned parallel = 1;

  auto* analyze = app.add_subcommand("analyze", "definability report for a regular expression");
  analyze->add_option("regex", regex)->required();
  analyze->add_option("--alphabet", alpha, "comma-separated letters");

  auto* monoid_cmd = app.add_subcommand("monoid", "syntactic monoid multiplication table");
  monoid_cmd->add_option("regex", regex)->required();
  monoid_cmd->add_option("--alphabet", alpha);

  auto* eval = app.add_subcommand("eval", "evaluate a formula on a word");
  eval->add_option("--logic", logic)->check(CLI::IsMember({"fo2", "tl"}));
  eval->add_option("formula", formula)->required();
  eval->add_option("word", word1);
  eval->add_option("--alphabet", alpha);

  auto* equiv = app.add_subcommand("equiv", "k-round game equivalence of two words");
  equiv->add_option("--depth", depth)->required();
  equiv->add_option("--theta", theta_spec, "per-letter thresholds, e.g. a=2,b=1");
  equiv->add_option("--max-len", max_len);
  equiv->add_option("--max-depth", max_rounds);
  equiv->add_option("w1", word1);
  equiv->add_option("w2", word2);
  equiv->add_option("--alphabet", alpha);

  auto* translate = app.add_subcommand("translate", "formula translations");
  translate->add_option("--from", from)->required()
      ->check(CLI::IsMember({"btl-inv", "tl", "fo2-th"}));
  translate->add_option("--to", to)->required()
      ->check(CLI::IsMember({"utl-inv", "fo2", "fo2-bet"}));
  translate->add_option("formula", formula)->required();
  translate->add_option("--alphabet", alpha);

  auto* sat = app.add_subcommand("sat", "bounded-model search for an FO2 sentence");
  sat->add_option("formula", formula)->required();
  sat->add_option("--max-len", max_len)->required();
  sat->add_option("--parallel", parallel);
  sat->add_option("--alphabet", alpha);

  auto* tiling = app.add_subcommand("tiling", "corridor-tiling encodings");
  auto* tenc = tiling->add_subcommand("encode", "instance -> FO2 sentence");
  tenc->add_option("instance", instance_arg, "JSON file or inline JSON")->required();
  auto* twit = tiling->add_subcommand("witness", "instance + solution -> word");
  twit->add_option("instance", instance_arg)->required();
  twit->add_option("solution", solution_arg)->required();
  tiling->require_subcommand(1);

  auto* generate = app.add_subcommand("generate", "proof-object word families");
  auto* gxst = generate->add_subcommand("xst", "X_{S,T} words");
  gxst->add_option("--r", xr);
  gxst->add_option("--s", xs);
  gxst->add_option("--S", xS);
  gxst->add_option("--T", xT);
  auto* gcirc = generate->add_subcommand("circuit", "C_m and T_m regexes");
  gcirc->add_option("--m", cm)->required();
  generate->require_subcommand(1);

  auto* congruence = app.add_subcommand("congruence", "block-congruence signature");
  congruence->add_option("--threshold", threshold)->required();
  congruence->add_option("word", word1);
  congruence->add_option("--alphabet", alpha);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    ctx.out << app.help();
    return {0, ctx.out.str(), ctx.err.str()};
  } catch (const CLI::ParseError& e) {
    ctx.err << e.what() << "\n";
    return {2, ctx.out.str(), ctx.err.str()};
  }

  try {
    if (*analyze) cmd_analyze(ctx, regex, alpha, pretty);
    else if (*monoid_cmd) cmd_monoid(ctx, regex, alpha, pretty);
    else if (*eval) cmd_eval(ctx, logic, formula, word1, alpha, pretty);
    else if (*equiv) cmd_equiv(ctx, depth, theta_spec, word1, word2, alpha, max_len, max_rounds, pretty);
    else if (*translate) cmd_translate(ctx, from, to, formula, alpha, pretty);
    else if (*sat) cmd_sat(ctx, formula, alpha, max_len, parallel, pretty);
    else if (*tiling) {
      if (*tenc) cmd_tiling_encode(ctx, instance_arg, pretty);
      else cmd_tiling_witness(ctx, instance_arg, solution_arg, pretty);
    } else if (*generate) {
      if (*gxst) cmd_generate_xst(ctx, xr, xs, xS, xT, pretty);
      else cmd_generate_circuit(ctx, cm, pretty);
    } else if (*congruence) {
      cmd_congruence(ctx, threshold, word1, alpha, pretty);
    }
  } catch (const CLI::Error& e) {
    ctx.err << e.what() << "\n";
    return {2, ctx.out.str(), ctx.err.str()};
  } catch (const ParseError& e) {
    ctx.err << "parse error: " << e.what() << "\n";
    return {3, ctx.out.str(), ctx.err.str()};
  } catch (const nlohmann::json::exception& e) {
    ctx.err << "json error: " << e.what() << "\n";
    return {3, ctx.out.str(), ctx.err.str()};
  } catch (const std::invalid_argument& e) {
    ctx.err << "error: " << e.what() << "\n";
    return {3, ctx.out.str(), ctx.err.str()};
  }
  return {ctx.exit_code, ctx.out.str(), ctx.err.str()};
}

}  // namespace betwixt
