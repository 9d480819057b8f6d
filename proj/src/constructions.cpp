#include "betwixt/constructions.hpp"

#include <algorithm>

namespace betwixt {

XstWords xst_words(const XstParams& p) {
  if (p.r < 1 || p.s < 1 || p.S < 1 || p.T < 1)
    throw std::invalid_argument("xst parameters must all be at least 1");
  std::vector<std::string> names;
  for (std::uint32_t i = 1; i <= p.r; ++i) names.push_back("a" + std::to_string(i));
  for (std::uint32_t j = 1; j <= p.s; ++j) names.push_back("b" + std::to_string(j));
  for (std::uint32_t k = 1; k <= 2 * (p.r + p.s); ++k) names.push_back("c" + std::to_string(k));
  Alphabet alphabet(std::move(names));

  auto a_idx = [&](std::uint32_t i) { return i - 1; };
  auto b_idx = [&](std::uint32_t j) { return p.r + j - 1; };
  auto c_idx = [&](std::uint32_t k) { return p.r + p.s + k - 1; };

  Word v;
  for (std::uint32_t i = 1; i <= p.r; ++i) {
    v.letters.push_back(c_idx(2 * i - 1));
    v.letters.push_back(a_idx(i));
    v.letters.push_back(c_idx(2 * i));
  }
  for (std::uint32_t j = 1; j <= p.s; ++j) {
    v.letters.push_back(c_idx(2 * p.r + 2 * j - 1));
    v.letters.push_back(b_idx(j));
    v.letters.push_back(c_idx(2 * p.r + 2 * j));
  }

  Word bold_a, bold_b;
  for (std::uint32_t i = 1; i <= p.r; ++i) bold_a.letters.push_back(a_idx(i));
  for (std::uint32_t j = 1; j <= p.s; ++j) bold_b.letters.push_back(b_idx(j));

  Word vS = v.repeated(p.S);
  Word period = vS + bold_a + vS + bold_b + vS;
  Word X = period.repeated(p.T);
  return XstWords{std::move(alphabet), std::move(v), std::move(bold_a), std::move(bold_b),
                  std::move(X)};
}

BlockSignature block_signature(const Word& w, std::uint32_t threshold) {
  if (threshold < 1) throw std::invalid_argument("block threshold must be at least 1");
  for (auto a : w.letters)
    if (a > 1) throw std::invalid_argument("block signatures are defined over a 2-letter alphabet");

  BlockSignature sig;
  if (w.empty()) return sig;

  // Maximal single-letter runs, left to right.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> runs;  // (letter, length)
  for (auto a : w.letters) {
    if (!runs.empty() && runs.back().first == a)
      ++runs.back().second;
    else
      runs.emplace_back(a, 1);
  }

  auto cap = [&](std::uint32_t v) {
    return BlockSignature::Capped{std::min(v, threshold), v >= threshold};
  };

  std::uint32_t last = w.letters.back();
  sig.last_letter = last;
  // Blocks pair runs right to left: (other^k last^l); the leftmost block may
  // be incomplete (missing either half).
  std::uint32_t nblocks = static_cast<std::uint32_t>((runs.size() + 1) / 2);
  sig.block_count = cap(nblocks);

  std::uint32_t keep = std::min(nblocks, threshold);
  for (std::uint32_t b = 0; b < keep; ++b) {
    // Block b (right to left) covers runs [size-2b-2, size-2b-1]; runs
    // alternate, so the right run of every block carries the final letter and
    // the leftmost block of an odd run count has no k-half.
    std::size_t hi = runs.size() - 2 * static_cast<std::size_t>(b);  // one past l-run
    BlockSignature::Block blk;
    blk.l = cap(runs[hi - 1].second);
    blk.k = cap(hi >= 2 ? runs[hi - 2].second : 0);
    sig.blocks.push_back(blk);
  }
  return sig;
}

Word signature_representative(const BlockSignature& sig, std::uint32_t threshold) {
  Word w;
  if (!sig.last_letter) return w;
  std::uint32_t last = *sig.last_letter;
  std::uint32_t other = 1 - last;
  std::uint32_t nblocks = sig.block_count.value;  // saturated values use exactly T
  (void)threshold;
  // Left to right: blocks beyond the stored prefix are minimal (one run of
  // each letter); stored blocks are emitted rightmost last.
  for (std::uint32_t b = nblocks; b-- > 0;) {
    if (b < sig.blocks.size()) {
      const auto& blk = sig.blocks[b];
      for (std::uint32_t i = 0; i < blk.k.value; ++i) w.letters.push_back(other);
      for (std::uint32_t i = 0; i < blk.l.value; ++i) w.letters.push_back(last);
    } else {
      w.letters.push_back(other);
      w.letters.push_back(last);
    }
  }
  return w;
}

nlohmann::ordered_json signature_to_json(const BlockSignature& sig, const Alphabet& alphabet) {
  nlohmann::ordered_json j;
  j["last_letter"] =
      sig.last_letter ? nlohmann::ordered_json(alphabet.letter(*sig.last_letter))
                      : nlohmann::ordered_json(nullptr);
  j["block_count"] = sig.block_count.value;
  j["block_count_saturated"] = sig.block_count.saturated;
  nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
  for (const auto& b : sig.blocks) {
    nlohmann::ordered_json jb;
    jb["k"] = b.k.value;
    jb["k_saturated"] = b.k.saturated;
    jb["l"] = b.l.value;
    jb["l_saturated"] = b.l.saturated;
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

// ---------------------------------------------------------------------------
// Circuit languages

namespace {

RegexPtr bit_any() {
  return Regex::union_of(Regex::letter_of(0), Regex::letter_of(1));  // 0 + 1
}

}  // namespace

CircuitLangs circuit_langs(std::uint32_t m) {
  if (m < 1) throw std::invalid_argument("circuit depth m must be at least 1");
  std::vector<std::string> names{"0", "1"};
  for (std::uint32_t i = 1; i <= m; ++i) names.push_back("g" + std::to_string(i));
  Alphabet alphabet(std::move(names));
  auto gate = [&](std::uint32_t i) { return Regex::letter_of(1 + i); };  // g_i

  RegexPtr C = Regex::concat(gate(1), Regex::plus(bit_any()));
  RegexPtr T = Regex::concat(gate(1),
                             Regex::concat(Regex::star(bit_any()),
                                           Regex::concat(Regex::letter_of(1),
                                                         Regex::star(bit_any()))));
  for (std::uint32_t i = 2; i <= m; ++i) {
    RegexPtr Cp = Regex::concat(gate(i), Regex::plus(C));
    RegexPtr Tp;
    if (i % 2 == 0) {
      Tp = Regex::concat(gate(i), Regex::plus(T));
    } else {
      Tp = Regex::concat(gate(i), Regex::concat(Regex::star(C), Regex::concat(T, Regex::star(C))));
    }
    C = std::move(Cp);
    T = std::move(Tp);
  }
  return CircuitLangs{std::move(alphabet), std::move(C), std::move(T)};
}

namespace {

struct CircuitReader {
  const Word& w;
  const std::vector<std::int32_t>& gate_of;  // letter -> gate index, -1 for bits
  std::size_t pos = 0;

  bool eval_depth(std::uint32_t depth) {
    if (pos >= w.size()) throw std::invalid_argument("truncated circuit encoding");
    std::int32_t g = gate_of[w.letters[pos]];
    if (g != static_cast<std::int32_t>(depth))
      throw std::invalid_argument("expected gate g" + std::to_string(depth) +
                                  " at position " + std::to_string(pos + 1));
    ++pos;
    bool is_or = depth % 2 == 1;
    bool acc = !is_or;
    bool any = false;
    if (depth == 1) {
      while (pos < w.size() && gate_of[w.letters[pos]] < 0) {
        any = true;
        acc = acc || w.letters[pos] == 1;
        ++pos;
      }
    } else {
      while (pos < w.size() && gate_of[w.letters[pos]] == static_cast<std::int32_t>(depth - 1)) {
        any = true;
        bool v = eval_depth(depth - 1);
        acc = is_or ? (acc || v) : (acc && v);
      }
    }
    if (!any) throw std::invalid_argument("gate with no children at position " +
                                          std::to_string(pos + 1));
    return acc;
  }
};

}  // namespace

bool circuit_eval(const Word& w, const Alphabet& alphabet) {
  std::vector<std::int32_t> gate_of(alphabet.size(), -1);
  std::uint32_t max_gate = 0;
  for (std::uint32_t i = 0; i < alphabet.size(); ++i) {
    const std::string& n = alphabet.letter(i);
    if (n.size() >= 2 && n[0] == 'g') {
      std::uint32_t g = 0;
      for (std::size_t k = 1; k < n.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(n[k]))) {
          g = 0;
          break;
        }
        g = g * 10 + static_cast<std::uint32_t>(n[k] - '0');
      }
      if (g > 0) {
        gate_of[i] = static_cast<std::int32_t>(g);
        max_gate = std::max(max_gate, g);
      }
    } else if (n != "0" && n != "1") {
      throw std::invalid_argument("circuit alphabet letters must be 0, 1, or g<i>");
    }
  }
  if (w.empty()) throw std::invalid_argument("empty word is not a circuit encoding");
  std::int32_t top = gate_of[w.letters[0]];
  if (top < 1) throw std::invalid_argument("circuit encoding must start with a gate letter");
  CircuitReader reader{w, gate_of, 0};
  bool value = reader.eval_depth(static_cast<std::uint32_t>(top));
  if (reader.pos != w.size())
    throw std::invalid_argument("trailing letters after circuit encoding at position " +
                                std::to_string(reader.pos + 1));
  return value;
}

}  // namespace betwixt
