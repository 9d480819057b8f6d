#include "betwixt/monoid.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace betwixt {

std::vector<std::uint32_t> MulTable::idempotents() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t e = 0; e < size; ++e)
    if (is_idempotent(e)) out.push_back(e);
  return out;
}

std::uint32_t FiniteMonoid::image_of(const Word& w) const {
  std::uint32_t x = m.identity;
  for (auto a : w.letters) x = m.mul(x, letter_map.at(a));
  return x;
}

FiniteMonoid syntactic_monoid(const Dfa& d) {
  const std::uint32_t n = d.num_states;
  const std::size_t k = d.alphabet.size();

  std::vector<std::uint32_t> ident(n);
  for (std::uint32_t q = 0; q < n; ++q) ident[q] = q;

  std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
  std::vector<std::vector<std::uint32_t>> elems;
  std::vector<std::string> names;
  auto intern = [&](std::vector<std::uint32_t> t, const std::string& name) {
    auto it = ids.find(t);
    if (it != ids.end()) return std::make_pair(it->second, false);
    auto id = static_cast<std::uint32_t>(elems.size());
    ids.emplace(t, id);
    elems.push_back(std::move(t));
    names.push_back(name);
    return std::make_pair(id, true);
  };

  intern(ident, "1");
  std::vector<std::uint32_t> letter_map(k);
  std::vector<std::vector<std::uint32_t>> letter_tr(k);
  for (std::uint32_t a = 0; a < k; ++a) {
    std::vector<std::uint32_t> t(n);
    for (std::uint32_t q = 0; q < n; ++q) t[q] = d.step(q, a);
    letter_tr[a] = t;
    letter_map[a] = intern(std::move(t), d.alphabet.letter(a)).first;
  }

  // BFS by word length: names end up as shortest generating words.
  for (std::uint32_t cur = 0; cur < elems.size(); ++cur) {
    for (std::uint32_t a = 0; a < k; ++a) {
      std::vector<std::uint32_t> t(n);
      for (std::uint32_t q = 0; q < n; ++q) t[q] = letter_tr[a][elems[cur][q]];
      std::string name = cur == 0 ? d.alphabet.letter(a) : names[cur] + d.alphabet.letter(a);
      intern(std::move(t), name);
    }
  }

  FiniteMonoid mo{MulTable{}, d.alphabet, std::move(letter_map), {}, {}};
  mo.m.size = static_cast<std::uint32_t>(elems.size());
  mo.m.identity = 0;
  mo.m.table.resize(static_cast<std::size_t>(mo.m.size) * mo.m.size);
  for (std::uint32_t x = 0; x < mo.m.size; ++x)
    for (std::uint32_t y = 0; y < mo.m.size; ++y) {
      std::vector<std::uint32_t> t(n);
      for (std::uint32_t q = 0; q < n; ++q) t[q] = elems[y][elems[x][q]];
      mo.m.table[x * mo.m.size + y] = ids.at(t);
    }
  mo.element_repr = std::move(elems);
  mo.element_names = std::move(names);
  return mo;
}

SemigroupView semigroup_view(const FiniteMonoid& m) {
  std::vector<bool> in(m.m.size, false);
  std::vector<std::uint32_t> stack;
  for (auto x : m.letter_map)
    if (!in[x]) {
      in[x] = true;
      stack.push_back(x);
    }
  // Closure under right multiplication by generators.
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (auto g : m.letter_map) {
      auto y = m.m.mul(x, g);
      if (!in[y]) {
        in[y] = true;
        stack.push_back(y);
      }
    }
  }
  SemigroupView s;
  for (std::uint32_t x = 0; x < m.m.size; ++x)
    if (in[x]) s.elements.push_back(x);
  return s;
}

std::uint32_t omega_power(const MulTable& m, std::uint32_t x) {
  // Walk x, x², x³, ... until the first repeat; the idempotent lies on the
  // cycle of this rho-shaped orbit.
  std::vector<std::uint32_t> order;
  std::vector<std::int32_t> seen_at(m.size, -1);
  std::uint32_t cur = x;
  while (seen_at[cur] < 0) {
    seen_at[cur] = static_cast<std::int32_t>(order.size());
    order.push_back(cur);
    cur = m.mul(cur, x);
  }
  for (std::size_t i = static_cast<std::size_t>(seen_at[cur]); i < order.size(); ++i)
    if (m.is_idempotent(order[i])) return order[i];
  throw std::logic_error("no idempotent power found; multiplication table is not a monoid");
}

bool j_leq(const MulTable& m, std::uint32_t x, std::uint32_t y) {
  for (std::uint32_t s = 0; s < m.size; ++s) {
    auto sy = m.mul(s, y);
    for (std::uint32_t t = 0; t < m.size; ++t)
      if (m.mul(sy, t) == x) return true;
  }
  return false;
}

LocalSubmonoid local_submonoid(const MulTable& m, std::uint32_t e) {
  if (!m.is_idempotent(e)) throw std::invalid_argument("local_submonoid: e is not idempotent");
  LocalSubmonoid out;
  out.e = e;

  std::vector<std::uint32_t> gens;
  for (std::uint32_t x = 0; x < m.size; ++x)
    if (j_leq(m, e, x)) gens.push_back(x);

  std::vector<bool> in(m.size, false);
  std::vector<std::uint32_t> stack;
  in[m.identity] = true;
  stack.push_back(m.identity);
  for (auto g : gens)
    if (!in[g]) {
      in[g] = true;
      stack.push_back(g);
    }
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (auto g : gens) {
      auto y = m.mul(x, g);
      if (!in[y]) {
        in[y] = true;
        stack.push_back(y);
      }
    }
  }
  for (std::uint32_t x = 0; x < m.size; ++x)
    if (in[x]) out.me_elements.push_back(x);

  std::vector<bool> loc(m.size, false);
  for (auto x : out.me_elements) loc[m.mul(m.mul(e, x), e)] = true;
  for (std::uint32_t x = 0; x < m.size; ++x)
    if (loc[x]) out.local_elements.push_back(x);

  std::vector<std::uint32_t> pos(m.size, 0);
  for (std::uint32_t i = 0; i < out.local_elements.size(); ++i) pos[out.local_elements[i]] = i;
  auto sz = static_cast<std::uint32_t>(out.local_elements.size());
  out.local.size = sz;
  out.local.identity = pos[e];
  out.local.table.resize(static_cast<std::size_t>(sz) * sz);
  for (std::uint32_t i = 0; i < sz; ++i)
    for (std::uint32_t j = 0; j < sz; ++j)
      out.local.table[i * sz + j] = pos[m.mul(out.local_elements[i], out.local_elements[j])];
  return out;
}

bool is_aperiodic(const MulTable& m) {
  for (std::uint32_t x = 0; x < m.size; ++x) {
    auto w = omega_power(m, x);
    if (m.mul(w, x) != w) return false;
  }
  return true;
}

bool is_in_DA(const MulTable& m) {
  for (std::uint32_t x = 0; x < m.size; ++x)
    for (std::uint32_t y = 0; y < m.size; ++y) {
      auto w = omega_power(m, m.mul(x, y));
      if (m.mul(m.mul(w, x), w) != w) return false;
    }
  return true;
}

bool is_in_MeDA(const MulTable& m) {
  for (auto e : m.idempotents())
    if (!is_in_DA(local_submonoid(m, e).local)) return false;
  return true;
}

namespace {

// Monoid eSe (unit e) inside a subsemigroup S of a parent monoid.
MulTable corner_monoid(const MulTable& m, const std::vector<std::uint32_t>& s, std::uint32_t e) {
  std::vector<bool> loc(m.size, false);
  for (auto x : s) loc[m.mul(m.mul(e, x), e)] = true;
  std::vector<std::uint32_t> elems;
  for (std::uint32_t x = 0; x < m.size; ++x)
    if (loc[x]) elems.push_back(x);
  std::vector<std::uint32_t> pos(m.size, 0);
  for (std::uint32_t i = 0; i < elems.size(); ++i) pos[elems[i]] = i;
  MulTable out;
  out.size = static_cast<std::uint32_t>(elems.size());
  out.identity = pos[e];
  out.table.resize(static_cast<std::size_t>(out.size) * out.size);
  for (std::uint32_t i = 0; i < out.size; ++i)
    for (std::uint32_t j = 0; j < out.size; ++j)
      out.table[i * out.size + j] = pos[m.mul(elems[i], elems[j])];
  return out;
}

}  // namespace

bool fo2suc_definable(const Dfa& d) {
  FiniteMonoid mo = syntactic_monoid(d);
  SemigroupView s = semigroup_view(mo);
  for (auto e : s.elements) {
    if (!mo.m.is_idempotent(e)) continue;
    if (!is_in_DA(corner_monoid(mo.m, s.elements, e))) return false;
  }
  return true;
}

DefinabilityReport definability_report(const std::string& regex_text, const Alphabet& alphabet) {
  RegexPtr r = parse_regex(regex_text, alphabet);
  Dfa d = compile_min_dfa(r, alphabet);
  FiniteMonoid mo = syntactic_monoid(d);

  DefinabilityReport rep{regex_text, alphabet};
  rep.dfa_states = d.num_states;
  rep.monoid_size = mo.m.size;
  rep.aperiodic = is_aperiodic(mo.m);
  rep.in_DA = is_in_DA(mo.m);
  rep.in_MeDA = is_in_MeDA(mo.m);
  rep.fo2suc = fo2suc_definable(d);
  rep.verdict_fo = rep.aperiodic ? "yes" : "no";
  rep.verdict_fo2 = rep.in_DA ? "yes" : "no";
  rep.verdict_fo2suc = rep.fo2suc ? "yes" : "no";
  if (!rep.in_MeDA) {
    rep.verdict_fo2bet = "no";
  } else if (alphabet.size() <= 2) {
    rep.verdict_fo2bet = "yes";
  } else {
    rep.verdict_fo2bet = "yes (necessary condition holds; sufficiency proven only for |A|=2)";
  }
  return rep;
}

nlohmann::ordered_json report_to_json(const DefinabilityReport& r) {
  nlohmann::ordered_json j;
  j["regex"] = r.regex;
  j["alphabet"] = r.alphabet.letters();
  j["dfa_states"] = r.dfa_states;
  j["monoid_size"] = r.monoid_size;
  j["aperiodic"] = r.aperiodic;
  j["in_DA"] = r.in_DA;
  j["in_MeDA"] = r.in_MeDA;
  j["fo2suc"] = r.fo2suc;
  j["verdicts"] = {{"FO", r.verdict_fo},
                   {"FO2", r.verdict_fo2},
                   {"FO2suc", r.verdict_fo2suc},
                   {"FO2bet", r.verdict_fo2bet}};
  return j;
}

nlohmann::ordered_json monoid_to_json(const FiniteMonoid& m) {
  nlohmann::ordered_json j;
  j["alphabet"] = m.alphabet.letters();
  j["size"] = m.m.size;
  j["identity"] = m.m.identity;
  j["elements"] = m.element_names;
  nlohmann::ordered_json lm = nlohmann::ordered_json::object();
  for (std::uint32_t a = 0; a < m.alphabet.size(); ++a)
    lm[m.alphabet.letter(a)] = m.letter_map[a];
  j["letter_map"] = lm;
  std::vector<std::vector<std::uint32_t>> rows;
  for (std::uint32_t x = 0; x < m.m.size; ++x) {
    std::vector<std::uint32_t> row;
    for (std::uint32_t y = 0; y < m.m.size; ++y) row.push_back(m.m.mul(x, y));
    rows.push_back(std::move(row));
  }
  j["table"] = rows;
  return j;
}

}  // namespace betwixt
