#include "betwixt/dfa.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace betwixt {

namespace {

// Thompson construction with epsilon edges.
struct Nfa {
  struct State {
    std::vector<std::uint32_t> eps;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // (letter, target)
  };
  std::vector<State> states;
  std::uint32_t add() {
    states.emplace_back();
    return static_cast<std::uint32_t>(states.size() - 1);
  }
};

struct Frag {
  std::uint32_t start, accept;
};

Frag build(Nfa& n, const RegexPtr& r) {
  switch (r->kind) {
    case Regex::Kind::Empty: {
      Frag f{n.add(), n.add()};
      return f;
    }
    case Regex::Kind::Epsilon: {
      Frag f{n.add(), n.add()};
      n.states[f.start].eps.push_back(f.accept);
      return f;
    }
    case Regex::Kind::Letter: {
      Frag f{n.add(), n.add()};
      n.states[f.start].edges.emplace_back(r->letter, f.accept);
      return f;
    }
    case Regex::Kind::Union: {
      Frag a = build(n, r->left), b = build(n, r->right);
      Frag f{n.add(), n.add()};
      n.states[f.start].eps = {a.start, b.start};
      n.states[a.accept].eps.push_back(f.accept);
      n.states[b.accept].eps.push_back(f.accept);
      return f;
    }
    case Regex::Kind::Concat: {
      Frag a = build(n, r->left), b = build(n, r->right);
      n.states[a.accept].eps.push_back(b.start);
      return {a.start, b.accept};
    }
    case Regex::Kind::Star: {
      Frag a = build(n, r->left);
      Frag f{n.add(), n.add()};
      n.states[f.start].eps = {a.start, f.accept};
      n.states[a.accept].eps.push_back(a.start);
      n.states[a.accept].eps.push_back(f.accept);
      return f;
    }
    case Regex::Kind::Plus: {
      Frag a = build(n, r->left);
      Frag f{n.add(), n.add()};
      n.states[f.start].eps = {a.start};
      n.states[a.accept].eps.push_back(a.start);
      n.states[a.accept].eps.push_back(f.accept);
      return f;
    }
  }
  throw std::logic_error("unreachable regex kind");
}

std::set<std::uint32_t> eps_closure(const Nfa& n, std::set<std::uint32_t> s) {
  std::vector<std::uint32_t> stack(s.begin(), s.end());
  while (!stack.empty()) {
    auto q = stack.back();
    stack.pop_back();
    for (auto t : n.states[q].eps)
      if (s.insert(t).second) stack.push_back(t);
  }
  return s;
}

// Subset construction; the empty subset acts as the dead state, so the result
// is complete by construction.
Dfa determinize(const Nfa& n, const Frag& f, const Alphabet& alphabet) {
  const std::size_t k = alphabet.size();
  std::map<std::set<std::uint32_t>, std::uint32_t> ids;
  std::vector<std::set<std::uint32_t>> subsets;
  auto intern = [&](std::set<std::uint32_t> s) {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    auto id = static_cast<std::uint32_t>(subsets.size());
    ids.emplace(s, id);
    subsets.push_back(std::move(s));
    return id;
  };

  Dfa d{alphabet, 0, 0, {}, {}};
  intern(eps_closure(n, {f.start}));
  for (std::uint32_t q = 0; q < subsets.size(); ++q) {
    for (std::uint32_t a = 0; a < k; ++a) {
      std::set<std::uint32_t> next;
      for (auto s : subsets[q])
        for (auto [l, t] : n.states[s].edges)
          if (l == a) next.insert(t);
      d.delta.push_back(intern(eps_closure(n, std::move(next))));
    }
  }
  d.num_states = static_cast<std::uint32_t>(subsets.size());
  d.initial = 0;
  d.accepting.resize(d.num_states, false);
  for (std::uint32_t q = 0; q < d.num_states; ++q)
    d.accepting[q] = subsets[q].count(f.accept) > 0;
  return d;
}

Dfa canonicalize(const Dfa& d) {
  const std::size_t k = d.alphabet.size();
  std::vector<std::uint32_t> order(d.num_states, UINT32_MAX);
  std::vector<std::uint32_t> bfs;
  order[d.initial] = 0;
  bfs.push_back(d.initial);
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (std::uint32_t a = 0; a < k; ++a) {
      auto t = d.step(bfs[i], a);
      if (order[t] == UINT32_MAX) {
        order[t] = static_cast<std::uint32_t>(bfs.size());
        bfs.push_back(t);
      }
    }
  Dfa out{d.alphabet, static_cast<std::uint32_t>(bfs.size()), 0, {}, {}};
  out.accepting.resize(out.num_states);
  out.delta.resize(out.num_states * k);
  for (std::uint32_t q = 0; q < d.num_states; ++q) {
    if (order[q] == UINT32_MAX) continue;  // unreachable
    out.accepting[order[q]] = d.accepting[q];
    for (std::uint32_t a = 0; a < k; ++a) out.delta[order[q] * k + a] = order[d.step(q, a)];
  }
  return out;
}

// Moore partition refinement on a reachable complete DFA.
Dfa minimize(const Dfa& d) {
  const std::size_t k = d.alphabet.size();
  std::vector<std::uint32_t> cls(d.num_states);
  std::uint32_t classes = 0;
  {
    std::map<bool, std::uint32_t> ids;
    for (std::uint32_t q = 0; q < d.num_states; ++q) {
      auto [it, fresh] = ids.emplace(d.accepting[q], static_cast<std::uint32_t>(ids.size()));
      (void)fresh;
      cls[q] = it->second;
    }
    classes = static_cast<std::uint32_t>(ids.size());
  }
  while (true) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> sig_ids;
    std::vector<std::uint32_t> next(d.num_states);
    for (std::uint32_t q = 0; q < d.num_states; ++q) {
      std::vector<std::uint32_t> sig;
      sig.reserve(k + 1);
      sig.push_back(cls[q]);
      for (std::uint32_t a = 0; a < k; ++a) sig.push_back(cls[d.step(q, a)]);
      auto [it, fresh] = sig_ids.emplace(std::move(sig), static_cast<std::uint32_t>(sig_ids.size()));
      next[q] = it->second;
      (void)fresh;
    }
    std::uint32_t count = static_cast<std::uint32_t>(sig_ids.size());
    cls = std::move(next);
    if (count == classes) break;
    classes = count;
  }
  Dfa out{d.alphabet, classes, cls[d.initial], {}, {}};
  out.accepting.resize(classes, false);
  out.delta.assign(classes * k, 0);
  for (std::uint32_t q = 0; q < d.num_states; ++q) {
    out.accepting[cls[q]] = d.accepting[q];
    for (std::uint32_t a = 0; a < k; ++a) out.delta[cls[q] * k + a] = cls[d.step(q, a)];
  }
  return out;
}

}  // namespace

std::uint32_t Dfa::run(const Word& w) const {
  std::uint32_t q = initial;
  for (auto a : w.letters) {
    if (a >= alphabet.size())
      throw std::invalid_argument("word letter index out of range for this automaton");
    q = step(q, a);
  }
  return q;
}

Dfa compile_min_dfa(const RegexPtr& r, const Alphabet& alphabet) {
  Nfa n;
  Frag f = build(n, r);
  Dfa d = determinize(n, f, alphabet);
  d = canonicalize(d);  // drop unreachable before refinement
  d = minimize(d);
  return canonicalize(d);
}

bool accepts(const Dfa& d, const Word& w) { return d.accepting[d.run(w)]; }

bool dfa_isomorphic(const Dfa& a, const Dfa& b) {
  if (!(a.alphabet == b.alphabet)) return false;
  Dfa ca = canonicalize(a), cb = canonicalize(b);
  return ca.num_states == cb.num_states && ca.initial == cb.initial &&
         ca.accepting == cb.accepting && ca.delta == cb.delta;
}

nlohmann::ordered_json dfa_to_json(const Dfa& d) {
  nlohmann::ordered_json j;
  j["alphabet"] = d.alphabet.letters();
  j["states"] = d.num_states;
  j["initial"] = d.initial;
  std::vector<std::uint32_t> acc;
  for (std::uint32_t q = 0; q < d.num_states; ++q)
    if (d.accepting[q]) acc.push_back(q);
  j["accepting"] = acc;
  std::vector<std::vector<std::uint32_t>> rows;
  for (std::uint32_t q = 0; q < d.num_states; ++q) {
    std::vector<std::uint32_t> row;
    for (std::uint32_t a = 0; a < d.alphabet.size(); ++a) row.push_back(d.step(q, a));
    rows.push_back(std::move(row));
  }
  j["delta"] = rows;
  return j;
}

Dfa dfa_from_json(const nlohmann::json& j) {
  Alphabet alphabet(j.at("alphabet").get<std::vector<std::string>>());
  Dfa d{alphabet, j.at("states").get<std::uint32_t>(), j.at("initial").get<std::uint32_t>(), {}, {}};
  d.accepting.resize(d.num_states, false);
  for (auto q : j.at("accepting").get<std::vector<std::uint32_t>>()) {
    if (q >= d.num_states) throw std::invalid_argument("accepting state out of range");
    d.accepting[q] = true;
  }
  auto rows = j.at("delta").get<std::vector<std::vector<std::uint32_t>>>();
  if (rows.size() != d.num_states) throw std::invalid_argument("delta row count mismatch");
  for (const auto& row : rows) {
    if (row.size() != alphabet.size()) throw std::invalid_argument("delta column count mismatch");
    for (auto t : row) {
      if (t >= d.num_states) throw std::invalid_argument("delta target out of range");
      d.delta.push_back(t);
    }
  }
  if (d.initial >= d.num_states) throw std::invalid_argument("initial state out of range");
  return d;
}

}  // namespace betwixt
