#include "betwixt/games.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace betwixt {

namespace {

// The winning relation W_r of the r-round marked game is an equivalence on
// marked words, so the minimax recursion collapses to class refinement:
//   class_0(p)     = letter(p)
//   class_{r+1}(p) = (class_r(p), { (direction, capped-jump-vector, class_r(q))
//                                   : q != p in the same word })
// W_r(p, q) then holds iff class_r(p) == class_r(q). Destination letters are
// part of class_r(q); capped per-letter jump counts encode the theta rule
// (counts equal, or both at least theta). Cost is O(rounds · n² log n) for n
// total positions, which is what lets the X_{S,T} checks run at full size.
class Refiner {
 public:
  Refiner(const Word& w1, const Word& w2, const GameConfig& cfg, const Alphabet& alphabet) {
    if (alphabet.size() > 16)
      throw std::invalid_argument("game solver supports at most 16 letters");
    if (!cfg.theta.empty() && cfg.theta.size() != alphabet.size())
      throw std::invalid_argument("theta must list one threshold per letter");
    for (std::uint32_t a = 0; a < alphabet.size(); ++a) {
      std::uint32_t t = cfg.theta_of(a);
      if (t < 1) throw std::invalid_argument("theta must be at least 1 for every letter");
      if (t > 15) throw std::invalid_argument("game solver supports thresholds up to 15");
      caps_.push_back(t);
    }
    split_ = w1.size();
    letters_.reserve(w1.size() + w2.size());
    for (auto a : w1.letters) letters_.push_back(check_letter(a, alphabet));
    for (auto a : w2.letters) letters_.push_back(check_letter(a, alphabet));
    cls_.assign(letters_.begin(), letters_.end());
  }

  void refine_rounds(std::uint32_t rounds) {
    for (std::uint32_t r = 0; r < rounds; ++r) refine_once();
  }

  std::uint32_t class_of(bool second_word, std::uint32_t pos_1based) const {
    return cls_[(second_word ? split_ : 0) + pos_1based - 1];
  }

  // Distinct classes present in each word.
  std::pair<std::set<std::uint32_t>, std::set<std::uint32_t>> class_sets() const {
    std::set<std::uint32_t> s1(cls_.begin(), cls_.begin() + split_);
    std::set<std::uint32_t> s2(cls_.begin() + split_, cls_.end());
    return {std::move(s1), std::move(s2)};
  }

 private:
  static std::uint32_t check_letter(std::uint32_t a, const Alphabet& alphabet) {
    if (a >= alphabet.size())
      throw std::invalid_argument("word letter index out of range for this alphabet");
    return a;
  }

  void refine_once() {
    const std::size_t n = letters_.size();
    std::vector<std::uint32_t> next(n);
    // Interned signature -> class id; signature is the own class followed by
    // the sorted unique move pairs.
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
    std::vector<std::vector<std::uint64_t>> keys;  // class id -> signature
    std::vector<std::uint64_t> sig;

    std::unordered_map<std::uint64_t, std::uint32_t> vec_ids;
    auto vec_id = [&](std::uint64_t packed) {
      auto [it, fresh] = vec_ids.emplace(packed, static_cast<std::uint32_t>(vec_ids.size()));
      (void)fresh;
      return it->second;
    };

    std::vector<std::uint64_t> pairs;
    std::vector<std::uint32_t> counts(caps_.size());
    for (std::size_t p = 0; p < n; ++p) {
      std::size_t lo = p < split_ ? 0 : split_;
      std::size_t hi = p < split_ ? split_ : n;
      pairs.clear();
      for (int dir = 0; dir < 2; ++dir) {
        std::fill(counts.begin(), counts.end(), 0u);
        std::uint64_t packed = 0;
        std::uint32_t vid = vec_id(packed);
        if (dir == 0) {
          for (std::size_t q = p + 1; q < hi; ++q) {
            pairs.push_back(pair_key(0, vid, cls_[q]));
            vid = bump(counts, packed, letters_[q], vid, vec_id);
          }
        } else {
          for (std::size_t q = p; q-- > lo;) {
            pairs.push_back(pair_key(1, vid, cls_[q]));
            vid = bump(counts, packed, letters_[q], vid, vec_id);
          }
        }
      }
      std::sort(pairs.begin(), pairs.end());
      pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

      sig.clear();
      sig.push_back(cls_[p]);
      sig.insert(sig.end(), pairs.begin(), pairs.end());
      std::uint64_t h = 1469598103934665603ull;
      for (auto v : sig) {
        h ^= v;
        h *= 1099511628211ull;
      }
      auto& bucket = buckets[h];
      std::uint32_t id = UINT32_MAX;
      for (auto cand : bucket)
        if (keys[cand] == sig) {
          id = cand;
          break;
        }
      if (id == UINT32_MAX) {
        id = static_cast<std::uint32_t>(keys.size());
        keys.push_back(sig);
        bucket.push_back(id);
      }
      next[p] = id;
    }
    cls_ = std::move(next);
  }

  template <typename VecId>
  std::uint32_t bump(std::vector<std::uint32_t>& counts, std::uint64_t& packed,
                     std::uint32_t letter, std::uint32_t vid, VecId&& vec_id) {
    std::uint32_t cap = caps_[letter];
    if (counts[letter] < cap) {
      ++counts[letter];
      packed += 1ull << (4 * letter);
      return vec_id(packed);
    }
    return vid;
  }

  static std::uint64_t pair_key(std::uint32_t dir, std::uint32_t vid, std::uint32_t cls) {
    return (static_cast<std::uint64_t>(dir) << 62) |
           (static_cast<std::uint64_t>(vid) << 32) | cls;
  }

  std::vector<std::uint32_t> caps_;
  std::vector<std::uint32_t> letters_;
  std::vector<std::uint32_t> cls_;
  std::size_t split_ = 0;
};

void check_caps(const Word& w1, const Word& w2, std::uint32_t rounds, const GameConfig& cfg) {
  if (w1.size() > cfg.max_len || w2.size() > cfg.max_len)
    throw std::invalid_argument("word exceeds the solver length cap (raise max_len)");
  if (rounds > cfg.max_rounds)
    throw std::invalid_argument("round count exceeds the solver cap (raise max_rounds)");
}

}  // namespace

bool solve_marked_game(const GamePosition& p, const GameConfig& cfg, const Alphabet& alphabet) {
  if (p.w1.empty() || p.w2.empty())
    throw std::invalid_argument("marked games need nonempty words");
  if (p.i1 < 1 || p.i1 > p.w1.size() || p.i2 < 1 || p.i2 > p.w2.size())
    throw std::invalid_argument("marked position out of range");
  check_caps(p.w1, p.w2, p.remaining, cfg);
  Refiner ref(p.w1, p.w2, cfg, alphabet);
  ref.refine_rounds(p.remaining);
  return ref.class_of(false, p.i1) == ref.class_of(true, p.i2);
}

bool equiv_k(const Word& w1, const Word& w2, const GameConfig& cfg, const Alphabet& alphabet) {
  if (cfg.rounds == 0) return true;
  check_caps(w1, w2, cfg.rounds, cfg);
  if (w1.empty() || w2.empty()) return w1.empty() && w2.empty();
  Refiner ref(w1, w2, cfg, alphabet);
  ref.refine_rounds(cfg.rounds - 1);
  auto [s1, s2] = ref.class_sets();
  return s1 == s2;
}

std::optional<std::uint32_t> distinguishing_depth(const Word& w1, const Word& w2,
                                                  std::uint32_t max_k, const GameConfig& cfg,
                                                  const Alphabet& alphabet) {
  if (max_k == 0) return std::nullopt;
  check_caps(w1, w2, max_k, cfg);
  if (w1.empty() || w2.empty()) {
    if (w1.empty() && w2.empty()) return std::nullopt;
    return 1;  // placement in the nonempty word cannot be answered
  }
  Refiner ref(w1, w2, cfg, alphabet);
  for (std::uint32_t k = 1; k <= max_k; ++k) {
    if (k > 1) ref.refine_rounds(1);
    auto [s1, s2] = ref.class_sets();
    if (s1 != s2) return k;
  }
  return std::nullopt;
}

}  // namespace betwixt
