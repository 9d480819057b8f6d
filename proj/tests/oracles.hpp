// Test-only reference implementations, kept independent of the library code
// paths they check.
#pragma once

#include <map>
#include <set>
#include <tuple>

#include "betwixt/alphabet.hpp"
#include "betwixt/games.hpp"
#include "betwixt/regex.hpp"

namespace betwixt::testing {

// Backtracking regex matcher, memoized on (node, from, to).
class NaiveMatcher {
 public:
  bool matches(const RegexPtr& r, const Word& w) {
    memo_.clear();
    word_ = &w;
    return match(r.get(), 0, w.size());
  }

 private:
  bool match(const Regex* r, std::size_t lo, std::size_t hi) {
    auto key = std::make_tuple(r, lo, hi);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool res = false;
    switch (r->kind) {
      case Regex::Kind::Empty: res = false; break;
      case Regex::Kind::Epsilon: res = lo == hi; break;
      case Regex::Kind::Letter:
        res = hi == lo + 1 && word_->letters[lo] == r->letter;
        break;
      case Regex::Kind::Union:
        res = match(r->left.get(), lo, hi) || match(r->right.get(), lo, hi);
        break;
      case Regex::Kind::Concat:
        for (std::size_t mid = lo; mid <= hi && !res; ++mid)
          res = match(r->left.get(), lo, mid) && match(r->right.get(), mid, hi);
        break;
      case Regex::Kind::Star:
        if (lo == hi) {
          res = true;
        } else {
          for (std::size_t mid = lo + 1; mid <= hi && !res; ++mid)
            res = match(r->left.get(), lo, mid) && match(r, mid, hi);
        }
        break;
      case Regex::Kind::Plus:
        if (lo == hi) {
          res = match(r->left.get(), lo, lo);  // one empty repetition
        } else {
          for (std::size_t mid = lo + 1; mid <= hi && !res; ++mid)
            res = match(r->left.get(), lo, mid) &&
                  (mid == hi || match(r, mid, hi));
        }
        break;
    }
    memo_.emplace(key, res);
    return res;
  }

  std::map<std::tuple<const Regex*, std::size_t, std::size_t>, bool> memo_;
  const Word* word_ = nullptr;
};

// Literal memoized minimax over (i1, i2, remaining): the game rules written
// out move by move. Exponentially slower than the shipped solver; used as
// the independent oracle on small inputs.
class MinimaxGame {
 public:
  MinimaxGame(const Word& w1, const Word& w2, std::vector<std::uint32_t> theta)
      : w1_(w1), w2_(w2), theta_(std::move(theta)) {}

  bool marked_win(std::uint32_t i1, std::uint32_t i2, std::uint32_t remaining) {
    if (w1_.at_pos(i1) != w2_.at_pos(i2)) return false;
    if (remaining == 0) return true;
    auto key = std::make_tuple(i1, i2, remaining);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool ok = all_moves_answered(w1_, i1, w2_, i2, remaining) &&
              all_moves_answered(w2_, i2, w1_, i1, remaining, true);
    memo_.emplace(key, ok);
    return ok;
  }

  bool unmarked_win(std::uint32_t k) {
    if (k == 0) return true;
    if (w1_.empty() || w2_.empty()) return w1_.empty() && w2_.empty();
    for (std::uint32_t i1 = 1; i1 <= w1_.size(); ++i1) {
      bool answered = false;
      for (std::uint32_t i2 = 1; i2 <= w2_.size() && !answered; ++i2)
        answered = marked_win(i1, i2, k - 1);
      if (!answered) return false;
    }
    for (std::uint32_t i2 = 1; i2 <= w2_.size(); ++i2) {
      bool answered = false;
      for (std::uint32_t i1 = 1; i1 <= w1_.size() && !answered; ++i1)
        answered = marked_win(i1, i2, k - 1);
      if (!answered) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint32_t> jumped(const Word& w, std::uint32_t from, std::uint32_t to) const {
    std::vector<std::uint32_t> counts(theta_.size(), 0);
    for (std::uint32_t p = std::min(from, to) + 1; p < std::max(from, to); ++p)
      ++counts[w.at_pos(p)];
    return counts;
  }

  bool counts_match(const std::vector<std::uint32_t>& a,
                    const std::vector<std::uint32_t>& b) const {
    for (std::size_t l = 0; l < theta_.size(); ++l)
      if (a[l] != b[l] && (a[l] < theta_[l] || b[l] < theta_[l])) return false;
    return true;
  }

  // Every Player-1 move in wa has a response in wb; `swapped` means wa is the
  // second word, so marked_win must be called with the arguments restored.
  bool all_moves_answered(const Word& wa, std::uint32_t ia, const Word& wb, std::uint32_t ib,
                          std::uint32_t remaining, bool swapped = false) {
    for (std::uint32_t ja = 1; ja <= wa.size(); ++ja) {
      if (ja == ia) continue;
      bool right = ja > ia;
      auto ca = jumped(wa, ia, ja);
      bool answered = false;
      for (std::uint32_t jb = 1; jb <= wb.size() && !answered; ++jb) {
        if (jb == ib) continue;
        if ((jb > ib) != right) continue;
        if (wb.at_pos(jb) != wa.at_pos(ja)) continue;
        if (!counts_match(ca, jumped(wb, ib, jb))) continue;
        answered = swapped ? marked_win(jb, ja, remaining - 1)
                           : marked_win(ja, jb, remaining - 1);
      }
      if (!answered) return false;
    }
    return true;
  }

  const Word& w1_;
  const Word& w2_;
  std::vector<std::uint32_t> theta_;
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, bool> memo_;
};

}  // namespace betwixt::testing
