#include "betwixt/alphabet.hpp"

#include <algorithm>
#include <sstream>

namespace betwixt {

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw std::invalid_argument("alphabet must be nonempty");
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i].empty()) throw std::invalid_argument("empty letter symbol");
    auto [it, fresh] = index_.emplace(letters_[i], static_cast<std::uint32_t>(i));
    if (!fresh) throw std::invalid_argument("duplicate letter symbol: " + letters_[i]);
  }
}

Alphabet Alphabet::from_spec(const std::string& csv) {
  std::vector<std::string> ls;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      ls.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  ls.push_back(cur);
  return Alphabet(std::move(ls));
}

bool Alphabet::contains(std::string_view name) const {
  return index_.find(name) != index_.end();
}

std::uint32_t Alphabet::index_of(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    throw std::invalid_argument("unknown letter symbol: " + std::string(name));
  return it->second;
}

std::int64_t Alphabet::find(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

Word Word::operator+(const Word& o) const {
  Word r(*this);
  r.letters.insert(r.letters.end(), o.letters.begin(), o.letters.end());
  return r;
}

Word Word::repeated(std::size_t times) const {
  Word r;
  r.letters.reserve(letters.size() * times);
  for (std::size_t i = 0; i < times; ++i)
    r.letters.insert(r.letters.end(), letters.begin(), letters.end());
  return r;
}

Word parse_word(const std::string& text, const Alphabet& alphabet) {
  Word w;
  bool has_ws = false, has_quote = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) has_ws = true;
    if (c == '\'') has_quote = true;
  }
  if (text.empty()) return w;

  if (has_ws || has_quote) {
    std::size_t i = 0;
    while (i < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
        continue;
      }
      std::string tok;
      if (text[i] == '\'') {
        std::size_t j = text.find('\'', i + 1);
        if (j == std::string::npos) throw ParseError("unterminated quote in word", i);
        tok = text.substr(i + 1, j - i - 1);
        i = j + 1;
      } else {
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
               text[j] != '\'')
          ++j;
        tok = text.substr(i, j - i);
        i = j;
      }
      auto idx = alphabet.find(tok);
      if (idx < 0) throw ParseError("unknown letter symbol '" + tok + "' in word", i);
      w.letters.push_back(static_cast<std::uint32_t>(idx));
    }
    return w;
  }

  // Whole text is one letter name (covers multi-character alphabets).
  if (auto idx = alphabet.find(text); idx >= 0) {
    w.letters.push_back(static_cast<std::uint32_t>(idx));
    return w;
  }
  for (std::size_t i = 0; i < text.size(); ++i) {
    auto idx = alphabet.find(std::string_view(&text[i], 1));
    if (idx < 0)
      throw ParseError(std::string("unknown letter symbol '") + text[i] + "' in word", i);
    w.letters.push_back(static_cast<std::uint32_t>(idx));
  }
  return w;
}

std::string print_word(const Word& w, const Alphabet& alphabet) {
  bool all_single = true;
  for (auto l : w.letters)
    if (alphabet.letter(l).size() != 1) all_single = false;
  std::ostringstream out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (!all_single && i) out << ' ';
    out << alphabet.letter(w.letters[i]);
  }
  return out.str();
}

bool for_each_word(const Alphabet& alphabet, std::size_t max_len,
                   const std::function<bool(const Word&)>& visit) {
  const std::uint32_t k = static_cast<std::uint32_t>(alphabet.size());
  Word w;
  for (std::size_t len = 0; len <= max_len; ++len) {
    w.letters.assign(len, 0);
    while (true) {
      if (!visit(w)) return false;
      // Odometer: rightmost digit increments first.
      std::size_t i = len;
      while (i > 0) {
        if (++w.letters[i - 1] < k) break;
        w.letters[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
    }
  }
  return true;
}

std::vector<Word> enumerate_words(const Alphabet& alphabet, std::size_t max_len) {
  std::vector<Word> out;
  for_each_word(alphabet, max_len, [&](const Word& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

}  // namespace betwixt
