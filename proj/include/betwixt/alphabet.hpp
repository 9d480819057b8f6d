#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace betwixt {

// Error for any textual input (regexes, formulas, words, JSON-adjacent text).
// `offset` is the 0-based byte offset of the problem in the input.
struct ParseError : std::runtime_error {
  std::size_t offset;
  ParseError(const std::string& msg, std::size_t off)
      : std::runtime_error(msg + " (at offset " + std::to_string(off) + ")"),
        offset(off) {}
};

// Ordered list of distinct letter symbols; the order fixes letter indices.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> letters);

  // "a,b,c" -> alphabet, preserving the given order.
  static Alphabet from_spec(const std::string& csv);

  std::size_t size() const { return letters_.size(); }
  const std::string& letter(std::size_t i) const { return letters_.at(i); }
  const std::vector<std::string>& letters() const { return letters_; }

  bool contains(std::string_view name) const;
  // Throws std::invalid_argument on unknown letters.
  std::uint32_t index_of(std::string_view name) const;
  // -1 when absent.
  std::int64_t find(std::string_view name) const;

  bool operator==(const Alphabet& o) const { return letters_ == o.letters_; }

 private:
  std::vector<std::string> letters_;
  std::map<std::string, std::uint32_t, std::less<>> index_;
};

// Finite word as letter indices into some alphabet. Positions are 1-based in
// every public operation that talks about positions.
struct Word {
  std::vector<std::uint32_t> letters;

  Word() = default;
  explicit Word(std::vector<std::uint32_t> ls) : letters(std::move(ls)) {}

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  // 1-based access.
  std::uint32_t at_pos(std::size_t pos) const { return letters.at(pos - 1); }

  Word operator+(const Word& o) const;
  Word repeated(std::size_t times) const;

  auto operator<=>(const Word&) const = default;
};

// Accepts either one token per letter (tokens may be single-quoted, separated
// by whitespace) or, when the text has no whitespace/quotes and letters are
// single characters, one letter per character.
Word parse_word(const std::string& text, const Alphabet& alphabet);
std::string print_word(const Word& w, const Alphabet& alphabet);

// All words of length 0..max_len, by length then lexicographically by letter
// index.
std::vector<Word> enumerate_words(const Alphabet& alphabet, std::size_t max_len);

// Streaming variant; visitor returns false to stop. Returns false if stopped.
bool for_each_word(const Alphabet& alphabet, std::size_t max_len,
                   const std::function<bool(const Word&)>& visit);

}  // namespace betwixt
