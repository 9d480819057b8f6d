#pragma once

#include <memory>
#include <string>

#include "betwixt/alphabet.hpp"

namespace betwixt {

struct Regex;
using RegexPtr = std::shared_ptr<const Regex>;

// Regular expression AST. Grammar: `+` union, juxtaposition concatenation,
// postfix `*` and `^+`, `()` grouping, `%e` epsilon, `%0` empty language.
// Letters are single characters, or arbitrary symbols in single quotes.
struct Regex {
  enum class Kind : std::uint8_t { Empty, Epsilon, Letter, Union, Concat, Star, Plus };

  Kind kind{};
  std::uint32_t letter = 0;
  RegexPtr left, right;  // unary nodes use `left`

  static RegexPtr empty();
  static RegexPtr epsilon();
  static RegexPtr letter_of(std::uint32_t index);
  static RegexPtr union_of(RegexPtr a, RegexPtr b);
  static RegexPtr concat(RegexPtr a, RegexPtr b);
  static RegexPtr star(RegexPtr a);
  static RegexPtr plus(RegexPtr a);
};

RegexPtr parse_regex(const std::string& text, const Alphabet& alphabet);
std::string print_regex(const RegexPtr& r, const Alphabet& alphabet);

// Letter symbols occurring in a regex text, in sorted order. Used by the CLI
// to infer an alphabet when none is given.
std::vector<std::string> regex_letter_symbols(const std::string& text);

}  // namespace betwixt
