#include "betwixt/regex.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace betwixt {

RegexPtr Regex::empty() {
  auto r = std::make_shared<Regex>();
  r->kind = Kind::Empty;
  return r;
}
RegexPtr Regex::epsilon() {
  auto r = std::make_shared<Regex>();
  r->kind = Kind::Epsilon;
  return r;
}
RegexPtr Regex::letter_of(std::uint32_t index) {
  auto r = std::make_shared<Regex>();
  r->kind = Kind::Letter;
  r->letter = index;
  return r;
}
RegexPtr Regex::union_of(RegexPtr a, RegexPtr b) {
  auto r = std::make_shared<Regex>();
  r->kind = Kind::Union;
  r->left = std::move(a);
  r->right = std::move(b);
  return r;
}
RegexPtr Regex::concat(RegexPtr a, RegexPtr b) {
  auto r = std::make_shared<Regex>();
  r->kind = Kind::Concat;
  r->left = std::move(a);
  r->right = std::move(b);
  return r;
}
RegexPtr Regex::star(RegexPtr a) {
  auto r = std::make_shared<Regex>();
  r->kind = Kind::Star;
  r->left = std::move(a);
  return r;
}
RegexPtr Regex::plus(RegexPtr a) {
  auto r = std::make_shared<Regex>();
  r->kind = Kind::Plus;
  r->left = std::move(a);
  return r;
}

namespace {

bool is_letter_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class RegexParser {
 public:
  RegexParser(const std::string& text, const Alphabet& alphabet)
      : text_(text), alphabet_(alphabet) {}

  RegexPtr parse() {
    skip_ws();
    if (eof()) throw ParseError("empty regular expression", 0);
    RegexPtr r = parse_union();
    skip_ws();
    if (!eof()) throw ParseError("unexpected trailing input in regex", pos_);
    return r;
  }

 private:
  RegexPtr parse_union() {
    RegexPtr r = parse_concat();
    skip_ws();
    while (!eof() && peek() == '+') {
      ++pos_;
      RegexPtr rhs = parse_concat();
      r = Regex::union_of(std::move(r), std::move(rhs));
      skip_ws();
    }
    return r;
  }

  RegexPtr parse_concat() {
    RegexPtr r = parse_postfix();
    while (true) {
      skip_ws();
      if (eof()) break;
      char c = peek();
      if (c == ')' || c == '+') break;
      r = Regex::concat(std::move(r), parse_postfix());
    }
    return r;
  }

  RegexPtr parse_postfix() {
    RegexPtr r = parse_primary();
    while (true) {
      skip_ws();
      if (!eof() && peek() == '*') {
        ++pos_;
        r = Regex::star(std::move(r));
      } else if (!eof() && peek() == '^') {
        ++pos_;
        if (eof() || peek() != '+') throw ParseError("expected '+' after '^'", pos_);
        ++pos_;
        r = Regex::plus(std::move(r));
      } else {
        break;
      }
    }
    return r;
  }

  RegexPtr parse_primary() {
    skip_ws();
    if (eof()) throw ParseError("unexpected end of regex", pos_);
    char c = peek();
    if (c == '(') {
      std::size_t open = pos_;
      ++pos_;
      RegexPtr r = parse_union();
      skip_ws();
      if (eof() || peek() != ')')
        throw ParseError("unbalanced parenthesis opened here", eof() ? pos_ : open);
      ++pos_;
      return r;
    }
    if (c == '%') {
      ++pos_;
      if (!eof() && peek() == 'e') {
        ++pos_;
        return Regex::epsilon();
      }
      if (!eof() && peek() == '0') {
        ++pos_;
        return Regex::empty();
      }
      throw ParseError("expected %e or %0", pos_);
    }
    if (c == '\'') {
      std::size_t start = pos_;
      std::size_t end = text_.find('\'', pos_ + 1);
      if (end == std::string::npos) throw ParseError("unterminated quoted letter", start);
      std::string name = text_.substr(pos_ + 1, end - pos_ - 1);
      pos_ = end + 1;
      return make_letter(name, start);
    }
    if (is_letter_char(c)) {
      std::size_t start = pos_;
      ++pos_;
      return make_letter(std::string(1, c), start);
    }
    throw ParseError(std::string("unexpected character '") + c + "' in regex", pos_);
  }

  RegexPtr make_letter(const std::string& name, std::size_t at) {
    auto idx = alphabet_.find(name);
    if (idx < 0) throw ParseError("unknown letter symbol '" + name + "'", at);
    return Regex::letter_of(static_cast<std::uint32_t>(idx));
  }

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  const std::string& text_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

int precedence(Regex::Kind k) {
  switch (k) {
    case Regex::Kind::Union: return 1;
    case Regex::Kind::Concat: return 2;
    default: return 3;
  }
}

void print_rec(const RegexPtr& r, const Alphabet& a, int parent, std::ostream& out) {
  int self = precedence(r->kind);
  bool paren = self < parent;
  if (paren) out << '(';
  switch (r->kind) {
    case Regex::Kind::Empty: out << "%0"; break;
    case Regex::Kind::Epsilon: out << "%e"; break;
    case Regex::Kind::Letter: {
      const std::string& name = a.letter(r->letter);
      if (name.size() == 1 && is_letter_char(name[0]))
        out << name;
      else
        out << '\'' << name << '\'';
      break;
    }
    case Regex::Kind::Union:
      print_rec(r->left, a, 1, out);
      out << '+';
      print_rec(r->right, a, 1, out);
      break;
    case Regex::Kind::Concat:
      print_rec(r->left, a, 2, out);
      print_rec(r->right, a, 2, out);
      break;
    case Regex::Kind::Star:
      print_rec(r->left, a, 3, out);
      out << '*';
      break;
    case Regex::Kind::Plus:
      print_rec(r->left, a, 3, out);
      out << "^+";
      break;
  }
  if (paren) out << ')';
}

}  // namespace

RegexPtr parse_regex(const std::string& text, const Alphabet& alphabet) {
  return RegexParser(text, alphabet).parse();
}

std::string print_regex(const RegexPtr& r, const Alphabet& alphabet) {
  std::ostringstream out;
  print_rec(r, alphabet, 0, out);
  return out.str();
}

std::vector<std::string> regex_letter_symbols(const std::string& text) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '%') {
      ++i;  // %e / %0
      continue;
    }
    if (c == '\'') {
      std::size_t end = text.find('\'', i + 1);
      if (end == std::string::npos) break;
      seen.insert(text.substr(i + 1, end - i - 1));
      i = end;
      continue;
    }
    if (is_letter_char(c)) seen.insert(std::string(1, c));
  }
  return {seen.begin(), seen.end()};
}

}  // namespace betwixt
