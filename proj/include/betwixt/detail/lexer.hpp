#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "betwixt/alphabet.hpp"

namespace betwixt::detail {

struct Token {
  enum class Kind : std::uint8_t { Ident, Quoted, Number, Punct, End };
  Kind kind{};
  std::string text;
  std::uint64_t value = 0;
  std::size_t offset = 0;
};

// Tokenizer for the formula grammars. Multi-character operators are emitted
// as single Punct tokens: <= <-> -> >= != is not used; set below.
class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }
  bool at_end() const { return tok_.kind == Token::Kind::End; }

  bool is_punct(const char* p) const {
    return tok_.kind == Token::Kind::Punct && tok_.text == p;
  }
  bool is_ident(const char* p) const {
    return tok_.kind == Token::Kind::Ident && tok_.text == p;
  }
  void expect_punct(const char* p) {
    if (!is_punct(p))
      throw ParseError(std::string("expected '") + p + "'", tok_.offset);
    advance();
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok_ = Token{};
    tok_.offset = pos_;
    if (pos_ >= text_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    char c = text_[pos_];
    if (c == '\'') {
      std::size_t end = text_.find('\'', pos_ + 1);
      if (end == std::string::npos) throw ParseError("unterminated quoted letter", pos_);
      tok_.kind = Token::Kind::Quoted;
      tok_.text = text_.substr(pos_ + 1, end - pos_ - 1);
      pos_ = end + 1;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = 0;
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        std::uint64_t d = static_cast<std::uint64_t>(text_[pos_] - '0');
        if (v > (UINT64_MAX - d) / 10) throw ParseError("number literal too large", start);
        v = v * 10 + d;
        ++pos_;
      }
      tok_.kind = Token::Kind::Number;
      tok_.value = v;
      tok_.text = text_.substr(start, pos_ - start);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      tok_.kind = Token::Kind::Ident;
      tok_.text = text_.substr(start, pos_ - start);
      return;
    }
    tok_.kind = Token::Kind::Punct;
    auto two = text_.substr(pos_, 2);
    auto three = text_.substr(pos_, 3);
    if (three == "<->") {
      tok_.text = three;
      pos_ += 3;
      return;
    }
    if (two == "<=" || two == ">=" || two == "->") {
      tok_.text = two;
      pos_ += 2;
      return;
    }
    tok_.text = std::string(1, c);
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token tok_;
};

}  // namespace betwixt::detail
