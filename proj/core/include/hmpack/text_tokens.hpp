#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "hmpack/errors.hpp"
#include "hmpack/rational.hpp"

namespace hmpack {

/// Whitespace tokenizer that remembers line/column positions for diagnostics.
/// '#' starts a comment running to the end of the line.
class TokenReader {
 public:
  struct Token {
    std::string_view text;
    std::size_t line = 0;
    std::size_t column = 0;
  };

  explicit TokenReader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  Token next(std::string_view what) {
    skip_space();
    if (pos_ >= text_.size()) throw error("unexpected end of input, expected " + std::string(what));
    Token t{{}, line_, col_};
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) && text_[pos_] != '#') advance();
    t.text = text_.substr(start, pos_ - start);
    return t;
  }

  std::int64_t next_int(std::string_view what) {
    Token t = next(what);
    try {
      Rational r = Rational::parse(t.text);
      if (!r.is_integer()) throw InputError("not an integer");
      return r.to_int64();
    } catch (const InputError&) {
      throw error_at(t, "expected integer " + std::string(what) + ", got '" + std::string(t.text) + "'");
    }
  }

  Rational next_rational(std::string_view what) {
    Token t = next(what);
    try {
      return Rational::parse(t.text);
    } catch (const InputError& e) {
      throw error_at(t, std::string(what) + ": " + e.what());
    }
  }

  InputError error(const std::string& msg) const {
    return InputError(std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg);
  }
  static InputError error_at(const Token& t, const std::string& msg) {
    return InputError(std::to_string(t.line) + ":" + std::to_string(t.column) + ": " + msg);
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (is_space(text_[pos_])) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace hmpack
