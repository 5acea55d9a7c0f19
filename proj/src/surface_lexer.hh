#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "coexpr/error.hh"

namespace coexpr::detail {

/// Shared lexer for the LTS and guarded-string surface syntaxes.
class SurfaceLexer {
 public:
  explicit SurfaceLexer(std::string_view t) : t_(t) {}

  char peek() {
    while (p_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[p_]))) ++p_;
    return p_ < t_.size() ? t_[p_] : '\0';
  }
  bool accept(std::string_view tok) {
    peek();
    if (t_.substr(p_, tok.size()) != tok) return false;
    p_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) throw ParseError("expected '" + std::string(tok) + "'", p_);
  }
  bool at_word() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  std::string word() {
    peek();
    std::size_t start = p_;
    while (p_ < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[p_])) || t_[p_] == '_')) ++p_;
    if (start == p_) throw ParseError("expected identifier", p_);
    return std::string(t_.substr(start, p_ - start));
  }
  std::size_t pos() const { return p_; }
  bool done() { return peek() == '\0'; }

 private:
  std::string_view t_;
  std::size_t p_ = 0;
};

}  // namespace coexpr::detail
