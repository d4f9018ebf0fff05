#include <cctype>

#include "pimvar/errors.hpp"
#include "pimvar/pi.hpp"

namespace pimvar::pi {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
}

class Parser {
 public:
  Parser(std::string_view text, bool allow_hole) : s_(text), allow_hole_(allow_hole) {}

  ProcPtr parse_all() {
    auto p = parallel();
    skip();
    if (i_ != s_.size()) fail("unexpected input");
    return p;
  }

 private:
  ProcPtr parallel() {
    std::vector<ProcPtr> parts{unary()};
    while (accept('|')) parts.push_back(unary());
    return par(parts);
  }

  ProcPtr unary() {
    skip();
    if (i_ >= s_.size()) fail("expected a process");
    char c = s_[i_];
    if (c == '0') {
      ++i_;
      return nil();
    }
    if (c == '!') {
      ++i_;
      return repl(unary());
    }
    if (c == '(') {
      ++i_;
      auto p = parallel();
      expect(')');
      return p;
    }
    if (c == '[' && allow_hole_) {
      ++i_;
      expect(']');
      return hole();
    }
    std::size_t at = i_;
    Name id = ident();
    if (id == "stop") return stop();
    if (id == "new") {
      std::vector<Name> names{ident()};
      while (accept(',')) names.push_back(ident());
      expect('.');
      return nu(names, unary());
    }
    skip();
    if (accept('(')) {
      Name b = ident();
      expect(')');
      return in(id, b, continuation());
    }
    if (accept('<')) {
      Name m = ident();
      expect('>');
      return out(id, m, continuation());
    }
    i_ = at;
    fail("expected a prefix after name '" + id + "'");
  }

  ProcPtr continuation() {
    if (accept('.')) return unary();
    return nil();
  }

  Name ident() {
    skip();
    if (i_ >= s_.size() || !ident_start(s_[i_])) fail("expected a name");
    std::size_t b = i_;
    while (i_ < s_.size() && ident_char(s_[i_])) ++i_;
    return Name(s_.substr(b, i_ - b));
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, i_); }

  std::string_view s_;
  bool allow_hole_;
  std::size_t i_ = 0;
};

}  // namespace

ProcPtr parse(std::string_view text) { return freshen(Parser(text, false).parse_all()); }

ProcPtr parse_context(std::string_view text) { return freshen(Parser(text, true).parse_all()); }

}  // namespace pimvar::pi
