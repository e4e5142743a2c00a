#include "poly.hpp"

#include <cctype>
#include <set>

namespace ginlab {

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

}  // namespace

RingSpec::RingSpec(std::vector<std::string> variables, CoefficientField field)
    : variables_(std::move(variables)), field_(field) {
  if (variables_.empty()) throw DomainError("ring needs at least one variable");
  std::set<std::string> seen;
  for (const auto& v : variables_) {
    if (!is_identifier(v)) throw DomainError("invalid variable name '" + v + "'");
    if (!seen.insert(v).second) throw DomainError("duplicate variable name '" + v + "'");
  }
}

std::shared_ptr<const RingSpec> RingSpec::standard(std::size_t var_count, CoefficientField field) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= var_count; ++i) names.push_back("x" + std::to_string(i));
  return std::make_shared<const RingSpec>(std::move(names), field);
}

std::optional<std::size_t> RingSpec::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i] == name) return i;
  return std::nullopt;
}

std::string RingSpec::to_string() const {
  std::string s = field_.is_rational() ? "Q[" : "F" + std::to_string(field_.prime()) + "[";
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (i) s += ',';
    s += variables_[i];
  }
  return s + "]";
}

RingPtr with_field(const RingPtr& ring, const CoefficientField& field) {
  if (ring->field() == field) return ring;
  return std::make_shared<const RingSpec>(ring->variables(), field);
}

namespace {

// Recursive-descent parser over Q.
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | identifier | '(' expr ')'
class Parser {
 public:
  using Poly = Polynomial<Rational>;

  Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Poly parse() {
    skip_ws();
    if (at_end()) fail("empty polynomial expression");
    Poly p = expr();
    skip_ws();
    if (!at_end()) unexpected();
    return p;
  }

 private:
  static constexpr std::uint64_t kMaxExponent = 100000;

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_), pos_, 1, pos_ + 1);
  }

  [[noreturn]] void unexpected() const {
    if (at_end()) fail("unexpected end of input");
    const char c = peek();
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(')
      fail("implicit multiplication is not allowed (missing '*')");
    fail(std::string("unexpected character '") + c + "'");
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos_;
      Poly rhs = term();
      acc = c == '+' ? acc + rhs : acc - rhs;
    }
  }

  Poly term() {
    Poly acc = unary();
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '*' && c != '/') return acc;
      const std::size_t op_pos = pos_;
      ++pos_;
      Poly rhs = unary();
      if (c == '*') {
        acc = acc * rhs;
      } else {
        if (rhs.is_zero()) {
          pos_ = op_pos;
          fail("division by zero");
        }
        if (rhs.size() != 1 || rhs.leading_monomial().degree() != 0) {
          pos_ = op_pos;
          fail("division is only allowed by a nonzero constant");
        }
        acc = acc.scaled(Rational(1) / rhs.leading_coeff());
      }
    }
  }

  Poly unary() {
    skip_ws();
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  Poly power() {
    Poly base = primary();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a nonnegative integer exponent after '^'");
    const std::size_t start = pos_;
    const auto e = integer_literal();
    if (e > kMaxExponent) {
      pos_ = start;
      fail("exponent too large");
    }
    const auto ex = static_cast<std::uint32_t>(e.get_ui());
    Poly result = Poly::constant(ring_, Rational(1));
    Poly sq = base;
    for (std::uint32_t k = ex; k != 0; k >>= 1) {
      if (k & 1u) result = result * sq;
      if (k > 1) sq = sq * sq;
    }
    return result;
  }

  mpz_class integer_literal() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Poly primary() {
    skip_ws();
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto v = integer_literal();
      return Poly::constant(ring_, Rational(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const auto name = text_.substr(start, pos_ - start);
      auto idx = ring_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "' (ring " + ring_->to_string() + ")");
      }
      return Poly::variable(ring_, *idx);
    }
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    unexpected();
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial<Rational> parse_polynomial_q(std::string_view text, const RingPtr& ring) {
  if (!ring->field().is_rational()) throw DomainError("parse_polynomial_q needs a rational ring");
  return Parser(text, ring).parse();
}

}  // namespace ginlab
