#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qconn/rational.hpp"

namespace qconn::sym {

// Fixed, ordered set of symbols for one computation context. Polynomials
// sharing a table can be combined; mixing tables is an error.
class SymbolTable {
 public:
  explicit SymbolTable(std::vector<std::string> names);

  int index(const std::string& name) const;  // throws on unknown symbol
  const std::string& name(int i) const { return names_.at(i); }
  int size() const { return static_cast<int>(names_.size()); }
  bool has(const std::string& name) const;

 private:
  std::vector<std::string> names_;
};

using SymbolTablePtr = std::shared_ptr<const SymbolTable>;

SymbolTablePtr make_symbols(std::vector<std::string> names);

// Exponent vector aligned with a SymbolTable. Negative exponents are allowed
// (used for the 1/c and 1/g monomials of the relativistic expansion).
using Exponents = std::vector<int32_t>;

// Multivariate polynomial with exact rational coefficients.
// Canonical invariant: no stored zero coefficients, so is_zero() and
// operator== are structural.
class Poly {
 public:
  Poly() = default;
  explicit Poly(SymbolTablePtr tab) : tab_(std::move(tab)) {}

  static Poly zero(SymbolTablePtr tab) { return Poly(std::move(tab)); }
  static Poly constant(SymbolTablePtr tab, const Rational& c);
  static Poly symbol(SymbolTablePtr tab, const std::string& name, int power = 1);
  // Convenience: coefficient times a product of powers, e.g.
  // monomial(tab, {1,2}, {{"m",1},{"v",2}}) is (1/2) m v^2.
  static Poly monomial(SymbolTablePtr tab, const Rational& coeff,
                       const std::vector<std::pair<std::string, int>>& powers);

  const SymbolTablePtr& table() const { return tab_; }
  bool is_zero() const { return terms_.empty(); }
  int term_count() const { return static_cast<int>(terms_.size()); }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator*(const Rational& c) const;
  Poly pow(unsigned n) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Partial derivative with respect to one symbol.
  Poly derivative(const std::string& sym) const;
  // Antiderivative in one symbol (exponent+1 rule); requires no exponent -1.
  Poly integral(const std::string& sym) const;

  // Simultaneous substitution symbol -> polynomial. Substituted symbols must
  // occur with non-negative exponents only. Rules may reference a different
  // (target) table; all rules must share it. Symbols without a rule must also
  // exist in the target table.
  Poly substitute(const std::map<std::string, Poly>& rules) const;

  // Numeric evaluation; every symbol present in the polynomial needs a value.
  double eval(const std::map<std::string, double>& point) const;
  Rational eval_exact(const std::map<std::string, Rational>& point) const;

  // Degree range of one symbol over all terms; zero polynomial gives {0,0}.
  int max_degree(const std::string& sym) const;
  int min_degree(const std::string& sym) const;

  // Drops every term whose exponent of `sym` is below `cutoff`.
  Poly drop_below(const std::string& sym, int cutoff) const;
  // Keeps only terms whose exponent of `sym` equals `k`.
  Poly component(const std::string& sym, int k) const;
  // Substitutes sym = 0, i.e. keeps only terms with exponent 0 of sym.
  Poly at_zero(const std::string& sym) const { return component(sym, 0); }

  // Canonical rendering: terms sorted by the internal monomial order, exact
  // fractions, e.g. "m*c^3 - p*g*t*c + (-1/6)*g^2*m*t'^3".
  std::string str() const;

  // Raw term access (monomial order), used by the series layer.
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  void set_term(const Exponents& e, const Rational& c);  // c==0 erases

 private:
  void check_same_table(const Poly& o) const;

  SymbolTablePtr tab_;
  std::map<Exponents, Rational> terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p * c; }

} // namespace qconn::sym
