#pragma once

#include <map>
#include <string>
#include <vector>

#include "qconn/poly.hpp"

namespace qconn::sym {

// Polynomial-coefficient one-form: sum_i f_i d(sym_i). The differential
// symbols are ordinary symbols of the shared table (coordinates); which
// symbols count as coordinates is decided by the operations that need to
// know (differential, substitute).
class FormExpr {
 public:
  FormExpr() = default;
  explicit FormExpr(SymbolTablePtr tab) : tab_(std::move(tab)) {}

  static FormExpr zero(SymbolTablePtr tab) { return FormExpr(std::move(tab)); }
  static FormExpr term(const Poly& coeff, const std::string& dsym);

  const SymbolTablePtr& table() const { return tab_; }
  bool is_zero() const;
  // Coefficient of d(sym); zero polynomial if absent.
  Poly coeff(const std::string& dsym) const;
  const std::map<std::string, Poly>& components() const { return comps_; }

  FormExpr operator-() const;
  FormExpr& operator+=(const FormExpr& o);
  FormExpr& operator-=(const FormExpr& o);
  friend FormExpr operator+(FormExpr a, const FormExpr& b) { return a += b; }
  friend FormExpr operator-(FormExpr a, const FormExpr& b) { return a -= b; }
  FormExpr operator*(const Rational& c) const;
  friend FormExpr operator*(const Poly& p, const FormExpr& f);

  bool operator==(const FormExpr& o) const;
  bool operator!=(const FormExpr& o) const { return !(*this == o); }

  // Exterior derivative of a 0-form: d f = sum_x (df/dx) dx over `coords`.
  static FormExpr d(const Poly& f, const std::vector<std::string>& coords);

  // Simultaneous substitution with the chain rule. Every rule sym -> P
  // rewrites coefficients, and any d(sym) component is replaced by
  // d(P) = sum_y (dP/dy) dy taken over `new_coords`. Symbols without rules
  // pass through unchanged (both in coefficients and in differentials).
  FormExpr substitute(const std::map<std::string, Poly>& rules,
                      const std::vector<std::string>& new_coords) const;

  // A one-form sum_i f_i dx_i over `coords` is exact iff all mixed partials
  // match: d(f_i)/dx_j == d(f_j)/dx_i. Coefficients must not depend on
  // non-coordinate symbols' differentials (they never do by construction).
  bool is_exact(const std::vector<std::string>& coords) const;

  // Potential F with dF == *this (requires is_exact); the constant term is
  // fixed to zero. Throws std::domain_error if the form is not exact.
  Poly potential(const std::vector<std::string>& coords) const;

  // Canonical rendering, e.g. "(m*v)*dx' + (1/2*m*v^2)*dt'"; "0" when empty.
  std::string str() const;

 private:
  SymbolTablePtr tab_;
  std::map<std::string, Poly> comps_;  // no zero components stored
  void put(const std::string& dsym, const Poly& p);
};

} // namespace qconn::sym
