#pragma once

#include <string>

#include "qconn/poly.hpp"

namespace qconn::sym {

// Truncated Laurent-style series graded by the power of one distinguished
// symbol (here always "c"). A term's grade is its integer exponent of that
// symbol; every operation discards terms whose grade falls below `cutoff`.
// Positive grades (c^2, c^3 from rest energy and A0) coexist with negative
// ones from the expansion parameters gt/c, gx'/c^2, p/mc.
class GradedSeries {
 public:
  GradedSeries() : cutoff_(0) {}
  GradedSeries(Poly p, std::string grade_sym, int cutoff);

  static GradedSeries from(const Poly& p, const std::string& sym, int cutoff) {
    return GradedSeries(p, sym, cutoff);
  }

  const Poly& poly() const { return poly_; }
  const std::string& grade_symbol() const { return sym_; }
  int cutoff() const { return cutoff_; }
  bool is_zero() const { return poly_.is_zero(); }

  // Grade range actually present; zero series reports {0,0}.
  int min_grade() const { return poly_.min_degree(sym_); }
  int max_grade() const { return poly_.max_degree(sym_); }

  GradedSeries operator-() const;
  friend GradedSeries operator+(const GradedSeries& a, const GradedSeries& b);
  friend GradedSeries operator-(const GradedSeries& a, const GradedSeries& b);
  friend GradedSeries operator*(const GradedSeries& a, const GradedSeries& b);
  GradedSeries operator*(const Rational& c) const;

  // Derivative with respect to a non-grade symbol (grades are unchanged).
  GradedSeries derivative(const std::string& sym) const;

  // (1 + eps)^alpha for alpha in {..., -1, -1/2, 1/2, ...} where *this must
  // have constant term exactly 1 and every other term of strictly negative
  // grade. Exact rational binomial coefficients; terminates because eps^k
  // eventually drops below the cutoff entirely.
  GradedSeries pow_binomial(const Rational& alpha) const;

  // Re-truncation to a higher cutoff (used to present working series at the
  // requested final cutoff).
  GradedSeries truncated(int cutoff) const;

  // Audit invariant: no stored term has grade below cutoff.
  bool audit() const { return poly_.is_zero() || min_grade() >= cutoff_; }

  bool operator==(const GradedSeries& o) const;
  std::string str() const { return poly_.str(); }

 private:
  static void check_compatible(const GradedSeries& a, const GradedSeries& b);

  Poly poly_;
  std::string sym_;
  int cutoff_;
};

} // namespace qconn::sym
