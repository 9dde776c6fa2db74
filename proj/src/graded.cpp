#include "qconn/graded.hpp"

#include <stdexcept>

namespace qconn::sym {

GradedSeries::GradedSeries(Poly p, std::string grade_sym, int cutoff)
    : poly_(p.drop_below(grade_sym, cutoff)), sym_(std::move(grade_sym)), cutoff_(cutoff) {}

void GradedSeries::check_compatible(const GradedSeries& a, const GradedSeries& b) {
  if (a.sym_ != b.sym_ || a.cutoff_ != b.cutoff_)
    throw std::invalid_argument("GradedSeries: incompatible grade or cutoff");
}

GradedSeries GradedSeries::operator-() const { return GradedSeries(-poly_, sym_, cutoff_); }

GradedSeries operator+(const GradedSeries& a, const GradedSeries& b) {
  GradedSeries::check_compatible(a, b);
  return GradedSeries(a.poly_ + b.poly_, a.sym_, a.cutoff_);
}

GradedSeries operator-(const GradedSeries& a, const GradedSeries& b) {
  GradedSeries::check_compatible(a, b);
  return GradedSeries(a.poly_ - b.poly_, a.sym_, a.cutoff_);
}

GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) {
  GradedSeries::check_compatible(a, b);
  return GradedSeries(a.poly_ * b.poly_, a.sym_, a.cutoff_);
}

GradedSeries GradedSeries::operator*(const Rational& c) const {
  return GradedSeries(poly_ * c, sym_, cutoff_);
}

GradedSeries GradedSeries::derivative(const std::string& s) const {
  if (s == sym_)
    throw std::invalid_argument("GradedSeries: derivative in the grade symbol");
  return GradedSeries(poly_.derivative(s), sym_, cutoff_);
}

GradedSeries GradedSeries::pow_binomial(const Rational& alpha) const {
  const Poly one = Poly::constant(poly_.table(), 1);
  Poly eps = poly_ - one;
  if (poly_.component(sym_, 0) != one)
    throw std::domain_error("GradedSeries::pow_binomial: constant term is not 1");
  if (!eps.is_zero() && eps.max_degree(sym_) >= 0)
    throw std::domain_error(
        "GradedSeries::pow_binomial: expansion terms must have negative grade");

  GradedSeries e(eps, sym_, cutoff_);
  GradedSeries acc(one, sym_, cutoff_);      // running eps^k
  GradedSeries out(one, sym_, cutoff_);      // sum binom(alpha,k) eps^k
  Rational coeff = 1;
  for (int k = 1; !acc.is_zero(); ++k) {
    coeff = coeff * (alpha - (k - 1)) / k;   // binom(alpha, k), exact
    acc = acc * e;
    if (acc.is_zero()) break;
    out = out + acc * coeff;
  }
  return out;
}

GradedSeries GradedSeries::truncated(int cutoff) const {
  if (cutoff < cutoff_)
    throw std::invalid_argument("GradedSeries::truncated: cannot lower a cutoff");
  return GradedSeries(poly_, sym_, cutoff);
}

bool GradedSeries::operator==(const GradedSeries& o) const {
  return sym_ == o.sym_ && cutoff_ == o.cutoff_ && poly_ == o.poly_;
}

} // namespace qconn::sym
