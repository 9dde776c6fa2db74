#include "qconn/formexpr.hpp"

#include <sstream>
#include <stdexcept>

namespace qconn::sym {

FormExpr FormExpr::term(const Poly& coeff, const std::string& dsym) {
  if (!coeff.table()) throw std::invalid_argument("FormExpr::term: untabled coefficient");
  coeff.table()->index(dsym);  // validate
  FormExpr f(coeff.table());
  f.put(dsym, coeff);
  return f;
}

bool FormExpr::is_zero() const { return comps_.empty(); }

Poly FormExpr::coeff(const std::string& dsym) const {
  auto it = comps_.find(dsym);
  if (it == comps_.end()) return Poly::zero(tab_);
  return it->second;
}

void FormExpr::put(const std::string& dsym, const Poly& p) {
  if (p.is_zero())
    comps_.erase(dsym);
  else
    comps_[dsym] = p;
}

FormExpr FormExpr::operator-() const {
  FormExpr r(tab_);
  for (const auto& [s, p] : comps_) r.comps_[s] = -p;
  return r;
}

FormExpr& FormExpr::operator+=(const FormExpr& o) {
  if (!tab_) { *this = o; return *this; }
  if (o.tab_ && o.tab_ != tab_) throw std::invalid_argument("FormExpr: mixed tables");
  for (const auto& [s, p] : o.comps_) put(s, coeff(s) + p);
  return *this;
}

FormExpr& FormExpr::operator-=(const FormExpr& o) { return *this += -o; }

FormExpr FormExpr::operator*(const Rational& c) const {
  FormExpr r(tab_);
  if (c == 0) return r;
  for (const auto& [s, p] : comps_) r.comps_[s] = p * c;
  return r;
}

FormExpr operator*(const Poly& p, const FormExpr& f) {
  FormExpr r(f.tab_);
  if (p.is_zero()) return r;
  for (const auto& [s, q] : f.comps_) {
    Poly prod = p * q;
    if (!prod.is_zero()) r.comps_[s] = prod;
  }
  return r;
}

bool FormExpr::operator==(const FormExpr& o) const {
  if (comps_.empty() && o.comps_.empty()) return true;
  if (tab_ && o.tab_ && tab_ != o.tab_) throw std::invalid_argument("FormExpr: mixed tables");
  return comps_ == o.comps_;
}

FormExpr FormExpr::d(const Poly& f, const std::vector<std::string>& coords) {
  if (!f.table()) throw std::invalid_argument("FormExpr::d: untabled polynomial");
  FormExpr r(f.table());
  for (const auto& x : coords) r.put(x, f.derivative(x));
  return r;
}

FormExpr FormExpr::substitute(const std::map<std::string, Poly>& rules,
                              const std::vector<std::string>& new_coords) const {
  SymbolTablePtr target = tab_;
  for (const auto& [name, p] : rules) {
    (void)name;
    if (p.table()) { target = p.table(); break; }
  }
  FormExpr r(target);
  for (const auto& [dsym, p] : comps_) {
    Poly cp = p.substitute(rules);
    auto it = rules.find(dsym);
    if (it == rules.end()) {
      if (!cp.is_zero()) r += FormExpr::term(cp, dsym);
    } else {
      // chain rule: d(sym) -> d(rule)
      r += cp * FormExpr::d(it->second, new_coords);
    }
  }
  return r;
}

bool FormExpr::is_exact(const std::vector<std::string>& coords) const {
  for (size_t i = 0; i < coords.size(); ++i)
    for (size_t j = i + 1; j < coords.size(); ++j)
      if (coeff(coords[i]).derivative(coords[j]) !=
          coeff(coords[j]).derivative(coords[i]))
        return false;
  // components outside the declared coordinates make the question ill-posed
  for (const auto& [s, p] : comps_) {
    (void)p;
    bool found = false;
    for (const auto& c : coords) found |= (c == s);
    if (!found) return false;
  }
  return true;
}

Poly FormExpr::potential(const std::vector<std::string>& coords) const {
  if (!is_exact(coords))
    throw std::domain_error("FormExpr::potential: form is not exact");
  if (comps_.empty()) return Poly::zero(tab_);
  // Integrate coordinate by coordinate: F = int f_1 dx_1 + (terms of the
  // remainder free of x_1 integrated recursively).
  Poly F = Poly::zero(tab_);
  FormExpr rest = *this;
  for (const auto& x : coords) {
    Poly fx = rest.coeff(x);
    if (fx.is_zero()) continue;
    Poly piece = fx.integral(x);
    F += piece;
    rest -= FormExpr::d(piece, coords);
  }
  if (!rest.is_zero())
    throw std::domain_error("FormExpr::potential: residue after integration");
  return F;
}

std::string FormExpr::str() const {
  if (comps_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, p] : comps_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << p.str() << ")*d" << s;
  }
  return os.str();
}

} // namespace qconn::sym
