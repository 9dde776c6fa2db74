#include "qconn/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qconn::sym {

SymbolTable::SymbolTable(std::vector<std::string> names) : names_(std::move(names)) {
  for (size_t i = 0; i < names_.size(); ++i)
    for (size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j])
        throw std::invalid_argument("SymbolTable: duplicate symbol " + names_[i]);
}

int SymbolTable::index(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("SymbolTable: unknown symbol " + name);
}

bool SymbolTable::has(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

SymbolTablePtr make_symbols(std::vector<std::string> names) {
  return std::make_shared<const SymbolTable>(std::move(names));
}

Poly Poly::constant(SymbolTablePtr tab, const Rational& c) {
  Poly p(std::move(tab));
  if (c != 0) p.terms_[Exponents(p.tab_->size(), 0)] = c;
  return p;
}

Poly Poly::symbol(SymbolTablePtr tab, const std::string& name, int power) {
  Poly p(tab);
  Exponents e(tab->size(), 0);
  e[tab->index(name)] = power;
  p.terms_[e] = 1;
  return p;
}

Poly Poly::monomial(SymbolTablePtr tab, const Rational& coeff,
                    const std::vector<std::pair<std::string, int>>& powers) {
  Poly p(tab);
  if (coeff == 0) return p;
  Exponents e(tab->size(), 0);
  for (const auto& [name, k] : powers) e[tab->index(name)] += k;
  p.terms_[e] = coeff;
  return p;
}

void Poly::check_same_table(const Poly& o) const {
  if (tab_ != o.tab_) throw std::invalid_argument("Poly: mixed symbol tables");
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (!tab_) { *this = o; return *this; }
  if (o.terms_.empty()) return *this;
  check_same_table(o);
  for (const auto& [e, c] : o.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  return *this += -o;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_same_table(b);
  Poly r(a.tab_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(ea);
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      auto it = r.terms_.find(e);
      if (it == r.terms_.end()) {
        r.terms_.emplace(std::move(e), ca * cb);
      } else {
        it->second += ca * cb;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  return r;
}

Poly Poly::operator*(const Rational& c) const {
  Poly r(tab_);
  if (c == 0) return r;
  for (const auto& [e, v] : terms_) r.terms_[e] = v * c;
  return r;
}

Poly Poly::pow(unsigned n) const {
  Poly r = Poly::constant(tab_, 1);
  Poly base(*this);
  while (n) {
    if (n & 1u) r = r * base;
    base = base * base;
    n >>= 1u;
  }
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.empty() && o.terms_.empty()) return true;
  check_same_table(o);
  return terms_ == o.terms_;
}

Poly Poly::derivative(const std::string& sym) const {
  if (!tab_) return *this;
  int k = tab_->index(sym);
  Poly r(tab_);
  for (const auto& [e, c] : terms_) {
    if (e[k] == 0) continue;
    Exponents d(e);
    d[k] -= 1;
    r.terms_[d] = c * e[k];
  }
  return r;
}

Poly Poly::integral(const std::string& sym) const {
  if (!tab_) return *this;
  int k = tab_->index(sym);
  Poly r(tab_);
  for (const auto& [e, c] : terms_) {
    if (e[k] == -1)
      throw std::domain_error("Poly::integral: exponent -1 in " + sym);
    Exponents d(e);
    d[k] += 1;
    r.terms_[d] = c / d[k];
  }
  return r;
}

Poly Poly::substitute(const std::map<std::string, Poly>& rules) const {
  if (!tab_) return *this;
  // Locate the target table: shared by all rules, or this table when rules
  // map into the same context.
  SymbolTablePtr target = tab_;
  for (const auto& [name, p] : rules) {
    (void)name;
    if (p.table()) { target = p.table(); break; }
  }
  for (const auto& [name, p] : rules)
    if (p.table() && p.table() != target)
      throw std::invalid_argument("Poly::substitute: rules mix symbol tables");

  Poly result(target);
  for (const auto& [e, c] : terms_) {
    Poly term = Poly::constant(target, c);
    for (int i = 0; i < tab_->size(); ++i) {
      if (e[i] == 0) continue;
      const std::string& nm = tab_->name(i);
      auto it = rules.find(nm);
      if (it != rules.end()) {
        if (e[i] < 0)
          throw std::domain_error(
              "Poly::substitute: negative exponent of substituted symbol " + nm);
        term = term * it->second.pow(static_cast<unsigned>(e[i]));
      } else {
        term = term * Poly::symbol(target, nm, e[i]);
      }
    }
    result += term;
  }
  return result;
}

double Poly::eval(const std::map<std::string, double>& point) const {
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = to_double(c);
    for (int i = 0; i < tab_->size(); ++i) {
      if (e[i] == 0) continue;
      auto it = point.find(tab_->name(i));
      if (it == point.end())
        throw std::invalid_argument("Poly::eval: missing value for " + tab_->name(i));
      t *= std::pow(it->second, e[i]);
    }
    acc += t;
  }
  return acc;
}

Rational Poly::eval_exact(const std::map<std::string, Rational>& point) const {
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < tab_->size(); ++i) {
      if (e[i] == 0) continue;
      auto it = point.find(tab_->name(i));
      if (it == point.end())
        throw std::invalid_argument("Poly::eval_exact: missing value for " + tab_->name(i));
      Rational base = it->second;
      int k = e[i];
      if (k < 0) {
        if (base == 0) throw std::domain_error("Poly::eval_exact: 0 to negative power");
        base = 1 / base;
        k = -k;
      }
      for (int j = 0; j < k; ++j) t *= base;
    }
    acc += t;
  }
  return acc;
}

int Poly::max_degree(const std::string& sym) const {
  if (terms_.empty()) return 0;
  int k = tab_->index(sym), best = INT32_MIN;
  for (const auto& [e, c] : terms_) { (void)c; best = std::max(best, (int)e[k]); }
  return best;
}

int Poly::min_degree(const std::string& sym) const {
  if (terms_.empty()) return 0;
  int k = tab_->index(sym), best = INT32_MAX;
  for (const auto& [e, c] : terms_) { (void)c; best = std::min(best, (int)e[k]); }
  return best;
}

Poly Poly::drop_below(const std::string& sym, int cutoff) const {
  if (!tab_) return *this;
  int k = tab_->index(sym);
  Poly r(tab_);
  for (const auto& [e, c] : terms_)
    if (e[k] >= cutoff) r.terms_[e] = c;
  return r;
}

Poly Poly::component(const std::string& sym, int kth) const {
  if (!tab_) return *this;
  int k = tab_->index(sym);
  Poly r(tab_);
  for (const auto& [e, c] : terms_)
    if (e[k] == kth) r.terms_[e] = c;
  return r;
}

void Poly::set_term(const Exponents& e, const Rational& c) {
  if (c == 0)
    terms_.erase(e);
  else
    terms_[e] = c;
}

namespace {

std::string coeff_str(const Rational& c) {
  std::ostringstream os;
  if (boost::multiprecision::denominator(c) == 1) {
    os << boost::multiprecision::numerator(c);
  } else {
    os << "(" << boost::multiprecision::numerator(c) << "/"
       << boost::multiprecision::denominator(c) << ")";
  }
  return os.str();
}

} // namespace

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational a = c;
    if (!first) {
      if (a < 0) { os << " - "; a = -a; }
      else os << " + ";
    } else if (a < 0 &&
               boost::multiprecision::denominator(a) == 1) {
      // keep integer sign attached, fractions keep the parenthesised form
      os << "-"; a = -a;
    }
    first = false;
    bool any_sym = false;
    std::ostringstream syms;
    for (int i = 0; i < tab_->size(); ++i) {
      if (e[i] == 0) continue;
      if (any_sym) syms << "*";
      any_sym = true;
      syms << tab_->name(i);
      if (e[i] != 1) syms << "^" << e[i];
    }
    if (!any_sym) {
      os << coeff_str(a);
    } else if (a == 1) {
      os << syms.str();
    } else {
      os << coeff_str(a) << "*" << syms.str();
    }
  }
  return os.str();
}

} // namespace qconn::sym
