#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "maforms/scalar.hpp"

namespace maforms {

/// Univariate polynomial over the rationals, coefficients c[k] of x^k.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<mpq_class> c) : c_(std::move(c)) { trim(); }

  static RatPoly from_scalars(const std::vector<Scalar>& s) {
    std::vector<mpq_class> c;
    c.reserve(s.size());
    for (auto& x : s) {
      if (!x.exact() || x.im() != 0)
        throw std::invalid_argument("RatPoly: non-rational coefficient");
      c.push_back(x.re());
    }
    return RatPoly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  mpq_class coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : mpq_class(0); }

  RatPoly derivative() const {
    if (c_.size() <= 1) return RatPoly();
    std::vector<mpq_class> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
    return RatPoly(std::move(d));
  }

  RatPoly monic() const {
    if (is_zero()) return *this;
    std::vector<mpq_class> d = c_;
    mpq_class lead = d.back();
    for (auto& x : d) x /= lead;
    return RatPoly(std::move(d));
  }

  friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly();
    std::vector<mpq_class> p(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) p[i + j] += a.c_[i] * b.c_[j];
    return RatPoly(std::move(p));
  }
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b) {
    std::vector<mpq_class> p(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < p.size(); ++i) p[i] = a.coeff(i) - b.coeff(i);
    return RatPoly(std::move(p));
  }
  friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    std::vector<mpq_class> p(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < p.size(); ++i) p[i] = a.coeff(i) + b.coeff(i);
    return RatPoly(std::move(p));
  }
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division; returns {quotient, remainder}.
  std::pair<RatPoly, RatPoly> divmod(const RatPoly& d) const {
    if (d.is_zero()) throw std::domain_error("RatPoly: division by zero");
    std::vector<mpq_class> r = c_, q;
    int dd = d.degree();
    if (degree() >= dd) q.assign(degree() - dd + 1, mpq_class(0));
    for (int k = degree(); k >= dd; --k) {
      mpq_class f = r[k] / d.c_.back();
      if (f == 0) continue;
      q[k - dd] = f;
      for (int j = 0; j <= dd; ++j) r[k - dd + j] -= f * d.c_[j];
    }
    return {RatPoly(std::move(q)), RatPoly(std::move(r))};
  }

  static RatPoly gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
      RatPoly r = a.divmod(b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Square-free factorization (Yun): list of (factor, multiplicity) with
  /// p = prod factor^multiplicity up to the leading coefficient.
  std::vector<std::pair<RatPoly, int>> squarefree() const {
    std::vector<std::pair<RatPoly, int>> out;
    RatPoly p = monic();
    if (p.degree() < 1) return out;
    RatPoly g = gcd(p, p.derivative());
    RatPoly w = p.divmod(g).first;
    int mult = 1;
    while (w.degree() > 0) {
      RatPoly y = gcd(w, g);
      RatPoly f = w.divmod(y).first;
      if (f.degree() > 0) out.emplace_back(f.monic(), mult);
      w = std::move(y);
      g = g.divmod(w).first;
      ++mult;
      if (mult > 64) throw std::logic_error("RatPoly: squarefree runaway");
    }
    return out;
  }

  double eval(double x) const {
    double v = 0;
    for (int k = degree(); k >= 0; --k) v = v * x + c_[k].get_d();
    return v;
  }
  std::complex<double> eval(std::complex<double> x) const {
    std::complex<double> v = 0;
    for (int k = degree(); k >= 0; --k) v = v * x + c_[k].get_d();
    return v;
  }
  mpq_class eval(const mpq_class& x) const {
    mpq_class v = 0;
    for (int k = degree(); k >= 0; --k) v = v * x + c_[k];
    return v;
  }

  /// Number of positive roots counted with multiplicity, by Descartes' sign
  /// rule. Exact only for real-rooted polynomials (where the rule is an
  /// equality); callers guarantee that, e.g. by Hermitian provenance.
  int descartes_positive() const {
    int changes = 0, last = 0;
    for (auto& c : c_) {
      int s = sgn(c);
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }
  RatPoly reflected() const {  // p(-x)
    std::vector<mpq_class> d = c_;
    for (size_t k = 1; k < d.size(); k += 2) d[k] = -d[k];
    return RatPoly(std::move(d));
  }
  /// Multiplicity of the root 0.
  int zero_multiplicity() const {
    int z = 0;
    while (z < static_cast<int>(c_.size()) && c_[z] == 0) ++z;
    return z == static_cast<int>(c_.size()) ? 0 : z;
  }

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
      if (c_[k] == 0) continue;
      if (!s.empty()) s += c_[k] > 0 ? " + " : " - ";
      else if (c_[k] < 0) s += "-";
      mpq_class a = abs(c_[k]);
      bool coeff1 = (a == 1) && k > 0;
      if (!coeff1) s += a.get_str();
      if (k > 0) {
        if (!coeff1) s += "*";
        s += var;
        if (k > 1) s += "^" + std::to_string(k);
      }
    }
    return s;
  }

 private:
  static int sgn(const mpq_class& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<mpq_class> c_;
};

/// All complex roots of a square-free polynomial by the Aberth–Ehrlich
/// iteration with deterministic starting points, polished by Newton steps.
inline std::vector<std::complex<double>> aberth_roots(const RatPoly& p) {
  int n = p.degree();
  std::vector<std::complex<double>> z(n);
  if (n <= 0) return z;
  RatPoly q = p.monic();
  if (n == 1) {
    z[0] = -q.coeff(0).get_d();
    return z;
  }
  RatPoly dq = q.derivative();
  double radius = 0;
  for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(q.coeff(k).get_d()));
  radius = 1.0 + radius;
  for (int k = 0; k < n; ++k) {
    double ang = 2 * 3.141592653589793 * k / n + 0.4;
    z[k] = std::polar(radius * (0.5 + 0.5 * (k + 1.0) / n), ang);
  }
  for (int iter = 0; iter < 400; ++iter) {
    double moved = 0;
    for (int k = 0; k < n; ++k) {
      std::complex<double> pv = q.eval(z[k]);
      std::complex<double> dv = dq.eval(z[k]);
      if (std::abs(pv) < 1e-300) continue;
      std::complex<double> w = pv / dv;
      std::complex<double> sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      std::complex<double> corr = w / (1.0 - w * sum);
      z[k] -= corr;
      moved = std::max(moved, std::abs(corr));
    }
    if (moved < 1e-15) break;
  }
  for (int k = 0; k < n; ++k)  // Newton polish
    for (int it = 0; it < 8; ++it) {
      std::complex<double> pv = q.eval(z[k]);
      std::complex<double> dv = dq.eval(z[k]);
      if (std::abs(dv) < 1e-300) break;
      z[k] -= pv / dv;
    }
  return z;
}

/// All complex roots with multiplicity: exact square-free factorization
/// first, then Aberth on each simple factor. Roots with |Im| below `snap`
/// are snapped to the real axis.
inline std::vector<std::complex<double>> polynomial_roots(const RatPoly& p, double snap = 1e-12) {
  std::vector<std::complex<double>> roots;
  for (auto& [factor, mult] : p.squarefree()) {
    for (auto r : aberth_roots(factor)) {
      if (std::abs(r.imag()) <= snap * (1.0 + std::abs(r.real()))) r = {r.real(), 0.0};
      for (int m = 0; m < mult; ++m) roots.push_back(r);
    }
  }
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

/// Sparse multivariate polynomial over Scalar; exponent vectors are the keys.
class MultiPoly {
 public:
  MultiPoly() : nvars_(0) {}
  explicit MultiPoly(int nvars) : nvars_(nvars) {}
  MultiPoly(int nvars, const Scalar& c) : nvars_(nvars) {
    if (!c.is_zero()) terms_[std::vector<int>(nvars, 0)] = c;
  }
  // ring-concept constructor (constant in zero variables)
  explicit MultiPoly(int nvars, long c) : MultiPoly(nvars, Scalar(c)) {}
  MultiPoly(long c) : MultiPoly(0, Scalar(c)) {}

  static MultiPoly variable(int nvars, int idx, Scalar coeff = Scalar(1)) {
    MultiPoly p(nvars);
    std::vector<int> e(nvars, 0);
    e[idx] = 1;
    p.terms_[e] = coeff;
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::vector<int>, Scalar>& terms() const { return terms_; }
  Scalar coeff(const std::vector<int>& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(0) : it->second;
  }
  Scalar constant_term() const { return coeff(std::vector<int>(nvars_, 0)); }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly s = a.nvars_ ? a : MultiPoly(b.nvars_);
    if (a.nvars_ && b.nvars_ && a.nvars_ != b.nvars_)
      throw std::invalid_argument("MultiPoly: variable count mismatch");
    if (!a.nvars_) s = promote(a, b.nvars_);
    const MultiPoly bb = b.nvars_ == s.nvars_ ? b : promote(b, s.nvars_);
    for (auto& [e, c] : bb.terms_) s.add(e, c);
    return s;
  }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }
  MultiPoly operator-() const {
    MultiPoly n(nvars_);
    for (auto& [e, c] : terms_) n.terms_[e] = -c;
    return n;
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    int nv = std::max(a.nvars_, b.nvars_);
    const MultiPoly aa = promote(a, nv), bb = promote(b, nv);
    MultiPoly p(nv);
    for (auto& [ea, ca] : aa.terms_)
      for (auto& [eb, cb] : bb.terms_) {
        std::vector<int> e(nv);
        for (int i = 0; i < nv; ++i) e[i] = ea[i] + eb[i];
        p.add(e, ca * cb);
      }
    return p;
  }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return promote(a, std::max(a.nvars_, b.nvars_)).terms_ ==
           promote(b, std::max(a.nvars_, b.nvars_)).terms_;
  }
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }

  double abs() const {  // ring-concept hook, largest coefficient modulus
    double m = 0;
    for (auto& [e, c] : terms_) m = std::max(m, c.abs());
    return m;
  }

  std::complex<double> eval(std::span<const std::complex<double>> x) const {
    std::complex<double> total = 0;
    for (auto& [e, c] : terms_) {
      std::complex<double> t = c.to_complex();
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) t *= x[i];
      total += t;
    }
    return total;
  }

  /// Printed with monomials in descending lexicographic exponent order,
  /// e.g. "f13*f24 - f14*f23 - 1".
  std::string str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string mono;
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) mono += (mono.empty() ? "" : "*") + names[i];
      bool is_const = mono.empty();
      std::string cs;
      bool negative = false;
      if (c.exact() && c.im() == 0) {
        mpq_class q = c.re();
        negative = q < 0;
        mpq_class a = ::abs(q);
        cs = (a == 1 && !is_const) ? "" : a.get_str();
      } else {
        cs = c.str();
      }
      if (s.empty())
        s += negative ? "-" : "";
      else
        s += negative ? " - " : " + ";
      s += cs;
      if (!cs.empty() && !mono.empty()) s += "*";
      s += mono;
    }
    return s;
  }

 private:
  static MultiPoly promote(const MultiPoly& p, int nvars) {
    if (p.nvars_ == nvars) return p;
    if (p.nvars_ != 0) throw std::invalid_argument("MultiPoly: variable count mismatch");
    MultiPoly q(nvars);
    for (auto& [e, c] : p.terms_) q.terms_[std::vector<int>(nvars, 0)] = c;
    return q;
  }
  void add(const std::vector<int>& e, const Scalar& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_[e] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  int nvars_;
  std::map<std::vector<int>, Scalar> terms_;
};

}  // namespace maforms
