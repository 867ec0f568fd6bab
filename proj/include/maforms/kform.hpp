#pragma once

#include <array>
#include <bit>
#include <complex>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "maforms/matrix.hpp"
#include "maforms/scalar.hpp"

namespace maforms {

/// Basis index subsets are bitmasks over the covector indices 0..dim-1; a
/// strictly increasing index tuple and a mask are the same data.
using BasisMask = unsigned;

inline int mask_degree(BasisMask m) { return std::popcount(m); }

/// Sign of sorting the concatenation e_A ^ e_B into increasing order,
/// for disjoint masks: parity of the number of inversions between A and B.
inline int merge_sign(BasisMask a, BasisMask b) {
  int inv = 0;
  for (BasisMask t = b; t; t &= t - 1) {
    int i = std::countr_zero(t);
    inv += std::popcount(a >> (i + 1));
  }
  return (inv & 1) ? -1 : 1;
}

inline std::vector<int> mask_to_tuple(BasisMask m) {
  std::vector<int> t;
  for (BasisMask x = m; x; x &= x - 1) t.push_back(std::countr_zero(x));
  return t;
}
inline BasisMask tuple_to_mask(std::span<const int> idx) {
  BasisMask m = 0;
  for (int i : idx) {
    BasisMask bit = 1u << i;
    if (m & bit) throw std::invalid_argument("tuple_to_mask: repeated index");
    m |= bit;
  }
  return m;
}

/// Label of covector `idx` on the 2n-dimensional phase space with the fixed
/// basis ordering (q1, p1, q2, p2, ...).
inline std::string phase_label(int idx) {
  return (idx % 2 == 0 ? "dq" : "dp") + std::to_string(idx / 2 + 1);
}

/// Alternating k-form with coefficients in a commutative ring R, stored as a
/// sparse map from increasing basis index tuples to coefficients. Zero
/// coefficients are pruned eagerly, so structural equality coincides with
/// equality of values whenever R's equality is exact.
template <typename R>
class KForm {
 public:
  KForm() : dim_(0), degree_(0) {}
  KForm(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 0 || dim > 16) throw std::invalid_argument("KForm: bad dimension");
    if (degree < 0) throw std::invalid_argument("KForm: bad degree");
  }

  static KForm zero(int dim, int degree) { return KForm(dim, degree); }
  static KForm basis(int dim, BasisMask mask, R coeff = R(1)) {
    KForm f(dim, mask_degree(mask));
    f.set(mask, std::move(coeff));
    return f;
  }
  static KForm one(int dim) { return basis(dim, 0u); }
  static KForm covector(int dim, int idx, R coeff = R(1)) {
    return basis(dim, 1u << idx, std::move(coeff));
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<BasisMask, R>& terms() const { return terms_; }

  R coeff(BasisMask mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? R(0) : it->second;
  }

  void set(BasisMask mask, R c) {
    if (mask >= (1u << dim_)) throw std::invalid_argument("KForm: mask out of range");
    if (mask_degree(mask) != degree_) throw std::invalid_argument("KForm: mask degree mismatch");
    if (c.is_zero())
      terms_.erase(mask);
    else
      terms_[mask] = std::move(c);
  }
  void add(BasisMask mask, const R& c) { set(mask, coeff(mask) + c); }

  friend KForm operator+(const KForm& a, const KForm& b) {
    // a zero form acts as the additive identity in every degree
    if (a.degree_ != b.degree_ && a.terms_.empty()) return b;
    if (a.degree_ != b.degree_ && b.terms_.empty()) return a;
    check_compatible(a, b);
    KForm s = a;
    for (auto& [m, c] : b.terms_) s.add(m, c);
    return s;
  }
  friend KForm operator-(const KForm& a, const KForm& b) {
    if (a.degree_ != b.degree_ && b.terms_.empty()) return a;
    if (a.degree_ != b.degree_ && a.terms_.empty()) return -b;
    check_compatible(a, b);
    KForm s = a;
    for (auto& [m, c] : b.terms_) s.add(m, -c);
    return s;
  }
  KForm operator-() const {
    KForm n(dim_, degree_);
    for (auto& [m, c] : terms_) n.terms_[m] = -c;
    return n;
  }
  friend KForm operator*(const R& s, const KForm& f) {
    KForm p(f.dim_, f.degree_);
    if (s.is_zero()) return p;
    for (auto& [m, c] : f.terms_) p.set(m, s * c);
    return p;
  }
  friend bool operator==(const KForm& a, const KForm& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  KForm& operator+=(const KForm& o) { return *this = *this + o; }
  KForm& operator-=(const KForm& o) { return *this = *this - o; }

  /// Largest |coefficient| (after conversion to double where applicable).
  double max_abs() const {
    double m = 0;
    for (auto& [mask, c] : terms_) m = std::max(m, c.abs());
    return m;
  }

  /// Drop terms with |coefficient| <= tol; used on inexact data only.
  KForm snapped(double tol) const {
    KForm f(dim_, degree_);
    for (auto& [m, c] : terms_)
      if (c.abs() > tol) f.terms_[m] = c;
    return f;
  }

 private:
  static void check_compatible(const KForm& a, const KForm& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("KForm: dimension mismatch");
    if (a.degree_ != b.degree_) throw std::invalid_argument("KForm: degree mismatch in sum");
  }

  int dim_;
  int degree_;
  std::map<BasisMask, R> terms_;
};

/// Polyvector: same sparse shape as KForm, contravariant. Kept as a distinct
/// type so contraction directions cannot be mixed up.
template <typename R>
class KVector {
 public:
  KVector() = default;
  explicit KVector(KForm<R> rep) : rep_(std::move(rep)) {}
  static KVector basis(int dim, BasisMask mask, R coeff = R(1)) {
    return KVector(KForm<R>::basis(dim, mask, std::move(coeff)));
  }
  const KForm<R>& rep() const { return rep_; }
  int dim() const { return rep_.dim(); }
  int degree() const { return rep_.degree(); }

 private:
  KForm<R> rep_;
};

template <typename R>
KForm<R> wedge(const KForm<R>& a, const KForm<R>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
  KForm<R> w(a.dim(), a.degree() + b.degree());
  if (a.degree() + b.degree() > a.dim()) return w;  // identically zero
  for (auto& [ma, ca] : a.terms())
    for (auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      int s = merge_sign(ma, mb);
      R c = ca * cb;
      w.add(ma | mb, s < 0 ? -c : c);
    }
  return w;
}

template <typename R>
KForm<R> wedge(const KForm<R>& a, const KForm<R>& b, const KForm<R>& c) {
  return wedge(wedge(a, b), c);
}

/// Contraction by a single basis vector e_i (an antiderivation).
template <typename R>
KForm<R> interior_single(int idx, const KForm<R>& f) {
  KForm<R> r(f.dim(), f.degree() - 1);
  BasisMask bit = 1u << idx;
  for (auto& [m, c] : f.terms()) {
    if (!(m & bit)) continue;
    int below = std::popcount(m & (bit - 1));
    r.add(m & ~bit, (below & 1) ? -c : c);
  }
  return r;
}

/// Interior product i_X(theta). For a decomposable X = v1 ^ v2 ^ ... the
/// factors contract in order, first factor innermost.
template <typename R>
KForm<R> interior(const KVector<R>& x, const KForm<R>& theta) {
  if (x.dim() != theta.dim()) throw std::invalid_argument("interior: dimension mismatch");
  if (x.degree() > theta.degree()) throw std::invalid_argument("interior: degree mismatch");
  KForm<R> out(theta.dim(), theta.degree() - x.degree());
  for (auto& [mx, cx] : x.rep().terms()) {
    KForm<R> t = theta;
    for (int i : mask_to_tuple(mx)) t = interior_single(i, t);
    out += cx * t;
  }
  return out;
}

/// Substitute each basis covector e_i by the 1-form subst[i]; the unique
/// algebra morphism extending the substitution. This is the engine behind
/// pullback and basis changes.
template <typename R>
KForm<R> substitute(const KForm<R>& f, std::span<const KForm<R>> subst) {
  if (static_cast<int>(subst.size()) != f.dim())
    throw std::invalid_argument("substitute: need one 1-form per covector");
  int target_dim = subst.empty() ? f.dim() : subst[0].dim();
  KForm<R> out(target_dim, f.degree());
  for (auto& [m, c] : f.terms()) {
    KForm<R> prod = KForm<R>::one(target_dim);
    for (int i : mask_to_tuple(m)) prod = wedge(prod, subst[i]);
    out += c * prod;
  }
  return out;
}

/// Pullback of theta along the linear map with matrix L (y = L x, theta lives
/// on the y-space): covectors transform by dy_i -> sum_j L[i][j] dx_j.
inline KForm<Scalar> pullback(const Matrix& l, const KForm<Scalar>& theta) {
  if (l.rows() != theta.dim()) throw std::invalid_argument("pullback: dimension mismatch");
  std::vector<KForm<Scalar>> rows;
  rows.reserve(l.rows());
  for (int i = 0; i < l.rows(); ++i) {
    KForm<Scalar> r(l.cols(), 1);
    for (int j = 0; j < l.cols(); ++j) r.add(1u << j, l(i, j));
    rows.push_back(std::move(r));
  }
  return substitute(theta, std::span<const KForm<Scalar>>(rows));
}

inline KForm<Scalar> conj(const KForm<Scalar>& f) {
  KForm<Scalar> c(f.dim(), f.degree());
  for (auto& [m, x] : f.terms()) c.set(m, x.conj());
  return c;
}

inline KForm<Scalar> real_part(const KForm<Scalar>& f) {
  KForm<Scalar> r(f.dim(), f.degree());
  for (auto& [m, x] : f.terms()) r.set(m, x.real_part());
  return r;
}
inline KForm<Scalar> imag_part(const KForm<Scalar>& f) {
  KForm<Scalar> r(f.dim(), f.degree());
  for (auto& [m, x] : f.terms()) r.set(m, x.imag_part());
  return r;
}

/// Evaluate a k-form on k tangent vectors (given in components): the
/// alternating sum, i.e. per stored term the k x k minor determinant.
inline std::complex<double> evaluate(const KForm<Scalar>& f,
                                     std::span<const std::vector<std::complex<double>>> vecs) {
  if (static_cast<int>(vecs.size()) != f.degree())
    throw std::invalid_argument("evaluate: need degree-many vectors");
  std::complex<double> total = 0;
  int k = f.degree();
  for (auto& [m, c] : f.terms()) {
    auto idx = mask_to_tuple(m);
    // determinant of the k x k minor rows=idx, cols=vectors
    std::array<std::complex<double>, 16> a;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) a[i * k + j] = vecs[j][idx[i]];
    // Gaussian elimination with partial pivoting
    std::complex<double> det = 1;
    for (int col = 0; col < k; ++col) {
      int piv = -1;
      double best = 0;
      for (int r = col; r < k; ++r) {
        double v = std::abs(a[r * k + col]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (piv < 0) {
        det = 0;
        break;
      }
      if (piv != col) {
        for (int j = 0; j < k; ++j) std::swap(a[piv * k + j], a[col * k + j]);
        det = -det;
      }
      det *= a[col * k + col];
      for (int r = col + 1; r < k; ++r) {
        std::complex<double> f2 = a[r * k + col] / a[col * k + col];
        for (int j = col; j < k; ++j) a[r * k + j] -= f2 * a[col * k + j];
      }
    }
    total += c.to_complex() * det;
  }
  return total;
}

using Form = KForm<Scalar>;
using Polyvector = KVector<Scalar>;

/// The standard symplectic form dq1^dp1 + ... + dqn^dpn on the 2n-dim space.
inline Form standard_symplectic(int dim) {
  if (dim % 2) throw std::invalid_argument("standard_symplectic: odd dimension");
  Form w(dim, 2);
  for (int i = 0; i + 1 < dim; i += 2) w.set((1u << i) | (1u << (i + 1)), Scalar(1));
  return w;
}

/// Canonical volume form dq1^dp1^dq2^dp2^... with coefficient +1; all
/// top-form-to-scalar extractions in the library use its coefficient.
inline Form volume_form(int dim) { return Form::basis(dim, (1u << dim) - 1); }

inline Scalar volume_coefficient(const Form& f) {
  if (f.degree() != f.dim()) throw std::invalid_argument("volume_coefficient: not a top form");
  return f.coeff((1u << f.dim()) - 1);
}

/// Im((dq1 + i dp1) ^ ... ^ (dqn + i dpn)) — the calibration n-form whose
/// vanishing on a lagrangian graph is the special lagrangian condition.
inline Form special_lagrangian_form(int dim) {
  Form prod = Form::one(dim);
  for (int j = 0; j + 1 < dim; j += 2) {
    Form z(dim, 1);
    z.set(1u << j, Scalar(1));
    z.set(1u << (j + 1), Scalar::i());
    prod = wedge(prod, z);
  }
  return imag_part(prod);
}

/// The polyvector X dual to a nondegenerate 2-form, normalized so that the
/// commutation relation [i_X, wedge-with-omega] = (n - k) id holds on k-forms;
/// concretely X carries the coefficient matrix -B^{-1} where B is omega's
/// Gram matrix on basis vectors.
inline Polyvector dual_bivector(const Form& omega) {
  if (omega.degree() != 2) throw std::invalid_argument("dual_bivector: need a 2-form");
  int d = omega.dim();
  Matrix b(d, d);
  for (auto& [m, c] : omega.terms()) {
    auto t = mask_to_tuple(m);
    b(t[0], t[1]) = c;
    b(t[1], t[0]) = -c;
  }
  auto binv = b.inverse();
  if (!binv) throw std::invalid_argument("dual_bivector: degenerate 2-form");
  Form x(d, 2);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Scalar c = -(*binv)(i, j);
      if (!c.is_zero()) x.set((1u << i) | (1u << j), c);
    }
  return Polyvector(x);
}

}  // namespace maforms
