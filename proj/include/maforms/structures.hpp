#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "maforms/kform.hpp"
#include "maforms/symplectic.hpp"

namespace maforms {

/// Complex-basis covector ordering used for forms expressed through a chart:
/// (dz1, dz2, du1, du2, dz1*, dz2*, du1*, du2*), indices 0..7.
enum ChartCovector : int {
  kDz1 = 0,
  kDz2 = 1,
  kDu1 = 2,
  kDu2 = 3,
  kDz1Bar = 4,
  kDz2Bar = 5,
  kDu1Bar = 6,
  kDu2Bar = 7,
};

inline const std::array<std::string, 8>& chart_labels() {
  static const std::array<std::string, 8> labels = {"dz1",  "dz2",  "du1",  "du2",
                                                    "dzb1", "dzb2", "dub1", "dub2"};
  return labels;
}

/// A complex structure on phase space compatible with the symplectic form:
/// Omega(J., .) is again a 2-form, so Omega - i Omega_J is complex symplectic.
/// Matrices act on tangent components in the interleaved (q1,p1,q2,p2,...)
/// basis; the block data (A, B, C) is kept in base/fiber block layout.
class CompatibleComplexStructure {
 public:
  /// Builds from the 4x4 blocks of [[A, B], [C, A^t]] in (q | p) block
  /// coordinates and validates every block condition plus J^2 = -1.
  CompatibleComplexStructure(std::string name, const Matrix& a, const Matrix& b, const Matrix& c)
      : name_(std::move(name)), block_a_(a), block_b_(b), block_c_(c) {
    if (a.rows() != 4 || a.cols() != 4 || b.rows() != 4 || c.rows() != 4)
      throw std::invalid_argument(name_ + ": blocks must be 4x4");
    Matrix at = a.transpose();
    if (!(b.transpose() + b).is_zero())
      throw std::invalid_argument(name_ + ": block condition B^t = -B fails");
    if (!(c.transpose() + c).is_zero())
      throw std::invalid_argument(name_ + ": block condition C^t = -C fails");
    if (!(a * a + b * c + Matrix::identity(4)).is_zero())
      throw std::invalid_argument(name_ + ": block condition A^2 + BC = -1 fails");
    if (!(a * b + b * at).is_zero())
      throw std::invalid_argument(name_ + ": block condition AB + BA^t = 0 fails");
    if (!(a * c + c * at).is_zero())
      throw std::invalid_argument(name_ + ": block condition AC + CA^t = 0 fails");

    // assemble the 8x8 matrix in block order, then permute to interleaved
    Matrix block(8, 8);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        block(i, j) = a(i, j);
        block(i, 4 + j) = b(i, j);
        block(4 + i, j) = c(i, j);
        block(4 + i, 4 + j) = at(i, j);
      }
    matrix_ = Matrix(8, 8);
    auto inter = [](int block_idx) {  // block position -> interleaved position
      return block_idx < 4 ? 2 * block_idx : 2 * (block_idx - 4) + 1;
    };
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) matrix_(inter(i), inter(j)) = block(i, j);

    if (!(matrix_ * matrix_ + Matrix::identity(8)).is_zero())
      throw std::invalid_argument(name_ + ": J^2 = -1 fails");

    omega_j_ = compute_omega_j();
    if (dual_check_degenerate()) throw std::invalid_argument(name_ + ": Omega_J degenerate");
  }

  const std::string& name() const { return name_; }
  const Matrix& matrix() const { return matrix_; }
  const Matrix& block_a() const { return block_a_; }
  const Matrix& block_b() const { return block_b_; }
  const Matrix& block_c() const { return block_c_; }

  /// Omega_J = Omega(J., .), an antisymmetric nondegenerate 2-form.
  const Form& omega() const { return omega_j_; }

  SymplecticPair pair() const { return SymplecticPair::make(standard_symplectic(8), omega_j_); }

 private:
  Form compute_omega_j() const {
    // Gram matrix of Omega on the interleaved basis
    Matrix o(8, 8);
    Form omega = standard_symplectic(8);
    for (auto& [m, c] : omega.terms()) {
      auto t = mask_to_tuple(m);
      o(t[0], t[1]) = c;
      o(t[1], t[0]) = -c;
    }
    Matrix g = matrix_.transpose() * o;  // Omega(Jx, y) = x^t J^t O y
    if (!(g.transpose() + g).is_zero())
      throw std::invalid_argument(name_ + ": Omega(J.,.) is not antisymmetric");
    Form w(8, 2);
    for (int i = 0; i < 8; ++i)
      for (int j = i + 1; j < 8; ++j)
        if (!g(i, j).is_zero()) w.set((1u << i) | (1u << j), g(i, j));
    return w;
  }
  bool dual_check_degenerate() const {
    Form p = omega_j_;
    for (int k = 1; k < 4; ++k) p = wedge(p, omega_j_);
    return p.is_zero();
  }

  std::string name_;
  Matrix block_a_, block_b_, block_c_;
  Matrix matrix_;
  Form omega_j_;
};

/// The 4x4 base matrices of the built-in structures.
inline Matrix base_matrix_a() {
  Scalar z(0), p(1), m(-1);
  return Matrix{{z, m, z, z}, {p, z, z, z}, {z, z, z, m}, {z, z, p, z}};
}
inline Matrix base_matrix_a_tilde() {
  Scalar z(0), p(1), m(-1);
  return Matrix{{z, m, z, z}, {p, z, z, z}, {z, z, z, p}, {z, z, m, z}};
}
inline Matrix base_matrix_a2() {
  Scalar z(0), p(1), m(-1), t(-2);
  return Matrix{{p, t, z, z}, {p, m, z, z}, {z, z, p, t}, {z, z, p, m}};
}

/// Complex Darboux coordinates (z1, z2, u1, u2) for a compatible structure:
/// four complex covectors on R^8 in which Omega - i Omega_J becomes
/// dz1^du1 + dz2^du2, stored with their full-rank real realization and its
/// inverse.
class DarbouxChart {
 public:
  DarbouxChart(const CompatibleComplexStructure& s, Matrix complex_rows)
      : structure_(&s), rows_(std::move(complex_rows)) {
    if (rows_.rows() != 4 || rows_.cols() != 8)
      throw std::invalid_argument("DarbouxChart: need a complex 4x8 matrix");
    real_rows_ = Matrix(8, 8);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 8; ++c) {
        real_rows_(2 * r, c) = rows_(r, c).real_part();
        real_rows_(2 * r + 1, c) = rows_(r, c).imag_part();
      }
    auto inv = real_rows_.inverse();
    if (!inv) throw std::invalid_argument("DarbouxChart: chart matrix is rank-deficient");
    real_inverse_ = *inv;

    // the defining identity: pullback of dz1^du1 + dz2^du2 equals Theta_J
    Form theta_chart(8, 2);
    theta_chart.set((1u << kDz1) | (1u << kDu1), Scalar(1));
    theta_chart.set((1u << kDz2) | (1u << kDu2), Scalar(1));
    Form pulled = to_real_basis(theta_chart);
    Form theta = standard_symplectic(8) - Scalar::i() * s.omega();
    if (!(pulled - theta).is_zero())
      throw std::invalid_argument("DarbouxChart(" + s.name() +
                                  "): pullback of dz1^du1 + dz2^du2 does not equal Theta");
  }

  const CompatibleComplexStructure& structure() const { return *structure_; }
  const Matrix& complex_rows() const { return rows_; }
  const Matrix& real_rows() const { return real_rows_; }
  const Matrix& real_inverse() const { return real_inverse_; }

  /// The eight chart covectors (dz1, dz2, du1, du2 and conjugates) as complex
  /// 1-forms in the real basis.
  std::array<Form, 8> covectors() const {
    std::array<Form, 8> cov;
    for (int r = 0; r < 4; ++r) {
      Form f(8, 1);
      for (int c = 0; c < 8; ++c) f.add(1u << c, rows_(r, c));
      cov[r] = f;
      cov[r + 4] = conj(f);
    }
    return cov;
  }

  /// Substitute chart symbols by their real expressions: a form written in
  /// the chart-monomial space becomes a form in the real (q, p) basis.
  Form to_real_basis(const Form& chart_form) const {
    auto cov = covectors();
    return substitute(chart_form, std::span<const Form>(cov.data(), cov.size()));
  }

  /// Expand a real-basis form in chart monomials: each real covector is
  /// rewritten in the chart covectors through the inverted 8x8 complex
  /// change-of-basis matrix.
  Form to_chart_basis(const Form& real_form) const {
    Matrix change(8, 8);  // rows = chart covectors in real components
    auto cov = covectors();
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) change(r, c) = cov[r].coeff(1u << c);
    auto inv = change.inverse();
    if (!inv) throw std::logic_error("DarbouxChart: chart covectors not a basis");
    std::vector<Form> subst(8);
    for (int c = 0; c < 8; ++c) {
      Form f(8, 1);
      for (int r = 0; r < 8; ++r) f.add(1u << r, (*inv)(c, r));
      subst[c] = f;
    }
    return substitute(real_form, std::span<const Form>(subst));
  }

 private:
  const CompatibleComplexStructure* structure_;
  Matrix rows_;         // complex 4x8: z1, z2, u1, u2
  Matrix real_rows_;    // 8x8 real: Re z1, Im z1, Re z2, Im z2, Re u1, ...
  Matrix real_inverse_;
};

enum class StructureName { J, K, Jtilde, Ktilde, J2 };

inline const char* to_string(StructureName n) {
  switch (n) {
    case StructureName::J: return "J";
    case StructureName::K: return "K";
    case StructureName::Jtilde: return "Jtilde";
    case StructureName::Ktilde: return "Ktilde";
    case StructureName::J2: return "J2";
  }
  return "?";
}

/// The five built-in compatible complex structures. The printed block layout
/// of K, (0, A / Atilde, 0), violates J^2 = -1 (A Atilde is +1 on the second
/// base block); the self-consistent assembly (0, A / A, 0) is the one that
/// also reproduces the printed chart, and is what builtin() returns.
inline const CompatibleComplexStructure& builtin(StructureName name) {
  static const Matrix zero4 = Matrix::zero(4, 4);
  static const CompatibleComplexStructure j("J", base_matrix_a(), zero4, zero4);
  static const CompatibleComplexStructure k("K", zero4, base_matrix_a(), base_matrix_a());
  static const CompatibleComplexStructure jt("Jtilde", base_matrix_a_tilde(), zero4, zero4);
  static const CompatibleComplexStructure kt("Ktilde", zero4, base_matrix_a_tilde(),
                                             base_matrix_a_tilde());
  static const CompatibleComplexStructure j2("J2", base_matrix_a2(), zero4, zero4);
  switch (name) {
    case StructureName::J: return j;
    case StructureName::K: return k;
    case StructureName::Jtilde: return jt;
    case StructureName::Ktilde: return kt;
    case StructureName::J2: return j2;
  }
  throw std::invalid_argument("builtin: unknown structure");
}

inline StructureName structure_by_name(const std::string& s) {
  if (s == "J") return StructureName::J;
  if (s == "K") return StructureName::K;
  if (s == "Jtilde") return StructureName::Jtilde;
  if (s == "Ktilde") return StructureName::Ktilde;
  if (s == "J2") return StructureName::J2;
  throw std::invalid_argument("unknown structure name: " + s);
}

inline const std::vector<StructureName>& all_structures() {
  static const std::vector<StructureName> names = {StructureName::J, StructureName::K,
                                                   StructureName::Jtilde, StructureName::Ktilde,
                                                   StructureName::J2};
  return names;
}

/// The printed Darboux chart of each structure.
inline const DarbouxChart& builtin_chart(StructureName name) {
  auto make_rows = [](std::initializer_list<std::initializer_list<Scalar>> rows) {
    Matrix m(4, 8);
    int r = 0;
    for (auto& row : rows) {
      int c = 0;
      for (auto& x : row) m(r, c++) = x;
      ++r;
    }
    return m;
  };
  Scalar z(0), one(1), mi = -Scalar::i(), pi = Scalar::i();
  // interleaved real basis order: q1, p1, q2, p2, q3, p3, q4, p4
  static const DarbouxChart j(builtin(StructureName::J),
                              make_rows({{one, z, pi, z, z, z, z, z},      // z1 = q1 + i q2
                                         {z, z, z, z, one, z, pi, z},      // z2 = q3 + i q4
                                         {z, one, z, mi, z, z, z, z},      // u1 = p1 - i p2
                                         {z, z, z, z, z, one, z, mi}}));   // u2 = p3 - i p4
  static const DarbouxChart k(builtin(StructureName::K),
                              make_rows({{one, z, z, pi, z, z, z, z},      // z1 = q1 + i p2
                                         {z, z, z, z, one, z, z, pi},      // z2 = q3 + i p4
                                         {z, one, pi, z, z, z, z, z},      // u1 = p1 + i q2
                                         {z, z, z, z, z, one, pi, z}}));   // u2 = p3 + i q4
  static const DarbouxChart jt(builtin(StructureName::Jtilde),
                               make_rows({{one, z, pi, z, z, z, z, z},     // z1 = q1 + i q2
                                          {z, z, z, z, one, z, mi, z},     // z2 = q3 - i q4
                                          {z, one, z, mi, z, z, z, z},     // u1 = p1 - i p2
                                          {z, z, z, z, z, one, z, pi}}));  // u2 = p3 + i p4
  static const DarbouxChart kt(builtin(StructureName::Ktilde),
                               make_rows({{one, z, z, pi, z, z, z, z},     // z1 = q1 + i p2
                                          {z, z, z, z, one, z, z, mi},     // z2 = q3 - i p4
                                          {z, one, pi, z, z, z, z, z},     // u1 = p1 + i q2
                                          {z, z, z, z, z, one, mi, z}}));  // u2 = p3 - i q4
  Scalar m1i = Scalar::gauss(-1, 1);                                       // -1 + i
  Scalar p1mi = Scalar::gauss(1, -1);                                      // 1 - i
  static const DarbouxChart j2(
      builtin(StructureName::J2),
      make_rows({{one, z, m1i, z, z, z, z, z},      // z1 = q1 + (-1+i) q2
                 {z, z, z, z, one, z, m1i, z},      // z2 = q3 + (-1+i) q4
                 {z, p1mi, z, mi, z, z, z, z},      // u1 = (1-i) p1 - i p2
                 {z, z, z, z, z, p1mi, z, mi}}));   // u2 = (1-i) p3 - i p4
  switch (name) {
    case StructureName::J: return j;
    case StructureName::K: return k;
    case StructureName::Jtilde: return jt;
    case StructureName::Ktilde: return kt;
    case StructureName::J2: return j2;
  }
  throw std::invalid_argument("builtin_chart: unknown structure");
}

/// How the calibration 4-form Im((dq1+idp1)^...) relates to the product
/// Omega_J ^ Omega_K of the built-in structures. With the chart-validated
/// orientation of K the product equals minus the calibration form; the
/// opposite quaternion multiplication order flips K and gives +. Both facts
/// are recorded rather than hiding one.
struct SlagFactorization {
  bool proportional;  // equal up to a global sign
  int sign;           // calibration = sign * (Omega_a ^ Omega_b), 0 if not proportional
};

inline SlagFactorization slag_factorization(const CompatibleComplexStructure& a,
                                            const CompatibleComplexStructure& b) {
  Form slag = special_lagrangian_form(8);
  Form prod = wedge(a.omega(), b.omega());
  if ((prod - slag).is_zero()) return {true, 1};
  if ((prod + slag).is_zero()) return {true, -1};
  return {false, 0};
}

/// True when the calibration form factors through the built-in J and K up to
/// the recorded global sign.
inline bool slag_factorization_check() {
  return slag_factorization(builtin(StructureName::J), builtin(StructureName::K)).proportional;
}

}  // namespace maforms
