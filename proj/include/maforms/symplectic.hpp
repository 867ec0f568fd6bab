#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "maforms/kform.hpp"

namespace maforms {

/// A pair of nondegenerate 2-forms (Omega_1, Omega_2) whose sum Omega_1 +
/// i Omega_2 is a complex symplectic form, together with the dual bivectors
/// normalized so that [perp_j, top_j] = (n - k) id on k-forms (n = dim/2).
/// Everything here is immutable after construction.
struct SymplecticPair {
  Form omega1, omega2;
  Polyvector x1, x2;
  int half_dim;  // m with real dimension 4m: dim/4

  int dim() const { return omega1.dim(); }
  int weight(int k) const { return dim() / 2 - k; }  // the (2m - k) of relation (c)

  static SymplecticPair make(Form o1, Form o2) {
    if (o1.dim() != o2.dim() || o1.degree() != 2 || o2.degree() != 2)
      throw std::invalid_argument("SymplecticPair: need two 2-forms on one space");
    int d = o1.dim();
    if (d % 4) throw std::invalid_argument("SymplecticPair: dimension must be 4m");
    SymplecticPair p{o1, o2, dual_bivector(o1), dual_bivector(o2), d / 4};
    // nondegeneracy: top wedge powers and the complex-symplectic volume
    Form p1 = o1, p2 = o2;
    for (int k = 1; k < d / 2; ++k) {
      p1 = wedge(p1, o1);
      p2 = wedge(p2, o2);
    }
    if (p1.is_zero() || p2.is_zero())
      throw std::invalid_argument("SymplecticPair: degenerate 2-form");
    Form theta = o1 + Scalar::i() * o2;
    Form th2 = wedge(theta, theta);
    if (wedge(th2, conj(th2)).is_zero())
      throw std::invalid_argument("SymplecticPair: Theta^2 ^ conj(Theta)^2 vanishes");
    return p;
  }

  static SymplecticPair standard(int dim) {
    Form o1 = standard_symplectic(dim);
    // the standard second form: Omega_J for the base rotation (q1,q2)->(−q2,q1)
    Form o2(dim, 2);
    for (int blk = 0; blk + 3 < dim; blk += 4) {
      o2.set((1u << blk) | (1u << (blk + 3)), Scalar(1));      // dq_a ^ dp_{a+1}
      o2.set((1u << (blk + 1)) | (1u << (blk + 2)), Scalar(1)); // canonical partner
    }
    return make(o1, o2);
  }
};

inline Form top(int j, const Form& theta, const SymplecticPair& p) {
  return wedge(theta, j == 1 ? p.omega1 : p.omega2);
}

inline Form perp(int j, const Form& theta, const SymplecticPair& p) {
  if (theta.degree() < 2) return Form::zero(theta.dim(), std::max(theta.degree() - 2, 0));
  return interior(j == 1 ? p.x1 : p.x2, theta);
}

/// H = [perp_1, top_1]; acts as (2m - k) id on degree-k forms.
inline Form operator_H(const Form& theta, const SymplecticPair& p) {
  return perp(1, top(1, theta, p), p) - top(1, perp(1, theta, p), p);
}

/// M = [perp_2, top_1], computed as the literal commutator.
inline Form operator_M(const Form& theta, const SymplecticPair& p) {
  return perp(2, top(1, theta, p), p) - top(1, perp(2, theta, p), p);
}

/// E_1 = (perp_1 + i perp_2)/2 and E_2 = (perp_1 - i perp_2)/2: the
/// complexified lowering operators, exposed as the primitivity oracle.
inline Form operator_E1(const Form& theta, const SymplecticPair& p) {
  return Scalar::rational(1, 2) * (perp(1, theta, p) + Scalar::i() * perp(2, theta, p));
}
inline Form operator_E2(const Form& theta, const SymplecticPair& p) {
  return Scalar::rational(1, 2) * (perp(1, theta, p) - Scalar::i() * perp(2, theta, p));
}

inline bool is_effective(const Form& theta, int j, const SymplecticPair& p, double tol = 1e-12) {
  Form r = perp(j, theta, p);
  if (r.is_zero()) return true;
  return r.max_abs() <= tol && !r.terms().begin()->second.exact();
}

struct RelationViolation {
  std::string relation;
  int degree;
  BasisMask basis_mask;
};

struct VerbitskyBonanReport {
  std::vector<RelationViolation> violations;
  int checked = 0;
  bool ok() const { return violations.empty(); }
};

/// Evaluates the full list of operator commutation identities on every basis
/// form of every degree. The graded operator (2m-k)id is used as the
/// reference H, so the defining relations are informative checks too.
inline VerbitskyBonanReport verify_vb_relations(const SymplecticPair& p) {
  using Op = std::function<Form(const Form&)>;
  Op T1 = [&](const Form& f) { return top(1, f, p); };
  Op T2 = [&](const Form& f) { return top(2, f, p); };
  Op P1 = [&](const Form& f) { return perp(1, f, p); };
  Op P2 = [&](const Form& f) { return perp(2, f, p); };
  Op Hg = [&](const Form& f) { return Scalar(p.weight(f.degree())) * f; };
  Op M = [&](const Form& f) { return operator_M(f, p); };
  auto comm = [](const Op& a, const Op& b) {
    return [a, b](const Form& f) { return a(b(f)) - b(a(f)); };
  };
  auto scaled = [](int s, const Op& a) {
    return [s, a](const Form& f) { return Scalar(s) * a(f); };
  };
  auto zero = [](const Form& f) { return Form::zero(f.dim(), 0); };

  struct Rel {
    std::string name;
    Op lhs, rhs;
  };
  std::vector<Rel> rels = {
      {"[perp1,top1] = H", comm(P1, T1), Hg},
      {"[perp2,top2] = H", comm(P2, T2), Hg},
      {"[perp1,top2] = -M", comm(P1, T2), scaled(-1, M)},
      {"[perp2,top1] = M", comm(P2, T1), M},
      {"[perp1,perp2] = 0", comm(P1, P2), zero},
      {"[top1,top2] = 0", comm(T1, T2), zero},
      {"[perp1,H] = -2 perp1", comm(P1, Hg), scaled(-2, P1)},
      {"[perp2,H] = -2 perp2", comm(P2, Hg), scaled(-2, P2)},
      {"[top1,H] = 2 top1", comm(T1, Hg), scaled(2, T1)},
      {"[top2,H] = 2 top2", comm(T2, Hg), scaled(2, T2)},
      {"[perp1,M] = -2 perp2", comm(P1, M), scaled(-2, P2)},
      {"[perp2,M] = 2 perp1", comm(P2, M), scaled(2, P1)},
      {"[top1,M] = -2 top2", comm(T1, M), scaled(-2, T2)},
      {"[top2,M] = 2 top1", comm(T2, M), scaled(2, T1)},
      {"[H,M] = 0", comm(Hg, M), zero},
  };

  VerbitskyBonanReport report;
  int d = p.dim();
  for (BasisMask mask = 0; mask < (1u << d); ++mask) {
    Form basis = Form::basis(d, mask);
    for (auto& rel : rels) {
      Form lhs = rel.lhs(basis), rhs = rel.rhs(basis);
      bool bad;
      if (lhs.degree() != rhs.degree())
        bad = !(lhs.is_zero() && rhs.is_zero());
      else
        bad = !(lhs - rhs).is_zero();
      if (bad) report.violations.push_back({rel.name, mask_degree(mask), mask});
      ++report.checked;
    }
  }
  return report;
}

/// omega = omega0 + omega1 ^ Omega with perp(omega0) = 0: the unique
/// effective part of an n-form on the 2n-dimensional space, solved exactly
/// in the coefficient basis. The multiplier omega1 is the minimum-norm
/// solution when the system leaves slack (it never does for n <= dim/2,
/// but the tie-break keeps the output deterministic regardless).
struct EffectiveDecomposition {
  Form omega0;
  Form omega1;
};

inline EffectiveDecomposition hodge_lepage_decompose(const Form& omega, const Form& big_omega) {
  int d = omega.dim();
  int n = d / 2;
  if (omega.degree() != n)
    throw std::invalid_argument("hodge_lepage_decompose: need an n-form on 2n dims");
  Polyvector x = dual_bivector(big_omega);

  // unknown omega1 in degree n-2; equation perp(omega1 ^ Omega) = perp(omega)
  std::vector<BasisMask> basis;
  for (BasisMask m = 0; m < (1u << d); ++m)
    if (mask_degree(m) == n - 2) basis.push_back(m);
  int nb = static_cast<int>(basis.size());
  Matrix a(nb, nb);
  for (int col = 0; col < nb; ++col) {
    Form image = interior(x, wedge(Form::basis(d, basis[col]), big_omega));
    for (int row = 0; row < nb; ++row) a(row, col) = image.coeff(basis[row]);
  }
  Form rhs_form = interior(x, omega);
  std::vector<Scalar> rhs(nb);
  for (int row = 0; row < nb; ++row) rhs[row] = rhs_form.coeff(basis[row]);

  LinearSolver solver(a);
  auto sol = solver.solve(rhs, 1e-12);
  if (!sol) throw std::logic_error("hodge_lepage_decompose: inconsistent system");
  if (solver.rank() < nb) {
    // minimum-norm tie-break over the kernel, for a reproducible omega1
    Matrix k = a.kernel();
    Matrix kh = k.conj_transpose();
    Matrix x0(nb, 1);
    for (int i = 0; i < nb; ++i) x0(i, 0) = (*sol)[i];
    auto gram_inv = (kh * k).inverse();
    if (gram_inv) {
      Matrix c = -Scalar(1) * (*gram_inv * (kh * x0));
      Matrix adj = k * c;
      for (int i = 0; i < nb; ++i) (*sol)[i] += adj(i, 0);
    }
  }
  Form omega1(d, n - 2);
  for (int col = 0; col < nb; ++col) omega1.add(basis[col], (*sol)[col]);
  Form omega0 = omega - wedge(omega1, big_omega);
  return {omega0, omega1};
}

/// Effective part only; the common use.
inline Form effective_part(const Form& omega, const Form& big_omega) {
  return hodge_lepage_decompose(omega, big_omega).omega0;
}

}  // namespace maforms
