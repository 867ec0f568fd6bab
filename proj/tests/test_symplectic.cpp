#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "maforms/symplectic.hpp"

using namespace maforms;

namespace {

std::mt19937 rng(0x5eed2);

Form random_form(int dim, int degree, int terms) {
  Form f(dim, degree);
  std::vector<BasisMask> masks;
  for (BasisMask m = 0; m < (1u << dim); ++m)
    if (mask_degree(m) == degree) masks.push_back(m);
  std::uniform_int_distribution<size_t> pick(0, masks.size() - 1);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  for (int t = 0; t < terms; ++t) f.add(masks[pick(rng)], Scalar::rational(num(rng), den(rng)));
  return f;
}

}  // namespace

TEST_CASE("top and perp basics on the standard pair") {
  SymplecticPair p = SymplecticPair::standard(8);

  CHECK(top(1, Form::one(8), p) == p.omega1);
  CHECK(perp(1, p.omega1, p) == Scalar(4) * Form::one(8));
  CHECK(perp(2, p.omega2, p) == Scalar(4) * Form::one(8));
  // cross traces vanish: the two forms are mutually primitive
  CHECK(perp(2, p.omega1, p).is_zero());
  CHECK(perp(1, p.omega2, p).is_zero());

  Form o1sq = wedge(p.omega1, p.omega1);
  Form t = wedge(top(1, p.omega1, p), o1sq);
  CHECK(volume_coefficient(t) == Scalar(24));
}

TEST_CASE("graded operator H and commutator M") {
  SymplecticPair p = SymplecticPair::standard(8);
  CHECK(operator_H(Form::covector(8, 0), p) == Scalar(3) * Form::covector(8, 0));
  CHECK(operator_H(volume_form(8), p) == Scalar(-4) * volume_form(8));
  // perp1^2 (omega1^2) = 24
  Form o1sq = wedge(p.omega1, p.omega1);
  CHECK(perp(1, perp(1, o1sq, p), p) == Scalar(24) * Form::one(8));
  CHECK(perp(2, perp(2, o1sq, p), p) == Scalar(8) * Form::one(8));
}

TEST_CASE("M annihilates bieffective 4-forms") {
  SymplecticPair p = SymplecticPair::standard(8);
  // dq1^dq2^dq3^dq4 is annihilated by both perps (no dp factors at all)
  Form f = Form::basis(8, (1u << 0) | (1u << 2) | (1u << 4) | (1u << 6));
  REQUIRE(perp(1, f, p).is_zero());
  REQUIRE(perp(2, f, p).is_zero());
  REQUIRE(top(1, f, p).is_zero());
  REQUIRE(top(2, f, p).is_zero());
  CHECK(operator_M(f, p).is_zero());
  CHECK(operator_E1(f, p).is_zero());
  CHECK(operator_E2(f, p).is_zero());
}

TEST_CASE("effectiveness test") {
  SymplecticPair p = SymplecticPair::standard(8);
  CHECK(is_effective(Form::basis(8, 0b01010101u), 1, p));  // dq1^dq2^dq3^dq4
  CHECK_FALSE(is_effective(p.omega1, 1, p));
}

TEST_CASE("verbitsky-bonan identities hold on the standard pair") {
  SymplecticPair p = SymplecticPair::standard(8);
  auto report = verify_vb_relations(p);
  CHECK(report.checked == 15 * 256);
  CHECK(report.ok());
}

TEST_CASE("mis-normalized dual bivector breaks relation c") {
  SymplecticPair p = SymplecticPair::standard(8);
  SymplecticPair bad = p;
  bad.x1 = Polyvector(Scalar(2) * p.x1.rep());
  auto report = verify_vb_relations(bad);
  CHECK_FALSE(report.ok());
  bool hits_relation_c = false;
  for (auto& v : report.violations)
    if (v.relation == "[perp1,top1] = H") hits_relation_c = true;
  CHECK(hits_relation_c);
}

TEST_CASE("perp/top kernel ranks (relations a and b)") {
  SymplecticPair p = SymplecticPair::standard(8);
  auto operator_rank = [&](int deg, bool use_top, int j) {
    std::vector<BasisMask> dom, cod;
    int cod_deg = use_top ? deg + 2 : deg - 2;
    for (BasisMask m = 0; m < 256u; ++m) {
      if (mask_degree(m) == deg) dom.push_back(m);
      if (mask_degree(m) == cod_deg) cod.push_back(m);
    }
    Matrix a(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
    for (size_t c = 0; c < dom.size(); ++c) {
      Form img = use_top ? top(j, Form::basis(8, dom[c]), p) : perp(j, Form::basis(8, dom[c]), p);
      for (size_t r = 0; r < cod.size(); ++r) a(static_cast<int>(r), static_cast<int>(c)) = img.coeff(cod[r]);
    }
    return a.rank();
  };
  for (int j : {1, 2}) {
    // perp_j injective on degree >= 2m+1 = 5
    for (int k = 5; k <= 8; ++k) {
      int dim_k = 0;
      for (BasisMask m = 0; m < 256u; ++m)
        if (mask_degree(m) == k) ++dim_k;
      CHECK(operator_rank(k, false, j) == dim_k);
    }
    // top_j injective on degree <= 2m-1 = 3
    for (int k = 0; k <= 3; ++k) {
      int dim_k = 0;
      for (BasisMask m = 0; m < 256u; ++m)
        if (mask_degree(m) == k) ++dim_k;
      CHECK(operator_rank(k, true, j) == dim_k);
    }
  }
}

TEST_CASE("perp = 0 iff top = 0 for 4-forms on R^8") {
  SymplecticPair p = SymplecticPair::standard(8);
  for (int t = 0; t < 40; ++t) {
    Form f = random_form(8, 4, 8);
    for (int j : {1, 2})
      CHECK(perp(j, f, p).is_zero() == top(j, f, p).is_zero());
  }
  // and on a known effective form both vanish
  Form eff = Form::basis(8, 0b01010101u);
  CHECK(perp(1, eff, p).is_zero());
  CHECK(top(1, eff, p).is_zero());
}

TEST_CASE("hodge-lepage decomposition") {
  Form omega8 = standard_symplectic(8);

  SECTION("already effective form is a fixed point") {
    Form eff = Form::basis(8, 0b01010101u);
    auto d = hodge_lepage_decompose(eff, omega8);
    CHECK(d.omega0 == eff);
    CHECK(d.omega1.is_zero());
  }

  SECTION("pure top image has zero effective part") {
    SymplecticPair p = SymplecticPair::standard(8);
    // sigma effective 2-form: dq1^dq2 is primitive for omega
    Form sigma = Form::basis(8, (1u << 0) | (1u << 2));
    REQUIRE(perp(1, sigma, p).is_zero());
    auto d = hodge_lepage_decompose(wedge(sigma, omega8), omega8);
    CHECK(d.omega0.is_zero());
  }

  SECTION("random 4-forms match the kernel-projection oracle") {
    // oracle: write omega in the spanning set {effective basis | top images}
    // and read off the effective component
    std::vector<BasisMask> deg4, deg2, deg6;
    for (BasisMask m = 0; m < 256u; ++m) {
      int d = mask_degree(m);
      if (d == 4) deg4.push_back(m);
      if (d == 2) deg2.push_back(m);
      if (d == 6) deg6.push_back(m);
    }
    // effective subspace basis: kernel of wedge-with-omega on degree 4
    Matrix wedge_map(static_cast<int>(deg6.size()), static_cast<int>(deg4.size()));
    for (size_t c = 0; c < deg4.size(); ++c) {
      Form img = wedge(Form::basis(8, deg4[c]), omega8);
      for (size_t r = 0; r < deg6.size(); ++r)
        wedge_map(static_cast<int>(r), static_cast<int>(c)) = img.coeff(deg6[r]);
    }
    Matrix eff_basis = wedge_map.kernel();  // 70 x 42
    int ne = eff_basis.cols();
    Matrix span(static_cast<int>(deg4.size()), ne + static_cast<int>(deg2.size()));
    for (int c = 0; c < ne; ++c)
      for (size_t r = 0; r < deg4.size(); ++r)
        span(static_cast<int>(r), c) = eff_basis(static_cast<int>(r), c);
    for (size_t c = 0; c < deg2.size(); ++c) {
      Form img = wedge(Form::basis(8, deg2[c]), omega8);
      for (size_t r = 0; r < deg4.size(); ++r)
        span(static_cast<int>(r), ne + static_cast<int>(c)) = img.coeff(deg4[r]);
    }
    LinearSolver solver(span);
    for (int t = 0; t < 10; ++t) {
      Form omega = random_form(8, 4, 10);
      std::vector<Scalar> rhs(deg4.size());
      for (size_t r = 0; r < deg4.size(); ++r) rhs[r] = omega.coeff(deg4[r]);
      auto sol = solver.solve(rhs);
      REQUIRE(sol);
      Form oracle_eff(8, 4);
      for (int c = 0; c < ne; ++c)
        for (size_t r = 0; r < deg4.size(); ++r)
          oracle_eff.add(deg4[r], eff_basis(static_cast<int>(r), c) * (*sol)[c]);
      auto d = hodge_lepage_decompose(omega, omega8);
      CHECK(d.omega0 == oracle_eff);
      CHECK(omega == d.omega0 + wedge(d.omega1, omega8));
      // idempotence
      CHECK(hodge_lepage_decompose(d.omega0, omega8).omega0 == d.omega0);
    }
  }
}
