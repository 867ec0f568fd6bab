#include <catch2/catch_amalgamated.hpp>

#include "maforms/structures.hpp"

using namespace maforms;

TEST_CASE("all five structures satisfy the block conditions and J^2 = -1") {
  for (auto name : all_structures()) {
    const auto& s = builtin(name);
    CHECK((s.matrix() * s.matrix() + Matrix::identity(8)).is_zero());
    // omega is antisymmetric nondegenerate by construction; spot-check top power
    Form p = s.omega();
    for (int k = 1; k < 4; ++k) p = wedge(p, s.omega());
    CHECK_FALSE(p.is_zero());
  }
}

TEST_CASE("A2 squares to minus the identity") {
  Matrix a2 = base_matrix_a2();
  CHECK((a2 * a2 + Matrix::identity(4)).is_zero());
}

TEST_CASE("the printed off-diagonal K assembly is rejected") {
  // blocks (0, A / Atilde, 0): A * Atilde is +1 on the second base block
  CHECK_THROWS_WITH(
      CompatibleComplexStructure("Kprinted", Matrix::zero(4, 4), base_matrix_a(),
                                 base_matrix_a_tilde()),
      Catch::Matchers::ContainsSubstring("A^2 + BC = -1"));
}

TEST_CASE("non-antisymmetric B block is rejected") {
  Matrix b = Matrix::zero(4, 4);
  b(0, 1) = Scalar(1);  // not antisymmetric
  CHECK_THROWS_WITH(CompatibleComplexStructure("bad", base_matrix_a(), b, Matrix::zero(4, 4)),
                    Catch::Matchers::ContainsSubstring("B^t = -B"));
}

TEST_CASE("charts reproduce Theta exactly") {
  for (auto name : all_structures()) {
    const auto& chart = builtin_chart(name);  // construction validates the pullback identity
    CHECK(chart.real_rows().rank() == 8);
    // chart basis change round-trips
    Form omega = standard_symplectic(8);
    CHECK(chart.to_real_basis(chart.to_chart_basis(omega)) == omega);
  }
}

TEST_CASE("J chart gives z1 = q1 + i q2, u1 = p1 - i p2") {
  const auto& chart = builtin_chart(StructureName::J);
  CHECK(chart.complex_rows()(0, 0) == Scalar(1));
  CHECK(chart.complex_rows()(0, 2) == Scalar::i());
  CHECK(chart.complex_rows()(2, 1) == Scalar(1));
  CHECK(chart.complex_rows()(2, 3) == -Scalar::i());
}

TEST_CASE("verbitsky-bonan relations hold for every builtin pair") {
  // the full five-structure sweep runs in the acceptance suite; spot-check
  // the non-orthogonal structure here
  auto report = verify_vb_relations(builtin(StructureName::J2).pair());
  CHECK(report.ok());
}

TEST_CASE("calibration form factors through Omega_J ^ Omega_K up to sign") {
  auto fact = slag_factorization(builtin(StructureName::J), builtin(StructureName::K));
  CHECK(fact.proportional);
  CHECK(slag_factorization_check());
  INFO("sign = " << fact.sign);
  CHECK(fact.sign != 0);

  SECTION("substituting Jtilde for K breaks the factorization") {
    auto bad = slag_factorization(builtin(StructureName::J), builtin(StructureName::Jtilde));
    CHECK_FALSE(bad.proportional);
  }
  SECTION("scaling Omega_J breaks the factorization") {
    Form prod = wedge(Scalar(2) * builtin(StructureName::J).omega(),
                      builtin(StructureName::K).omega());
    Form slag = special_lagrangian_form(8);
    CHECK_FALSE((prod - slag).is_zero());
    CHECK_FALSE((prod + slag).is_zero());
  }
}
