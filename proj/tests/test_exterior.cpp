#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "maforms/kform.hpp"
#include "maforms/polynomial.hpp"

using namespace maforms;

namespace {

std::mt19937 rng(0x5eed1);

Scalar random_rational() {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  return Scalar::rational(num(rng), den(rng));
}

Form random_form(int dim, int degree, int terms) {
  Form f(dim, degree);
  std::vector<BasisMask> masks;
  for (BasisMask m = 0; m < (1u << dim); ++m)
    if (mask_degree(m) == degree) masks.push_back(m);
  std::uniform_int_distribution<size_t> pick(0, masks.size() - 1);
  for (int t = 0; t < terms; ++t) f.add(masks[pick(rng)], random_rational());
  return f;
}

Matrix random_matrix(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = random_rational();
  return m;
}

}  // namespace

TEST_CASE("scalar arithmetic is exact and promotes modes") {
  Scalar a = Scalar::rational(1, 3);
  Scalar b = Scalar::rational(1, 6);
  CHECK(a + b == Scalar::rational(1, 2));
  CHECK((a * b) == Scalar::rational(1, 18));
  CHECK((a / b) == Scalar(2));
  Scalar z = Scalar::gauss(mpq_class(1), mpq_class(2));  // 1 + 2i
  CHECK(z * z.conj() == Scalar(5));
  CHECK((z / z) == Scalar(1));
  CHECK(z.exact());
  Scalar w = z * Scalar::approx(0.5);
  CHECK_FALSE(w.exact());  // mixing modes flags the result as inexact
  CHECK(w.to_complex() == std::complex<double>(0.5, 1.0));
  CHECK_THROWS_AS(a / Scalar(0), std::domain_error);
}

TEST_CASE("wedge of repeated covector vanishes") {
  Form dq1 = Form::covector(8, 0);
  CHECK(wedge(dq1, dq1).is_zero());
}

TEST_CASE("wedge of disjoint pair blocks has coefficient 1") {
  Form a = Form::basis(8, (1u << 0) | (1u << 1));  // dq1^dp1
  Form b = Form::basis(8, (1u << 2) | (1u << 3));  // dq2^dp2
  Form w = wedge(a, b);
  REQUIRE(w.term_count() == 1);
  CHECK(w.coeff(0b1111u) == Scalar(1));
}

TEST_CASE("omega^4 = 24 vol, against enumeration oracle") {
  // oracle: expanding (sum_i b_i)^4 with commuting degree-2 blocks b_i gives
  // one term per ordered choice of 4 distinct blocks: 4! = 24.
  long oracle = 4 * 3 * 2 * 1;
  Form omega = standard_symplectic(8);
  Form w4 = wedge(wedge(omega, omega), wedge(omega, omega));
  REQUIRE(w4.term_count() == 1);
  CHECK(volume_coefficient(w4) == Scalar(oracle));
}

TEST_CASE("graded anticommutativity on all basis pairs") {
  for (int da = 0; da <= 3; ++da)
    for (int db = 0; db <= 3; ++db) {
      for (BasisMask ma = 0; ma < (1u << 6); ++ma) {
        if (mask_degree(ma) != da) continue;
        for (BasisMask mb = 0; mb < (1u << 6); ++mb) {
          if (mask_degree(mb) != db) continue;
          Form a = Form::basis(6, ma), b = Form::basis(6, mb);
          Form lhs = wedge(a, b);
          Form rhs = wedge(b, a);
          if ((da * db) % 2) rhs = -rhs;
          CHECK(lhs == rhs);
        }
      }
    }
}

TEST_CASE("wedge associativity on random triples") {
  for (int t = 0; t < 25; ++t) {
    Form a = random_form(8, 1, 3), b = random_form(8, 2, 4), c = random_form(8, 1, 3);
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
  }
}

TEST_CASE("interior product basics") {
  Polyvector x = dual_bivector(standard_symplectic(8));
  SECTION("no conjugate pair present") {
    Form f = Form::basis(8, (1u << 0) | (1u << 2));  // dq1^dq2
    CHECK(interior(x, f).is_zero());
  }
  SECTION("conjugate pair contracts to 1") {
    Form f = Form::basis(8, (1u << 0) | (1u << 1));  // dq1^dp1
    Form r = interior(x, f);
    CHECK(r == Form::one(8));
  }
  SECTION("full trace of omega is 4") {
    Form r = interior(x, standard_symplectic(8));
    CHECK(r == Scalar(4) * Form::one(8));
  }
  SECTION("degree mismatch throws") {
    CHECK_THROWS_AS(interior(x, Form::covector(8, 0)), std::invalid_argument);
  }
}

TEST_CASE("interior is an antiderivation against wedge") {
  // for a 1-vector v and 1-form l: i_v(l ^ t) = l(v) t - l ^ i_v(t)
  for (int trial = 0; trial < 20; ++trial) {
    int vi = static_cast<int>(rng() % 8);
    Polyvector v = Polyvector::basis(8, 1u << vi);
    Form l = random_form(8, 1, 3);
    Form t = random_form(8, 2, 4);
    Form lhs = interior(v, wedge(l, t));
    Scalar lv = l.coeff(1u << vi);  // l evaluated on the basis vector
    Form rhs = lv * t - wedge(l, interior(v, t));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("pullback along identity and functoriality") {
  Form t = random_form(8, 3, 6);
  CHECK(pullback(Matrix::identity(8), t) == t);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix l1 = random_matrix(8), l2 = random_matrix(8);
    Form f = random_form(8, 2, 5);
    CHECK(pullback(l1 * l2, f) == pullback(l2, pullback(l1, f)));
  }
}

TEST_CASE("pullback of dp1 along a symmetric graph map") {
  // graph map q -> (q, Hq) on n=2: target basis (q1,p1,q2,p2), source (q1,q2)
  Scalar h11 = Scalar(2), h12 = Scalar::rational(1, 3), h22 = Scalar(-1);
  Matrix g(4, 2);
  g(0, 0) = Scalar(1);              // dq1
  g(2, 1) = Scalar(1);              // dq2
  g(1, 0) = h11;
  g(1, 1) = h12;                    // dp1
  g(3, 0) = h12;
  g(3, 1) = h22;                    // dp2
  Form dp1 = Form::covector(4, 1);
  Form pulled = pullback(g, dp1);
  Form expected(2, 1);
  expected.set(1u << 0, h11);
  expected.set(1u << 1, h12);
  CHECK(pulled == expected);
}

TEST_CASE("matrix kernel, rank, inverse, charpoly") {
  Matrix m{{Scalar(1), Scalar(2)}, {Scalar(2), Scalar(4)}};
  CHECK(m.rank() == 1);
  Matrix k = m.kernel();
  REQUIRE(k.cols() == 1);
  CHECK((m * k).is_zero());

  Matrix a{{Scalar(2), Scalar(1)}, {Scalar(1), Scalar(1)}};
  auto inv = a.inverse();
  REQUIRE(inv);
  CHECK((a * *inv) == Matrix::identity(2));
  CHECK(a.det() == Scalar(1));

  auto cp = a.charpoly();  // x^2 - 3x + 1
  REQUIRE(cp.size() == 3);
  CHECK(cp[0] == Scalar(1));
  CHECK(cp[1] == Scalar(-3));
  CHECK(cp[2] == Scalar(1));
}

TEST_CASE("rational polynomial machinery") {
  // p = (x-1)^2 (x+2) x
  RatPoly x({mpq_class(0), mpq_class(1)});
  RatPoly p = x * (x - RatPoly({mpq_class(1)})) * (x - RatPoly({mpq_class(1)})) *
              (x + RatPoly({mpq_class(2)}));
  auto sq = p.squarefree();
  long total = 0;
  for (auto& [f, m] : sq) total += static_cast<long>(f.degree()) * m;
  CHECK(total == 4);
  CHECK(p.descartes_positive() == 2);
  CHECK(p.reflected().descartes_positive() == 1);
  CHECK(p.zero_multiplicity() == 1);

  auto roots = polynomial_roots(p);
  REQUIRE(roots.size() == 4);
  CHECK(std::abs(roots[0] - std::complex<double>(-2, 0)) < 1e-12);
  CHECK(std::abs(roots[1]) < 1e-12);
  CHECK(std::abs(roots[2] - std::complex<double>(1, 0)) < 1e-12);
  CHECK(std::abs(roots[3] - std::complex<double>(1, 0)) < 1e-12);
}

TEST_CASE("complex roots of a real polynomial") {
  // x^2 + 1 -> +-i
  RatPoly p({mpq_class(1), mpq_class(0), mpq_class(1)});
  auto roots = polynomial_roots(p);
  REQUIRE(roots.size() == 2);
  CHECK(std::abs(roots[0] - std::complex<double>(0, -1)) < 1e-12);
  CHECK(std::abs(roots[1] - std::complex<double>(0, 1)) < 1e-12);
}

TEST_CASE("multivariate polynomial print order matches convention") {
  // f13*f24 - f14*f23 - 1 over 10 hessian variables
  std::vector<std::string> names = {"f11", "f12", "f13", "f14", "f22",
                                    "f23", "f24", "f33", "f34", "f44"};
  MultiPoly p = MultiPoly::variable(10, 2) * MultiPoly::variable(10, 6) -
                MultiPoly::variable(10, 3) * MultiPoly::variable(10, 5) - MultiPoly(10, Scalar(1));
  CHECK(p.str(names) == "f13*f24 - f14*f23 - 1");
}
