#include <doctest.h>

#include <random>

#include "gsep/algebra.hpp"
#include "gsep/error.hpp"
#include "support/corpus.hpp"

using namespace gsep;

namespace {

Matrix frobenius() {
  Matrix f(2, 2);
  f(0, 0) = f(0, 1) = f(1, 1) = 1;
  return f;
}

}  // namespace

TEST_CASE("build validates associativity and unit") {
  CHECK_NOTHROW(Algebra::build(Modulus(3), 1, {1}, {1}));
  try {
    Algebra::build(Modulus(3), 1, {1}, {0});
    FAIL("expected UnitLawFails");
  } catch (const Error& e) {
    CHECK(e.fault() == Fault::UnitLawFails);
  }
  // b0 = 1, b1 b1 = b0 + b1 ... associative; b1 b1 = b0 and b1 b2 = b1 is not
  std::vector<Residue> c(27, 0);
  auto set = [&](int i, int j, int k) { c[(i * 3 + j) * 3 + k] = 1; };
  for (int j = 0; j < 3; ++j) set(0, j, j), set(j, 0, j);
  set(1, 1, 2);
  set(1, 2, 1);
  set(2, 1, 0);
  set(2, 2, 2);
  try {
    Algebra::build(Modulus(2), 3, c, {1, 0, 0});
    FAIL("expected NotAssociative");
  } catch (const Error& e) {
    CHECK(e.fault() == Fault::NotAssociative);
    CHECK(e.violation().witness.size() == 3);
  }
}

TEST_CASE("matrix units") {
  Algebra m2 = matrix_algebra(4, 2);
  CHECK(m2.rank() == 4);
  CHECK(m2.unit() == Vector{1, 0, 0, 1});
  CHECK(m2.mul(m2.basis(1), m2.basis(2)) == m2.basis(0));  // E01 E10 = E00
  CHECK(m2.mul(m2.basis(2), m2.basis(1)) == m2.basis(3));
  CHECK(is_zero(m2.mul(m2.basis(1), m2.basis(1))));
  CHECK_FALSE(is_unit_element(m2, m2.basis(0)));
  auto c = center(m2);
  REQUIRE(c.size() == 1);
  CHECK(howell_form(m2.modulus(), 4, c) == howell_form(m2.modulus(), 4, std::vector<Vector>{m2.unit()}));
}

TEST_CASE("units and inverses") {
  Algebra z4 = zmod_algebra(4);
  CHECK(inverse(z4, Vector{3}) == Vector{3});
  CHECK_FALSE(inverse(z4, Vector{2}).has_value());
  Algebra m2 = matrix_algebra(4, 2);
  Vector x = {1, 1, 0, 1};  // unipotent
  auto y = inverse(m2, x);
  REQUIRE(y);
  CHECK(m2.mul(x, *y) == m2.unit());
  CHECK(m2.mul(*y, x) == m2.unit());
  CHECK(m2.mul(m2.unit(), x) == x);
}

TEST_CASE("centers of group algebras") {
  CHECK(center(group_algebra(3, symmetric_group(3))).size() == 3);
  Algebra c4 = group_algebra(5, cyclic_group(4));
  CHECK(howell_form(c4.modulus(), 4, center(c4)).size() == 4);
}

TEST_CASE("centralizer shrinks as the set grows") {
  Algebra m2 = matrix_algebra(6, 2);
  std::vector<Vector> s1 = {m2.basis(0)};
  std::vector<Vector> s2 = {m2.basis(0), m2.basis(1)};
  auto c0 = centralizer(m2, std::vector<Vector>{});
  auto c1 = centralizer(m2, s1);
  auto c2 = centralizer(m2, s2);
  CHECK(howell_form(m2.modulus(), 4, c0).size() == 4);
  HowellForm h1 = howell_form(m2.modulus(), 4, c1);
  for (const auto& x : c1)
    for (const auto& s : s1) CHECK(m2.mul(x, s) == m2.mul(s, x));
  for (const auto& x : c2) CHECK(h1.contains(x));
  CHECK(c2.size() < c1.size());
}

TEST_CASE("ring isomorphisms") {
  Algebra gf4 = polynomial_algebra(2, std::vector<Residue>{1, 1});
  CHECK(ring_iso_check(gf4, gf4, Matrix::identity(2)));
  CHECK(ring_iso_check(gf4, gf4, frobenius()));
  Algebra gf9 = polynomial_algebra(3, std::vector<Residue>{1, 0});  // x^2 + 1 over Z/3
  Matrix conj(2, 2);
  conj(0, 0) = 1;
  conj(1, 1) = 2;  // x -> x^3 = -x
  CHECK(ring_iso_check(gf9, gf9, conj));
  Algebra zz = direct_product(zmod_algebra(3), zmod_algebra(3));
  Matrix swap(2, 2);
  swap(0, 1) = swap(1, 0) = 1;
  CHECK(ring_iso_check(zz, zz, swap));
  Matrix collapse(2, 2);
  collapse(0, 0) = collapse(0, 1) = 1;
  CHECK_FALSE(ring_iso_check(zz, zz, collapse));
}

TEST_CASE("random algebras are associative and unital") {
  std::mt19937_64 rng(testing::seeded(5));
  std::vector<Algebra> algebras = {matrix_algebra(4, 2), group_algebra(6, symmetric_group(3)),
                                   polynomial_algebra(9, std::vector<Residue>{2, 0, 1}),
                                   direct_product(matrix_algebra(3, 2), zmod_algebra(3))};
  for (const auto& a : algebras) {
    const Modulus& m = a.modulus();
    for (int trial = 0; trial < 40; ++trial) {
      Vector x = testing::random_vector(m, a.rank(), rng);
      Vector y = testing::random_vector(m, a.rank(), rng);
      Vector z = testing::random_vector(m, a.rank(), rng);
      CHECK(a.mul(a.mul(x, y), z) == a.mul(x, a.mul(y, z)));
      CHECK(a.mul(a.unit(), x) == x);
      CHECK(a.mul(x, a.unit()) == x);
      CHECK(a.left_matrix(x).apply(m, y) == a.mul(x, y));
      CHECK(a.right_matrix(y).apply(m, x) == a.mul(x, y));
    }
  }
}
