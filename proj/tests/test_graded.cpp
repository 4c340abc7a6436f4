#include <doctest.h>

#include <random>

#include "gsep/error.hpp"
#include "gsep/graded.hpp"
#include "support/corpus.hpp"

using namespace gsep;

namespace {

template <class T>
std::shared_ptr<const T> share(T x) {
  return std::make_shared<const T>(std::move(x));
}

Matrix frobenius() {
  Matrix f(2, 2);
  f(0, 0) = f(0, 1) = f(1, 1) = 1;
  return f;
}

Fault fault_of(const std::optional<Violation>& v) {
  REQUIRE(v.has_value());
  return v->fault;
}

CrossedSystem cyclic_twisted(Residue m, std::size_t k) {
  return trivial_system(share(from_group(cyclic_group(k))), share(zmod_algebra(m)));
}

}  // namespace

TEST_CASE("attach: group algebra graded by its group") {
  auto c2 = share(from_group(cyclic_group(2)));
  auto a = share(group_algebra(3, cyclic_group(2)));
  auto r = GradedRing::attach(a, c2, {0, 1});
  CHECK(r.local_unit(0) == Vector{1, 0});
  CHECK(check_strong(r).strong);
  // both in degree g: b_e b_e = b_e would need degree g g = e
  try {
    GradedRing::attach(a, c2, {1, 1});
    FAIL("expected GradingViolation");
  } catch (const Error& e) {
    CHECK(e.fault() == Fault::GradingViolation);
  }
  // both in degree e is a valid grading with R_g = 0, hence not strong
  auto trivial = GradedRing::attach(a, c2, {0, 0});
  auto s = check_strong(trivial);
  CHECK_FALSE(s.strong);
  CHECK(s.witness == 1);
}

TEST_CASE("attach: matrix units graded by the thin groupoid") {
  auto thin = share(thin_groupoid(2));
  auto r = GradedRing::attach(share(matrix_algebra(4, 2)), thin, {0, 1, 2, 3});
  CHECK(r.local_unit(0) == Vector{1, 0, 0, 0});
  CHECK(r.local_unit(1) == Vector{0, 0, 0, 1});
  CHECK(check_strong(r).strong);
}

TEST_CASE("attach: local units must exist") {
  // an idempotent in degree g would need g g = g
  auto c2 = share(from_group(cyclic_group(2)));
  auto zz = share(direct_product(zmod_algebra(2), zmod_algebra(2)));
  CHECK_THROWS_AS(GradedRing::attach(zz, c2, {0, 1}), Error);
  // R_1 = 0 for the second object of thin(2)
  try {
    GradedRing::attach(share(zmod_algebra(2)), share(thin_groupoid(2)), {0});
    FAIL("expected LocalUnitMissing");
  } catch (const Error& e) {
    CHECK(e.fault() == Fault::LocalUnitMissing);
    CHECK(e.violation().witness == std::vector<std::int64_t>{1});
  }
}

TEST_CASE("check_strong on dual numbers") {
  auto c2 = share(from_group(cyclic_group(2)));
  auto dual = share(polynomial_algebra(2, std::vector<Residue>{0, 0}));
  auto r = GradedRing::attach(dual, c2, {0, 1});
  auto s = check_strong(r);
  CHECK_FALSE(s.strong);
  CHECK(s.witness == 1);
  CHECK_THROWS_AS(partition_of_unity(r, 1), Error);
}

TEST_CASE("validate_crossed_system") {
  auto c2 = share(from_group(cyclic_group(2)));
  auto gf4 = share(polynomial_algebra(2, std::vector<Residue>{1, 1}));
  CHECK_FALSE(validate_crossed_system(trivial_system(c2, gf4)).has_value());

  CrossedSystem skew = trivial_system(c2, gf4);
  skew.alpha[1] = frobenius();
  skew.kind = CrossedKind::Skew;
  CHECK_FALSE(validate_crossed_system(skew).has_value());

  CrossedSystem beta_bad = cyclic_twisted(4, 2);
  beta_bad.beta[1 * 2 + 1] = {2};
  CHECK(fault_of(validate_crossed_system(beta_bad)) == Fault::BetaNotUnit);

  CrossedSystem o1 = trivial_system(c2, gf4);
  o1.alpha[0] = frobenius();
  o1.kind = CrossedKind::Crossed;
  CHECK(fault_of(validate_crossed_system(o1)) == Fault::O1Fail);

  CrossedSystem o2 = cyclic_twisted(5, 2);
  o2.beta[1 * 2 + 0] = {2};
  o2.kind = CrossedKind::Twisted;
  CHECK(fault_of(validate_crossed_system(o2)) == Fault::O2Fail);

  auto c3 = share(from_group(cyclic_group(3)));
  CrossedSystem o3 = trivial_system(c3, gf4);
  o3.alpha[1] = frobenius();  // alpha_g^2 = id but alpha_{g^2} = id, so alpha_g alpha_{g^2} != alpha_e
  o3.kind = CrossedKind::Skew;
  CHECK(fault_of(validate_crossed_system(o3)) == Fault::O3Fail);

  CrossedSystem o4 = cyclic_twisted(5, 3);
  o4.beta[1 * 3 + 1] = {2};
  o4.kind = CrossedKind::Twisted;
  auto v = validate_crossed_system(o4);
  CHECK(fault_of(v) == Fault::O4Fail);
  CHECK(v->witness.size() == 3);

  CrossedSystem not_iso = trivial_system(c2, gf4);
  not_iso.alpha[1] = Matrix(2, 2);
  CHECK(fault_of(validate_crossed_system(not_iso)) == Fault::AlphaNotIso);

  CrossedSystem wrong_kind = skew;
  wrong_kind.kind = CrossedKind::GroupoidRing;
  CHECK(fault_of(validate_crossed_system(wrong_kind)) == Fault::InvalidInput);
}

TEST_CASE("groupoid ring over the thin groupoid is the matrix ring") {
  auto thin = share(thin_groupoid(2));
  auto r = groupoid_ring(share(zmod_algebra(4)), thin);
  CHECK(r.rank() == 4);
  CHECK(ring_iso_check(r.algebra(), matrix_algebra(4, 2), Matrix::identity(4)));
  CHECK(check_strong(r).strong);
  auto t3 = groupoid_ring(share(zmod_algebra(5)), share(thin_groupoid(3)));
  CHECK(ring_iso_check(t3.algebra(), matrix_algebra(5, 3), Matrix::identity(9)));
}

TEST_CASE("crossed product specializations") {
  auto c2 = share(from_group(cyclic_group(2)));
  auto r = groupoid_ring(share(zmod_algebra(3)), c2);
  CHECK(r.algebra() == group_algebra(3, cyclic_group(2)));
  CHECK(groupoid_ring(share(zmod_algebra(2)), c2).rank() == 2);
  auto plain = twisted_ring(share(zmod_algebra(4)), c2, {});
  CHECK(plain.algebra() == groupoid_ring(share(zmod_algebra(4)), c2).algebra());

  std::vector<Vector> beta(4);
  beta[3] = {2};
  auto tw = twisted_ring(share(zmod_algebra(5)), c2, beta);
  CHECK(tw.mul(tw.algebra().basis(1), tw.algebra().basis(1)) == Vector{2, 0});
  auto pu = partition_of_unity(tw, 1);
  REQUIRE(pu.size() == 1);
  CHECK(pu[0].u == Vector{0, 1});
  CHECK(pu[0].v == Vector{0, 3});
}

TEST_CASE("partitions of unity") {
  auto thin = share(thin_groupoid(2));
  auto m2 = groupoid_ring(share(zmod_algebra(4)), thin);
  auto id = partition_of_unity(m2, 0);
  REQUIRE(id.size() == 1);
  CHECK(id[0].u == m2.local_unit(0));
  CHECK(id[0].v == m2.local_unit(0));
  auto e01 = partition_of_unity(m2, 1);
  REQUIRE(e01.size() == 1);
  CHECK(e01[0].u == m2.algebra().basis(1));
  CHECK(e01[0].v == m2.algebra().basis(2));

  std::mt19937_64 rng(testing::seeded(17));
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = testing::random_instance(rng).inst;
    const GradedRing& r = *inst.ring;
    CHECK(check_strong(r).strong);
    for (MorphismId s = 0; s < r.groupoid().morphism_count(); ++s)
      for (auto opts : {PartitionOptions{}, PartitionOptions{PartitionMethod::Solve, 0},
                        PartitionOptions{PartitionMethod::Solve, 99}}) {
        auto pu = partition_of_unity(r, s, opts);
        Vector sum(r.rank(), 0);
        for (const auto& p : pu) {
          CHECK(r.project(p.u, s) == p.u);
          CHECK(r.project(p.v, r.groupoid().inverse(s)) == p.v);
          sum = add(r.modulus(), sum, r.mul(p.u, p.v));
        }
        CHECK(sum == r.local_unit(r.groupoid().cod(s)));
      }
  }
}

TEST_CASE("graded subrings") {
  auto thin = share(thin_groupoid(2));
  auto m2 = groupoid_ring(share(zmod_algebra(4)), thin);
  std::vector<MorphismId> ids = {0, 3};
  auto diag = graded_subring(m2, ids);
  CHECK(diag.ring.rank() == 2);
  CHECK(diag.lift(diag.ring.local_unit(1), 4) == m2.local_unit(1));
  std::vector<MorphismId> all = {0, 1, 2, 3};
  CHECK(graded_subring(m2, all).ring.rank() == 4);
  std::vector<MorphismId> open = {0, 1, 3};
  CHECK_THROWS_AS(graded_subring(m2, open), Error);

  auto g = share(product_with_thin(cyclic_group(2), 2));
  auto r = groupoid_ring(share(zmod_algebra(3)), g);
  std::vector<MorphismId> delta = {0, 2, g->identity(1)};
  auto sub = graded_subring(r, delta);
  CHECK(sub.ring.rank() == 3);
  for (ObjectId e = 0; e < 2; ++e) CHECK(sub.lift(sub.ring.local_unit(e), r.rank()) == r.local_unit(e));
}

TEST_CASE("crossed products are object unital and strong") {
  std::mt19937_64 rng(testing::seeded(23));
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = testing::random_instance(rng).inst;
    const GradedRing& r = *inst.ring;
    REQUIRE(r.crossed());
    CHECK_FALSE(validate_crossed_system(*r.crossed()).has_value());
    CHECK(check_strong(r).strong);
    Vector sum(r.rank(), 0);
    for (ObjectId e = 0; e < r.groupoid().object_count(); ++e) sum = add(r.modulus(), sum, r.local_unit(e));
    CHECK(sum == r.algebra().unit());
    // gamma on a u_e: u_s (a u_e) v_s = alpha_s(a) u_{r(s)}
    for (MorphismId s = 0; s < r.groupoid().morphism_count(); ++s) {
      ObjectId d = r.groupoid().dom(s);
      const Algebra& a = r.crossed()->algebra(d);
      Vector x = r.embed(r.groupoid().identity(d), testing::random_vector(r.modulus(), a.rank(), rng));
      auto pu = partition_of_unity(r, s);
      Vector g(r.rank(), 0);
      for (const auto& p : pu) g = add(r.modulus(), g, r.mul(r.mul(p.u, x), p.v));
      Vector coeff = r.coefficient(r.groupoid().identity(d), x);
      CHECK(g == r.embed(r.groupoid().identity(r.groupoid().cod(s)), r.crossed()->act(s, coeff)));
    }
  }
}
