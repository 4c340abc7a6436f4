#include <doctest.h>

#include <random>

#include "gsep/error.hpp"
#include "support/checks.hpp"

using namespace gsep;
using testing::Tally;

namespace {

void report(const Tally& t) {
  for (const auto& m : t.messages) MESSAGE(m);
  CHECK(t.failures == 0);
}

const std::vector<testing::CorpusInstance>& corpus() {
  static const auto c = testing::random_corpus({.seed = testing::seeded(4242), .count = 60});
  return c;
}

std::vector<std::size_t> local_indices(const SubringEmbedding& sub, std::span<const std::size_t> parent) {
  std::vector<std::size_t> out;
  for (auto p : parent)
    for (std::size_t k = 0; k < sub.basis.size(); ++k)
      if (sub.basis[k] == p) out.push_back(k);
  return out;
}

}  // namespace

TEST_CASE("lemma identities across the corpus") {
  std::mt19937_64 rng(testing::seeded(99));
  Tally gamma_comp, choice, inter, trans, transport, w, fixed;
  for (const auto& c : corpus()) {
    auto ext = RelativeExtension::make(c.inst.ring, c.inst.delta());
    testing::check_gamma_composition(ext, rng, gamma_comp);
    testing::check_choice_independence(ext, 1 + rng() % 1000, rng, choice);
    testing::check_intertwining(ext, rng, inter);
    testing::check_transversal_invariance(ext, rng, trans);
    testing::check_trace_transport(ext, rng, transport);
    testing::check_w_identities(ext, 1 + rng() % 1000, w);
    testing::check_fixed_ring(ext, fixed);
  }
  for (const Tally* t : {&gamma_comp, &choice, &inter, &trans, &transport, &w, &fixed}) {
    CHECK(t->checks >= 100);
    report(*t);
  }
}

TEST_CASE("all deciders agree on the corpus") {
  std::size_t separable = 0;
  for (const auto& c : corpus()) {
    auto v = testing::all_verdicts(c.inst);
    INFO(c.description);
    CHECK(v.agree());
    separable += v.trace;
    if (v.trace) {
      auto ext = RelativeExtension::make(c.inst.ring, c.inst.delta());
      std::vector<Certificate> certs;
      for (const auto& comp : v.trace_report.components) certs.push_back(*comp.certificate);
      CHECK(certify(ext, certs).ok);
    }
  }
  // the corpus exercises both outcomes
  CHECK(separable > 0);
  CHECK(separable < corpus().size());
}

TEST_CASE("transitivity of separability along subgroupoid chains") {
  std::mt19937_64 rng(testing::seeded(8));
  std::size_t chains = 0;
  for (const auto& c : corpus()) {
    const GradedRing& r = *c.inst.ring;
    auto delta = c.inst.delta();
    // Delta' inside Delta: generated by a random subset of Delta
    std::vector<MorphismId> seeds;
    for (auto s : delta.members())
      if (rng() % 2) seeds.push_back(s);
    auto inner = generated_subgroupoid(c.inst.groupoid, seeds);
    bool inside = true;
    for (auto s : inner.members()) inside = inside && delta.contains(s);
    REQUIRE(inside);

    auto outer_basis = r.support(delta.members());
    auto inner_basis = r.support(inner.members());
    bool a_b = oracle_decide(r, outer_basis).separable;
    bool a_c = oracle_decide(r, inner_basis).separable;
    auto mid = graded_subring(r, delta.members());
    bool b_c = oracle_decide(mid.ring, local_indices(mid, inner_basis)).separable;
    INFO(c.description);
    if (a_b && b_c) CHECK(a_c);
    if (a_c) CHECK(a_b);
    ++chains;
  }
  CHECK(chains == corpus().size());
}

TEST_CASE("separable isotropy pieces force separability") {
  for (const auto& c : corpus()) {
    const GradedRing& r = *c.inst.ring;
    const FiniteGroupoid& g = r.groupoid();
    if (connected_components(g).classes.size() != 1) continue;
    auto delta = c.inst.delta();
    bool some = false;
    for (ObjectId e = 0; e < g.object_count() && !some; ++e) {
      auto piece = graded_subring(r, g.loops(e));
      auto sub = local_indices(piece, r.support(delta.loops(e)));
      some = oracle_decide(piece.ring, sub).separable;
    }
    INFO(c.description);
    if (some) CHECK(decide_trace(RelativeExtension::make(c.inst.ring, delta)).separable);
  }
}

TEST_CASE("gamma restricts to ring isomorphisms between normal pieces") {
  std::mt19937_64 rng(testing::seeded(12));
  std::size_t checked = 0;
  for (const auto& c : corpus()) {
    auto delta = c.inst.delta();
    if (!check_normal(delta).normal) continue;
    auto ext = RelativeExtension::make(c.inst.ring, delta);
    const GradedRing& r = *c.inst.ring;
    const Modulus& mod = r.modulus();
    auto pieces = central_pieces(ext);
    for (MorphismId s = 0; s < r.groupoid().morphism_count(); ++s) {
      ObjectId e = r.groupoid().dom(s), f = r.groupoid().cod(s);
      std::vector<Vector> image;
      for (const auto& x : pieces[e]) image.push_back(gamma(ext, s, x));
      CHECK(howell_form(mod, r.rank(), image) == howell_form(mod, r.rank(), pieces[f]));
      CHECK(gamma(ext, s, r.local_unit(e)) == r.local_unit(f));
      Vector x = testing::random_combination(mod, r.rank(), pieces[e], rng);
      Vector y = testing::random_combination(mod, r.rank(), pieces[e], rng);
      CHECK(gamma(ext, s, r.mul(x, y)) == r.mul(gamma(ext, s, x), gamma(ext, s, y)));
      ++checked;
    }
  }
  CHECK(checked > 0);
}
