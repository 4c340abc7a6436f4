#include "gsep/graded.hpp"

#include <algorithm>
#include <random>
#include <string_view>

namespace gsep {

namespace {

using W = std::int64_t;

bool is_unit_vector(const Algebra& a, std::span<const Residue> x) {
  return std::equal(x.begin(), x.end(), a.unit().begin(), a.unit().end());
}

}  // namespace

const char* kind_name(CrossedKind kind) {
  switch (kind) {
    case CrossedKind::Crossed: return "crossed";
    case CrossedKind::Skew: return "skew";
    case CrossedKind::Twisted: return "twisted";
    case CrossedKind::GroupoidRing: return "groupoid_ring";
  }
  return "crossed";
}

std::optional<CrossedKind> parse_kind(std::string_view name) {
  for (auto k : {CrossedKind::Crossed, CrossedKind::Skew, CrossedKind::Twisted, CrossedKind::GroupoidRing})
    if (name == kind_name(k)) return k;
  return std::nullopt;
}

Vector CrossedSystem::act(MorphismId s, std::span<const Residue> a) const {
  return alpha[s].apply(coeff[groupoid->cod(s)]->modulus(), a);
}

CrossedSystem trivial_system(GroupoidPtr g, std::vector<AlgebraPtr> coeff) {
  const FiniteGroupoid& gr = *g;
  if (coeff.size() != gr.object_count())
    throw Error(Fault::DimensionMismatch, {W(coeff.size())}, "one coefficient algebra per object");
  CrossedSystem sys;
  sys.kind = CrossedKind::GroupoidRing;
  const std::size_t m = gr.morphism_count();
  for (MorphismId s = 0; s < m; ++s) {
    const Algebra& from = *coeff[gr.dom(s)];
    const Algebra& to = *coeff[gr.cod(s)];
    if (!(from == to)) throw Error(Fault::AlphaNotIso, {W(s)}, "identity map between different algebras");
    sys.alpha.push_back(Matrix::identity(to.rank()));
  }
  sys.beta.resize(m * m);
  for (MorphismId s = 0; s < m; ++s)
    for (MorphismId t = 0; t < m; ++t)
      if (gr.composable(s, t)) sys.beta[s * m + t] = coeff[gr.cod(s)]->unit();
  sys.groupoid = std::move(g);
  sys.coeff = std::move(coeff);
  return sys;
}

CrossedSystem trivial_system(GroupoidPtr g, AlgebraPtr b) {
  std::vector<AlgebraPtr> coeff(g->object_count(), b);
  return trivial_system(std::move(g), std::move(coeff));
}

std::optional<Violation> validate_crossed_system(const CrossedSystem& sys) {
  if (!sys.groupoid) return Violation{Fault::InvalidInput, {}, "missing groupoid"};
  const FiniteGroupoid& g = *sys.groupoid;
  const std::size_t m = g.morphism_count();
  if (sys.coeff.size() != g.object_count() || sys.alpha.size() != m || sys.beta.size() != m * m)
    return Violation{Fault::DimensionMismatch, {}, "crossed system tables have the wrong size"};
  for (ObjectId e = 0; e < g.object_count(); ++e) {
    if (!sys.coeff[e]) return Violation{Fault::InvalidInput, {W(e)}, "missing coefficient algebra"};
    if (!(sys.coeff[e]->modulus() == sys.coeff[0]->modulus()))
      return Violation{Fault::InvalidInput, {W(e)}, "coefficient moduli differ"};
  }
  for (MorphismId s = 0; s < m; ++s) {
    const Algebra& from = sys.algebra(g.dom(s));
    const Algebra& to = sys.algebra(g.cod(s));
    const Matrix& a = sys.alpha[s];
    if (a.rows() != to.rank() || a.cols() != from.rank() || !ring_iso_check(from, to, a))
      return Violation{Fault::AlphaNotIso, {W(s)}, {}};
  }
  for (MorphismId s = 0; s < m; ++s)
    for (MorphismId t = 0; t < m; ++t) {
      const Vector& b = sys.beta_at(s, t);
      if (!g.composable(s, t)) {
        if (!b.empty()) return Violation{Fault::InvalidInput, {W(s), W(t)}, "beta on a non-composable pair"};
        continue;
      }
      const Algebra& a = sys.algebra(g.cod(s));
      if (b.size() != a.rank()) return Violation{Fault::DimensionMismatch, {W(s), W(t)}, "beta has the wrong rank"};
      if (!is_unit_element(a, b)) return Violation{Fault::BetaNotUnit, {W(s), W(t)}, {}};
    }
  for (ObjectId e = 0; e < g.object_count(); ++e)
    if (!(sys.alpha[g.identity(e)] == Matrix::identity(sys.algebra(e).rank()))) return Violation{Fault::O1Fail, {W(e)}, {}};
  for (MorphismId s = 0; s < m; ++s) {
    const Algebra& a = sys.algebra(g.cod(s));
    if (!is_unit_vector(a, sys.beta_at(s, g.identity(g.dom(s)))) ||
        !is_unit_vector(a, sys.beta_at(g.identity(g.cod(s)), s)))
      return Violation{Fault::O2Fail, {W(s)}, {}};
  }
  for (MorphismId s = 0; s < m; ++s)
    for (MorphismId t = 0; t < m; ++t) {
      if (!g.composable(s, t)) continue;
      const Algebra& target = sys.algebra(g.cod(s));
      const Algebra& source = sys.algebra(g.dom(t));
      const Vector& b = sys.beta_at(s, t);
      MorphismId st = g.compose(s, t);
      for (std::size_t k = 0; k < source.rank(); ++k) {
        Vector x = source.basis(k);
        Vector lhs = target.mul(sys.act(s, sys.act(t, x)), b);
        Vector rhs = target.mul(b, sys.act(st, x));
        if (lhs != rhs) return Violation{Fault::O3Fail, {W(s), W(t), W(k)}, {}};
      }
    }
  for (MorphismId s = 0; s < m; ++s)
    for (MorphismId t = 0; t < m; ++t) {
      if (!g.composable(s, t)) continue;
      const Algebra& target = sys.algebra(g.cod(s));
      for (MorphismId r = 0; r < m; ++r) {
        if (!g.composable(t, r)) continue;
        Vector lhs = target.mul(sys.beta_at(s, t), sys.beta_at(g.compose(s, t), r));
        Vector rhs = target.mul(sys.act(s, sys.beta_at(t, r)), sys.beta_at(s, g.compose(t, r)));
        if (lhs != rhs) return Violation{Fault::O4Fail, {W(s), W(t), W(r)}, {}};
      }
    }
  bool alpha_trivial = true, beta_trivial = true;
  for (MorphismId s = 0; s < m; ++s) {
    if (!(sys.algebra(g.dom(s)) == sys.algebra(g.cod(s))) ||
        !(sys.alpha[s] == Matrix::identity(sys.algebra(g.cod(s)).rank())))
      alpha_trivial = false;
    for (MorphismId t = 0; t < m; ++t)
      if (g.composable(s, t) && !is_unit_vector(sys.algebra(g.cod(s)), sys.beta_at(s, t))) beta_trivial = false;
  }
  bool kind_ok = true;
  switch (sys.kind) {
    case CrossedKind::Crossed: break;
    case CrossedKind::Skew: kind_ok = beta_trivial; break;
    case CrossedKind::Twisted: kind_ok = alpha_trivial; break;
    case CrossedKind::GroupoidRing: kind_ok = alpha_trivial && beta_trivial; break;
  }
  if (!kind_ok) return Violation{Fault::InvalidInput, {}, std::string("data do not match kind ") + kind_name(sys.kind)};
  return std::nullopt;
}

// --- graded rings -----------------------------------------------------------------

GradedRing GradedRing::attach(AlgebraPtr algebra, GroupoidPtr groupoid, std::vector<MorphismId> deg) {
  const Algebra& a = *algebra;
  const FiniteGroupoid& g = *groupoid;
  const std::size_t n = a.rank();
  if (deg.size() != n) throw Error(Fault::DimensionMismatch, {W(deg.size())}, "one degree per basis element");
  for (std::size_t i = 0; i < n; ++i)
    if (deg[i] >= g.morphism_count()) throw Error(Fault::InvalidInput, {W(i)}, "degree out of range");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& t : a.product(i, j)) {
        if (!g.composable(deg[i], deg[j]) || deg[t.index] != g.compose(deg[i], deg[j]))
          throw Error(Fault::GradingViolation, {W(i), W(j), W(t.index)});
      }

  GradedRing r;
  r.components_.resize(g.morphism_count());
  for (std::size_t i = 0; i < n; ++i) r.components_[deg[i]].push_back(i);

  const Modulus& mod = a.modulus();
  for (ObjectId e = 0; e < g.object_count(); ++e) {
    const auto& comp = r.components_[g.identity(e)];
    if (comp.empty()) throw Error(Fault::LocalUnitMissing, {W(e)}, "R_e is zero");
    LinearSystem sys{mod, Matrix(2 * comp.size() * n, comp.size()), Vector(2 * comp.size() * n, 0)};
    for (std::size_t jj = 0; jj < comp.size(); ++jj) {
      Vector bj = a.basis(comp[jj]);
      for (std::size_t ii = 0; ii < comp.size(); ++ii) {
        Vector bi = a.basis(comp[ii]);
        Vector left = a.mul(bi, bj);
        Vector right = a.mul(bj, bi);
        for (std::size_t k = 0; k < n; ++k) {
          sys.a((2 * jj) * n + k, ii) = left[k];
          sys.a((2 * jj + 1) * n + k, ii) = right[k];
        }
      }
      for (std::size_t k = 0; k < n; ++k) sys.b[(2 * jj) * n + k] = sys.b[(2 * jj + 1) * n + k] = bj[k];
    }
    auto z = solve_mod(sys);
    if (!z) throw Error(Fault::LocalUnitMissing, {W(e)});
    Vector unit(n, 0);
    for (std::size_t ii = 0; ii < comp.size(); ++ii) unit[comp[ii]] = (*z)[ii];
    r.local_units_.push_back(std::move(unit));
  }
  for (std::size_t i = 0; i < n; ++i) {
    MorphismId s = deg[i];
    Vector b = a.basis(i);
    if (a.mul(r.local_units_[g.cod(s)], b) != b || a.mul(b, r.local_units_[g.dom(s)]) != b)
      throw Error(Fault::NotObjectUnital, {W(s)}, "local unit does not act as identity");
  }
  Vector sum(n, 0);
  for (const auto& u : r.local_units_) sum = add(mod, sum, u);
  if (sum != a.unit()) throw Error(Fault::NotObjectUnital, {}, "local units do not sum to the unit");

  r.algebra_ = std::move(algebra);
  r.groupoid_ = std::move(groupoid);
  r.deg_ = std::move(deg);
  return r;
}

std::vector<std::size_t> GradedRing::support(std::span<const MorphismId> morphisms) const {
  std::vector<bool> in(groupoid_->morphism_count(), false);
  for (auto s : morphisms) in.at(s) = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < deg_.size(); ++i)
    if (in[deg_[i]]) out.push_back(i);
  return out;
}

Vector GradedRing::project(std::span<const Residue> x, MorphismId s) const {
  Vector out(rank(), 0);
  for (auto i : components_[s]) out[i] = x[i];
  return out;
}

Vector GradedRing::embed(MorphismId s, std::span<const Residue> a) const {
  if (!crossed_) throw Error(Fault::InvalidInput, {W(s)}, "not a crossed product");
  const auto& comp = components_[s];
  if (a.size() != comp.size()) throw Error(Fault::DimensionMismatch, {W(s)});
  Vector out(rank(), 0);
  for (std::size_t k = 0; k < comp.size(); ++k) out[comp[k]] = modulus().reduce(a[k]);
  return out;
}

Vector GradedRing::coefficient(MorphismId s, std::span<const Residue> x) const {
  if (!crossed_) throw Error(Fault::InvalidInput, {W(s)}, "not a crossed product");
  Vector out;
  for (auto i : components_[s]) out.push_back(x[i]);
  return out;
}

StrongCheck check_strong(const GradedRing& r) {
  const FiniteGroupoid& g = r.groupoid();
  for (MorphismId s = 0; s < g.morphism_count(); ++s) {
    std::vector<Vector> products;
    for (auto i : r.component(s))
      for (auto j : r.component(g.inverse(s))) products.push_back(r.mul(r.algebra().basis(i), r.algebra().basis(j)));
    HowellForm span = howell_form(r.modulus(), r.rank(), products);
    if (!span.contains(r.local_unit(g.cod(s)))) return StrongCheck{false, s};
  }
  return {};
}

GradedRing crossed_product(CrossedSystem sys) {
  if (auto v = validate_crossed_system(sys)) throw Error(*v);
  const FiniteGroupoid& g = *sys.groupoid;
  const std::size_t m = g.morphism_count();
  const Modulus mod = sys.coeff[0]->modulus();
  std::vector<std::size_t> offset(m + 1, 0);
  for (MorphismId s = 0; s < m; ++s) offset[s + 1] = offset[s] + sys.algebra(g.cod(s)).rank();
  const std::size_t n = offset[m];

  std::vector<Residue> mult(n * n * n, 0);
  for (MorphismId s = 0; s < m; ++s) {
    const Algebra& a = sys.algebra(g.cod(s));
    for (MorphismId t = 0; t < m; ++t) {
      if (!g.composable(s, t)) continue;
      const std::size_t st = offset[g.compose(s, t)];
      const Vector& b = sys.beta_at(s, t);
      const std::size_t rt = sys.algebra(g.cod(t)).rank();
      for (std::size_t l = 0; l < rt; ++l) {
        Vector moved = a.mul(sys.alpha[s].column(l), b);
        for (std::size_t k = 0; k < a.rank(); ++k) {
          Vector c = a.mul(a.basis(k), moved);
          for (std::size_t q = 0; q < a.rank(); ++q)
            mult[((offset[s] + k) * n + offset[t] + l) * n + st + q] = c[q];
        }
      }
    }
  }
  Vector unit(n, 0);
  std::vector<MorphismId> deg(n);
  for (MorphismId s = 0; s < m; ++s)
    for (std::size_t k = offset[s]; k < offset[s + 1]; ++k) deg[k] = s;
  for (ObjectId e = 0; e < g.object_count(); ++e) {
    const Vector& u = sys.algebra(e).unit();
    std::copy(u.begin(), u.end(), unit.begin() + static_cast<std::ptrdiff_t>(offset[g.identity(e)]));
  }
  auto algebra = std::make_shared<const Algebra>(Algebra::build(mod, n, std::move(mult), std::move(unit)));
  GradedRing r = GradedRing::attach(std::move(algebra), sys.groupoid, std::move(deg));
  r.crossed_ = std::make_shared<const CrossedSystem>(std::move(sys));
  return r;
}

GradedRing groupoid_ring(AlgebraPtr b, GroupoidPtr g) { return crossed_product(trivial_system(std::move(g), std::move(b))); }

GradedRing twisted_ring(AlgebraPtr b, GroupoidPtr g, std::vector<Vector> beta) {
  CrossedSystem sys = trivial_system(g, b);
  sys.kind = CrossedKind::Twisted;
  if (!beta.empty() && beta.size() != sys.beta.size()) throw Error(Fault::DimensionMismatch, {W(beta.size())}, "beta table size");
  for (std::size_t i = 0; i < beta.size(); ++i)
    if (!beta[i].empty()) sys.beta[i] = std::move(beta[i]);
  return crossed_product(std::move(sys));
}

GradedRing skew_ring(std::vector<AlgebraPtr> coeff, GroupoidPtr g, std::vector<Matrix> alpha) {
  CrossedSystem sys;
  const std::size_t m = g->morphism_count();
  if (coeff.size() != g->object_count()) throw Error(Fault::DimensionMismatch, {W(coeff.size())});
  sys.beta.resize(m * m);
  for (MorphismId s = 0; s < m; ++s)
    for (MorphismId t = 0; t < m; ++t)
      if (g->composable(s, t)) sys.beta[s * m + t] = coeff[g->cod(s)]->unit();
  sys.groupoid = std::move(g);
  sys.coeff = std::move(coeff);
  sys.alpha = std::move(alpha);
  sys.kind = CrossedKind::Skew;
  return crossed_product(std::move(sys));
}

// --- subrings -----------------------------------------------------------------------

Vector SubringEmbedding::lift(std::span<const Residue> x, std::size_t parent_rank) const {
  Vector out(parent_rank, 0);
  for (std::size_t i = 0; i < basis.size(); ++i) out[basis[i]] = x[i];
  return out;
}

Vector SubringEmbedding::restrict(std::span<const Residue> x) const {
  Vector out(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) out[i] = x[basis[i]];
  return out;
}

SubringEmbedding graded_subring(const GradedRing& r, std::span<const MorphismId> members) {
  RestrictedGroupoid sub = restrict_groupoid(r.groupoid(), members);
  std::vector<MorphismId> new_index(r.groupoid().morphism_count(), kNoMorphism);
  for (std::size_t i = 0; i < sub.morphisms.size(); ++i) new_index[sub.morphisms[i]] = static_cast<MorphismId>(i);
  std::vector<std::size_t> basis = r.support(sub.morphisms);
  std::vector<std::size_t> position(r.rank(), npos);
  for (std::size_t i = 0; i < basis.size(); ++i) position[basis[i]] = i;

  const std::size_t n = basis.size();
  const Algebra& a = r.algebra();
  std::vector<Residue> mult(n * n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& t : a.product(basis[i], basis[j])) {
        if (position[t.index] == npos) throw Error(Fault::NotClosed, {W(basis[i]), W(basis[j])});
        mult[(i * n + j) * n + position[t.index]] = t.coeff;
      }
  Vector unit(n, 0);
  for (auto e : sub.objects)
    for (auto k : r.component(r.groupoid().identity(e))) unit[position[k]] = r.local_unit(e)[k];
  std::vector<MorphismId> deg(n);
  for (std::size_t i = 0; i < n; ++i) deg[i] = new_index[r.degree(basis[i])];

  auto algebra = std::make_shared<const Algebra>(Algebra::build(a.modulus(), n, std::move(mult), std::move(unit)));
  auto groupoid = std::make_shared<const FiniteGroupoid>(std::move(sub.groupoid));
  return SubringEmbedding{GradedRing::attach(std::move(algebra), std::move(groupoid), std::move(deg)), std::move(basis),
                          std::move(sub.objects), std::move(sub.morphisms)};
}

// --- partitions of unity -------------------------------------------------------------

PartitionEntry partition_of_unity(const GradedRing& r, MorphismId s, const PartitionOptions& options) {
  const FiniteGroupoid& g = r.groupoid();
  const Algebra& a = r.algebra();
  const ObjectId top = g.cod(s);
  if (g.is_identity(s)) return {PartitionPair{r.local_unit(top), r.local_unit(top)}};

  bool use_crossed = options.method == PartitionMethod::Crossed ||
                     (options.method == PartitionMethod::Auto && r.crossed() && options.seed == 0);
  if (use_crossed) {
    const CrossedSystem* sys = r.crossed();
    if (!sys) throw Error(Fault::InvalidInput, {W(s)}, "crossed partition requested for a plain graded ring");
    MorphismId si = g.inverse(s);
    const Algebra& below = sys->algebra(g.dom(s));
    auto binv = inverse(below, sys->beta_at(si, s));
    if (!binv) throw Error(Fault::BetaNotUnit, {W(si), W(s)});
    return {PartitionPair{r.embed(s, sys->algebra(top).unit()), r.embed(si, *binv)}};
  }

  const auto& xs = r.component(s);
  const auto& ys = r.component(g.inverse(s));
  if (xs.empty() || ys.empty()) throw Error(Fault::NotStronglyGraded, {W(s)});
  const std::size_t n = r.rank();
  LinearSystem sys{r.modulus(), Matrix(n, xs.size() * ys.size()), r.local_unit(top)};
  for (std::size_t j = 0; j < xs.size(); ++j)
    for (std::size_t l = 0; l < ys.size(); ++l) {
      Vector p = a.mul(a.basis(xs[j]), a.basis(ys[l]));
      for (std::size_t k = 0; k < n; ++k) sys.a(k, j * ys.size() + l) = p[k];
    }
  auto c = solve_mod(sys);
  if (!c) throw Error(Fault::NotStronglyGraded, {W(s)});
  if (options.seed != 0) {
    std::mt19937_64 rng(options.seed ^ (0x9E3779B97F4A7C15ull * (s + 1)));
    std::uniform_int_distribution<Residue> coin(0, r.modulus().value() - 1);
    for (const auto& k : kernel_mod(r.modulus(), sys.a)) axpy(r.modulus(), coin(rng), k, *c);
  }
  PartitionEntry out;
  for (std::size_t l = 0; l < ys.size(); ++l) {
    Vector u(n, 0);
    for (std::size_t j = 0; j < xs.size(); ++j) u[xs[j]] = (*c)[j * ys.size() + l];
    if (is_zero(u)) continue;
    out.push_back(PartitionPair{std::move(u), a.basis(ys[l])});
  }
  return out;
}

}  // namespace gsep
