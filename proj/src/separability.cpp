#include "gsep/separability.hpp"

#include <algorithm>
#include <map>

namespace gsep {

namespace {

using W = std::int64_t;

Evidence evidence_of(const SolveResult& s) {
  return Evidence{s.obstruction, s.residual, s.equations, s.unknowns, s.pivots};
}

// Solves sum_j c_j columns[j] = target and returns the combination of gens.
struct CombinationResult {
  std::optional<Vector> value;
  SolveResult solve;
};

CombinationResult solve_combination(const Modulus& mod, std::span<const Vector> columns, std::span<const Vector> gens,
                                    std::span<const Residue> target) {
  LinearSystem sys{mod, Matrix::from_columns(target.size(), columns), Vector(target.begin(), target.end())};
  CombinationResult out{std::nullopt, solve_system(sys)};
  if (out.solve.solution) {
    Vector v(gens.empty() ? 0 : gens[0].size(), 0);
    for (std::size_t j = 0; j < gens.size(); ++j) axpy(mod, (*out.solve.solution)[j], gens[j], v);
    out.value = std::move(v);
  }
  return out;
}

std::vector<MorphismId> reps_into(const RelativeExtension& ext, std::span<const ObjectId> objects) {
  std::vector<MorphismId> out;
  const FiniteGroupoid& g = ext.ring().groupoid();
  for (auto s : ext.transversal().representatives())
    if (std::find(objects.begin(), objects.end(), g.cod(s)) != objects.end()) out.push_back(s);
  return out;
}

SeparabilityReport finish(Method method, std::vector<ComponentReport> comps) {
  SeparabilityReport rep;
  rep.method = method;
  rep.separable = std::all_of(comps.begin(), comps.end(), [](const ComponentReport& c) { return c.separable; });
  rep.components = std::move(comps);
  return rep;
}

}  // namespace

RelativeExtension RelativeExtension::make(GradedRingPtr ring, WideSubgroupoid delta, const ExtensionOptions& options) {
  if (!ring) throw Error(Fault::InvalidInput, {}, "missing ring");
  if (delta.parent_ptr() != ring->groupoid_ptr())
    throw Error(Fault::InvalidInput, {}, "subgroupoid belongs to a different groupoid");
  StrongCheck strong = check_strong(*ring);
  if (!strong.strong) throw Error(Fault::NotStronglyGraded, {W(strong.witness)});
  WideSubgroupoid lambda = isotropy(delta);
  Transversal t = gsep::transversal(delta, options.tie);
  std::vector<PartitionEntry> pu;
  for (MorphismId s = 0; s < ring->groupoid().morphism_count(); ++s)
    pu.push_back(partition_of_unity(*ring, s, options.partition));
  return RelativeExtension(std::move(ring), std::move(delta), std::move(lambda), std::move(t), std::move(pu), options);
}

Vector gamma(const RelativeExtension& ext, MorphismId s, std::span<const Residue> x) {
  const GradedRing& r = ext.ring();
  Vector out(r.rank(), 0);
  for (const auto& [u, v] : ext.partition(s)) out = add(r.modulus(), out, r.mul(r.mul(u, x), v));
  return out;
}

Vector relative_trace(const RelativeExtension& ext, ObjectId e, std::span<const Residue> r) {
  const GradedRing& ring = ext.ring();
  Vector out(ring.rank(), 0);
  for (auto t : ext.transversal().into(e)) out = add(ring.modulus(), out, gamma(ext, t, r));
  return out;
}

std::vector<std::vector<Vector>> central_pieces(const RelativeExtension& ext) {
  const GradedRing& r = ext.ring();
  const FiniteGroupoid& g = r.groupoid();
  std::vector<std::vector<Vector>> out;
  for (ObjectId f = 0; f < g.object_count(); ++f) {
    std::vector<Vector> s;
    for (auto d : ext.delta().loops(f))
      for (auto i : r.component(d)) s.push_back(r.algebra().basis(i));
    const auto& within = r.component(g.identity(f));
    out.push_back(centralizer(r.algebra(), s, std::span<const std::size_t>(within)));
  }
  return out;
}

std::vector<Vector> central_subring(const RelativeExtension& ext) {
  std::vector<Vector> out;
  for (auto& piece : central_pieces(ext))
    for (auto& v : piece) out.push_back(std::move(v));
  return out;
}

bool in_central_subring(const RelativeExtension& ext, std::span<const Residue> x) {
  const GradedRing& r = ext.ring();
  const FiniteGroupoid& g = r.groupoid();
  if (x.size() != r.rank()) return false;
  for (std::size_t i = 0; i < r.rank(); ++i)
    if (x[i] != 0 && !g.is_identity(r.degree(i))) return false;
  for (auto l : ext.lambda().members())
    for (auto i : r.component(l)) {
      Vector b = r.algebra().basis(i);
      if (r.mul(x, b) != r.mul(b, x)) return false;
    }
  return true;
}

const char* method_name(Method m) {
  switch (m) {
    case Method::Trace: return "trace";
    case Method::Normal: return "normal";
    case Method::Twisted: return "twisted";
    case Method::Oracle: return "oracle";
  }
  return "trace";
}

std::optional<Method> parse_method(std::string_view name) {
  for (auto m : {Method::Trace, Method::Normal, Method::Twisted, Method::Oracle})
    if (name == method_name(m)) return m;
  return std::nullopt;
}

SeparabilityReport decide_trace(const RelativeExtension& ext) {
  const GradedRing& r = ext.ring();
  Components comps = connected_components(r.groupoid());
  auto pieces = central_pieces(ext);
  std::vector<ComponentReport> out;
  for (const auto& objects : comps.classes) {
    ComponentReport rep;
    rep.objects = objects;
    rep.transversal = reps_into(ext, objects);
    std::vector<Vector> gens;
    for (auto f : objects) gens.insert(gens.end(), pieces[f].begin(), pieces[f].end());
    for (auto f : objects) {
      rep.candidates.push_back(f);
      std::vector<Vector> columns;
      for (const auto& x : gens) columns.push_back(relative_trace(ext, f, x));
      auto res = solve_combination(r.modulus(), columns, gens, r.local_unit(f));
      if (res.value) {
        rep.separable = true;
        rep.certificate = Certificate{f, std::move(*res.value)};
        break;
      }
      if (!rep.evidence) rep.evidence = evidence_of(res.solve);
    }
    if (rep.separable) rep.evidence.reset();
    out.push_back(std::move(rep));
  }
  return finish(Method::Trace, std::move(out));
}

SeparabilityReport decide_normal(const RelativeExtension& ext) {
  NormalityCheck normal = check_normal(ext.delta());
  if (!normal.normal) throw Error(Fault::NotNormal, {W(normal.sigma), W(normal.delta)});
  const GradedRing& r = ext.ring();
  Components comps = connected_components(r.groupoid());
  auto pieces = central_pieces(ext);
  std::vector<ComponentReport> out;
  for (const auto& objects : comps.classes) {
    ComponentReport rep;
    rep.objects = objects;
    rep.transversal = reps_into(ext, objects);
    rep.separable = true;
    for (auto e : objects) {
      rep.candidates.push_back(e);
      std::vector<Vector> columns;
      for (const auto& x : pieces[e]) {
        Vector tr(r.rank(), 0);
        for (auto t : ext.transversal().between(e, e)) tr = add(r.modulus(), tr, gamma(ext, t, x));
        columns.push_back(std::move(tr));
      }
      auto res = solve_combination(r.modulus(), columns, pieces[e], r.local_unit(e));
      if (!res.value) {
        rep.separable = false;
        rep.certificate.reset();
        rep.evidence = evidence_of(res.solve);
        break;
      }
      if (!rep.certificate) rep.certificate = Certificate{e, std::move(*res.value)};
    }
    out.push_back(std::move(rep));
  }
  return finish(Method::Normal, std::move(out));
}

SeparabilityReport decide_twisted(const RelativeExtension& ext) {
  const GradedRing& r = ext.ring();
  const CrossedSystem* sys = r.crossed();
  if (!sys) throw Error(Fault::InvalidInput, {}, "twisted criterion needs a crossed product");
  const FiniteGroupoid& g = r.groupoid();
  const Algebra& b = sys->algebra(0);
  for (MorphismId s = 0; s < g.morphism_count(); ++s)
    if (!(sys->algebra(g.dom(s)) == b) || !(sys->algebra(g.cod(s)) == b) ||
        !(sys->alpha[s] == Matrix::identity(b.rank())))
      throw Error(Fault::AlphaNotTrivial, {W(s)});
  std::vector<Vector> zb = center(b);
  Components comps = connected_components(g);
  std::vector<ComponentReport> out;
  for (const auto& objects : comps.classes) {
    ComponentReport rep;
    rep.objects = objects;
    rep.transversal = reps_into(ext, objects);
    rep.candidates = {objects.front()};
    std::vector<Vector> columns;
    for (auto f : objects) {
      Residue index = static_cast<Residue>(isotropy_index(ext.delta(), f));
      for (const auto& z : zb) columns.push_back(scale(r.modulus(), index, z));
    }
    LinearSystem ls{r.modulus(), Matrix::from_columns(b.rank(), columns), b.unit()};
    SolveResult res = solve_system(ls);
    if (res.solution) {
      Vector cert(r.rank(), 0);
      for (std::size_t k = 0; k < objects.size(); ++k) {
        Vector bf(b.rank(), 0);
        for (std::size_t j = 0; j < zb.size(); ++j) axpy(r.modulus(), (*res.solution)[k * zb.size() + j], zb[j], bf);
        cert = add(r.modulus(), cert, r.embed(g.identity(objects[k]), bf));
      }
      rep.separable = true;
      rep.certificate = Certificate{objects.front(), std::move(cert)};
    } else {
      rep.evidence = evidence_of(res);
    }
    out.push_back(std::move(rep));
  }
  return finish(Method::Twisted, std::move(out));
}

Vector crossed_trace(const RelativeExtension& ext, ObjectId f, ObjectId e, std::span<const Residue> a) {
  const CrossedSystem* sys = ext.ring().crossed();
  if (!sys) throw Error(Fault::InvalidInput, {}, "crossed trace needs a crossed product");
  const Algebra& af = sys->algebra(f);
  if (a.size() != af.rank()) throw Error(Fault::DimensionMismatch, {W(a.size())});
  for (std::size_t k = 0; k < af.rank(); ++k)
    if (af.mul(a, af.basis(k)) != af.mul(af.basis(k), a)) throw Error(Fault::NotFixedCentral, {W(f)}, "not central");
  for (auto d : ext.delta().loops(f))
    if (!std::equal(a.begin(), a.end(), sys->act(d, a).begin())) throw Error(Fault::NotFixedCentral, {W(f), W(d)}, "not fixed");
  Vector out(sys->algebra(e).rank(), 0);
  for (auto t : ext.transversal().between(f, e)) out = add(af.modulus(), out, sys->act(t, a));
  return out;
}

// --- oracle -------------------------------------------------------------------------

SeparabilityReport oracle_decide(const GradedRing& r, std::span<const std::size_t> subring, const OracleOptions& options) {
  auto t = std::make_shared<const TensorPresentation>(TensorPresentation::build(r, subring, options.max_rank));
  const FiniteGroupoid& g = r.groupoid();
  const Algebra& a = r.algebra();
  const Modulus& mod = r.modulus();
  Components comps = connected_components(g);

  // Variables of x_u: pairs whose composite degree is a loop at u.
  std::vector<std::vector<std::size_t>> vars(g.object_count());
  for (std::size_t p = 0; p < t->rank(); ++p) {
    MorphismId rho = t->block_degree(p);
    if (g.is_loop(rho)) vars[g.cod(rho)].push_back(p);
  }
  auto pair_vector = [&](std::size_t p) { return unit_vector(t->rank(), p); };

  SeparabilityReport report;
  report.method = Method::Oracle;
  report.presentation = t;
  report.element.assign(g.object_count(), Vector(t->rank(), 0));
  report.separable = true;
  for (const auto& objects : comps.classes) {
    ComponentReport rep;
    rep.objects = objects;
    std::vector<std::size_t> col_offset;
    std::size_t cols = 0;
    for (auto u : objects) {
      col_offset.push_back(cols);
      cols += vars[u].size();
    }
    std::vector<Vector> rows;
    Vector rhs;
    // mu(x_u) = 1_u on the coordinates of loops at u.
    for (std::size_t k = 0; k < objects.size(); ++k) {
      ObjectId u = objects[k];
      std::vector<Vector> images;
      for (auto p : vars[u]) images.push_back(t->multiply(pair_vector(p)));
      for (std::size_t i = 0; i < r.rank(); ++i) {
        if (g.cod(r.degree(i)) != u || g.dom(r.degree(i)) != u) continue;
        Vector row(cols, 0);
        for (std::size_t c = 0; c < vars[u].size(); ++c) row[col_offset[k] + c] = images[c][i];
        rows.push_back(std::move(row));
        rhs.push_back(r.local_unit(u)[i]);
      }
    }
    // x_u a - a x_v = 0 for every basis a of degree v -> u.
    for (std::size_t ku = 0; ku < objects.size(); ++ku)
      for (std::size_t kv = 0; kv < objects.size(); ++kv) {
        ObjectId u = objects[ku], v = objects[kv];
        std::vector<MorphismId> degrees = g.hom(v, u);
        std::vector<std::size_t> basis = r.support(degrees);
        for (auto ai : basis) {
          Vector av = a.basis(ai);
          std::vector<Vector> cols_u, cols_v;
          for (auto p : vars[u]) cols_u.push_back(t->invariants(t->right_act(pair_vector(p), av), degrees));
          for (auto p : vars[v]) cols_v.push_back(t->invariants(t->left_act(av, pair_vector(p)), degrees));
          std::size_t height = cols_u.empty() ? (cols_v.empty() ? 0 : cols_v[0].size()) : cols_u[0].size();
          for (std::size_t h = 0; h < height; ++h) {
            Vector row(cols, 0);
            for (std::size_t c = 0; c < cols_u.size(); ++c) row[col_offset[ku] + c] = cols_u[c][h];
            for (std::size_t c = 0; c < cols_v.size(); ++c)
              row[col_offset[kv] + c] = mod.sub(row[col_offset[kv] + c], cols_v[c][h]);
            if (!is_zero(row)) {
              rows.push_back(std::move(row));
              rhs.push_back(0);
            }
          }
        }
      }
    LinearSystem sys{mod, Matrix::from_rows(cols, rows), rhs};
    SolveResult res = solve_system(sys);
    if (res.solution) {
      rep.separable = true;
      for (std::size_t k = 0; k < objects.size(); ++k)
        for (std::size_t c = 0; c < vars[objects[k]].size(); ++c)
          report.element[objects[k]][vars[objects[k]][c]] = (*res.solution)[col_offset[k] + c];
    } else {
      rep.evidence = evidence_of(res);
      report.separable = false;
    }
    report.components.push_back(std::move(rep));
  }
  if (!report.separable) report.element.clear();
  return report;
}

std::optional<Violation> verify_element(const GradedRing& r, const TensorPresentation& t, std::span<const Vector> x) {
  const FiniteGroupoid& g = r.groupoid();
  if (x.size() != g.object_count()) return Violation{Fault::DimensionMismatch, {W(x.size())}, "one element per object"};
  for (ObjectId e = 0; e < g.object_count(); ++e)
    if (t.multiply(x[e]) != r.local_unit(e)) return Violation{Fault::VerificationFailed, {W(e)}, "mu(x_e) != 1_e"};
  for (std::size_t i = 0; i < r.rank(); ++i) {
    MorphismId s = r.degree(i);
    Vector b = r.algebra().basis(i);
    if (!t.equal(t.left_act(b, x[g.dom(s)]), t.right_act(x[g.cod(s)], b)))
      return Violation{Fault::VerificationFailed, {W(i)}, "s x_v != x_u s"};
  }
  return std::nullopt;
}

ElementFamily certificate_to_element(const RelativeExtension& ext, std::span<const Certificate> certs,
                                     const OracleOptions& options) {
  const GradedRing& r = ext.ring();
  const FiniteGroupoid& g = r.groupoid();
  auto basis = r.support(ext.lambda().members());
  auto t = std::make_shared<const TensorPresentation>(TensorPresentation::build(r, basis, options.max_rank));
  Components comps = connected_components(g);
  std::vector<const Certificate*> by_component(comps.classes.size(), nullptr);
  for (const auto& c : certs) {
    if (c.f >= g.object_count()) throw Error(Fault::InvalidInput, {W(c.f)}, "certificate object out of range");
    by_component[comps.component_of[c.f]] = &c;
  }
  ElementFamily out;
  out.presentation = t;
  out.x.assign(g.object_count(), Vector(t->rank(), 0));
  for (ObjectId e = 0; e < g.object_count(); ++e) {
    const Certificate* c = by_component[comps.component_of[e]];
    if (!c) throw Error(Fault::VerificationFailed, {W(e)}, "no certificate for this component");
    for (auto tau : ext.transversal().into(e)) {
      Vector w(t->rank(), 0);
      for (const auto& [u, v] : ext.partition(tau)) w = add(r.modulus(), w, t->tensor(u, v));
      out.x[e] = add(r.modulus(), out.x[e], t->left_act(gamma(ext, tau, c->r), w));
    }
  }
  if (auto v = verify_element(r, *t, out.x)) throw Error(*v);
  return out;
}

CertifyOutcome certify(const RelativeExtension& ext, std::span<const Certificate> certs, const OracleOptions& options) {
  const GradedRing& r = ext.ring();
  const FiniteGroupoid& g = r.groupoid();
  Components comps = connected_components(g);
  std::vector<bool> covered(comps.classes.size(), false);
  for (const auto& c : certs) {
    if (c.f >= g.object_count()) return {false, "component", {W(c.f)}, "object out of range"};
    if (c.r.size() != r.rank()) return {false, "membership", {W(c.f)}, "r has the wrong rank"};
    covered[comps.component_of[c.f]] = true;
  }
  for (std::size_t k = 0; k < covered.size(); ++k)
    if (!covered[k]) return {false, "component", {W(comps.classes[k].front())}, "component without certificate"};
  for (const auto& c : certs) {
    Vector rr(c.r);
    for (auto& v : rr) v = r.modulus().reduce(v);
    if (!in_central_subring(ext, rr)) return {false, "membership", {W(c.f)}, "r is not in C_{R_0}(R_Lambda)"};
    if (relative_trace(ext, c.f, rr) != r.local_unit(c.f)) return {false, "trace", {W(c.f)}, "tr^f(r) != 1_f"};
  }
  try {
    std::vector<Certificate> reduced(certs.begin(), certs.end());
    for (auto& c : reduced)
      for (auto& v : c.r) v = r.modulus().reduce(v);
    certificate_to_element(ext, reduced, options);
  } catch (const Error& e) {
    return {false, "element", e.violation().witness, e.violation().detail};
  }
  return {};
}

}  // namespace gsep
