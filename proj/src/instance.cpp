#include "gsep/instance.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

namespace gsep::io {

namespace {

using W = std::int64_t;

[[noreturn]] void parse_fail(const std::string& what) { throw ParseError(what); }

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t as_index(const Json& j) {
  if (!j.is_number_integer() || j.get<W>() < 0) parse_fail("expected a non-negative integer, got " + j.dump());
  return j.get<std::size_t>();
}

Vector as_vector(const Json& j) {
  if (!j.is_array()) parse_fail("expected an array of integers, got " + j.dump());
  Vector v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) parse_fail("expected an integer, got " + x.dump());
    v.push_back(x.get<Residue>());
  }
  return v;
}

Matrix as_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) parse_fail("expected a non-empty matrix");
  std::vector<Vector> rows;
  for (const auto& r : j) rows.push_back(as_vector(r));
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) parse_fail("ragged matrix");
  return Matrix::from_rows(rows[0].size(), rows);
}

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(Vector(m.row(r).begin(), m.row(r).end()));
  return out;
}

std::string pair_key(MorphismId s, MorphismId t) { return "(" + std::to_string(s) + "," + std::to_string(t) + ")"; }

std::pair<MorphismId, MorphismId> parse_pair_key(const std::string& key) {
  MorphismId s = 0, t = 0;
  char open = 0, comma = 0, close = 0;
  std::istringstream in(key);
  if (!(in >> open >> s >> comma >> t >> close) || open != '(' || comma != ',' || close != ')')
    parse_fail("bad pair key \"" + key + "\"");
  return {s, t};
}

std::size_t parse_object_key(const std::string& key) {
  try {
    std::size_t pos = 0;
    unsigned long v = std::stoul(key, &pos);
    if (pos != key.size()) parse_fail("bad index key \"" + key + "\"");
    return v;
  } catch (const std::logic_error&) {
    parse_fail("bad index key \"" + key + "\"");
  }
}

GroupTable group_from_name(const std::string& name) {
  if (name.size() >= 2 && (name[0] == 'C' || name[0] == 'S')) {
    std::size_t k = parse_object_key(name.substr(1));
    return name[0] == 'C' ? cyclic_group(k) : symmetric_group(k);
  }
  parse_fail("unknown group \"" + name + "\"");
}

}  // namespace

GroupTable group_from_json(const Json& j) {
  if (j.is_string()) return group_from_name(j.get<std::string>());
  if (j.contains("cyclic")) return cyclic_group(as_index(j.at("cyclic")));
  if (j.contains("symmetric")) return symmetric_group(as_index(j.at("symmetric")));
  const Json& t = need(j, "table");
  GroupTable g;
  g.order = t.size();
  for (const auto& row : t) {
    if (!row.is_array() || row.size() != g.order) parse_fail("group table must be square");
    for (const auto& x : row) g.table.push_back(static_cast<std::uint32_t>(as_index(x)));
  }
  if (j.contains("names"))
    for (const auto& n : j.at("names")) g.names.push_back(n.get<std::string>());
  check_group(g);
  return g;
}

FiniteGroupoid groupoid_from_json(const Json& j) {
  if (!j.is_object()) parse_fail("groupoid must be an object");
  if (j.contains("shape")) {
    std::string shape = j.at("shape").get<std::string>();
    if (shape == "thin") return thin_groupoid(as_index(need(j, "n")));
    if (shape == "group") return from_group(group_from_json(need(j, "group")));
    if (shape == "product_with_thin") return product_with_thin(group_from_json(need(j, "group")), as_index(need(j, "n")));
    if (shape == "disjoint_union") {
      const Json& parts = need(j, "parts");
      if (!parts.is_array() || parts.empty()) parse_fail("disjoint_union needs parts");
      FiniteGroupoid acc = groupoid_from_json(parts[0]);
      for (std::size_t i = 1; i < parts.size(); ++i) acc = disjoint_union(acc, groupoid_from_json(parts[i]));
      return acc;
    }
    parse_fail("unknown groupoid shape \"" + shape + "\"");
  }
  RawGroupoid raw;
  raw.objects = as_index(need(j, "objects"));
  for (const auto& m : need(j, "morphisms"))
    raw.morphisms.push_back({static_cast<ObjectId>(as_index(need(m, "dom"))), static_cast<ObjectId>(as_index(need(m, "cod")))});
  const std::size_t n = raw.morphisms.size();
  const Json& comp = need(j, "comp");
  if (!comp.is_array() || comp.size() != n) parse_fail("comp must have one row per morphism");
  for (const auto& row : comp) {
    if (!row.is_array() || row.size() != n) parse_fail("comp rows must have one entry per morphism");
    for (const auto& x : row) raw.comp.push_back(x.is_null() ? kNoMorphism : static_cast<MorphismId>(as_index(x)));
  }
  for (const auto& x : need(j, "inv")) raw.inv.push_back(static_cast<MorphismId>(as_index(x)));
  for (const auto& x : need(j, "identity")) raw.identity.push_back(static_cast<MorphismId>(as_index(x)));
  if (j.contains("labels"))
    for (const auto& l : j.at("labels")) raw.labels.push_back(l.get<std::string>());
  return FiniteGroupoid::build(std::move(raw));
}

Json groupoid_to_json(const FiniteGroupoid& g) {
  RawGroupoid raw = g.raw();
  const std::size_t n = raw.morphisms.size();
  Json out;
  out["objects"] = raw.objects;
  out["morphisms"] = Json::array();
  for (const auto& m : raw.morphisms) out["morphisms"].push_back({{"dom", m.dom}, {"cod", m.cod}});
  out["comp"] = Json::array();
  for (std::size_t s = 0; s < n; ++s) {
    Json row = Json::array();
    for (std::size_t t = 0; t < n; ++t) {
      MorphismId v = raw.comp[s * n + t];
      row.push_back(v == kNoMorphism ? Json(nullptr) : Json(v));
    }
    out["comp"].push_back(std::move(row));
  }
  out["inv"] = raw.inv;
  out["identity"] = raw.identity;
  out["labels"] = raw.labels;
  return out;
}

Algebra algebra_from_json(const Json& j) {
  if (!j.is_object()) parse_fail("algebra must be an object");
  if (j.contains("builder")) {
    std::string b = j.at("builder").get<std::string>();
    Residue m = need(j, "modulus").get<Residue>();
    if (b == "zmod") return zmod_algebra(m);
    if (b == "matrix") return matrix_algebra(m, as_index(need(j, "n")));
    if (b == "group_algebra") return group_algebra(m, group_from_json(need(j, "group")));
    if (b == "field_ext") {
      Vector poly = as_vector(need(j, "poly"));
      if (poly.size() < 2 || Modulus(m).reduce(poly.back()) != 1) parse_fail("field_ext needs a monic polynomial");
      poly.pop_back();
      return polynomial_algebra(m, poly);
    }
    parse_fail("unknown algebra builder \"" + b + "\"");
  }
  Residue m = need(j, "modulus").get<Residue>();
  std::size_t n = as_index(need(j, "rank"));
  const Json& mult = need(j, "mult");
  std::vector<Residue> c;
  if (!mult.is_array() || mult.size() != n) parse_fail("mult must be rank x rank x rank");
  for (const auto& a : mult) {
    if (!a.is_array() || a.size() != n) parse_fail("mult must be rank x rank x rank");
    for (const auto& b : a) {
      Vector v = as_vector(b);
      if (v.size() != n) parse_fail("mult must be rank x rank x rank");
      c.insert(c.end(), v.begin(), v.end());
    }
  }
  return Algebra::build(Modulus(m), n, std::move(c), as_vector(need(j, "unit")));
}

Json algebra_to_json(const Algebra& a) {
  const std::size_t n = a.rank();
  auto c = a.structure_constants();
  Json mult = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < n; ++j)
      row.push_back(Vector(c.begin() + static_cast<std::ptrdiff_t>((i * n + j) * n),
                           c.begin() + static_cast<std::ptrdiff_t>((i * n + j + 1) * n)));
    mult.push_back(std::move(row));
  }
  return Json{{"modulus", a.modulus().value()}, {"rank", n}, {"mult", mult}, {"unit", a.unit()}};
}

// --- instances -----------------------------------------------------------------

namespace {

GradedRing ring_from_json(const Json& j, const GroupoidPtr& g) {
  std::string kind = need(j, "kind").get<std::string>();
  if (kind == "graded") {
    auto alg = std::make_shared<const Algebra>(algebra_from_json(need(j, "algebra")));
    std::vector<MorphismId> deg;
    for (const auto& x : need(j, "deg")) deg.push_back(static_cast<MorphismId>(as_index(x)));
    return GradedRing::attach(alg, g, std::move(deg));
  }
  auto k = parse_kind(kind);
  if (!k) parse_fail("unknown ring kind \"" + kind + "\"");

  std::map<std::string, AlgebraPtr> named;
  if (j.contains("algebras"))
    for (const auto& [name, a] : j.at("algebras").items()) named[name] = std::make_shared<const Algebra>(algebra_from_json(a));
  CrossedSystem sys;
  sys.groupoid = g;
  sys.kind = *k;
  sys.coeff.resize(g->object_count());
  for (const auto& [key, a] : need(j, "coeff").items()) {
    std::size_t e = parse_object_key(key);
    if (e >= g->object_count()) parse_fail("coeff object out of range: " + key);
    if (a.is_string()) {
      auto it = named.find(a.get<std::string>());
      if (it == named.end()) parse_fail("unknown algebra reference \"" + a.get<std::string>() + "\"");
      sys.coeff[e] = it->second;
    } else {
      sys.coeff[e] = std::make_shared<const Algebra>(algebra_from_json(a));
    }
  }
  for (ObjectId e = 0; e < g->object_count(); ++e)
    if (!sys.coeff[e]) parse_fail("no coefficient algebra for object " + std::to_string(e));
  const std::size_t m = g->morphism_count();
  for (MorphismId s = 0; s < m; ++s) sys.alpha.push_back(Matrix::identity(sys.algebra(g->cod(s)).rank()));
  if (j.contains("alpha"))
    for (const auto& [key, a] : j.at("alpha").items()) {
      std::size_t s = parse_object_key(key);
      if (s >= m) parse_fail("alpha morphism out of range: " + key);
      sys.alpha[s] = as_matrix(a);
    }
  sys.beta.resize(m * m);
  for (MorphismId s = 0; s < m; ++s)
    for (MorphismId t = 0; t < m; ++t)
      if (g->composable(s, t)) sys.beta[s * m + t] = sys.algebra(g->cod(s)).unit();
  if (j.contains("beta"))
    for (const auto& [key, b] : j.at("beta").items()) {
      auto [s, t] = parse_pair_key(key);
      if (s >= m || t >= m) parse_fail("beta pair out of range: " + key);
      if (!g->composable(s, t)) throw Error(Fault::InvalidInput, {W(s), W(t)}, "beta on a non-composable pair");
      sys.beta[s * m + t] = as_vector(b);
    }
  return crossed_product(std::move(sys));
}

Json ring_to_json(const GradedRing& r) {
  const CrossedSystem* sys = r.crossed();
  if (!sys) return Json{{"kind", "graded"}, {"algebra", algebra_to_json(r.algebra())}, {"deg", r.degrees()}};
  const FiniteGroupoid& g = *sys->groupoid;
  Json out;
  out["kind"] = kind_name(sys->kind);
  std::vector<AlgebraPtr> distinct;
  out["algebras"] = Json::object();
  out["coeff"] = Json::object();
  for (ObjectId e = 0; e < g.object_count(); ++e) {
    std::size_t k = 0;
    while (k < distinct.size() && !(*distinct[k] == sys->algebra(e))) ++k;
    if (k == distinct.size()) {
      distinct.push_back(sys->coeff[e]);
      out["algebras"]["A" + std::to_string(k)] = algebra_to_json(sys->algebra(e));
    }
    out["coeff"][std::to_string(e)] = "A" + std::to_string(k);
  }
  out["alpha"] = Json::object();
  for (MorphismId s = 0; s < g.morphism_count(); ++s) {
    const Matrix& a = sys->alpha[s];
    if (!(a == Matrix::identity(a.rows()))) out["alpha"][std::to_string(s)] = matrix_json(a);
  }
  out["beta"] = Json::object();
  for (MorphismId s = 0; s < g.morphism_count(); ++s)
    for (MorphismId t = 0; t < g.morphism_count(); ++t) {
      if (!g.composable(s, t)) continue;
      const Vector& b = sys->beta_at(s, t);
      if (b != sys->algebra(g.cod(s)).unit()) out["beta"][pair_key(s, t)] = b;
    }
  return out;
}

}  // namespace

Instance load_instance(const Json& j) {
  try {
    if (!j.is_object()) parse_fail("instance must be a JSON object");
    if (j.contains("format") && j.at("format") != 1) parse_fail("unsupported format " + j.at("format").dump());
    Instance inst;
    inst.groupoid = std::make_shared<const FiniteGroupoid>(groupoid_from_json(need(j, "groupoid")));
    if (j.contains("subgroupoid")) {
      for (const auto& x : j.at("subgroupoid")) {
        std::size_t s = as_index(x);
        if (s >= inst.groupoid->morphism_count()) throw Error(Fault::InvalidInput, {W(s)}, "subgroupoid member out of range");
        inst.subgroupoid.push_back(static_cast<MorphismId>(s));
      }
    } else {
      for (ObjectId e = 0; e < inst.groupoid->object_count(); ++e) inst.subgroupoid.push_back(inst.groupoid->identity(e));
    }
    if (j.contains("options") && j.at("options").contains("max_rank")) inst.max_rank = as_index(j.at("options").at("max_rank"));
    inst.ring = std::make_shared<const GradedRing>(ring_from_json(need(j, "ring"), inst.groupoid));
    return inst;
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  }
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  }
  return load_instance(j);
}

Json instance_to_json(const Instance& inst) {
  std::vector<MorphismId> members = inst.subgroupoid;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return Json{{"format", 1},
              {"groupoid", groupoid_to_json(*inst.groupoid)},
              {"subgroupoid", members},
              {"ring", ring_to_json(*inst.ring)},
              {"options", {{"max_rank", inst.max_rank}}}};
}

std::string dump_canonical(const Json& j) { return j.dump(1) + "\n"; }

// --- reports ----------------------------------------------------------------------

Json violation_to_json(const Violation& v) {
  return Json{{"fault", std::string(fault_name(v.fault))}, {"witness", v.witness}, {"detail", v.detail}};
}

Json report_to_json(const SeparabilityReport& r) {
  Json out;
  out["separable"] = r.separable;
  out["method"] = method_name(r.method);
  out["components"] = Json::array();
  for (const auto& c : r.components) {
    Json comp;
    comp["objects"] = c.objects;
    comp["separable"] = c.separable;
    if (!c.candidates.empty()) comp["candidates"] = c.candidates;
    if (!c.transversal.empty()) comp["transversal"] = c.transversal;
    if (c.certificate) comp["certificate"] = Json{{"f", c.certificate->f}, {"r", c.certificate->r}};
    if (c.evidence) {
      const Evidence& e = *c.evidence;
      comp["evidence"] = Json{{"obstruction", e.obstruction == npos ? Json(nullptr) : Json(e.obstruction)},
                              {"residual", e.residual},
                              {"equations", e.equations},
                              {"unknowns", e.unknowns},
                              {"pivots", e.pivots}};
    }
    out["components"].push_back(std::move(comp));
  }
  return out;
}

std::vector<Certificate> certificates_from_json(const Json& j) {
  try {
    std::vector<Certificate> out;
    auto one = [&](const Json& c) {
      out.push_back(Certificate{static_cast<ObjectId>(as_index(need(c, "f"))), as_vector(need(c, "r"))});
    };
    if (j.is_array()) {
      for (const auto& c : j) one(c);
    } else if (j.contains("f")) {
      one(j);
    } else if (j.contains("certificates")) {
      for (const auto& c : j.at("certificates")) one(c);
    } else if (j.contains("components")) {
      for (const auto& c : j.at("components"))
        if (c.contains("certificate")) one(c.at("certificate"));
    } else if (j.contains("reports")) {
      for (const auto& rep : j.at("reports"))
        if (rep.value("method", "") == "trace") return certificates_from_json(rep);
      parse_fail("report bundle without a trace report");
    } else {
      parse_fail("unrecognized certificate file");
    }
    return out;
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  }
}

// --- fixtures ------------------------------------------------------------------------

namespace {

std::string param(const Params& p, const std::string& key, const std::string& fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

std::size_t param_index(const Params& p, const std::string& key, std::size_t fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  return parse_object_key(it->second);
}

std::uint32_t element_order(const GroupTable& g, std::uint32_t e, std::uint32_t x) {
  std::uint32_t k = 1;
  for (std::uint32_t y = x; y != e; y = g.mul(y, x)) ++k;
  return k;
}

// Subgroup of a one-object groupoid: "1", "G", "C<d>" or "S<n>" (the whole group).
std::vector<MorphismId> subgroup_members(const GroupoidPtr& gr, const GroupTable& g, const std::string& spec) {
  std::uint32_t e = check_group(g);
  if (spec == "1") return {e};
  if (spec == "G" || spec[0] == 'S') return WideSubgroupoid::whole(gr).members();
  if (spec[0] != 'C') parse_fail("unknown subgroup \"" + spec + "\"");
  std::size_t d = parse_object_key(spec.substr(1));
  for (std::uint32_t x = 0; x < g.order; ++x)
    if (element_order(g, e, x) == d) {
      MorphismId seed = x;
      return generated_subgroupoid(gr, std::span<const MorphismId>(&seed, 1)).members();
    }
  parse_fail("no cyclic subgroup of order " + std::to_string(d));
}

std::vector<MorphismId> identities(const FiniteGroupoid& g) {
  std::vector<MorphismId> out;
  for (ObjectId e = 0; e < g.object_count(); ++e) out.push_back(g.identity(e));
  return out;
}

}  // namespace

Instance make_fixture(const std::string& name, const Params& params) {
  Instance inst;
  if (name == "matrix") {
    Residue m = static_cast<Residue>(param_index(params, "m", 4));
    inst.groupoid = std::make_shared<const FiniteGroupoid>(thin_groupoid(param_index(params, "n", 2)));
    inst.ring = std::make_shared<const GradedRing>(groupoid_ring(std::make_shared<const Algebra>(zmod_algebra(m)), inst.groupoid));
    inst.subgroupoid = identities(*inst.groupoid);
  } else if (name == "group_ring") {
    Residue m = static_cast<Residue>(param_index(params, "m", 3));
    GroupTable g = group_from_name(param(params, "G", "C2"));
    inst.groupoid = std::make_shared<const FiniteGroupoid>(from_group(g));
    inst.ring = std::make_shared<const GradedRing>(groupoid_ring(std::make_shared<const Algebra>(zmod_algebra(m)), inst.groupoid));
    inst.subgroupoid = subgroup_members(inst.groupoid, g, param(params, "H", "1"));
  } else if (name == "twisted") {
    const std::size_t k = param_index(params, "k", 2);
    Modulus mod(static_cast<Residue>(param_index(params, "m", 5)));
    std::mt19937_64 rng(param_index(params, "seed", 1));
    std::vector<Residue> units;
    for (Residue u = 1; u < mod.value(); ++u)
      if (mod.is_unit(u)) units.push_back(u);
    std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
    Residue carry = units[pick(rng)];
    std::vector<Residue> phi(k, 1);
    for (std::size_t a = 1; a < k; ++a) phi[a] = units[pick(rng)];
    GroupTable g = cyclic_group(k);
    inst.groupoid = std::make_shared<const FiniteGroupoid>(from_group(g));
    std::vector<Vector> beta(k * k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        Residue v = mod.mul(mod.mul(phi[a], phi[b]), *mod.inverse(phi[(a + b) % k]));
        if (a + b >= k) v = mod.mul(v, carry);
        beta[a * k + b] = Vector{v};
      }
    inst.ring = std::make_shared<const GradedRing>(
        twisted_ring(std::make_shared<const Algebra>(zmod_algebra(mod.value())), inst.groupoid, std::move(beta)));
    inst.subgroupoid = subgroup_members(inst.groupoid, g, param(params, "H", "1"));
  } else if (name == "skew_gf") {
    auto gf4 = std::make_shared<const Algebra>(polynomial_algebra(2, std::vector<Residue>{1, 1}));
    GroupTable g = cyclic_group(2);
    inst.groupoid = std::make_shared<const FiniteGroupoid>(from_group(g));
    Matrix frob(2, 2);
    frob(0, 0) = frob(0, 1) = frob(1, 1) = 1;
    inst.ring = std::make_shared<const GradedRing>(skew_ring({gf4}, inst.groupoid, {Matrix::identity(2), frob}));
    inst.subgroupoid = subgroup_members(inst.groupoid, g, param(params, "H", "1"));
  } else if (name == "product" || name == "paper_sec4") {
    Residue m = static_cast<Residue>(param_index(params, "m", 3));
    GroupTable g = group_from_name(param(params, "G", "C2"));
    inst.groupoid = std::make_shared<const FiniteGroupoid>(product_with_thin(g, 2));
    inst.ring = std::make_shared<const GradedRing>(groupoid_ring(std::make_shared<const Algebra>(zmod_algebra(m)), inst.groupoid));
    // Delta(0) = G at object 0, Delta(1) trivial at object 1.
    for (std::uint32_t a = 0; a < g.order; ++a) inst.subgroupoid.push_back(static_cast<MorphismId>(a * 2));
    inst.subgroupoid.push_back(inst.groupoid->identity(1));
  } else {
    parse_fail("unknown fixture \"" + name + "\"");
  }
  std::sort(inst.subgroupoid.begin(), inst.subgroupoid.end());
  inst.delta();  // validates the subgroupoid
  return inst;
}

}  // namespace gsep::io
