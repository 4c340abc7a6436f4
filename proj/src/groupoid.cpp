#include "gsep/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "gsep/error.hpp"
#include "gsep/zmod.hpp"

namespace gsep {

namespace {

using W = std::int64_t;

[[noreturn]] void axiom(std::string what, std::vector<W> witness) {
  throw Error(Fault::AxiomViolation, std::move(witness), std::move(what));
}

}  // namespace

// --- groups -------------------------------------------------------------------

std::uint32_t check_group(const GroupTable& g) {
  const std::size_t n = g.order;
  if (n == 0 || g.table.size() != n * n) throw Error(Fault::InvalidInput, {W(n)}, "group table has wrong size");
  for (auto v : g.table)
    if (v >= n) throw Error(Fault::InvalidInput, {W(v)}, "group table entry out of range");
  std::optional<std::uint32_t> identity;
  for (std::uint32_t e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::uint32_t x = 0; x < n && ok; ++x) ok = g.mul(e, x) == x && g.mul(x, e) == x;
    if (ok) identity = e;
  }
  if (!identity) throw Error(Fault::InvalidInput, {}, "group table has no identity");
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw Error(Fault::InvalidInput, {W(a), W(b), W(c)}, "group table is not associative");
  for (std::uint32_t a = 0; a < n; ++a) {
    bool found = false;
    for (std::uint32_t b = 0; b < n && !found; ++b) found = g.mul(a, b) == *identity && g.mul(b, a) == *identity;
    if (!found) throw Error(Fault::InvalidInput, {W(a)}, "group element without inverse");
  }
  return *identity;
}

GroupTable cyclic_group(std::size_t k) {
  if (k == 0) throw Error(Fault::InvalidInput, {0}, "cyclic group of order 0");
  GroupTable g;
  g.order = k;
  g.table.resize(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    g.names.push_back(a == 0 ? std::string("e") : "g" + (a == 1 ? std::string() : "^" + std::to_string(a)));
    for (std::size_t b = 0; b < k; ++b) g.table[a * k + b] = static_cast<std::uint32_t>((a + b) % k);
  }
  return g;
}

GroupTable symmetric_group(std::size_t n) {
  if (n == 0) throw Error(Fault::InvalidInput, {0}, "symmetric group of degree 0");
  std::vector<std::vector<std::uint32_t>> perms;
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0u);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  GroupTable g;
  g.order = perms.size();
  g.table.resize(g.order * g.order);
  for (std::size_t a = 0; a < g.order; ++a) {
    std::string name = "[";
    for (std::size_t i = 0; i < n; ++i) name += std::to_string(perms[a][i]) + (i + 1 < n ? " " : "]");
    g.names.push_back(name);
    for (std::size_t b = 0; b < g.order; ++b) {
      std::vector<std::uint32_t> c(n);
      for (std::size_t x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      auto it = std::lower_bound(perms.begin(), perms.end(), c);
      g.table[a * g.order + b] = static_cast<std::uint32_t>(it - perms.begin());
    }
  }
  return g;
}

// --- groupoid construction ----------------------------------------------------

FiniteGroupoid FiniteGroupoid::build(RawGroupoid raw, const GroupoidLimits& limits) {
  const std::size_t n = raw.objects;
  const std::size_t m = raw.morphisms.size();
  if (n == 0) throw Error(Fault::InvalidInput, {0}, "groupoid needs at least one object");
  if (n > limits.max_objects || m > limits.max_morphisms)
    throw Error(Fault::CapacityExceeded, {W(n), W(m)}, "groupoid exceeds configured size bounds");
  if (raw.comp.size() != m * m || raw.inv.size() != m || raw.identity.size() != n)
    throw Error(Fault::DimensionMismatch, {W(m)}, "groupoid tables have inconsistent sizes");
  for (std::size_t s = 0; s < m; ++s)
    if (raw.morphisms[s].dom >= n || raw.morphisms[s].cod >= n) axiom("morphism endpoint out of range", {W(s)});
  for (auto v : raw.inv)
    if (v >= m) axiom("inverse out of range", {W(v)});
  for (auto v : raw.comp)
    if (v != kNoMorphism && v >= m) axiom("composite out of range", {W(v)});

  FiniteGroupoid g;
  g.objects_ = n;
  g.morphisms_ = std::move(raw.morphisms);
  g.comp_ = std::move(raw.comp);
  g.inv_ = std::move(raw.inv);
  g.identity_ = std::move(raw.identity);
  g.labels_ = std::move(raw.labels);
  if (g.labels_.size() != m) {
    g.labels_.resize(m);
    for (std::size_t s = 0; s < m; ++s)
      if (g.labels_[s].empty()) g.labels_[s] = "s" + std::to_string(s);
  }

  for (ObjectId e = 0; e < n; ++e) {
    MorphismId id = g.identity_[e];
    if (id >= m || g.dom(id) != e || g.cod(id) != e) axiom("identity is not a loop at its object", {W(e)});
  }
  for (MorphismId s = 0; s < m; ++s) {
    for (MorphismId t = 0; t < m; ++t) {
      MorphismId st = g.compose(s, t);
      bool composable = g.dom(s) == g.cod(t);
      if (composable != (st != kNoMorphism)) axiom("composition defined off the composable pairs", {W(s), W(t), -1});
      if (!composable) continue;
      if (g.dom(st) != g.dom(t) || g.cod(st) != g.cod(s)) axiom("domain law", {W(s), W(t), W(st)});
    }
  }
  for (MorphismId s = 0; s < m; ++s) {
    if (g.compose(g.identity(g.cod(s)), s) != s || g.compose(s, g.identity(g.dom(s))) != s)
      axiom("identity law", {W(s)});
    MorphismId i = g.inv_[s];
    if (g.dom(i) != g.cod(s) || g.cod(i) != g.dom(s) || g.compose(s, i) != g.identity(g.cod(s)) ||
        g.compose(i, s) != g.identity(g.dom(s)))
      axiom("inverse law", {W(s), W(i)});
  }
  // Associativity over composable triples, grouped by middle object.
  std::vector<std::vector<MorphismId>> into(n);
  for (MorphismId s = 0; s < m; ++s) into[g.cod(s)].push_back(s);
  for (MorphismId s = 0; s < m; ++s)
    for (MorphismId t : into[g.dom(s)])
      for (MorphismId u : into[g.dom(t)])
        if (g.compose(g.compose(s, t), u) != g.compose(s, g.compose(t, u)))
          axiom("associativity", {W(s), W(t), W(u)});
  return g;
}

std::vector<MorphismId> FiniteGroupoid::hom(ObjectId e, ObjectId f) const {
  std::vector<MorphismId> out;
  for (MorphismId s = 0; s < morphisms_.size(); ++s)
    if (dom(s) == e && cod(s) == f) out.push_back(s);
  return out;
}

RawGroupoid FiniteGroupoid::raw() const {
  return RawGroupoid{objects_, morphisms_, comp_, inv_, identity_, labels_};
}

FiniteGroupoid thin_groupoid(std::size_t n) {
  if (n == 0) throw Error(Fault::InvalidInput, {0}, "thin groupoid needs at least one object");
  RawGroupoid raw;
  raw.objects = n;
  const std::size_t m = n * n;
  auto idx = [n](std::size_t i, std::size_t j) { return static_cast<MorphismId>(i * n + j); };
  raw.comp.assign(m * m, kNoMorphism);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      raw.morphisms.push_back({ObjectId(j), ObjectId(i)});
      raw.inv.push_back(idx(j, i));
      raw.labels.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
      for (std::size_t k = 0; k < n; ++k) raw.comp[idx(i, j) * m + idx(j, k)] = idx(i, k);
    }
    raw.identity.push_back(idx(i, i));
  }
  return FiniteGroupoid::build(std::move(raw));
}

FiniteGroupoid from_group(const GroupTable& g) {
  std::uint32_t e = check_group(g);
  RawGroupoid raw;
  raw.objects = 1;
  const std::size_t k = g.order;
  raw.comp.resize(k * k);
  raw.inv.resize(k);
  for (std::uint32_t a = 0; a < k; ++a) {
    raw.morphisms.push_back({0, 0});
    raw.labels.push_back(a < g.names.size() ? g.names[a] : "g" + std::to_string(a));
    for (std::uint32_t b = 0; b < k; ++b) {
      raw.comp[a * k + b] = g.mul(a, b);
      if (g.mul(a, b) == e) raw.inv[a] = b;
    }
  }
  raw.identity.push_back(e);
  return FiniteGroupoid::build(std::move(raw));
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  RawGroupoid ra = a.raw();
  RawGroupoid rb = b.raw();
  const std::size_t ma = ra.morphisms.size();
  const std::size_t mb = rb.morphisms.size();
  const std::size_t m = ma + mb;
  const auto na = static_cast<ObjectId>(ra.objects);
  RawGroupoid raw;
  raw.objects = ra.objects + rb.objects;
  raw.morphisms = ra.morphisms;
  for (auto mor : rb.morphisms) raw.morphisms.push_back({mor.dom + na, mor.cod + na});
  raw.comp.assign(m * m, kNoMorphism);
  for (std::size_t s = 0; s < ma; ++s)
    for (std::size_t t = 0; t < ma; ++t) raw.comp[s * m + t] = ra.comp[s * ma + t];
  for (std::size_t s = 0; s < mb; ++s)
    for (std::size_t t = 0; t < mb; ++t) {
      MorphismId v = rb.comp[s * mb + t];
      raw.comp[(s + ma) * m + t + ma] = v == kNoMorphism ? kNoMorphism : static_cast<MorphismId>(v + ma);
    }
  raw.inv = ra.inv;
  for (auto v : rb.inv) raw.inv.push_back(static_cast<MorphismId>(v + ma));
  raw.identity = ra.identity;
  for (auto v : rb.identity) raw.identity.push_back(static_cast<MorphismId>(v + ma));
  raw.labels = ra.labels;
  for (const auto& l : rb.labels) raw.labels.push_back(l + "'");
  return FiniteGroupoid::build(std::move(raw));
}

FiniteGroupoid product_with_thin(const GroupTable& g, std::size_t n) {
  if (n == 0) throw Error(Fault::InvalidInput, {0}, "product_with_thin needs at least one object");
  std::uint32_t e = check_group(g);
  const std::size_t k = g.order;
  const std::size_t m = n * k * n;
  auto idx = [n, k](std::size_t i, std::size_t a, std::size_t j) { return static_cast<MorphismId>((i * k + a) * n + j); };
  std::vector<std::uint32_t> inverse(k);
  for (std::uint32_t a = 0; a < k; ++a)
    for (std::uint32_t b = 0; b < k; ++b)
      if (g.mul(a, b) == e) inverse[a] = b;
  RawGroupoid raw;
  raw.objects = n;
  raw.comp.assign(m * m, kNoMorphism);
  raw.morphisms.resize(m);
  raw.inv.resize(m);
  raw.labels.resize(m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t j = 0; j < n; ++j) {
        MorphismId s = idx(i, a, j);
        raw.morphisms[s] = {ObjectId(j), ObjectId(i)};
        raw.inv[s] = idx(j, inverse[a], i);
        std::string name = a < g.names.size() ? g.names[a] : std::to_string(a);
        raw.labels[s] = "(" + std::to_string(i) + "," + name + "," + std::to_string(j) + ")";
        for (std::size_t b = 0; b < k; ++b)
          for (std::size_t l = 0; l < n; ++l) raw.comp[s * m + idx(j, b, l)] = idx(i, g.mul(std::uint32_t(a), std::uint32_t(b)), l);
      }
  for (std::size_t i = 0; i < n; ++i) raw.identity.push_back(idx(i, e, i));
  return FiniteGroupoid::build(std::move(raw));
}

RestrictedGroupoid restrict_groupoid(const FiniteGroupoid& g, std::span<const MorphismId> members) {
  std::vector<MorphismId> mors(members.begin(), members.end());
  std::sort(mors.begin(), mors.end());
  mors.erase(std::unique(mors.begin(), mors.end()), mors.end());
  std::vector<MorphismId> new_index(g.morphism_count(), kNoMorphism);
  for (std::size_t i = 0; i < mors.size(); ++i) new_index[mors[i]] = static_cast<MorphismId>(i);
  std::vector<ObjectId> objects;
  for (auto s : mors) {
    objects.push_back(g.dom(s));
    objects.push_back(g.cod(s));
  }
  std::sort(objects.begin(), objects.end());
  objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
  std::vector<ObjectId> new_object(g.object_count(), 0);
  for (std::size_t i = 0; i < objects.size(); ++i) new_object[objects[i]] = static_cast<ObjectId>(i);

  const std::size_t m = mors.size();
  RawGroupoid raw;
  raw.objects = objects.size();
  raw.comp.assign(m * m, kNoMorphism);
  for (std::size_t i = 0; i < m; ++i) {
    MorphismId s = mors[i];
    raw.morphisms.push_back({new_object[g.dom(s)], new_object[g.cod(s)]});
    raw.labels.push_back(g.label(s));
    MorphismId inv = new_index[g.inverse(s)];
    if (inv == kNoMorphism) throw Error(Fault::NotClosed, {W(s)}, "inverse missing from the morphism set");
    raw.inv.push_back(inv);
    for (std::size_t j = 0; j < m; ++j) {
      MorphismId t = mors[j];
      if (!g.composable(s, t)) continue;
      MorphismId st = new_index[g.compose(s, t)];
      if (st == kNoMorphism) throw Error(Fault::NotClosed, {W(s), W(t)}, "composite missing from the morphism set");
      raw.comp[i * m + j] = st;
    }
  }
  for (auto e : objects) {
    MorphismId id = new_index[g.identity(e)];
    if (id == kNoMorphism) throw Error(Fault::NotClosed, {W(e)}, "identity missing from the morphism set");
    raw.identity.push_back(id);
  }
  return RestrictedGroupoid{FiniteGroupoid::build(std::move(raw)), std::move(objects), std::move(mors)};
}

Components connected_components(const FiniteGroupoid& g) {
  const std::size_t n = g.object_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (MorphismId s = 0; s < g.morphism_count(); ++s) {
    std::size_t a = find(g.dom(s)), b = find(g.cod(s));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  Components c;
  c.component_of.assign(n, 0);
  std::vector<std::size_t> class_of_root(n, npos);
  for (ObjectId e = 0; e < n; ++e) {
    std::size_t r = find(e);
    if (class_of_root[r] == npos) {
      class_of_root[r] = c.classes.size();
      c.classes.emplace_back();
    }
    c.component_of[e] = static_cast<std::uint32_t>(class_of_root[r]);
    c.classes[class_of_root[r]].push_back(e);
  }
  return c;
}

RestrictedGroupoid component_groupoid(const FiniteGroupoid& g, const Components& comps, std::size_t index) {
  std::vector<MorphismId> members;
  for (MorphismId s = 0; s < g.morphism_count(); ++s)
    if (comps.component_of[g.dom(s)] == index) members.push_back(s);
  return restrict_groupoid(g, members);
}

// --- subgroupoids --------------------------------------------------------------

namespace {

std::vector<bool> member_mask(const FiniteGroupoid& g, std::span<const MorphismId> members) {
  std::vector<bool> mask(g.morphism_count(), false);
  for (auto s : members) {
    if (s >= g.morphism_count()) throw Error(Fault::InvalidInput, {W(s)}, "morphism index out of range");
    mask[s] = true;
  }
  return mask;
}

std::optional<Violation> wide_violation(const FiniteGroupoid& g, const std::vector<bool>& mask) {
  for (ObjectId e = 0; e < g.object_count(); ++e)
    if (!mask[g.identity(e)]) return Violation{Fault::NotWide, {W(e)}, "identity missing"};
  for (MorphismId s = 0; s < g.morphism_count(); ++s) {
    if (!mask[s]) continue;
    if (!mask[g.inverse(s)]) return Violation{Fault::NotClosed, {W(s)}, "not closed under inverses"};
    for (MorphismId t = 0; t < g.morphism_count(); ++t)
      if (mask[t] && g.composable(s, t) && !mask[g.compose(s, t)])
        return Violation{Fault::NotClosed, {W(s), W(t)}, "not closed under composition"};
  }
  return std::nullopt;
}

}  // namespace

WideSubgroupoid WideSubgroupoid::make(GroupoidPtr parent, std::span<const MorphismId> members) {
  auto mask = member_mask(*parent, members);
  if (auto v = wide_violation(*parent, mask)) throw Error(*v);
  return WideSubgroupoid(std::move(parent), std::move(mask));
}

WideSubgroupoid WideSubgroupoid::identities(GroupoidPtr parent) {
  std::vector<bool> mask(parent->morphism_count(), false);
  for (ObjectId e = 0; e < parent->object_count(); ++e) mask[parent->identity(e)] = true;
  return WideSubgroupoid(std::move(parent), std::move(mask));
}

WideSubgroupoid WideSubgroupoid::whole(GroupoidPtr parent) {
  std::vector<bool> mask(parent->morphism_count(), true);
  return WideSubgroupoid(std::move(parent), std::move(mask));
}

std::vector<MorphismId> WideSubgroupoid::members() const {
  std::vector<MorphismId> out;
  for (MorphismId s = 0; s < member_.size(); ++s)
    if (member_[s]) out.push_back(s);
  return out;
}

std::size_t WideSubgroupoid::size() const { return static_cast<std::size_t>(std::count(member_.begin(), member_.end(), true)); }

std::vector<MorphismId> WideSubgroupoid::loops(ObjectId e) const {
  std::vector<MorphismId> out;
  for (auto s : parent_->loops(e))
    if (member_[s]) out.push_back(s);
  return out;
}

bool check_wide(const FiniteGroupoid& g, std::span<const MorphismId> members) {
  return !wide_violation(g, member_mask(g, members)).has_value();
}

WideSubgroupoid generated_subgroupoid(GroupoidPtr parent, std::span<const MorphismId> seeds) {
  const FiniteGroupoid& g = *parent;
  auto mask = member_mask(g, seeds);
  for (ObjectId e = 0; e < g.object_count(); ++e) mask[g.identity(e)] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (MorphismId s = 0; s < g.morphism_count(); ++s) {
      if (!mask[s]) continue;
      if (!mask[g.inverse(s)]) mask[g.inverse(s)] = changed = true;
      for (MorphismId t = 0; t < g.morphism_count(); ++t)
        if (mask[t] && g.composable(s, t) && !mask[g.compose(s, t)]) mask[g.compose(s, t)] = changed = true;
    }
  }
  std::vector<MorphismId> members;
  for (MorphismId s = 0; s < mask.size(); ++s)
    if (mask[s]) members.push_back(s);
  return WideSubgroupoid::make(std::move(parent), members);
}

WideSubgroupoid isotropy(const WideSubgroupoid& delta) {
  std::vector<MorphismId> loops;
  for (auto s : delta.members())
    if (delta.parent().is_loop(s)) loops.push_back(s);
  return WideSubgroupoid::make(delta.parent_ptr(), loops);
}

NormalityCheck check_normal(const WideSubgroupoid& delta) {
  const FiniteGroupoid& g = delta.parent();
  for (MorphismId s = 0; s < g.morphism_count(); ++s) {
    MorphismId si = g.inverse(s);
    for (auto d : delta.loops(g.dom(s))) {
      MorphismId conj = g.compose(g.compose(s, d), si);
      if (!delta.contains(conj)) return NormalityCheck{false, s, d};
    }
  }
  return {};
}

NormalityCheck check_normal(const GroupoidPtr& g, std::span<const MorphismId> members) {
  return check_normal(WideSubgroupoid::make(g, members));
}

std::size_t isotropy_index(const WideSubgroupoid& delta, ObjectId e) {
  return delta.parent().loops(e).size() / delta.loops(e).size();
}

bool complement_closure_check(const WideSubgroupoid& delta) {
  const FiniteGroupoid& g = delta.parent();
  for (MorphismId s = 0; s < g.morphism_count(); ++s) {
    if (delta.contains(s)) continue;
    for (auto left : delta.loops(g.cod(s)))
      for (auto right : delta.loops(g.dom(s)))
        if (delta.contains(g.compose(g.compose(left, s), right))) return false;
  }
  return true;
}

// --- transversals ------------------------------------------------------------------

std::vector<MorphismId> Transversal::between(ObjectId f, ObjectId e) const {
  std::vector<MorphismId> out;
  for (auto s : reps_)
    if (parent_->dom(s) == f && parent_->cod(s) == e) out.push_back(s);
  return out;
}

std::vector<MorphismId> Transversal::into(ObjectId e) const {
  std::vector<MorphismId> out;
  for (auto s : reps_)
    if (parent_->cod(s) == e) out.push_back(s);
  return out;
}

Transversal transversal(const WideSubgroupoid& delta, TieBreak tie) {
  const FiniteGroupoid& g = delta.parent();
  const std::size_t m = g.morphism_count();
  Transversal t;
  t.parent_ = delta.parent_ptr();
  t.class_of_.assign(m, kNoMorphism);
  auto claim = [&](MorphismId rep) {
    for (auto l : delta.loops(g.dom(rep))) t.class_of_[g.compose(rep, l)] = rep;
  };
  for (ObjectId e = 0; e < g.object_count(); ++e) claim(g.identity(e));
  for (std::size_t i = 0; i < m; ++i) {
    auto s = static_cast<MorphismId>(tie == TieBreak::SmallestIndex ? i : m - 1 - i);
    if (t.class_of_[s] == kNoMorphism) claim(s);
  }
  for (MorphismId s = 0; s < m; ++s)
    if (t.class_of_[s] == s) t.reps_.push_back(s);
  return t;
}

MorphismId conj_rep(const WideSubgroupoid& delta, const Transversal& t, MorphismId tau, MorphismId sigma) {
  const FiniteGroupoid& g = delta.parent();
  if (!g.composable(sigma, tau))
    throw Error(Fault::InvalidInput, {W(tau), W(sigma)}, "conj_rep needs dom(sigma) == cod(tau)");
  return t.class_of(g.compose(sigma, tau));
}

}  // namespace gsep
