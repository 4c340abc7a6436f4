#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gsep {

using ObjectId = std::uint32_t;
using MorphismId = std::uint32_t;

inline constexpr MorphismId kNoMorphism = 0xFFFFFFFFu;

struct GroupoidLimits {
  std::size_t max_objects = 64;
  std::size_t max_morphisms = 4096;
};

// --- finite groups (input to from_group / product_with_thin) -----------------

/// Multiplication table of a finite group; element 0 need not be the identity.
struct GroupTable {
  std::size_t order = 0;
  std::vector<std::uint32_t> table;  // table[g * order + h] = g h
  std::vector<std::string> names;

  std::uint32_t mul(std::uint32_t g, std::uint32_t h) const { return table[g * order + h]; }
};

/// Validates the group axioms; returns the identity element.
std::uint32_t check_group(const GroupTable& g);
GroupTable cyclic_group(std::size_t k);
/// Permutations of {0..n-1} in lexicographic order, (p q)(x) = p(q(x)).
GroupTable symmetric_group(std::size_t n);

// --- groupoids --------------------------------------------------------------

struct Morphism {
  ObjectId dom;
  ObjectId cod;
};

/// Unvalidated tables; comp[s * M + t] is s t (or kNoMorphism).
struct RawGroupoid {
  std::size_t objects = 0;
  std::vector<Morphism> morphisms;
  std::vector<MorphismId> comp;
  std::vector<MorphismId> inv;
  std::vector<MorphismId> identity;
  std::vector<std::string> labels;
};

class FiniteGroupoid {
 public:
  /// Validates every groupoid axiom; throws Error(AxiomViolation) with a
  /// witness on the first failure.
  static FiniteGroupoid build(RawGroupoid raw, const GroupoidLimits& limits = {});

  std::size_t object_count() const noexcept { return objects_; }
  std::size_t morphism_count() const noexcept { return morphisms_.size(); }

  ObjectId dom(MorphismId s) const { return morphisms_[s].dom; }
  ObjectId cod(MorphismId s) const { return morphisms_[s].cod; }
  bool composable(MorphismId s, MorphismId t) const { return dom(s) == cod(t); }
  /// s t (apply t first); kNoMorphism when dom(s) != cod(t).
  MorphismId compose(MorphismId s, MorphismId t) const { return comp_[s * morphisms_.size() + t]; }
  MorphismId inverse(MorphismId s) const { return inv_[s]; }
  MorphismId identity(ObjectId e) const { return identity_[e]; }
  bool is_identity(MorphismId s) const { return identity_[dom(s)] == s; }
  bool is_loop(MorphismId s) const { return dom(s) == cod(s); }

  /// Morphisms e -> f, ascending.
  std::vector<MorphismId> hom(ObjectId e, ObjectId f) const;
  /// The isotropy group at e.
  std::vector<MorphismId> loops(ObjectId e) const { return hom(e, e); }

  const std::string& label(MorphismId s) const { return labels_[s]; }
  RawGroupoid raw() const;

 private:
  FiniteGroupoid() = default;

  std::size_t objects_ = 0;
  std::vector<Morphism> morphisms_;
  std::vector<MorphismId> comp_;
  std::vector<MorphismId> inv_;
  std::vector<MorphismId> identity_;
  std::vector<std::string> labels_;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

FiniteGroupoid thin_groupoid(std::size_t n);
FiniteGroupoid from_group(const GroupTable& g);
FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b);
/// {0..n-1} x G x {0..n-1} with (i,g,j): j -> i and (i,g,j)(j,h,k) = (i,gh,k).
/// Morphism (i,g,j) has index (i * |G| + g) * n + j.
FiniteGroupoid product_with_thin(const GroupTable& g, std::size_t n);

/// Subgroupoid spanned by the given morphisms; objects are those touched.
struct RestrictedGroupoid {
  FiniteGroupoid groupoid;
  std::vector<ObjectId> objects;      // new object -> parent object
  std::vector<MorphismId> morphisms;  // new morphism -> parent morphism
};
RestrictedGroupoid restrict_groupoid(const FiniteGroupoid& g, std::span<const MorphismId> members);

struct Components {
  std::vector<std::uint32_t> component_of;  // object -> class index
  std::vector<std::vector<ObjectId>> classes;
};
Components connected_components(const FiniteGroupoid& g);
/// Gamma_e: the morphisms with both ends in the class.
RestrictedGroupoid component_groupoid(const FiniteGroupoid& g, const Components& comps, std::size_t index);

// --- subgroupoids ------------------------------------------------------------

class WideSubgroupoid {
 public:
  /// Throws NotWide when an identity is missing, NotClosed otherwise.
  static WideSubgroupoid make(GroupoidPtr parent, std::span<const MorphismId> members);
  static WideSubgroupoid identities(GroupoidPtr parent);
  static WideSubgroupoid whole(GroupoidPtr parent);

  const FiniteGroupoid& parent() const { return *parent_; }
  const GroupoidPtr& parent_ptr() const { return parent_; }
  bool contains(MorphismId s) const { return member_[s]; }
  std::vector<MorphismId> members() const;
  std::size_t size() const;
  /// Delta(e).
  std::vector<MorphismId> loops(ObjectId e) const;

 private:
  WideSubgroupoid(GroupoidPtr parent, std::vector<bool> member)
      : parent_(std::move(parent)), member_(std::move(member)) {}

  GroupoidPtr parent_;
  std::vector<bool> member_;
};

bool check_wide(const FiniteGroupoid& g, std::span<const MorphismId> members);
/// Smallest wide subgroupoid containing the given morphisms.
WideSubgroupoid generated_subgroupoid(GroupoidPtr parent, std::span<const MorphismId> seeds);
/// Lambda = Iso(Delta).
WideSubgroupoid isotropy(const WideSubgroupoid& delta);

struct NormalityCheck {
  bool normal = true;
  MorphismId sigma = kNoMorphism;  // conjugating morphism
  MorphismId delta = kNoMorphism;  // loop whose conjugate escapes
};
NormalityCheck check_normal(const WideSubgroupoid& delta);
/// As above for a raw morphism set; throws NotWide unless the set is a wide subgroupoid.
NormalityCheck check_normal(const GroupoidPtr& g, std::span<const MorphismId> members);

std::size_t isotropy_index(const WideSubgroupoid& delta, ObjectId e);
bool complement_closure_check(const WideSubgroupoid& delta);

// --- right Lambda-transversals ------------------------------------------------

enum class TieBreak { SmallestIndex, LargestIndex };

class Transversal {
 public:
  const std::vector<MorphismId>& representatives() const noexcept { return reps_; }
  MorphismId class_of(MorphismId s) const { return class_of_[s]; }
  bool is_representative(MorphismId s) const { return class_of_[s] == s; }
  /// T_{f,e}: representatives f -> e.
  std::vector<MorphismId> between(ObjectId f, ObjectId e) const;
  /// Representatives with codomain e (all of T_{*,e}).
  std::vector<MorphismId> into(ObjectId e) const;

 private:
  friend Transversal transversal(const WideSubgroupoid&, TieBreak);
  GroupoidPtr parent_;
  std::vector<MorphismId> reps_;
  std::vector<MorphismId> class_of_;
};

/// One representative per class s Lambda; identities represent their own
/// class, other ties are broken by morphism index.
Transversal transversal(const WideSubgroupoid& delta, TieBreak tie = TieBreak::SmallestIndex);

/// tau^sigma: the representative of sigma tau, for tau in T_{f,e'} and sigma: e' -> e.
MorphismId conj_rep(const WideSubgroupoid& delta, const Transversal& t, MorphismId tau, MorphismId sigma);

}  // namespace gsep
