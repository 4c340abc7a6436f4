#pragma once

// Groupoid-graded algebras, object crossed systems and crossed products.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "gsep/algebra.hpp"
#include "gsep/error.hpp"
#include "gsep/groupoid.hpp"

namespace gsep {

enum class CrossedKind { Crossed, Skew, Twisted, GroupoidRing };

const char* kind_name(CrossedKind kind);
std::optional<CrossedKind> parse_kind(std::string_view name);

struct CrossedSystem {
  GroupoidPtr groupoid;
  std::vector<AlgebraPtr> coeff;  // per object
  std::vector<Matrix> alpha;      // per morphism, A_dom -> A_cod
  std::vector<Vector> beta;       // per s * M + t; empty unless composable
  CrossedKind kind = CrossedKind::Crossed;

  const Algebra& algebra(ObjectId e) const { return *coeff[e]; }
  const Vector& beta_at(MorphismId s, MorphismId t) const { return beta[s * groupoid->morphism_count() + t]; }
  Vector act(MorphismId s, std::span<const Residue> a) const;
};

/// alpha = identity and beta = 1 everywhere; every morphism must join objects
/// carrying equal algebras.
CrossedSystem trivial_system(GroupoidPtr g, std::vector<AlgebraPtr> coeff);
CrossedSystem trivial_system(GroupoidPtr g, AlgebraPtr b);

/// First failed check among moduli, alpha isomorphisms, beta units and
/// (O1)-(O4), with its witness.
std::optional<Violation> validate_crossed_system(const CrossedSystem& sys);

class GradedRing {
 public:
  /// Validates the grading and object unitality and computes the local units.
  static GradedRing attach(AlgebraPtr algebra, GroupoidPtr groupoid, std::vector<MorphismId> deg);

  const Algebra& algebra() const { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const { return algebra_; }
  const FiniteGroupoid& groupoid() const { return *groupoid_; }
  const GroupoidPtr& groupoid_ptr() const { return groupoid_; }
  const Modulus& modulus() const { return algebra_->modulus(); }
  std::size_t rank() const { return algebra_->rank(); }

  MorphismId degree(std::size_t i) const { return deg_[i]; }
  const std::vector<MorphismId>& degrees() const { return deg_; }
  /// Basis indices of R_s.
  const std::vector<std::size_t>& component(MorphismId s) const { return components_[s]; }
  /// Basis indices whose degree lies in the given set.
  std::vector<std::size_t> support(std::span<const MorphismId> morphisms) const;
  const Vector& local_unit(ObjectId e) const { return local_units_[e]; }

  Vector mul(std::span<const Residue> x, std::span<const Residue> y) const { return algebra_->mul(x, y); }
  /// Homogeneous component of x of degree s.
  Vector project(std::span<const Residue> x, MorphismId s) const;

  /// Crossed-product metadata; null for plain graded algebras.
  const CrossedSystem* crossed() const { return crossed_.get(); }
  /// a u_s, for a in A_cod(s).
  Vector embed(MorphismId s, std::span<const Residue> a) const;
  /// The coefficient a of the u_s component of x.
  Vector coefficient(MorphismId s, std::span<const Residue> x) const;

 private:
  GradedRing() = default;
  friend GradedRing crossed_product(CrossedSystem sys);

  AlgebraPtr algebra_;
  GroupoidPtr groupoid_;
  std::vector<MorphismId> deg_;
  std::vector<std::vector<std::size_t>> components_;
  std::vector<Vector> local_units_;
  std::shared_ptr<const CrossedSystem> crossed_;
};

using GradedRingPtr = std::shared_ptr<const GradedRing>;

struct StrongCheck {
  bool strong = true;
  MorphismId witness = kNoMorphism;
};
/// R is strong iff 1_r(s) lies in R_s R_s^-1 for every s.
StrongCheck check_strong(const GradedRing& r);

/// Throws the first validation failure. Basis element (s, k) sits at
/// offset(s) + k with morphisms in index order.
GradedRing crossed_product(CrossedSystem sys);
GradedRing groupoid_ring(AlgebraPtr b, GroupoidPtr g);
/// beta per s * M + t; empty entries default to the unit.
GradedRing twisted_ring(AlgebraPtr b, GroupoidPtr g, std::vector<Vector> beta);
GradedRing skew_ring(std::vector<AlgebraPtr> coeff, GroupoidPtr g, std::vector<Matrix> alpha);

struct SubringEmbedding {
  GradedRing ring;
  std::vector<std::size_t> basis;      // sub basis index -> parent basis index
  std::vector<ObjectId> objects;       // sub object -> parent object
  std::vector<MorphismId> morphisms;   // sub morphism -> parent morphism

  Vector lift(std::span<const Residue> x, std::size_t parent_rank) const;
  Vector restrict(std::span<const Residue> x) const;
};
/// R_S for a multiplicatively closed morphism set S containing the identities
/// of the objects it touches. Throws NotClosed otherwise.
SubringEmbedding graded_subring(const GradedRing& r, std::span<const MorphismId> members);

struct PartitionPair {
  Vector u;  // in R_s
  Vector v;  // in R_s^-1
};
using PartitionEntry = std::vector<PartitionPair>;

enum class PartitionMethod { Auto, Crossed, Solve };
struct PartitionOptions {
  PartitionMethod method = PartitionMethod::Auto;
  /// Nonzero: perturb the solved decomposition by a random kernel element.
  std::uint64_t seed = 0;
};

/// Pairs with sum u_i v_i = 1_r(s). Throws NotStronglyGraded(s) if none exist.
PartitionEntry partition_of_unity(const GradedRing& r, MorphismId s, const PartitionOptions& options = {});

}  // namespace gsep
