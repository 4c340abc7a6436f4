#pragma once

// Finite associative unital algebras over Z/m given by structure constants.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "gsep/groupoid.hpp"
#include "gsep/zmod.hpp"

namespace gsep {

struct Term {
  std::size_t index;
  Residue coeff;
};

class Algebra {
 public:
  /// mult[(i * rank + j) * rank + k] is the coefficient of b_k in b_i b_j.
  /// Throws NotAssociative(i, j, l) or UnitLawFails(j).
  static Algebra build(Modulus m, std::size_t rank, std::vector<Residue> mult, Vector unit);

  const Modulus& modulus() const noexcept { return modulus_; }
  std::size_t rank() const noexcept { return rank_; }
  const Vector& unit() const noexcept { return unit_; }
  Vector zero() const { return Vector(rank_, 0); }
  Vector basis(std::size_t i) const { return unit_vector(rank_, i); }

  /// Nonzero terms of b_i b_j.
  const std::vector<Term>& product(std::size_t i, std::size_t j) const { return products_[i * rank_ + j]; }
  Residue coeff(std::size_t i, std::size_t j, std::size_t k) const;
  std::vector<Residue> structure_constants() const;

  Vector mul(std::span<const Residue> x, std::span<const Residue> y) const;
  /// Matrix of y -> x y.
  Matrix left_matrix(std::span<const Residue> x) const;
  /// Matrix of y -> y x.
  Matrix right_matrix(std::span<const Residue> x) const;

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.modulus_ == b.modulus_ && a.rank_ == b.rank_ && a.unit_ == b.unit_ &&
           a.structure_constants() == b.structure_constants();
  }

 private:
  Algebra(Modulus m, std::size_t rank) : modulus_(m), rank_(rank) {}

  Modulus modulus_;
  std::size_t rank_;
  std::vector<std::vector<Term>> products_;
  Vector unit_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Two-sided inverse of x, if any.
std::optional<Vector> inverse(const Algebra& a, std::span<const Residue> x);
bool is_unit_element(const Algebra& a, std::span<const Residue> x);

/// Generators (Howell form) of { x : x s = s x for all s in S }. With
/// `within` set, x is restricted to the span of those basis vectors.
std::vector<Vector> centralizer(const Algebra& a, std::span<const Vector> s,
                                std::optional<std::span<const std::size_t>> within = std::nullopt);
std::vector<Vector> center(const Algebra& a);

/// True iff m (columns = images of the basis of `from`) is a unital ring
/// isomorphism from -> to.
bool ring_iso_check(const Algebra& from, const Algebra& to, const Matrix& m);

Algebra zmod_algebra(Residue m);
/// Matrix units E_ij at index i * n + j.
Algebra matrix_algebra(Residue m, std::size_t n);
Algebra group_algebra(Residue m, const GroupTable& g);
/// Z/m[x]/(f) for monic f = x^d + poly[d-1] x^(d-1) + ... + poly[0];
/// basis 1, x, ..., x^(d-1).
Algebra polynomial_algebra(Residue m, std::span<const Residue> poly);
/// Componentwise product; basis of a followed by basis of b.
Algebra direct_product(const Algebra& a, const Algebra& b);

}  // namespace gsep
