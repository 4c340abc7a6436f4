#pragma once

// R (x)_S R for a graded subring S containing every local unit.
//
// Only pairs (b_i, b_j) with composable degrees survive, and the balancing
// relations respect the degree deg(i) deg(j), so the quotient splits into one
// block per morphism. Z/m is self-injective, so each relation module equals
// its double annihilator: w is a relation iff <w, z> = 0 for every z in the
// annihilator. The annihilator pairings give an injective linear map
// ("invariants") out of the quotient, which turns quotient equations into
// ordinary systems over Z/m.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "gsep/graded.hpp"

namespace gsep {

inline constexpr std::size_t kDefaultMaxRank = 20000;

class TensorPresentation {
 public:
  /// Throws CapacityExceeded when the number of pairs exceeds max_rank and
  /// InvalidInput when S misses part of some R_e.
  static TensorPresentation build(const GradedRing& r, std::span<const std::size_t> subring,
                                  std::size_t max_rank = kDefaultMaxRank);

  /// Number of ambient generators (composable basis pairs).
  std::size_t rank() const noexcept { return pairs_.size(); }
  std::size_t pair_index(std::size_t i, std::size_t j) const { return pair_of_[i * n_ + j]; }
  std::pair<std::size_t, std::size_t> pair(std::size_t p) const { return pairs_[p]; }
  MorphismId block_degree(std::size_t p) const { return block_of_pair_[p]; }

  Vector tensor(std::span<const Residue> x, std::span<const Residue> y) const;
  Vector left_act(std::span<const Residue> a, std::span<const Residue> w) const;
  Vector right_act(std::span<const Residue> w, std::span<const Residue> a) const;
  /// The multiplication map to R.
  Vector multiply(std::span<const Residue> w) const;

  std::size_t invariant_count() const noexcept { return invariant_total_; }
  Vector invariants(std::span<const Residue> w) const;
  /// Invariants of the blocks with the given degrees only, concatenated.
  Vector invariants(std::span<const Residue> w, std::span<const MorphismId> degrees) const;
  bool is_zero(std::span<const Residue> w) const;
  bool equal(std::span<const Residue> a, std::span<const Residue> b) const;
  /// Canonical representative of the class of w.
  Vector normal_form(std::span<const Residue> w) const;
  /// log_m of the cardinality of the quotient.
  double quotient_length() const;

 private:
  struct Block {
    std::vector<std::size_t> pairs;  // ambient pair indices, ascending
    HowellForm relations{Modulus(2), 0};
    std::vector<Vector> annihilator;
    std::size_t offset = 0;  // into the invariant vector
  };

  TensorPresentation(AlgebraPtr a, GroupoidPtr g, std::vector<MorphismId> deg)
      : algebra_(std::move(a)), groupoid_(std::move(g)), deg_(std::move(deg)), n_(deg_.size()) {}

  Vector block_coords(const Block& b, std::span<const Residue> w) const;

  AlgebraPtr algebra_;
  GroupoidPtr groupoid_;
  std::vector<MorphismId> deg_;
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<std::size_t> pair_of_;
  std::vector<MorphismId> block_of_pair_;
  std::vector<std::size_t> position_;  // pair -> index inside its block
  std::vector<Block> blocks_;          // per morphism
  std::size_t invariant_total_ = 0;
};

}  // namespace gsep
