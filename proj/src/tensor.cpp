#include "gsep/tensor.hpp"

#include <cmath>

namespace gsep {

namespace {

using W = std::int64_t;

}  // namespace

TensorPresentation TensorPresentation::build(const GradedRing& r, std::span<const std::size_t> subring,
                                             std::size_t max_rank) {
  const FiniteGroupoid& g = r.groupoid();
  const Algebra& a = r.algebra();
  const Modulus& mod = r.modulus();
  const std::size_t n = r.rank();

  std::vector<bool> in_sub(n, false);
  for (auto i : subring) in_sub.at(i) = true;
  for (ObjectId e = 0; e < g.object_count(); ++e)
    for (auto i : r.component(g.identity(e)))
      if (!in_sub[i]) throw Error(Fault::InvalidInput, {W(e)}, "subring must contain every R_e");

  TensorPresentation t(r.algebra_ptr(), r.groupoid_ptr(), r.degrees());
  t.pair_of_.assign(n * n, npos);
  t.blocks_.resize(g.morphism_count());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!g.composable(r.degree(i), r.degree(j))) continue;
      if (t.pairs_.size() >= max_rank)
        throw Error(Fault::CapacityExceeded, {W(max_rank)}, "tensor presentation exceeds the rank bound");
      MorphismId rho = g.compose(r.degree(i), r.degree(j));
      t.pair_of_[i * n + j] = t.pairs_.size();
      t.position_.push_back(t.blocks_[rho].pairs.size());
      t.blocks_[rho].pairs.push_back(t.pairs_.size());
      t.block_of_pair_.push_back(rho);
      t.pairs_.emplace_back(i, j);
    }

  std::vector<Echelon> rel;
  rel.reserve(t.blocks_.size());
  for (const auto& b : t.blocks_) rel.emplace_back(mod, b.pairs.size());
  // (b_i s) (x) b_j - b_i (x) (s b_j)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t s = 0; s < n; ++s) {
      if (!in_sub[s] || !g.composable(r.degree(i), r.degree(s))) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!g.composable(r.degree(s), r.degree(j))) continue;
        MorphismId rho = g.compose(g.compose(r.degree(i), r.degree(s)), r.degree(j));
        Vector v(t.blocks_[rho].pairs.size(), 0);
        for (const auto& term : a.product(i, s)) {
          std::size_t p = t.pair_of_[term.index * n + j];
          v[t.position_[p]] = mod.add(v[t.position_[p]], term.coeff);
        }
        for (const auto& term : a.product(s, j)) {
          std::size_t p = t.pair_of_[i * n + term.index];
          v[t.position_[p]] = mod.sub(v[t.position_[p]], term.coeff);
        }
        if (!gsep::is_zero(v)) rel[rho].insert(std::move(v));
      }
    }
  for (std::size_t rho = 0; rho < t.blocks_.size(); ++rho) {
    Block& b = t.blocks_[rho];
    b.relations = std::move(rel[rho]).finish();
    Matrix rows = Matrix::from_rows(b.pairs.size(), b.relations.rows());
    if (b.relations.size() == 0) {
      for (std::size_t k = 0; k < b.pairs.size(); ++k) b.annihilator.push_back(unit_vector(b.pairs.size(), k));
    } else {
      b.annihilator = kernel_mod(mod, rows);
    }
    b.offset = t.invariant_total_;
    t.invariant_total_ += b.annihilator.size();
  }
  return t;
}

Vector TensorPresentation::tensor(std::span<const Residue> x, std::span<const Residue> y) const {
  const Modulus& mod = algebra_->modulus();
  Vector out(rank(), 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (y[j] == 0) continue;
      std::size_t p = pair_of_[i * n_ + j];
      if (p != npos) out[p] = mod.reduce(out[p] + x[i] * y[j]);
    }
  }
  return out;
}

Vector TensorPresentation::left_act(std::span<const Residue> a, std::span<const Residue> w) const {
  const Modulus& mod = algebra_->modulus();
  Vector out(rank(), 0);
  for (std::size_t p = 0; p < rank(); ++p) {
    if (w[p] == 0) continue;
    auto [i, j] = pairs_[p];
    for (std::size_t k = 0; k < n_; ++k) {
      if (a[k] == 0) continue;
      Residue c = mod.mul(a[k], w[p]);
      for (const auto& term : algebra_->product(k, i)) {
        std::size_t q = pair_of_[term.index * n_ + j];
        out[q] = mod.reduce(out[q] + c * term.coeff);
      }
    }
  }
  return out;
}

Vector TensorPresentation::right_act(std::span<const Residue> w, std::span<const Residue> a) const {
  const Modulus& mod = algebra_->modulus();
  Vector out(rank(), 0);
  for (std::size_t p = 0; p < rank(); ++p) {
    if (w[p] == 0) continue;
    auto [i, j] = pairs_[p];
    for (std::size_t k = 0; k < n_; ++k) {
      if (a[k] == 0) continue;
      Residue c = mod.mul(a[k], w[p]);
      for (const auto& term : algebra_->product(j, k)) {
        std::size_t q = pair_of_[i * n_ + term.index];
        out[q] = mod.reduce(out[q] + c * term.coeff);
      }
    }
  }
  return out;
}

Vector TensorPresentation::multiply(std::span<const Residue> w) const {
  const Modulus& mod = algebra_->modulus();
  Vector out(n_, 0);
  for (std::size_t p = 0; p < rank(); ++p) {
    if (w[p] == 0) continue;
    auto [i, j] = pairs_[p];
    for (const auto& term : algebra_->product(i, j)) out[term.index] = mod.reduce(out[term.index] + w[p] * term.coeff);
  }
  return out;
}

Vector TensorPresentation::block_coords(const Block& b, std::span<const Residue> w) const {
  Vector v(b.pairs.size());
  for (std::size_t k = 0; k < b.pairs.size(); ++k) v[k] = w[b.pairs[k]];
  return v;
}

Vector TensorPresentation::invariants(std::span<const Residue> w) const {
  Vector out(invariant_total_, 0);
  const Modulus& mod = algebra_->modulus();
  for (const auto& b : blocks_) {
    if (b.annihilator.empty()) continue;
    Vector v = block_coords(b, w);
    for (std::size_t k = 0; k < b.annihilator.size(); ++k) out[b.offset + k] = dot(mod, v, b.annihilator[k]);
  }
  return out;
}

Vector TensorPresentation::invariants(std::span<const Residue> w, std::span<const MorphismId> degrees) const {
  Vector out;
  const Modulus& mod = algebra_->modulus();
  for (auto rho : degrees) {
    const Block& b = blocks_[rho];
    if (b.annihilator.empty()) continue;
    Vector v = block_coords(b, w);
    for (const auto& z : b.annihilator) out.push_back(dot(mod, v, z));
  }
  return out;
}

bool TensorPresentation::is_zero(std::span<const Residue> w) const { return gsep::is_zero(invariants(w)); }

bool TensorPresentation::equal(std::span<const Residue> a, std::span<const Residue> b) const {
  return is_zero(sub(algebra_->modulus(), a, b));
}

Vector TensorPresentation::normal_form(std::span<const Residue> w) const {
  Vector out(rank(), 0);
  for (const auto& b : blocks_) {
    Vector red = b.relations.reduce(block_coords(b, w));
    for (std::size_t k = 0; k < b.pairs.size(); ++k) out[b.pairs[k]] = red[k];
  }
  return out;
}

double TensorPresentation::quotient_length() const {
  double total = 0.0;
  for (const auto& b : blocks_) total += static_cast<double>(b.pairs.size()) - b.relations.length();
  return total;
}

}  // namespace gsep
