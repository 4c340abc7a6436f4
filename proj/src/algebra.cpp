#include "gsep/algebra.hpp"

#include "gsep/error.hpp"

namespace gsep {

namespace {

using W = std::int64_t;

}  // namespace

Algebra Algebra::build(Modulus m, std::size_t rank, std::vector<Residue> mult, Vector unit) {
  if (rank == 0) throw Error(Fault::InvalidInput, {0}, "algebra rank must be positive");
  if (mult.size() != rank * rank * rank || unit.size() != rank)
    throw Error(Fault::DimensionMismatch, {W(rank)}, "structure constants do not match the rank");
  Algebra a(m, rank);
  a.products_.resize(rank * rank);
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j)
      for (std::size_t k = 0; k < rank; ++k) {
        Residue c = m.reduce(mult[(i * rank + j) * rank + k]);
        if (c != 0) a.products_[i * rank + j].push_back({k, c});
      }
  for (auto& u : unit) u = m.reduce(u);
  a.unit_ = std::move(unit);

  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j) {
      Vector ij = a.mul(a.basis(i), a.basis(j));
      for (std::size_t l = 0; l < rank; ++l) {
        Vector left = a.mul(ij, a.basis(l));
        Vector right = a.mul(a.basis(i), a.mul(a.basis(j), a.basis(l)));
        if (left != right) throw Error(Fault::NotAssociative, {W(i), W(j), W(l)});
      }
    }
  for (std::size_t j = 0; j < rank; ++j) {
    Vector b = a.basis(j);
    if (a.mul(a.unit_, b) != b || a.mul(b, a.unit_) != b) throw Error(Fault::UnitLawFails, {W(j)});
  }
  return a;
}

Residue Algebra::coeff(std::size_t i, std::size_t j, std::size_t k) const {
  for (const auto& t : product(i, j))
    if (t.index == k) return t.coeff;
  return 0;
}

std::vector<Residue> Algebra::structure_constants() const {
  std::vector<Residue> out(rank_ * rank_ * rank_, 0);
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j)
      for (const auto& t : product(i, j)) out[(i * rank_ + j) * rank_ + t.index] = t.coeff;
  return out;
}

Vector Algebra::mul(std::span<const Residue> x, std::span<const Residue> y) const {
  if (x.size() != rank_ || y.size() != rank_) throw Error(Fault::DimensionMismatch, {W(x.size()), W(y.size())});
  Vector out(rank_, 0);
  for (std::size_t i = 0; i < rank_; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < rank_; ++j) {
      if (y[j] == 0) continue;
      Residue xy = modulus_.mul(x[i], y[j]);
      for (const auto& t : product(i, j)) out[t.index] = modulus_.reduce(out[t.index] + xy * t.coeff);
    }
  }
  return out;
}

Matrix Algebra::left_matrix(std::span<const Residue> x) const {
  Matrix out(rank_, rank_);
  for (std::size_t j = 0; j < rank_; ++j) {
    Vector col = mul(x, basis(j));
    for (std::size_t r = 0; r < rank_; ++r) out(r, j) = col[r];
  }
  return out;
}

Matrix Algebra::right_matrix(std::span<const Residue> x) const {
  Matrix out(rank_, rank_);
  for (std::size_t j = 0; j < rank_; ++j) {
    Vector col = mul(basis(j), x);
    for (std::size_t r = 0; r < rank_; ++r) out(r, j) = col[r];
  }
  return out;
}

std::optional<Vector> inverse(const Algebra& a, std::span<const Residue> x) {
  const std::size_t n = a.rank();
  Matrix left = a.left_matrix(x);
  Matrix right = a.right_matrix(x);
  LinearSystem sys{a.modulus(), Matrix(2 * n, n), Vector(2 * n, 0)};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      sys.a(r, c) = left(r, c);
      sys.a(n + r, c) = right(r, c);
    }
    sys.b[r] = sys.b[n + r] = a.unit()[r];
  }
  return solve_mod(sys);
}

bool is_unit_element(const Algebra& a, std::span<const Residue> x) { return inverse(a, x).has_value(); }

std::vector<Vector> centralizer(const Algebra& a, std::span<const Vector> s,
                                std::optional<std::span<const std::size_t>> within) {
  const std::size_t n = a.rank();
  std::vector<std::size_t> cols;
  if (within) {
    cols.assign(within->begin(), within->end());
  } else {
    for (std::size_t i = 0; i < n; ++i) cols.push_back(i);
  }
  // Equations: x s - s x = 0 for each s, as rows over the chosen coordinates.
  Matrix eqs(n * s.size(), cols.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      Vector b = a.basis(cols[c]);
      Vector d = sub(a.modulus(), a.mul(b, s[k]), a.mul(s[k], b));
      for (std::size_t r = 0; r < n; ++r) eqs(k * n + r, c) = d[r];
    }
  }
  std::vector<Vector> out;
  for (const auto& z : kernel_mod(a.modulus(), eqs)) {
    Vector full(n, 0);
    for (std::size_t c = 0; c < cols.size(); ++c) full[cols[c]] = z[c];
    out.push_back(std::move(full));
  }
  return out;
}

std::vector<Vector> center(const Algebra& a) {
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < a.rank(); ++i) basis.push_back(a.basis(i));
  return centralizer(a, basis);
}

bool ring_iso_check(const Algebra& from, const Algebra& to, const Matrix& m) {
  const std::size_t n = from.rank();
  if (to.rank() != n || m.rows() != n || m.cols() != n || !(from.modulus() == to.modulus())) return false;
  const Modulus& mod = from.modulus();
  if (m.apply(mod, from.unit()) != to.unit()) return false;
  for (std::size_t i = 0; i < n; ++i) {
    LinearSystem sys{mod, m, unit_vector(n, i)};
    if (!solve_mod(sys)) return false;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector lhs = m.apply(mod, from.mul(from.basis(i), from.basis(j)));
      Vector rhs = to.mul(m.column(i), m.column(j));
      if (lhs != rhs) return false;
    }
  return true;
}

Algebra zmod_algebra(Residue m) { return Algebra::build(Modulus(m), 1, {1}, {1}); }

Algebra matrix_algebra(Residue m, std::size_t n) {
  if (n == 0) throw Error(Fault::InvalidInput, {0}, "matrix size must be positive");
  const std::size_t r = n * n;
  std::vector<Residue> mult(r * r * r, 0);
  Vector unit(r, 0);
  for (std::size_t i = 0; i < n; ++i) {
    unit[i * n + i] = 1;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) mult[((i * n + j) * r + (j * n + l)) * r + (i * n + l)] = 1;
  }
  return Algebra::build(Modulus(m), r, std::move(mult), std::move(unit));
}

Algebra group_algebra(Residue m, const GroupTable& g) {
  std::uint32_t e = check_group(g);
  const std::size_t r = g.order;
  std::vector<Residue> mult(r * r * r, 0);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) mult[(a * r + b) * r + g.mul(std::uint32_t(a), std::uint32_t(b))] = 1;
  return Algebra::build(Modulus(m), r, std::move(mult), unit_vector(r, e));
}

Algebra polynomial_algebra(Residue m, std::span<const Residue> poly) {
  Modulus mod(m);
  const std::size_t d = poly.size();
  if (d == 0) throw Error(Fault::InvalidInput, {0}, "polynomial degree must be positive");
  // powers[k] = x^k reduced, for k < 2d - 1.
  std::vector<Vector> powers;
  Vector cur = unit_vector(d, 0);
  for (std::size_t k = 0; k + 1 < 2 * d; ++k) {
    powers.push_back(cur);
    Vector next(d, 0);
    Residue top = cur[d - 1];
    for (std::size_t i = d - 1; i > 0; --i) next[i] = cur[i - 1];
    for (std::size_t i = 0; i < d; ++i) next[i] = mod.sub(next[i], mod.mul(top, poly[i]));
    cur = std::move(next);
  }
  std::vector<Residue> mult(d * d * d, 0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) mult[(i * d + j) * d + k] = powers[i + j][k];
  return Algebra::build(mod, d, std::move(mult), unit_vector(d, 0));
}

Algebra direct_product(const Algebra& a, const Algebra& b) {
  if (!(a.modulus() == b.modulus())) throw Error(Fault::InvalidInput, {}, "moduli differ");
  const std::size_t na = a.rank(), nb = b.rank(), n = na + nb;
  std::vector<Residue> mult(n * n * n, 0);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (const auto& t : a.product(i, j)) mult[(i * n + j) * n + t.index] = t.coeff;
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (const auto& t : b.product(i, j)) mult[((na + i) * n + na + j) * n + na + t.index] = t.coeff;
  Vector unit(a.unit());
  unit.insert(unit.end(), b.unit().begin(), b.unit().end());
  return Algebra::build(a.modulus(), n, std::move(mult), std::move(unit));
}

}  // namespace gsep
