#pragma once

// Exact linear algebra over Z/m for arbitrary m >= 2.
//
// Submodules of (Z/m)^n are kept in Howell normal form: an echelon basis with
// pivots dividing m, entries above each pivot reduced, and the closure
// property that rows with leading column > c generate every module element
// vanishing in columns 0..c. Membership, equality and solving all reduce to
// greedy reduction against such a basis.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace gsep {

using Residue = std::int64_t;
using Vector = std::vector<Residue>;

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

class Modulus {
 public:
  static constexpr Residue kMax = (Residue{1} << 31) - 1;

  explicit Modulus(Residue m);

  Residue value() const noexcept { return m_; }

  Residue reduce(Residue x) const noexcept {
    x %= m_;
    return x < 0 ? x + m_ : x;
  }
  Residue add(Residue a, Residue b) const noexcept { return reduce(a + b); }
  Residue sub(Residue a, Residue b) const noexcept { return reduce(a - b); }
  Residue mul(Residue a, Residue b) const noexcept { return reduce(a * b); }
  Residue neg(Residue a) const noexcept { return reduce(-a); }

  std::optional<Residue> inverse(Residue a) const;
  bool is_unit(Residue a) const;
  /// A unit u with u * a == gcd(a, m) (mod m).
  Residue normalizing_unit(Residue a) const;

  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  Residue m_;
};

Residue gcd(Residue a, Residue b);

// --- dense vectors ---------------------------------------------------------

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
bool is_zero(std::span<const Residue> x);
/// y += a * x
void axpy(const Modulus& m, Residue a, std::span<const Residue> x, std::span<Residue> y);
Vector add(const Modulus& m, std::span<const Residue> x, std::span<const Residue> y);
Vector sub(const Modulus& m, std::span<const Residue> x, std::span<const Residue> y);
Vector scale(const Modulus& m, Residue a, std::span<const Residue> x);
Residue dot(const Modulus& m, std::span<const Residue> x, std::span<const Residue> y);

// --- dense row-major matrices -----------------------------------------------

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::size_t cols, std::span<const Vector> rows);
  static Matrix from_columns(std::size_t rows, std::span<const Vector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Residue& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vector column(std::size_t c) const;

  Vector apply(const Modulus& m, std::span<const Residue> x) const;
  Matrix transpose() const;
  void append_row(std::span<const Residue> r);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Residue> data_;
};

// --- Howell normal form -----------------------------------------------------

class HowellForm {
 public:
  HowellForm(Modulus m, std::size_t cols) : modulus_(m), cols_(cols) {}

  const Modulus& modulus() const noexcept { return modulus_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return rows_.size(); }
  const std::vector<Vector>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Canonical representative of x modulo the module.
  Vector reduce(std::span<const Residue> x) const;
  bool contains(std::span<const Residue> x) const;
  /// Number of pivots equal to 1; for prime m this is the rank.
  std::size_t unit_pivots() const;
  /// log_m of the module's cardinality.
  double length() const;

  friend bool operator==(const HowellForm& a, const HowellForm& b) {
    return a.modulus_ == b.modulus_ && a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  friend class Echelon;
  Modulus modulus_;
  std::size_t cols_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Incremental echelonization; finish() yields the canonical Howell form.
class Echelon {
 public:
  Echelon(Modulus m, std::size_t cols);

  void insert(Vector v);
  HowellForm finish() &&;

 private:
  void set_pivot(Vector row, std::size_t c, std::vector<Vector>& work);

  Modulus modulus_;
  std::size_t cols_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivot_row_;
};

HowellForm howell_form(const Modulus& m, std::size_t cols, std::span<const Vector> generators);

// --- systems ----------------------------------------------------------------

struct LinearSystem {
  Modulus modulus;
  Matrix a;
  Vector b;
};

/// Outcome of solving A x = b. On failure `obstruction` is the first equation
/// whose residual could not be cleared and `residual` its value.
struct SolveResult {
  std::optional<Vector> solution;
  std::size_t obstruction = npos;
  Residue residual = 0;
  std::size_t equations = 0;
  std::size_t unknowns = 0;
  std::size_t pivots = 0;
};

/// Solves A x = b (mod m). The returned solution is canonical: it is reduced
/// modulo the Howell form of the kernel.
SolveResult solve_system(const LinearSystem& sys);
std::optional<Vector> solve_mod(const LinearSystem& sys);

/// Generators (in Howell form) of { x : A x = 0 (mod m) }.
std::vector<Vector> kernel_mod(const Modulus& m, const Matrix& a);

}  // namespace gsep
