#include "gsep/zmod.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "gsep/error.hpp"

namespace gsep {

namespace {

// Returns (g, s, t) with s*a + t*b == g == gcd(a, b) over the integers.
std::tuple<Residue, Residue, Residue> extended_gcd(Residue a, Residue b) {
  Residue old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Residue q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

}  // namespace

Residue gcd(Residue a, Residue b) { return std::gcd(a, b); }

Modulus::Modulus(Residue m) : m_(m) {
  if (m < 2 || m > kMax) {
    throw Error(Fault::InvalidInput, {m}, "modulus must lie in [2, 2^31 - 1]");
  }
}

std::optional<Residue> Modulus::inverse(Residue a) const {
  auto [g, s, t] = extended_gcd(reduce(a), m_);
  (void)t;
  if (g != 1) return std::nullopt;
  return reduce(s);
}

bool Modulus::is_unit(Residue a) const { return std::gcd(reduce(a), m_) == 1; }

Residue Modulus::normalizing_unit(Residue a) const {
  a = reduce(a);
  if (a == 0) return 1;
  Residue g = std::gcd(a, m_);
  Residue mg = m_ / g;
  if (mg == 1) return 1;
  auto [h, s, t] = extended_gcd((a / g) % mg, mg);
  (void)h;
  (void)t;
  Residue u = ((s % mg) + mg) % mg;
  while (std::gcd(u, m_) != 1) u += mg;
  return u;
}

// --- vectors ----------------------------------------------------------------

Vector zero_vector(std::size_t n) { return Vector(n, 0); }

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n, 0);
  v.at(i) = 1;
  return v;
}

bool is_zero(std::span<const Residue> x) {
  return std::all_of(x.begin(), x.end(), [](Residue v) { return v == 0; });
}

void axpy(const Modulus& m, Residue a, std::span<const Residue> x, std::span<Residue> y) {
  a = m.reduce(a);
  if (a == 0) return;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0) y[i] = m.reduce(y[i] + a * x[i]);
  }
}

Vector add(const Modulus& m, std::span<const Residue> x, std::span<const Residue> y) {
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = m.add(x[i], y[i]);
  return out;
}

Vector sub(const Modulus& m, std::span<const Residue> x, std::span<const Residue> y) {
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = m.sub(x[i], y[i]);
  return out;
}

Vector scale(const Modulus& m, Residue a, std::span<const Residue> x) {
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = m.mul(a, x[i]);
  return out;
}

Residue dot(const Modulus& m, std::span<const Residue> x, std::span<const Residue> y) {
  Residue acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc = m.reduce(acc + x[i] * y[i]);
  return acc;
}

// --- matrices ---------------------------------------------------------------

Matrix Matrix::identity(std::size_t n) {
  Matrix id(n, n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 1;
  return id;
}

Matrix Matrix::from_rows(std::size_t cols, std::span<const Vector> rows) {
  Matrix out(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(Fault::DimensionMismatch, {static_cast<std::int64_t>(r)});
    std::copy(rows[r].begin(), rows[r].end(), out.row(r).begin());
  }
  return out;
}

Matrix Matrix::from_columns(std::size_t rows, std::span<const Vector> columns) {
  Matrix out(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw Error(Fault::DimensionMismatch, {static_cast<std::int64_t>(c)});
    for (std::size_t r = 0; r < rows; ++r) out(r, c) = columns[c][r];
  }
  return out;
}

Vector Matrix::column(std::size_t c) const {
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Vector Matrix::apply(const Modulus& m, std::span<const Residue> x) const {
  if (x.size() != cols_) throw Error(Fault::DimensionMismatch, {static_cast<std::int64_t>(x.size())});
  Vector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = dot(m, row(r), x);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

void Matrix::append_row(std::span<const Residue> r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw Error(Fault::DimensionMismatch, {static_cast<std::int64_t>(r.size())});
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

// --- Howell form ------------------------------------------------------------

Vector HowellForm::reduce(std::span<const Residue> x) const {
  Vector rem(x.begin(), x.end());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::size_t c = pivots_[i];
    Residue p = rows_[i][c];
    Residue q = rem[c] / p;
    if (q != 0) axpy(modulus_, -q, rows_[i], rem);
  }
  return rem;
}

bool HowellForm::contains(std::span<const Residue> x) const { return is_zero(reduce(x)); }

std::size_t HowellForm::unit_pivots() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (rows_[i][pivots_[i]] == 1) ++n;
  return n;
}

double HowellForm::length() const {
  double total = 0.0;
  double logm = std::log(static_cast<double>(modulus_.value()));
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Residue p = rows_[i][pivots_[i]];
    total += std::log(static_cast<double>(modulus_.value() / p)) / logm;
  }
  return total;
}

Echelon::Echelon(Modulus m, std::size_t cols) : modulus_(m), cols_(cols), pivot_row_(cols, npos) {}

void Echelon::set_pivot(Vector row, std::size_t c, std::vector<Vector>& work) {
  Residue g = row[c];
  if (pivot_row_[c] == npos) {
    pivot_row_[c] = rows_.size();
    rows_.push_back(std::move(row));
  } else {
    rows_[pivot_row_[c]] = std::move(row);
  }
  // Closure: (m/g) * row vanishes at c and must lie in the span of later rows.
  Residue ann = modulus_.value() / g;
  const Vector& stored = rows_[pivot_row_[c]];
  Vector tail(cols_, 0);
  bool nonzero = false;
  for (std::size_t k = c + 1; k < cols_; ++k) {
    tail[k] = modulus_.mul(ann, stored[k]);
    nonzero = nonzero || tail[k] != 0;
  }
  if (nonzero) work.push_back(std::move(tail));
}

void Echelon::insert(Vector v) {
  if (v.size() != cols_) throw Error(Fault::DimensionMismatch, {static_cast<std::int64_t>(v.size())});
  std::vector<Vector> work;
  for (auto& x : v) x = modulus_.reduce(x);
  work.push_back(std::move(v));
  while (!work.empty()) {
    Vector cur = std::move(work.back());
    work.pop_back();
    std::size_t c = 0;
    while (true) {
      while (c < cols_ && cur[c] == 0) ++c;
      if (c == cols_) break;
      if (pivot_row_[c] == npos) {
        Residue u = modulus_.normalizing_unit(cur[c]);
        if (u != 1)
          for (std::size_t k = c; k < cols_; ++k) cur[k] = modulus_.mul(u, cur[k]);
        set_pivot(std::move(cur), c, work);
        break;
      }
      const Vector& piv = rows_[pivot_row_[c]];
      Residue p = piv[c];
      Residue a = cur[c];
      if (a % p == 0) {
        Residue q = a / p;
        for (std::size_t k = c; k < cols_; ++k)
          if (piv[k] != 0) cur[k] = modulus_.reduce(cur[k] - q * piv[k]);
        continue;
      }
      auto [g, s, t] = extended_gcd(p, a);
      Residue ag = a / g;
      Residue pg = p / g;
      Vector next_pivot(cols_, 0);
      Vector rest(cols_, 0);
      for (std::size_t k = c; k < cols_; ++k) {
        next_pivot[k] = modulus_.reduce(modulus_.reduce(s) * piv[k] + modulus_.reduce(t) * cur[k]);
        rest[k] = modulus_.reduce(ag * piv[k] - pg * cur[k]);
      }
      next_pivot[c] = g;
      set_pivot(std::move(next_pivot), c, work);
      cur = std::move(rest);
    }
  }
}

HowellForm Echelon::finish() && {
  HowellForm out(modulus_, cols_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (pivot_row_[c] == npos) continue;
    out.pivots_.push_back(c);
    out.rows_.push_back(std::move(rows_[pivot_row_[c]]));
  }
  // Reduce entries above each pivot; ascending pivot order keeps earlier
  // reductions intact.
  for (std::size_t i = 0; i < out.rows_.size(); ++i) {
    std::size_t c = out.pivots_[i];
    Residue p = out.rows_[i][c];
    for (std::size_t j = 0; j < i; ++j) {
      Residue q = out.rows_[j][c] / p;
      if (q != 0) axpy(modulus_, -q, out.rows_[i], out.rows_[j]);
    }
  }
  return out;
}

HowellForm howell_form(const Modulus& m, std::size_t cols, std::span<const Vector> generators) {
  Echelon ech(m, cols);
  for (const auto& g : generators) ech.insert(g);
  return std::move(ech).finish();
}

// --- systems ----------------------------------------------------------------

namespace {

// Howell form of the rows (column_j(A) | e_j). Rows with pivot below
// `equations` describe the image, the remaining rows the kernel.
HowellForm augmented_form(const Modulus& m, const Matrix& a) {
  const std::size_t eq = a.rows();
  const std::size_t un = a.cols();
  Echelon ech(m, eq + un);
  for (std::size_t j = 0; j < un; ++j) {
    Vector v(eq + un, 0);
    for (std::size_t r = 0; r < eq; ++r) v[r] = a(r, j);
    v[eq + j] = 1;
    ech.insert(std::move(v));
  }
  return std::move(ech).finish();
}

}  // namespace

std::vector<Vector> kernel_mod(const Modulus& m, const Matrix& a) {
  HowellForm form = augmented_form(m, a);
  std::vector<Vector> kernel;
  for (std::size_t i = 0; i < form.size(); ++i) {
    if (form.pivots()[i] < a.rows()) continue;
    const Vector& row = form.rows()[i];
    kernel.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(a.rows()), row.end());
  }
  return kernel;
}

SolveResult solve_system(const LinearSystem& sys) {
  const Modulus& m = sys.modulus;
  const std::size_t eq = sys.a.rows();
  const std::size_t un = sys.a.cols();
  if (sys.b.size() != eq) throw Error(Fault::DimensionMismatch, {static_cast<std::int64_t>(sys.b.size())});

  SolveResult result;
  result.equations = eq;
  result.unknowns = un;
  HowellForm form = augmented_form(m, sys.a);
  result.pivots = form.size();

  Vector rem(eq);
  for (std::size_t r = 0; r < eq; ++r) rem[r] = m.reduce(sys.b[r]);
  Vector x(un, 0);
  std::size_t next = 0;
  for (std::size_t c = 0; c < eq; ++c) {
    while (next < form.size() && form.pivots()[next] < c) ++next;
    if (rem[c] == 0) continue;
    bool has_pivot = next < form.size() && form.pivots()[next] == c;
    Residue p = has_pivot ? form.rows()[next][c] : 0;
    if (!has_pivot || rem[c] % p != 0) {
      result.obstruction = c;
      result.residual = rem[c];
      return result;
    }
    Residue q = rem[c] / p;
    const Vector& row = form.rows()[next];
    for (std::size_t k = c; k < eq; ++k)
      if (row[k] != 0) rem[k] = m.reduce(rem[k] - q * row[k]);
    for (std::size_t k = 0; k < un; ++k)
      if (row[eq + k] != 0) x[k] = m.reduce(x[k] + q * row[eq + k]);
  }

  // Canonical representative modulo the kernel.
  for (std::size_t i = 0; i < form.size(); ++i) {
    std::size_t c = form.pivots()[i];
    if (c < eq) continue;
    const Vector& row = form.rows()[i];
    Residue q = x[c - eq] / row[c];
    if (q == 0) continue;
    for (std::size_t k = c - eq; k < un; ++k)
      if (row[eq + k] != 0) x[k] = m.reduce(x[k] - q * row[eq + k]);
  }
  result.solution = std::move(x);
  return result;
}

std::optional<Vector> solve_mod(const LinearSystem& sys) { return solve_system(sys).solution; }

}  // namespace gsep
