#include "udg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace udg {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), offsets_(rows + 1, 0) {}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                         std::span<Triplet const> entries) {
  SparseMatrix m(rows, cols);
  for (auto const &e : entries) {
    if (e.row >= rows || e.col >= cols) {
      throw std::out_of_range(fmt::format("from_triplets: entry ({}, {}) outside {}x{} matrix",
                                          e.row, e.col, rows, cols));
    }
  }
  // Counting sort by row, then sort and merge columns within each row.
  std::vector<std::size_t> count(rows + 1, 0);
  for (auto const &e : entries) ++count[e.row + 1];
  std::partial_sum(count.begin(), count.end(), count.begin());
  std::vector<std::pair<std::size_t, double>> bucket(entries.size());
  {
    auto fill = count;
    for (auto const &e : entries) bucket[fill[e.row]++] = {e.col, e.value};
  }
  m.columns_.reserve(entries.size());
  m.values_.reserve(entries.size());
  for (std::size_t r = 0; r < rows; ++r) {
    auto const first = bucket.begin() + static_cast<std::ptrdiff_t>(count[r]);
    auto const last = bucket.begin() + static_cast<std::ptrdiff_t>(count[r + 1]);
    // Stable so that duplicates are summed in insertion order.
    std::stable_sort(first, last, [](auto const &a, auto const &b) { return a.first < b.first; });
    for (auto it = first; it != last; ++it) {
      if (!m.columns_.empty() && m.columns_.size() > m.offsets_[r] &&
          m.columns_.back() == it->first) {
        m.values_.back() += it->second;
      } else {
        m.columns_.push_back(it->first);
        m.values_.push_back(it->second);
      }
    }
    m.offsets_[r + 1] = m.columns_.size();
  }
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<Triplet> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = {i, i, 1.0};
  return from_triplets(n, t);
}

double SparseMatrix::at(std::size_t row, std::size_t col) const {
  auto const first = columns_.begin() + static_cast<std::ptrdiff_t>(offsets_.at(row));
  auto const last = columns_.begin() + static_cast<std::ptrdiff_t>(offsets_.at(row + 1));
  auto const it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - columns_.begin())];
}

std::vector<double> SparseMatrix::diagonal() const {
  std::vector<double> d(std::min(rows_, cols_), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = at(i, i);
  return d;
}

void SparseMatrix::multiply(std::span<double const> x, std::span<double> y) const {
  if (x.size() != cols_ || y.size() != rows_) {
    throw std::invalid_argument("SparseMatrix::multiply: dimension mismatch");
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (std::size_t k = offsets_[r]; k < offsets_[r + 1]; ++k) acc += values_[k] * x[columns_[k]];
    y[r] = acc;
  }
}

std::vector<double> SparseMatrix::multiply(std::span<double const> x) const {
  std::vector<double> y(rows_);
  multiply(x, y);
  return y;
}

std::vector<double> SparseMatrix::transpose_multiply(std::span<double const> x) const {
  if (x.size() != rows_) {
    throw std::invalid_argument("SparseMatrix::transpose_multiply: dimension mismatch");
  }
  std::vector<double> y(cols_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = offsets_[r]; k < offsets_[r + 1]; ++k) y[columns_[k]] += values_[k] * x[r];
  }
  return y;
}

std::vector<double> SparseMatrix::to_dense() const {
  std::vector<double> d(rows_ * cols_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = offsets_[r]; k < offsets_[r + 1]; ++k) d[r * cols_ + columns_[k]] = values_[k];
  }
  return d;
}

std::vector<Triplet> SparseMatrix::to_triplets() const {
  std::vector<Triplet> t;
  t.reserve(values_.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = offsets_[r]; k < offsets_[r + 1]; ++k) t.push_back({r, columns_[k], values_[k]});
  }
  return t;
}

void write_coordinate(SparseMatrix const &m, std::ostream &out) {
  for (auto const &t : m.to_triplets()) fmt::print(out, "{} {} {:.17g}\n", t.row, t.col, t.value);
}

void write_coordinate(SparseMatrix const &m, std::filesystem::path const &path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open matrix dump '" + path.string() + "'");
  write_coordinate(m, out);
  if (!out) throw std::runtime_error("failed writing matrix dump '" + path.string() + "'");
}

double norm2(std::span<double const> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double relative_residual(SparseMatrix const &a, std::span<double const> x,
                         std::span<double const> b) {
  auto r = a.multiply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  double const nb = norm2(b);
  double const nr = norm2(r);
  return nb > 0.0 ? nr / nb : nr;
}

std::vector<double> solve_direct(SparseMatrix const &a, std::span<double const> b) {
  std::size_t const n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve_direct: not square");
  if (n > kMaxDirectSize) {
    throw std::invalid_argument(fmt::format("solve_direct: n = {} exceeds the dense limit {}", n,
                                            kMaxDirectSize));
  }
  auto lu = a.to_dense();
  std::vector<double> x(b.begin(), b.end());
  double scale = 0.0;
  for (double v : lu) scale = std::max(scale, std::abs(v));
  double const pivot_floor =
      static_cast<double>(std::max<std::size_t>(n, 1)) * std::numeric_limits<double>::epsilon() *
      scale;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(lu[r * n + k]) > std::abs(lu[p * n + k])) p = r;
    }
    if (!(std::abs(lu[p * n + k]) > pivot_floor)) {
      throw SingularMatrixError(fmt::format("solve_direct: matrix is singular (column {})", k));
    }
    if (p != k) {
      std::swap_ranges(lu.begin() + static_cast<std::ptrdiff_t>(k * n),
                       lu.begin() + static_cast<std::ptrdiff_t>((k + 1) * n),
                       lu.begin() + static_cast<std::ptrdiff_t>(p * n));
      std::swap(x[k], x[p]);
    }
    double const pivot = lu[k * n + k];
    for (std::size_t r = k + 1; r < n; ++r) {
      double const f = lu[r * n + k] / pivot;
      if (f == 0.0) continue;
      lu[r * n + k] = f;
      for (std::size_t c = k + 1; c < n; ++c) lu[r * n + c] -= f * lu[k * n + c];
      x[r] -= f * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double acc = x[k];
    for (std::size_t c = k + 1; c < n; ++c) acc -= lu[k * n + c] * x[c];
    x[k] = acc / lu[k * n + k];
  }
  return x;
}

IterativeResult solve_iterative(SparseMatrix const &a, std::span<double const> b,
                                IterativeOptions const &options) {
  std::size_t const n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve_iterative: not square");
  for (double v : b) {
    if (!std::isfinite(v)) throw std::invalid_argument("solve_iterative: non-finite right-hand side");
  }
  IterativeResult result{std::vector<double>(n, 0.0), {SolveMethod::iterative, 0, 0.0, 0.0}};
  double const bnorm = norm2(b);
  if (bnorm == 0.0 || n == 0) return result;

  std::vector<double> inv_diag(n, 1.0);
  if (options.diagonal_preconditioning) {
    auto const d = a.diagonal();
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i] != 0.0) inv_diag[i] = 1.0 / d[i];
    }
  }
  std::size_t const max_iter = options.max_iterations ? options.max_iterations : 20 * n;
  std::size_t const m = std::max<std::size_t>(1, std::min(options.restart, n));
  double const target = options.tolerance * bnorm;

  auto &x = result.x;
  std::vector<double> r(b.begin(), b.end());
  double rnorm = bnorm;
  std::vector<double> best = x;
  double best_norm = rnorm;

  std::vector<std::vector<double>> v(m + 1, std::vector<double>(n));
  std::vector<double> h((m + 1) * m, 0.0);
  std::vector<double> cs(m), sn(m), g(m + 1);
  std::vector<double> z(n), w(n);

  std::size_t iterations = 0;
  while (iterations < max_iter) {
    for (std::size_t i = 0; i < n; ++i) v[0][i] = r[i] / rnorm;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = rnorm;
    std::size_t steps = 0;
    for (std::size_t j = 0; j < m && iterations < max_iter; ++j) {
      for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * v[j][i];
      a.multiply(z, w);
      // Modified Gram-Schmidt with one reorthogonalisation pass.
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k <= j; ++k) {
          double dotp = 0.0;
          for (std::size_t i = 0; i < n; ++i) dotp += w[i] * v[k][i];
          h[k * m + j] += dotp;
          for (std::size_t i = 0; i < n; ++i) w[i] -= dotp * v[k][i];
        }
      }
      double const wn = norm2(w);
      h[(j + 1) * m + j] = wn;
      if (wn > 0.0) {
        for (std::size_t i = 0; i < n; ++i) v[j + 1][i] = w[i] / wn;
      }
      for (std::size_t k = 0; k < j; ++k) {
        double const t = cs[k] * h[k * m + j] + sn[k] * h[(k + 1) * m + j];
        h[(k + 1) * m + j] = -sn[k] * h[k * m + j] + cs[k] * h[(k + 1) * m + j];
        h[k * m + j] = t;
      }
      double const denom = std::hypot(h[j * m + j], h[(j + 1) * m + j]);
      cs[j] = denom > 0.0 ? h[j * m + j] / denom : 1.0;
      sn[j] = denom > 0.0 ? h[(j + 1) * m + j] / denom : 0.0;
      h[j * m + j] = denom;
      h[(j + 1) * m + j] = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      ++iterations;
      steps = j + 1;
      if (std::abs(g[j + 1]) <= 0.5 * target || wn == 0.0) break;
    }
    // Back substitution for the least-squares coefficients.
    std::vector<double> y(steps, 0.0);
    for (std::size_t k = steps; k-- > 0;) {
      double acc = g[k];
      for (std::size_t c = k + 1; c < steps; ++c) acc -= h[k * m + c] * y[c];
      y[k] = h[k * m + k] != 0.0 ? acc / h[k * m + k] : 0.0;
    }
    std::fill(z.begin(), z.end(), 0.0);
    for (std::size_t k = 0; k < steps; ++k) {
      for (std::size_t i = 0; i < n; ++i) z[i] += y[k] * v[k][i];
    }
    for (std::size_t i = 0; i < n; ++i) x[i] += inv_diag[i] * z[i];
    std::fill(h.begin(), h.end(), 0.0);

    a.multiply(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    double const previous = rnorm;
    rnorm = norm2(r);
    if (rnorm < best_norm) {
      best_norm = rnorm;
      best = x;
    }
    if (rnorm <= target) {
      result.report.iterations = iterations;
      result.report.relative_residual = rnorm / bnorm;
      return result;
    }
    if (!(rnorm < previous * (1.0 - 1e-10))) break;  // stagnation
  }
  SolveReport report{SolveMethod::iterative, iterations, best_norm / bnorm, 0.0};
  throw ConvergenceError(fmt::format("solve_iterative: no convergence after {} iterations "
                                     "(relative residual {:.3e}, tolerance {:.1e})",
                                     iterations, best_norm / bnorm, options.tolerance),
                         std::move(best), report);
}

}  // namespace udg
