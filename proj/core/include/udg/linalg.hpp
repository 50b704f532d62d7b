#ifndef UDG_LINALG_HPP_
#define UDG_LINALG_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace udg {

struct Triplet {
  std::size_t row{0};
  std::size_t col{0};
  double value{0.0};
};

// Compressed sparse row matrix; column indices are sorted and unique per row.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  // Duplicate (row, col) entries are summed. Throws std::out_of_range.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                    std::span<Triplet const> entries);
  static SparseMatrix from_triplets(std::size_t n, std::span<Triplet const> entries) {
    return from_triplets(n, n, entries);
  }
  static SparseMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::size_t nonzeros() const { return values_.size(); }
  [[nodiscard]] std::vector<std::size_t> const &row_offsets() const { return offsets_; }
  [[nodiscard]] std::vector<std::size_t> const &column_indices() const { return columns_; }
  [[nodiscard]] std::vector<double> const &values() const { return values_; }

  // Stored value or 0.
  [[nodiscard]] double at(std::size_t row, std::size_t col) const;
  [[nodiscard]] std::vector<double> diagonal() const;

  void multiply(std::span<double const> x, std::span<double> y) const;
  [[nodiscard]] std::vector<double> multiply(std::span<double const> x) const;
  [[nodiscard]] std::vector<double> transpose_multiply(std::span<double const> x) const;

  // Row-major dense copy.
  [[nodiscard]] std::vector<double> to_dense() const;
  [[nodiscard]] std::vector<Triplet> to_triplets() const;

 private:
  std::size_t rows_{0};
  std::size_t cols_{0};
  std::vector<std::size_t> offsets_{0};
  std::vector<std::size_t> columns_;
  std::vector<double> values_;
};

// Coordinate text format: one `row col value` line per stored entry.
void write_coordinate(SparseMatrix const &m, std::ostream &out);
void write_coordinate(SparseMatrix const &m, std::filesystem::path const &path);

enum class SolveMethod { direct, iterative };

struct SolveReport {
  SolveMethod method{SolveMethod::direct};
  std::size_t iterations{0};
  double relative_residual{0.0};
  double regularization{0.0};
};

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(std::string const &what, std::vector<double> best, SolveReport report)
      : std::runtime_error(what), best_iterate(std::move(best)), report(report) {}
  std::vector<double> best_iterate;
  SolveReport report;
};

double norm2(std::span<double const> v);
// ||A x - b||_2 / ||b||_2, or the absolute residual when b = 0.
double relative_residual(SparseMatrix const &a, std::span<double const> x,
                         std::span<double const> b);

inline constexpr std::size_t kMaxDirectSize = 5000;

// Dense LU with partial pivoting. Throws std::invalid_argument for
// n > kMaxDirectSize and SingularMatrixError on a vanishing pivot.
std::vector<double> solve_direct(SparseMatrix const &a, std::span<double const> b);

struct IterativeOptions {
  double tolerance{1e-12};
  std::size_t max_iterations{0};  // 0 selects 20 n
  std::size_t restart{120};
  bool diagonal_preconditioning{true};
};

struct IterativeResult {
  std::vector<double> x;
  SolveReport report;
};

// Restarted GMRES with right diagonal preconditioning; the monitored residual
// is that of the unpreconditioned system. Zero diagonal entries are left
// unscaled. Throws ConvergenceError carrying the best iterate.
IterativeResult solve_iterative(SparseMatrix const &a, std::span<double const> b,
                                IterativeOptions const &options = {});

}  // namespace udg

#endif  // UDG_LINALG_HPP_
