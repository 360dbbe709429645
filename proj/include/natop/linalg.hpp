#pragma once

// Exact linear algebra over the rationals.

#include <map>
#include <vector>

#include "natop/rational.hpp"

namespace natop {

using RationalVector = std::vector<Rational>;
using SparseRow = std::map<int, Rational>;

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols);
  static RationalMatrix from_dense(const std::vector<RationalVector>& rows, int cols);

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }

  Rational get(int r, int c) const;
  void set(int r, int c, const Rational& v);
  const SparseRow& row(int r) const { return rows_.at(static_cast<std::size_t>(r)); }
  /// Zero entries are dropped; columns must be in range.
  void append_row(const SparseRow& row);

  RationalVector multiply(const RationalVector& v) const;
  RationalVector dense_row(int r) const;
  bool operator==(const RationalMatrix&) const = default;

 private:
  int cols_ = 0;
  std::vector<SparseRow> rows_;
};

struct RrefResult {
  RationalMatrix reduced;   // exactly `rank` nonzero rows, pivots ascending
  int rank = 0;
  std::vector<int> pivots;  // pivot column of each reduced row
};

/// Fraction-free elimination over the integers, then normalization.
/// Pivot choice: leftmost column, then lowest row index.
RrefResult rref(const RationalMatrix& m);

/// One basis vector per free column, free variable set to 1, in column order.
std::vector<RationalVector> nullspace(const RationalMatrix& m);

struct Membership {
  bool member = false;
  RationalVector coordinates;  // a solution of Σ x_k basis_k = v (free variables 0)
  RationalVector residual;     // v - Σ x_k basis_k; zero iff member
};

Membership solve_membership(const RationalVector& v, const std::vector<RationalVector>& basis);

int rank_of(const std::vector<RationalVector>& vectors, int dim);
/// Row spaces equal (compares reduced forms).
bool same_row_space(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace natop
