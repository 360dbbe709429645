#include "natop/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace natop {

namespace {

using IntRow = std::map<int, mpz_class>;

IntRow to_integer_row(const SparseRow& row) {
  mpz_class l = 1;
  for (const auto& [c, v] : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  IntRow out;
  for (const auto& [c, v] : row) out[c] = v.get_num() * (l / v.get_den());
  return out;
}

void remove_content(IntRow& row) {
  mpz_class g = 0;
  for (const auto& [c, v] : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g > 1)
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// row := p*row - q*pivot_row, with p the pivot entry and q = row[col].
void eliminate(IntRow& row, const IntRow& pivot_row, int col) {
  auto it = row.find(col);
  if (it == row.end()) return;
  mpz_class p = pivot_row.at(col);
  mpz_class q = it->second;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  p /= g;
  q /= g;
  for (auto& [c, v] : row) v *= p;
  for (const auto& [c, v] : pivot_row) {
    mpz_class& slot = row[c];
    slot -= q * v;
    if (slot == 0) row.erase(c);
  }
  remove_content(row);
}

}  // namespace

RationalMatrix::RationalMatrix(int rows, int cols) : cols_(cols), rows_(static_cast<std::size_t>(rows)) {}

RationalMatrix RationalMatrix::from_dense(const std::vector<RationalVector>& rows, int cols) {
  RationalMatrix m(0, cols);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols) throw std::invalid_argument("ragged dense matrix");
    SparseRow s;
    for (int c = 0; c < cols; ++c)
      if (!is_zero(r[c])) s[c] = r[c];
    m.append_row(s);
  }
  return m;
}

Rational RationalMatrix::get(int r, int c) const {
  const auto& row = rows_.at(static_cast<std::size_t>(r));
  auto it = row.find(c);
  return it == row.end() ? Rational(0) : it->second;
}

void RationalMatrix::set(int r, int c, const Rational& v) {
  if (c < 0 || c >= cols_) throw std::out_of_range("column out of range");
  auto& row = rows_.at(static_cast<std::size_t>(r));
  if (is_zero(v))
    row.erase(c);
  else
    row[c] = v;
}

void RationalMatrix::append_row(const SparseRow& row) {
  SparseRow clean;
  for (const auto& [c, v] : row) {
    if (c < 0 || c >= cols_) throw std::out_of_range("column out of range");
    if (!is_zero(v)) clean[c] = v;
  }
  rows_.push_back(std::move(clean));
}

RationalVector RationalMatrix::multiply(const RationalVector& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("dimension mismatch");
  RationalVector out(rows_.size(), Rational(0));
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, x] : rows_[r]) out[r] += x * v[static_cast<std::size_t>(c)];
  return out;
}

RationalVector RationalMatrix::dense_row(int r) const {
  RationalVector out(static_cast<std::size_t>(cols_), Rational(0));
  for (const auto& [c, x] : row(r)) out[static_cast<std::size_t>(c)] = x;
  return out;
}

RrefResult rref(const RationalMatrix& m) {
  std::vector<IntRow> remaining;
  std::vector<int> order;  // original row index, for the tie-break
  for (int r = 0; r < m.rows(); ++r) {
    if (m.row(r).empty()) continue;
    IntRow ir = to_integer_row(m.row(r));
    remove_content(ir);
    remaining.push_back(std::move(ir));
    order.push_back(r);
  }

  std::vector<IntRow> pivot_rows;
  std::vector<int> pivots;
  for (;;) {
    int best = -1;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      if (remaining[i].empty()) continue;
      if (best < 0 || remaining[i].begin()->first < remaining[static_cast<std::size_t>(best)].begin()->first ||
          (remaining[i].begin()->first == remaining[static_cast<std::size_t>(best)].begin()->first &&
           order[i] < order[static_cast<std::size_t>(best)]))
        best = static_cast<int>(i);
    }
    if (best < 0) break;
    IntRow pivot = std::move(remaining[static_cast<std::size_t>(best)]);
    remaining.erase(remaining.begin() + best);
    order.erase(order.begin() + best);
    int col = pivot.begin()->first;
    for (auto& row : remaining) eliminate(row, pivot, col);
    pivot_rows.push_back(std::move(pivot));
    pivots.push_back(col);
  }

  // back substitution, still fraction-free
  for (std::size_t j = pivot_rows.size(); j-- > 0;)
    for (std::size_t i = 0; i < j; ++i) eliminate(pivot_rows[i], pivot_rows[j], pivots[j]);

  RrefResult res{RationalMatrix(0, m.cols()), static_cast<int>(pivot_rows.size()), pivots};
  for (std::size_t i = 0; i < pivot_rows.size(); ++i) {
    Rational lead(pivot_rows[i].at(pivots[i]));
    SparseRow row;
    for (const auto& [c, v] : pivot_rows[i]) {
      Rational x(v);
      x /= lead;
      row[c] = x;
    }
    res.reduced.append_row(row);
  }
  return res;
}

std::vector<RationalVector> nullspace(const RationalMatrix& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<RationalVector> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    RationalVector v(static_cast<std::size_t>(m.cols()), Rational(0));
    v[static_cast<std::size_t>(f)] = 1;
    for (int i = 0; i < r.rank; ++i) v[static_cast<std::size_t>(r.pivots[i])] = -r.reduced.get(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

Membership solve_membership(const RationalVector& v, const std::vector<RationalVector>& basis) {
  const int n = static_cast<int>(v.size());
  const int k = static_cast<int>(basis.size());
  RationalMatrix aug(0, k + 1);
  for (int row = 0; row < n; ++row) {
    SparseRow s;
    for (int c = 0; c < k; ++c) {
      if (static_cast<int>(basis[c].size()) != n) throw std::invalid_argument("basis vector dimension mismatch");
      if (!is_zero(basis[c][row])) s[c] = basis[c][row];
    }
    if (!is_zero(v[row])) s[k] = v[row];
    aug.append_row(s);
  }
  RrefResult r = rref(aug);
  Membership out;
  out.coordinates.assign(static_cast<std::size_t>(k), Rational(0));
  for (int i = 0; i < r.rank; ++i)
    if (r.pivots[i] < k) out.coordinates[static_cast<std::size_t>(r.pivots[i])] = r.reduced.get(i, k);
  out.residual = v;
  for (int c = 0; c < k; ++c)
    for (int row = 0; row < n; ++row) out.residual[row] -= out.coordinates[c] * basis[c][row];
  out.member = std::all_of(out.residual.begin(), out.residual.end(), [](const Rational& x) { return is_zero(x); });
  return out;
}

int rank_of(const std::vector<RationalVector>& vectors, int dim) {
  return rref(RationalMatrix::from_dense(vectors, dim)).rank;
}

bool same_row_space(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.cols()) return false;
  return rref(a).reduced == rref(b).reduced;
}

}  // namespace natop
