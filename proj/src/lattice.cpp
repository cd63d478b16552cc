#include "toricseq/lattice.hpp"

#include <cstdlib>
#include <utility>

namespace toricseq {

IntMatrix identity_matrix(size_t n) {
  IntMatrix m(n, IntVec(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const size_t rows = a.size();
  const size_t inner = b.size();
  const size_t cols = inner ? b[0].size() : 0;
  IntMatrix c(rows, IntVec(cols, 0));
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < cols; ++j) c[i][j] = checked_add(c[i][j], checked_mul(a[i][k], b[k][j]));
    }
  return c;
}

namespace {

// Row op: row[dst] += k * row[src], mirrored on the left transform.
void add_row(IntMatrix& m, size_t dst, size_t src, Int k) {
  for (size_t j = 0; j < m[dst].size(); ++j) m[dst][j] = checked_add(m[dst][j], checked_mul(k, m[src][j]));
}

void add_col(IntMatrix& m, size_t dst, size_t src, Int k) {
  for (auto& row : m) row[dst] = checked_add(row[dst], checked_mul(k, row[src]));
}

void swap_cols(IntMatrix& m, size_t i, size_t j) {
  for (auto& row : m) std::swap(row[i], row[j]);
}

void negate_row(IntMatrix& m, size_t i) {
  for (Int& x : m[i]) x = -x;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  SmithForm s{identity_matrix(rows), identity_matrix(cols), m, {}};
  IntMatrix& d = s.d;

  for (size_t k = 0; k < std::min(rows, cols); ++k) {
    // Pivot: smallest nonzero absolute value in the trailing block.
    for (;;) {
      size_t pr = rows, pc = cols;
      for (size_t i = k; i < rows; ++i)
        for (size_t j = k; j < cols; ++j)
          if (d[i][j] != 0 && (pr == rows || std::llabs(d[i][j]) < std::llabs(d[pr][pc]))) {
            pr = i;
            pc = j;
          }
      if (pr == rows) return s;  // remaining block is zero
      std::swap(d[k], d[pr]);
      std::swap(s.u[k], s.u[pr]);
      swap_cols(d, k, pc);
      swap_cols(s.v, k, pc);

      bool clean = true;
      for (size_t i = k + 1; i < rows; ++i) {
        const Int q = floor_div(d[i][k], d[k][k]);
        if (q != 0) {
          add_row(d, i, k, -q);
          add_row(s.u, i, k, -q);
        }
        if (d[i][k] != 0) clean = false;
      }
      for (size_t j = k + 1; j < cols; ++j) {
        const Int q = floor_div(d[k][j], d[k][k]);
        if (q != 0) {
          add_col(d, j, k, -q);
          add_col(s.v, j, k, -q);
        }
        if (d[k][j] != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold any entry not divisible by the pivot into row k.
      bool divisible = true;
      for (size_t i = k + 1; i < rows && divisible; ++i)
        for (size_t j = k + 1; j < cols; ++j)
          if (d[i][j] % d[k][k] != 0) {
            add_row(d, k, i, 1);
            add_row(s.u, k, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (d[k][k] < 0) {
      negate_row(d, k);
      negate_row(s.u, k);
    }
    s.invariant_factors.push_back(d[k][k]);
  }
  return s;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  const size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw InternalError("unimodular_inverse: matrix is not square");
  // U M V = D = I  =>  M^{-1} = V U.
  SmithForm s = smith_normal_form(m);
  if (s.invariant_factors.size() != n) throw InternalError("unimodular_inverse: singular matrix");
  for (Int f : s.invariant_factors)
    if (f != 1) throw InternalError("unimodular_inverse: determinant is not +-1");
  return multiply(s.v, s.u);
}

}  // namespace toricseq
