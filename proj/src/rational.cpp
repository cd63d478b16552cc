#include "toricseq/rational.hpp"

#include "toricseq/core.hpp"

namespace toricseq {

QMatrix zero_matrix(size_t rows, size_t cols) { return QMatrix(rows, QVector(cols, Rational(0))); }

std::vector<size_t> rref(QMatrix& m) {
  std::vector<size_t> pivots;
  if (m.empty()) return pivots;
  const size_t rows = m.size(), cols = m.front().size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

size_t rank(QMatrix m) { return rref(m).size(); }

std::vector<QVector> kernel(QMatrix m, size_t cols) {
  for (const auto& row : m)
    if (row.size() != cols) throw InvalidInput("matrix row length mismatch");
  const std::vector<size_t> pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVector v(cols, Rational(0));
    v[f] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

size_t span_rank(const std::vector<QVector>& vectors) {
  if (vectors.empty()) return 0;
  return rank(vectors);
}

QVector apply(const QMatrix& m, const QVector& x) {
  QVector y(m.size(), Rational(0));
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != x.size()) throw InvalidInput("dimension mismatch in matrix-vector product");
    for (size_t j = 0; j < x.size(); ++j) y[i] += m[i][j] * x[j];
  }
  return y;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational q;
  try {
    q = Rational(text, 10);
  } catch (const std::invalid_argument&) {
    throw InvalidInput("not a rational number: '" + text + "'");
  }
  if (q.get_den() == 0) throw InvalidInput("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

}  // namespace toricseq
