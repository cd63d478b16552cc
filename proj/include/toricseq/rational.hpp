#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace toricseq {

using Rational = mpq_class;
using QVector = std::vector<Rational>;
/// Row-major.
using QMatrix = std::vector<QVector>;

QMatrix zero_matrix(size_t rows, size_t cols);

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<size_t> rref(QMatrix& m);
size_t rank(QMatrix m);
/// Basis of {x : m x = 0}, one vector per free column.
std::vector<QVector> kernel(QMatrix m, size_t cols);
/// Rank of a set of vectors of equal length.
size_t span_rank(const std::vector<QVector>& vectors);

QVector apply(const QMatrix& m, const QVector& x);

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

}  // namespace toricseq
