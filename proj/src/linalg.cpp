#include "rank2/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rank2/laurent.hpp"

namespace rank2 {

ScalarSeries binomial_expansion(const std::string& center, const Scalar& shift, int k,
                                int order) {
  if (k >= 0) {
    // (t + d)^k = sum_m C(k, m) d^(k-m) t^m, a polynomial.
    std::vector<Scalar> coeffs;
    Scalar binom(1);
    for (int m = 0; m <= k; ++m) {
      Scalar power(1);
      for (int i = 0; i < k - m; ++i) power *= shift;
      coeffs.push_back(binom * power);
      binom = binom * Scalar(k - m) / Scalar(m + 1);
    }
    return ScalarSeries(center, 0, std::move(coeffs));
  }
  if (shift.is_zero()) throw DivisionByZero("binomial expansion of t^k with k < 0 around 0");
  if (order == kExactOrder) {
    throw InsufficientTruncation("negative-power binomial expansion needs a finite order");
  }
  // (t + d)^k = d^k sum_m C(k, m) (t/d)^m with C(k, m) the generalized binomial.
  std::vector<Scalar> coeffs;
  Scalar inv = shift.inverse();
  Scalar term(1);
  for (int i = 0; i < -k; ++i) term *= inv;
  for (int m = 0; m < order; ++m) {
    coeffs.push_back(term);
    term = term * Scalar(k - m) / Scalar(m + 1) * inv;
  }
  return ScalarSeries(center, 0, std::move(coeffs), order);
}

namespace {

// Row of a reduced system: a pivot constant and the form it is solved from.
struct PivotRow {
  int pivot;
  AffineForm form;  // coefficient of pivot is 1
};

AffineForm eliminate(AffineForm eq, const std::vector<PivotRow>& rows) {
  for (const auto& row : rows) {
    Scalar c = eq.coefficient(row.pivot);
    if (!c.is_zero()) eq -= row.form * c;
  }
  return eq;
}

}  // namespace

LinearVerdict solve_linear(std::span<const AffineForm> equations, std::span<const int> unknowns) {
  std::set<int> all(unknowns.begin(), unknowns.end());
  for (const auto& eq : equations) {
    for (const auto& [index, coeff] : eq.linear()) all.insert(index);
  }

  std::vector<PivotRow> rows;
  for (std::size_t i = 0; i < equations.size(); ++i) {
    AffineForm reduced = eliminate(equations[i], rows);
    if (reduced.is_constant()) {
      if (reduced.constant().is_zero()) continue;
      return Inconsistent{i, equations[i], reduced};
    }
    auto [pivot, coeff] = *reduced.linear().begin();
    reduced /= coeff;
    for (auto& row : rows) {
      Scalar c = row.form.coefficient(pivot);
      if (!c.is_zero()) row.form -= reduced * c;
    }
    rows.push_back({pivot, std::move(reduced)});
  }

  std::set<int> pivots;
  for (const auto& row : rows) pivots.insert(row.pivot);
  std::vector<int> free;
  ConstantAssignment zeros;
  for (int index : all) {
    if (!pivots.count(index)) {
      free.push_back(index);
      zeros.emplace(index, Scalar());
    }
  }

  // Fully reduced: each row reads C_pivot + sum(free terms) + constant = 0.
  ConstantAssignment values = zeros;
  for (const auto& row : rows) {
    values[row.pivot] = -row.form.substitute(zeros).coefficient(row.pivot).inverse() *
                        row.form.substitute(zeros).constant();
  }
  if (free.empty()) return UniqueSolution{std::move(values)};
  return Underdetermined{std::move(values), std::move(free)};
}

Scalar determinant(ScalarMatrix m) {
  if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Scalar(1);
  Scalar sign(1);
  Scalar prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k).is_zero()) ++swap;
      if (swap == n) return Scalar();
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = Scalar();
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

}  // namespace rank2
