#include "cfrit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cfrit/errors.hpp"

namespace cfrit::linalg {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("Matrix product: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

std::vector<Permutation> permutations(std::size_t m) {
  if (m > kMaxPermutationOrder) {
    throw DomainError("permutations: order " + std::to_string(m) + " exceeds " +
                      std::to_string(kMaxPermutationOrder));
  }
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Permutation> out;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) inversions += perm[i] > perm[j];
    out.push_back({perm, inversions % 2 == 0 ? 1 : -1});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

double det_perm(const Matrix& x, std::span<const Permutation> perms) {
  if (!x.square()) throw DimensionMismatch("det_perm: matrix is not square");
  double det = 0.0;
  for (const auto& p : perms) {
    if (p.mapping.size() != x.rows()) throw DimensionMismatch("det_perm: permutation order");
    double prod = p.sign;
    for (std::size_t i = 0; i < x.rows(); ++i) prod *= x(i, p.mapping[i]);
    det += prod;
  }
  return det;
}

double det_perm(const Matrix& x) {
  if (!x.square()) throw DimensionMismatch("det_perm: matrix is not square");
  return det_perm(x, permutations(x.rows()));
}

Matrix minor(const Matrix& x, std::size_t i, std::size_t j) {
  if (i >= x.rows() || j >= x.cols()) throw DomainError("minor: index out of range");
  Matrix m(x.rows() - 1, x.cols() - 1);
  for (std::size_t r = 0, mr = 0; r < x.rows(); ++r) {
    if (r == i) continue;
    for (std::size_t c = 0, mc = 0; c < x.cols(); ++c) {
      if (c == j) continue;
      m(mr, mc++) = x(r, c);
    }
    ++mr;
  }
  return m;
}

Matrix gram(const Matrix& w) {
  const std::size_t n = w.cols();
  Matrix g(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      double s = 0.0;
      for (std::size_t r = 0; r < w.rows(); ++r) s += w(r, a) * w(r, b);
      g(a, b) = s;
      g(b, a) = s;
    }
  return g;
}

SymmetricEigen jacobi_eigen(const Matrix& s) {
  if (!s.square()) throw DimensionMismatch("jacobi_eigen: matrix is not square");
  const std::size_t n = s.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::fabs(s(i, j) - s(j, i)) > 1e-9) throw DomainError("jacobi_eigen: not symmetric");

  Matrix a = s;
  Matrix v = Matrix::identity(n);
  const double tol = 1e-12 * max_norm(s);
  auto off_norm = [&] {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) sum += a(i, j) * a(i, j);
    return std::sqrt(sum);
  };

  for (int sweep = 0; sweep < 100 && off_norm() > tol; ++sweep) {
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a(x, x) < a(y, y); });
  SymmetricEigen out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

double lambda_min(const Matrix& s) {
  if (s.rows() == 0) throw DimensionMismatch("lambda_min: empty matrix");
  return jacobi_eigen(s).values.front();
}

double max_norm(const Matrix& m) { return max_norm(m.data()); }

double max_norm(std::span<const double> v) {
  double mx = 0.0;
  for (double x : v) mx = std::max(mx, std::fabs(x));
  return mx;
}

double l1_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::fabs(x);
  return s;
}

double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace cfrit::linalg
