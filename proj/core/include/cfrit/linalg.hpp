#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cfrit::linalg {

// Dense row-major matrix for the small systems FRIT works with.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> data() const { return data_; }

  Matrix transpose() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

// mapping[i] is the image of i (0-based); sign is +1 for even permutations.
struct Permutation {
  std::vector<std::size_t> mapping;
  int sign = 1;
};

inline constexpr std::size_t kMaxPermutationOrder = 8;

// All m! permutations in lexicographic order of mapping. m == 0 yields the single
// empty permutation. Throws DomainError for m > kMaxPermutationOrder.
std::vector<Permutation> permutations(std::size_t m);

// Symmetric-group expansion of the determinant. A 0x0 matrix has determinant 1.
double det_perm(const Matrix& x);
double det_perm(const Matrix& x, std::span<const Permutation> perms);

// Copy of x without row i and column j (0-based).
Matrix minor(const Matrix& x, std::size_t i, std::size_t j);

// W^T W.
Matrix gram(const Matrix& w);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // columns pair with values
};

// Cyclic Jacobi rotations until the off-diagonal norm is <= 1e-12 * max|S|.
// Throws DomainError if S is not symmetric within 1e-9.
SymmetricEigen jacobi_eigen(const Matrix& s);
double lambda_min(const Matrix& s);

double max_norm(const Matrix& m);
double max_norm(std::span<const double> v);
double l1_norm(std::span<const double> v);
double l2_norm(std::span<const double> v);

}  // namespace cfrit::linalg
