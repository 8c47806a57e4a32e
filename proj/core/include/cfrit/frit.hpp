#pragma once

#include <cstddef>
#include <vector>

#include "cfrit/linalg.hpp"
#include "cfrit/plantlab.hpp"

namespace cfrit::frit {

using linalg::Matrix;
using linalg::Permutation;
using plant::FeedbackGain;
using plant::TuningDataset;

// Zero-based (k, i, l): permutation block, row of E/W, column of W.
struct IndexTriplet {
  std::size_t k = 0;
  std::size_t i = 0;
  std::size_t l = 0;

  friend bool operator==(const IndexTriplet&, const IndexTriplet&) = default;
};

// Zero-based j = k n^2 N + i n + l, a bijection onto [0, M).
std::size_t term_index(const IndexTriplet& t, std::size_t n, std::size_t N);
IndexTriplet term_triplet(std::size_t j, std::size_t n, std::size_t N);

// M = (n-1)! n^2 N.
std::size_t term_count(std::size_t n, std::size_t N);

// One multiplicative term of F*_iota:
//   [-1, E_i, W_il, det(Psi)^-1, (-1)^(l+iota), sgn(sigma_k), m_{xi, sigma_k(xi)} ...]
// where m is Psi with row iota and column l removed. value is the product.
struct TermFactors {
  std::size_t j = 0;
  std::size_t iota = 0;
  std::vector<double> factors;
  double value = 0.0;
};

inline constexpr std::size_t kLeadingSign = 0;
inline constexpr std::size_t kFactorE = 1;
inline constexpr std::size_t kFactorW = 2;
inline constexpr std::size_t kFactorDetInv = 3;
inline constexpr std::size_t kFactorCofactorSign = 4;
inline constexpr std::size_t kFactorPermSign = 5;
inline constexpr std::size_t kFirstMinorFactor = 6;

// Precomputed gram matrix, determinant, minors and permutations; terms are
// generated on demand so M never has to be materialized.
class TermExpansion {
 public:
  explicit TermExpansion(const TuningDataset& ds);

  std::size_t n() const { return n_; }
  std::size_t N() const { return N_; }
  std::size_t term_count() const { return M_; }
  std::size_t block_count() const { return perms_.size(); }
  std::size_t factor_count() const { return n_ + 5; }

  const TuningDataset& dataset() const { return ds_; }
  const Matrix& psi() const { return psi_; }
  double det() const { return det_; }
  const Permutation& permutation(std::size_t k) const { return perms_[k]; }
  // Psi without row iota and column l.
  const Matrix& minor_for(std::size_t l, std::size_t iota) const { return minors_[iota * n_ + l]; }

  TermFactors term(std::size_t j, std::size_t iota) const;
  void fill_term(const IndexTriplet& t, std::size_t iota, TermFactors& out) const;

  // Visits the terms of F*_iota in ascending j.
  template <typename Fn>
  void for_each_term(std::size_t iota, Fn&& fn) const {
    TermFactors tf;
    for (std::size_t k = 0; k < block_count(); ++k) for_each_in_block(k, iota, fn, tf);
  }

  // Visits the terms with permutation index k, ascending j.
  template <typename Fn>
  void for_each_in_block(std::size_t k, std::size_t iota, Fn&& fn) const {
    TermFactors tf;
    for_each_in_block(k, iota, fn, tf);
  }

 private:
  template <typename Fn>
  void for_each_in_block(std::size_t k, std::size_t iota, Fn& fn, TermFactors& tf) const {
    const std::size_t rows = n_ * N_;
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t l = 0; l < n_; ++l) {
        fill_term({k, i, l}, iota, tf);
        fn(static_cast<const TermFactors&>(tf));
      }
    }
  }

  TuningDataset ds_;
  std::size_t n_;
  std::size_t N_;
  std::size_t M_;
  Matrix psi_;
  double det_;
  std::vector<Permutation> perms_;
  std::vector<Matrix> minors_;
};

// F* = -E^T W (W^T W)^{-1}, inverse via adjugate over the permutation determinant.
// Throws DegenerateData when lambda_min(W^T W) <= 1e-12.
FeedbackGain frit_gain(const TuningDataset& ds);

// J(F) = || E + W F^T ||_2.
double fictitious_objective(const TuningDataset& ds, const FeedbackGain& f);

}  // namespace cfrit::frit
