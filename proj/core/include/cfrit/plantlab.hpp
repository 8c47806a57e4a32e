#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cfrit/linalg.hpp"

namespace cfrit::plant {

using linalg::Matrix;

// x(t+1) = A x(t) + B u(t), single input.
struct Plant {
  Matrix A;
  Matrix B;  // n x 1

  std::size_t n() const { return A.rows(); }
  void validate() const;
};

// Row gain for u(t) = F x(t) + v(t).
struct FeedbackGain {
  std::vector<double> F;

  std::size_t size() const { return F.size(); }
  double operator[](std::size_t i) const { return F[i]; }
};

// Coefficients in descending powers of z.
struct TransferFunction {
  std::vector<double> num;
  std::vector<double> den;

  void validate() const;
};

struct SignalLog {
  std::vector<std::vector<double>> x;  // x[t] is the state at step t
  std::vector<double> u;
  std::vector<double> v;

  std::size_t steps() const { return u.size(); }
};

// Stacked e_j blocks (length nN) and w_j blocks (nN x n), j = 1..n.
struct TuningDataset {
  std::vector<double> E;
  Matrix W;
  std::size_t n = 0;
  std::size_t N = 0;
};

// Closed-loop run from x(0) = 0: x(t+1) = (A + BF) x(t) + B v(t), u(t) = F x(t) + v(t).
SignalLog simulate(const Plant& plant, const FeedbackGain& f, std::span<const double> v,
                   std::size_t steps);

// Causal difference equation with zero initial conditions; the numerator is
// delayed by the relative degree.
std::vector<double> filter(const TransferFunction& tf, std::span<const double> s);

// e_j(t) = x_j(t) - (H*_j u)(t), row t of w_j = (H*_j x)(t)^T, for t = 0..N-1.
TuningDataset build_dataset(const SignalLog& log, std::span<const TransferFunction> hstar,
                            std::size_t N);

// Per-state transfer functions of (zI - A - BF)^{-1} B (Faddeev-LeVerrier).
std::vector<TransferFunction> closed_loop_transfer(const Plant& plant, const FeedbackGain& f);

}  // namespace cfrit::plant
