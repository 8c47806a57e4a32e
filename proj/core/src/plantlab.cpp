#include "cfrit/plantlab.hpp"

#include <cmath>
#include <string>

#include "cfrit/errors.hpp"

namespace cfrit::plant {

void Plant::validate() const {
  if (A.rows() == 0 || !A.square()) throw DimensionMismatch("plant: A must be square, n >= 1");
  if (B.rows() != A.rows() || B.cols() != 1) throw DimensionMismatch("plant: B must be n x 1");
}

void TransferFunction::validate() const {
  if (den.empty() || den.front() == 0.0) {
    throw DomainError("transfer function: leading denominator coefficient is zero");
  }
  if (num.empty() || num.size() > den.size()) {
    throw DomainError("transfer function: numerator degree exceeds denominator degree");
  }
}

SignalLog simulate(const Plant& plant, const FeedbackGain& f, std::span<const double> v,
                   std::size_t steps) {
  plant.validate();
  const std::size_t n = plant.n();
  if (f.size() != n) throw DimensionMismatch("simulate: gain length differs from state size");
  if (v.size() < steps) throw DimensionMismatch("simulate: excitation shorter than run");

  SignalLog log;
  log.x.assign(steps, std::vector<double>(n, 0.0));
  log.u.assign(steps, 0.0);
  log.v.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(steps));
  for (std::size_t t = 0; t < steps; ++t) {
    const auto& x = log.x[t];
    double u = log.v[t];
    for (std::size_t c = 0; c < n; ++c) u += f[c] * x[c];
    log.u[t] = u;
    if (t + 1 == steps) break;
    auto& next = log.x[t + 1];
    for (std::size_t r = 0; r < n; ++r) {
      double s = plant.B(r, 0) * u;
      for (std::size_t c = 0; c < n; ++c) s += plant.A(r, c) * x[c];
      next[r] = s;
    }
  }
  return log;
}

std::vector<double> filter(const TransferFunction& tf, std::span<const double> s) {
  tf.validate();
  const std::size_t d = tf.den.size() - 1;
  const std::size_t delay = tf.den.size() - tf.num.size();
  const double a0 = tf.den.front();
  std::vector<double> y(s.size(), 0.0);
  for (std::size_t t = 0; t < s.size(); ++t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < tf.num.size(); ++i) {
      const std::size_t lag = delay + i;
      if (lag <= t) acc += tf.num[i] * s[t - lag];
    }
    for (std::size_t i = 1; i <= d && i <= t; ++i) acc -= tf.den[i] * y[t - i];
    y[t] = acc / a0;
  }
  return y;
}

TuningDataset build_dataset(const SignalLog& log, std::span<const TransferFunction> hstar,
                            std::size_t N) {
  if (log.x.empty()) throw DimensionMismatch("build_dataset: empty log");
  const std::size_t n = log.x.front().size();
  if (hstar.size() != n) throw DimensionMismatch("build_dataset: need one H* per state");
  if (N == 0 || log.steps() < N || log.x.size() < N) {
    throw DimensionMismatch("build_dataset: log has fewer than N samples");
  }

  std::vector<std::vector<double>> states(n, std::vector<double>(log.x.size()));
  for (std::size_t t = 0; t < log.x.size(); ++t)
    for (std::size_t c = 0; c < n; ++c) states[c][t] = log.x[t][c];

  TuningDataset ds{std::vector<double>(n * N), Matrix(n * N, n), n, N};
  for (std::size_t j = 0; j < n; ++j) {
    const auto hu = filter(hstar[j], log.u);
    for (std::size_t t = 0; t < N; ++t) ds.E[j * N + t] = log.x[t][j] - hu[t];
    for (std::size_t c = 0; c < n; ++c) {
      const auto hx = filter(hstar[j], states[c]);
      for (std::size_t t = 0; t < N; ++t) ds.W(j * N + t, c) = hx[t];
    }
  }
  return ds;
}

std::vector<TransferFunction> closed_loop_transfer(const Plant& plant, const FeedbackGain& f) {
  plant.validate();
  const std::size_t n = plant.n();
  if (f.size() != n) throw DimensionMismatch("closed_loop_transfer: gain length");
  Matrix acl = plant.A;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) acl(r, c) += plant.B(r, 0) * f[c];

  // Faddeev-LeVerrier: adj(zI - A) = sum_k M_k z^(n-k), det(zI - A) = sum_k c_k z^(n-k).
  std::vector<double> den(n + 1, 0.0);
  den[0] = 1.0;
  std::vector<Matrix> mk;
  Matrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = acl * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += den[k - 1];
    mk.push_back(m);
    const Matrix am = acl * m;
    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    den[k] = -tr / static_cast<double>(k);
  }

  std::vector<TransferFunction> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].den = den;
    out[i].num.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      double s = 0.0;
      for (std::size_t c = 0; c < n; ++c) s += mk[k](i, c) * plant.B(c, 0);
      out[i].num[k] = s;
    }
  }
  return out;
}

}  // namespace cfrit::plant
