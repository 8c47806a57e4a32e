#include "cfrit/frit.hpp"

#include <cmath>

#include "cfrit/errors.hpp"

namespace cfrit::frit {

namespace {

void check_dataset(const TuningDataset& ds) {
  if (ds.n == 0 || ds.N == 0) throw DimensionMismatch("dataset: n and N must be positive");
  if (ds.E.size() != ds.n * ds.N || ds.W.rows() != ds.n * ds.N || ds.W.cols() != ds.n) {
    throw DimensionMismatch("dataset: E must have nN entries and W must be nN x n");
  }
}

std::size_t factorial(std::size_t m) {
  std::size_t f = 1;
  for (std::size_t k = 2; k <= m; ++k) f *= k;
  return f;
}

}  // namespace

std::size_t term_count(std::size_t n, std::size_t N) {
  if (n == 0) throw DomainError("term_count: n must be positive");
  return factorial(n - 1) * n * n * N;
}

std::size_t term_index(const IndexTriplet& t, std::size_t n, std::size_t N) {
  if (t.k >= factorial(n - 1) || t.i >= n * N || t.l >= n) {
    throw DomainError("term_index: triplet out of range");
  }
  return t.k * n * n * N + t.i * n + t.l;
}

IndexTriplet term_triplet(std::size_t j, std::size_t n, std::size_t N) {
  if (j >= term_count(n, N)) throw DomainError("term_triplet: index out of range");
  const std::size_t block = n * n * N;
  const std::size_t rem = j % block;
  return {j / block, rem / n, rem % n};
}

TermExpansion::TermExpansion(const TuningDataset& ds)
    : ds_(ds), n_(ds.n), N_(ds.N), M_(0), det_(0.0) {
  check_dataset(ds_);
  if (n_ - 1 > linalg::kMaxPermutationOrder) throw DomainError("term expansion: n too large");
  M_ = frit::term_count(n_, N_);
  psi_ = linalg::gram(ds_.W);
  det_ = linalg::det_perm(psi_);
  if (det_ == 0.0 || !std::isfinite(det_)) throw DegenerateData("term expansion: det(W^T W) = 0");
  perms_ = linalg::permutations(n_ - 1);
  minors_.reserve(n_ * n_);
  for (std::size_t iota = 0; iota < n_; ++iota)
    for (std::size_t l = 0; l < n_; ++l) minors_.push_back(linalg::minor(psi_, iota, l));
}

void TermExpansion::fill_term(const IndexTriplet& t, std::size_t iota, TermFactors& out) const {
  if (iota >= n_) throw DomainError("term: output index out of range");
  out.j = term_index(t, n_, N_);
  out.iota = iota;
  out.factors.resize(n_ + 5);
  const Permutation& sigma = perms_[t.k];
  const Matrix& m = minor_for(t.l, iota);

  out.factors[kLeadingSign] = -1.0;
  out.factors[kFactorE] = ds_.E[t.i];
  out.factors[kFactorW] = ds_.W(t.i, t.l);
  out.factors[kFactorDetInv] = 1.0 / det_;
  out.factors[kFactorCofactorSign] = (t.l + iota) % 2 == 0 ? 1.0 : -1.0;
  out.factors[kFactorPermSign] = sigma.sign;
  for (std::size_t xi = 0; xi + 1 < n_; ++xi) {
    out.factors[kFirstMinorFactor + xi] = m(xi, sigma.mapping[xi]);
  }
  double v = 1.0;
  for (double f : out.factors) v *= f;
  out.value = v;
}

TermFactors TermExpansion::term(std::size_t j, std::size_t iota) const {
  TermFactors tf;
  fill_term(term_triplet(j, n_, N_), iota, tf);
  return tf;
}

FeedbackGain frit_gain(const TuningDataset& ds) {
  check_dataset(ds);
  const std::size_t n = ds.n;
  const Matrix psi = linalg::gram(ds.W);
  if (linalg::lambda_min(psi) <= 1e-12) throw DegenerateData("frit: W^T W is singular");

  const auto perms = linalg::permutations(n - 1);
  const double det = linalg::det_perm(psi);

  // g = E^T W
  std::vector<double> g(n, 0.0);
  for (std::size_t r = 0; r < ds.W.rows(); ++r)
    for (std::size_t l = 0; l < n; ++l) g[l] += ds.E[r] * ds.W(r, l);

  // F_iota = -sum_l g_l adj(Psi)_{l,iota} / det
  FeedbackGain f{std::vector<double>(n, 0.0)};
  for (std::size_t iota = 0; iota < n; ++iota) {
    double s = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      const double cof = ((l + iota) % 2 == 0 ? 1.0 : -1.0) *
                         linalg::det_perm(linalg::minor(psi, iota, l), perms);
      s += g[l] * cof;
    }
    f.F[iota] = -s / det;
  }
  return f;
}

double fictitious_objective(const TuningDataset& ds, const FeedbackGain& f) {
  check_dataset(ds);
  if (f.size() != ds.n) throw DimensionMismatch("objective: gain length differs from n");
  std::vector<double> r(ds.E);
  for (std::size_t row = 0; row < ds.W.rows(); ++row)
    for (std::size_t c = 0; c < ds.n; ++c) r[row] += ds.W(row, c) * f[c];
  return linalg::l2_norm(r);
}

}  // namespace cfrit::frit
