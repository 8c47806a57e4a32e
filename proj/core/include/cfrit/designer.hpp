#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "cfrit/cfrit.hpp"
#include "cfrit/modmath.hpp"
#include "cfrit/plantlab.hpp"
#include "cfrit/scenario.hpp"

namespace cfrit::design {

struct DesignSpec {
  double epsilon = 0.0;
  std::size_t n = 0;
  std::size_t N = 0;
  std::size_t M = 0;
  double e_max = 0.0;
  double w_max = 0.0;
  double lambda_min = 0.0;

  // Norms and lambda_min(W^T W) computed from the data.
  static DesignSpec from_dataset(const plant::TuningDataset& ds, double epsilon);
  void validate() const;
};

struct DesignResult {
  double gamma_bar = 0.0;
  unsigned kappa_bar = 0;
  double gamma_threshold = 0.0;
  BigInt q_bound;
  bool in_gamma = false;
  bool in_q = false;

  unsigned q_bound_bits() const { return modmath::bit_length(q_bound); }
};

// Mn / epsilon, with epsilon read as the shortest decimal that round-trips to it
// and the quotient rounded to nearest.
double gamma_lower_bound(const DesignSpec& spec);

// round_pos(gamma^(n+5) E_max W_max / lambda_min), evaluated exactly.
BigInt q_requirement(const DesignSpec& spec, double gamma);

// q - bound > 1/2 for integers.
inline bool in_q(const BigInt& q, const BigInt& bound) { return q > bound; }

// Smallest kappa whose largest safe q exceeds q_requirement(spec, gamma).
unsigned choose_kappa(const DesignSpec& spec, double gamma);

struct ProcedureOptions {
  std::optional<double> epsilon;
  std::optional<double> gamma;
  std::optional<unsigned> kappa;
  bool use_injected_norms = false;
  bool execute = true;  // false: stop after choosing (gamma, kappa)
  std::uint64_t seed = 0;
  confidential::CfritOptions cfrit;
};

struct ProcedureOutcome {
  DesignSpec spec;
  DesignResult design;
  plant::TuningDataset dataset;
  plant::FeedbackGain f_star;
  std::optional<confidential::CfritResult> encrypted;
  double l2_deviation = 0.0;
  double wall_seconds = 0.0;
};

// Simulate, build (E, W), take norms and lambda_min, pick gamma_bar then kappa_bar, run CFRIT.
// Without overrides the result is checked to satisfy in_gamma && in_q.
ProcedureOutcome run_procedure(const Scenario& scenario, const ProcedureOptions& options);

}  // namespace cfrit::design
