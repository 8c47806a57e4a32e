#include "cfrit/designer.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <string>
#include <cmath>

#include "cfrit/errors.hpp"
#include "cfrit/frit.hpp"

namespace cfrit::design {

DesignSpec DesignSpec::from_dataset(const plant::TuningDataset& ds, double epsilon) {
  DesignSpec s;
  s.epsilon = epsilon;
  s.n = ds.n;
  s.N = ds.N;
  s.M = frit::term_count(ds.n, ds.N);
  s.e_max = linalg::max_norm(ds.E);
  s.w_max = linalg::max_norm(ds.W);
  s.lambda_min = linalg::lambda_min(linalg::gram(ds.W));
  return s;
}

void DesignSpec::validate() const {
  if (!(epsilon > 0.0)) throw DomainError("design: epsilon must be positive");
  if (n == 0 || N == 0 || M == 0) throw DomainError("design: n, N and M must be positive");
  if (!(e_max > 0.0) || !(w_max > 0.0) || !(lambda_min > 0.0)) {
    throw DomainError("design: norms and lambda_min must be positive");
  }
}

namespace {

// The shortest decimal that round-trips to x, as an exact rational. A tolerance
// typed as 1e-5 then means 10^-5 rather than its binary64 neighbour.
mpq_class decimal_value(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific);
  const std::string text(buf, res.ptr);
  const auto e = text.find('e');
  std::string digits = text.substr(0, e);
  long exp10 = std::stol(text.substr(e + 1));
  if (const auto dot = digits.find('.'); dot != std::string::npos) {
    exp10 -= static_cast<long>(digits.size() - dot - 1);
    digits.erase(dot, 1);
  }
  mpq_class q{BigInt(digits)};
  BigInt pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
  if (exp10 >= 0) {
    q *= pow10;
  } else {
    q /= pow10;
  }
  q.canonicalize();
  return q;
}

// Correctly rounded conversion (ties away from zero are irrelevant here).
double nearest_double(const mpq_class& x) {
  const double d = x.get_d();
  double best = d;
  mpq_class best_err = abs(x - mpq_class(d));
  for (double c : {std::nextafter(d, -HUGE_VAL), std::nextafter(d, HUGE_VAL)}) {
    const mpq_class err = abs(x - mpq_class(c));
    if (err < best_err) {
      best = c;
      best_err = err;
    }
  }
  return best;
}

}  // namespace

double gamma_lower_bound(const DesignSpec& spec) {
  if (!(spec.epsilon > 0.0) || std::isinf(spec.epsilon)) {
    throw DomainError("gamma_lower_bound: epsilon must be positive");
  }
  const mpq_class mn{BigInt(std::to_string(spec.M)) * BigInt(std::to_string(spec.n))};
  return nearest_double(mpq_class(mn / decimal_value(spec.epsilon)));
}

BigInt q_requirement(const DesignSpec& spec, double gamma) {
  if (!(gamma >= 1.0) || std::isinf(gamma)) throw DomainError("q_requirement: gamma must be >= 1");
  spec.validate();
  // Exact rational arithmetic on the binary64 inputs.
  const mpq_class g(gamma);
  mpq_class x(1);
  for (std::size_t k = 0; k < spec.n + 5; ++k) x *= g;
  x *= mpq_class(spec.e_max);
  x *= mpq_class(spec.w_max);
  x /= mpq_class(spec.lambda_min);
  if (x < mpq_class(1, 2)) return 1;
  x += mpq_class(1, 2);
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

unsigned choose_kappa(const DesignSpec& spec, double gamma) {
  const BigInt bound = q_requirement(spec, gamma);
  // A kappa-bit q is below 2^kappa, so fewer bits than the bound can never work.
  for (unsigned kappa = std::max(3u, modmath::bit_length(bound));; ++kappa) {
    if (in_q(modmath::largest_safe_q(kappa).q, bound)) return kappa;
  }
}

ProcedureOutcome run_procedure(const Scenario& scenario, const ProcedureOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  scenario.validate();

  ProcedureOutcome out;
  out.dataset = scenario.dataset();
  out.spec = DesignSpec::from_dataset(out.dataset, options.epsilon.value_or(scenario.epsilon));
  if (options.use_injected_norms) {
    if (!scenario.injected_norms) throw DomainError("scenario has no injected norms");
    out.spec.e_max = scenario.injected_norms->e_max;
    out.spec.w_max = scenario.injected_norms->w_max;
    out.spec.lambda_min = scenario.injected_norms->lambda_min;
  }
  out.spec.validate();

  auto& d = out.design;
  d.gamma_threshold = gamma_lower_bound(out.spec);
  d.gamma_bar = options.gamma.value_or(d.gamma_threshold);
  d.q_bound = q_requirement(out.spec, d.gamma_bar);
  d.kappa_bar = options.kappa ? *options.kappa : choose_kappa(out.spec, d.gamma_bar);
  const auto primes = modmath::largest_safe_q(d.kappa_bar);
  d.in_gamma = d.gamma_bar >= d.gamma_threshold;
  d.in_q = in_q(primes.q, d.q_bound);
  if (!options.gamma && !options.kappa && !(d.in_gamma && d.in_q)) {
    throw DomainError("design: chosen (gamma, kappa) outside Gamma x Q");
  }

  out.f_star = frit::frit_gain(out.dataset);
  if (options.execute) {
    SeededRandom rng(options.seed);
    const auto keys = elgamal::gen(d.kappa_bar, rng);
    const codec::QuantizationConfig cfg{d.gamma_bar, primes};
    out.encrypted = confidential::cfrit_gain(out.dataset, cfg, keys, rng, options.cfrit);
    std::vector<double> diff(out.f_star.F);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = out.encrypted->gain.F[i] - diff[i];
    out.l2_deviation = linalg::l2_norm(diff);
  }
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace cfrit::design
