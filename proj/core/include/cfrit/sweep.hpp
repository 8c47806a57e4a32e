#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfrit/cfrit.hpp"
#include "cfrit/plantlab.hpp"

namespace cfrit::sweep {

enum class PointClass {
  feasible_blue,
  accurate_unproven_yellow,
  above_eps_magenta,
  overflow_red,
};

std::string_view class_name(PointClass c);

struct SweepGrid {
  std::vector<unsigned> kappa_values;
  std::vector<double> gamma_values;
  double epsilon = 1e-5;
  std::uint64_t seed = 0;

  std::size_t size() const { return kappa_values.size() * gamma_values.size(); }
  void validate() const;
};

struct SweepRecord {
  unsigned kappa = 0;
  double gamma = 0.0;
  double error = 0.0;  // ||F*_E - F*||_2, +inf when the point failed
  bool theory_ok = false;
  bool observed_overflow = false;
  PointClass cls = PointClass::overflow_red;
  double wall_ms = 0.0;
};

// Red on observed overflow; otherwise blue/yellow (error <= eps, theory ok or not)
// or magenta (error > eps).
PointClass classify(bool theory_ok, bool observed_overflow, double error, double epsilon);

std::vector<double> log_spaced(double lo, double hi, std::size_t count);
std::vector<double> linear_spaced(double lo, double hi, std::size_t count);
std::vector<unsigned> kappa_range(unsigned lo, unsigned hi, unsigned step);

// kappa in {250, 255, ..., 300} x 11 gammas in [1.92e5, 1.92e10].
SweepGrid desk_grid(double epsilon, std::uint64_t seed, bool linear_gamma = false);
// kappa in {250, ..., 300} x 51 gammas over the same range.
SweepGrid full_grid(double epsilon, std::uint64_t seed, bool linear_gamma = false);

struct SweepOptions {
  unsigned threads = 1;
  confidential::CfritOptions cfrit;
  std::function<void(const SweepRecord&)> on_point;  // called once per finished point
};

// One CFRIT run per grid point, kappa-major order. Each point draws keys and
// encryption randomness from derive_seed(seed, {kappa index, gamma index}).
std::vector<SweepRecord> run_sweep(const plant::TuningDataset& ds, const SweepGrid& grid,
                                   const SweepOptions& options = {});

// Header "kappa,gamma,error_l2,theory_ok,observed_overflow,class,wall_ms"; the
// manifest lines, if any, precede it as '#' comments.
void write_csv(std::ostream& os, std::span<const SweepRecord> records,
               std::string_view manifest_json = {});
std::vector<SweepRecord> read_csv(std::istream& is);

// Python/matplotlib script plotting the kappa-log10(gamma) plane by class.
std::string plot_script(std::string_view csv_path, double epsilon);

}  // namespace cfrit::sweep
