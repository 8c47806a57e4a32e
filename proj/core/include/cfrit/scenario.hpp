#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfrit/plantlab.hpp"

namespace cfrit {

// Reference values a scenario is expected to reproduce; checked by `cfrit verify`.
struct ReferenceValues {
  std::optional<double> e_max;
  std::optional<double> w_max;
  std::optional<double> lambda_min;
  double norm_tolerance = 5e-4;
  double w_max_tolerance = 5e-3;
  std::optional<unsigned> kappa_bar;
  unsigned kappa_tolerance = 1;
};

// Norms supplied in place of the data-derived ones (to reproduce rounded reference values).
struct InjectedNorms {
  double e_max = 0.0;
  double w_max = 0.0;
  double lambda_min = 0.0;
};

// Plant, initial gain, target closed loop, excitation and sample counts.
struct Scenario {
  std::string name;
  plant::Plant plant;
  plant::FeedbackGain f_ini;
  std::vector<plant::TransferFunction> h_star;
  std::vector<double> excitation;  // v(t), t = 0..steps-1
  std::size_t N = 0;
  std::size_t steps = 0;
  double epsilon = 1e-5;
  double sampling_period = 1.0;
  std::optional<InjectedNorms> injected_norms;
  std::optional<ReferenceValues> reference;

  void validate() const;
  plant::SignalLog simulate() const;
  plant::TuningDataset dataset() const;
};

// Throws ParseError with line/column context on malformed JSON or schema violations.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& s);

// Random stable n-state scenario whose target H* is the closed loop of a nearby
// gain; used for property tests and `cfrit verify`.
Scenario random_toy_scenario(std::uint64_t seed, std::size_t n = 2, std::size_t N = 6,
                             double epsilon = 1e-3);

}  // namespace cfrit
