#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cfrit::report {

// Recorded verbatim into every output file.
struct RunManifest {
  std::string command;
  std::string scenario_path;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
  std::map<std::string, std::string> overrides;
  std::string timestamp;  // empty in reproducible mode

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

std::string utc_timestamp();

struct OverflowSummary {
  bool theoretical = false;  // (q, gamma) outside Q
  bool observed = false;
  std::size_t count = 0;

  friend bool operator==(const OverflowSummary&, const OverflowSummary&) = default;
};

struct GainReport {
  RunManifest manifest;
  std::string mode;  // "frit" or "cfrit"
  std::vector<double> f_star;
  std::optional<std::vector<double>> f_e_star;
  std::optional<double> l2_deviation;
  double epsilon = 0.0;
  std::optional<double> gamma;
  std::optional<unsigned> kappa;
  std::size_t M = 0;
  std::optional<OverflowSummary> overflow;
  double wall_time = 0.0;

  friend bool operator==(const GainReport&, const GainReport&) = default;
};

struct DesignReport {
  RunManifest manifest;
  double gamma_bar = 0.0;
  unsigned kappa_bar = 0;
  double gamma_threshold = 0.0;
  unsigned q_bound_bits = 0;
  std::string q_bound;  // decimal
  bool in_gamma = false;
  bool in_q = false;
  double e_max = 0.0;
  double w_max = 0.0;
  double lambda_min = 0.0;
  std::size_t M = 0;

  friend bool operator==(const DesignReport&, const DesignReport&) = default;
};

std::string to_json(const RunManifest& m);
std::string to_json(const GainReport& r);
std::string to_json(const DesignReport& r);

RunManifest parse_manifest(std::string_view json_text);
GainReport parse_gain_report(std::string_view json_text);
DesignReport parse_design_report(std::string_view json_text);

}  // namespace cfrit::report
