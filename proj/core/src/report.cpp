#include "cfrit/report.hpp"

#include <chrono>
#include <ctime>

#include "cfrit/errors.hpp"
#include "json.hpp"

namespace cfrit::report {

using nlohmann::json;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

json manifest_to(const RunManifest& m) {
  return {{"command", m.command},   {"scenario", m.scenario_path}, {"seed", m.seed},
          {"outputs", m.outputs},   {"overrides", m.overrides},    {"timestamp", m.timestamp}};
}

RunManifest manifest_from(const json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.scenario_path = j.at("scenario").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  m.overrides = j.at("overrides").get<std::map<std::string, std::string>>();
  m.timestamp = j.at("timestamp").get<std::string>();
  return m;
}

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> opt_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

template <typename Fn>
auto parse_with(std::string_view text, const char* what, Fn&& fn) {
  try {
    return fn(json::parse(text));
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string to_json(const RunManifest& m) { return manifest_to(m).dump(); }

std::string to_json(const GainReport& r) {
  json j;
  j["mode"] = r.mode;
  j["F_star"] = r.f_star;
  j["F_E_star"] = opt(r.f_e_star);
  j["l2_deviation"] = opt(r.l2_deviation);
  j["epsilon"] = r.epsilon;
  j["gamma"] = opt(r.gamma);
  j["kappa"] = opt(r.kappa);
  j["M"] = r.M;
  if (r.overflow) {
    j["overflow"] = {{"theoretical", r.overflow->theoretical},
                     {"observed", r.overflow->observed},
                     {"count", r.overflow->count}};
  } else {
    j["overflow"] = nullptr;
  }
  j["wall_time"] = r.wall_time;
  j["manifest"] = manifest_to(r.manifest);
  return j.dump(2);
}

std::string to_json(const DesignReport& r) {
  json j;
  j["gamma_bar"] = r.gamma_bar;
  j["kappa_bar"] = r.kappa_bar;
  j["gamma_threshold"] = r.gamma_threshold;
  j["q_bound_bits"] = r.q_bound_bits;
  j["q_bound"] = r.q_bound;
  j["in_Gamma"] = r.in_gamma;
  j["in_Q"] = r.in_q;
  j["E_max"] = r.e_max;
  j["W_max"] = r.w_max;
  j["lambda_min"] = r.lambda_min;
  j["M"] = r.M;
  j["manifest"] = manifest_to(r.manifest);
  return j.dump(2);
}

RunManifest parse_manifest(std::string_view text) {
  return parse_with(text, "manifest", [](const json& j) { return manifest_from(j); });
}

GainReport parse_gain_report(std::string_view text) {
  return parse_with(text, "gain report", [](const json& j) {
    GainReport r;
    r.mode = j.at("mode").get<std::string>();
    r.f_star = j.at("F_star").get<std::vector<double>>();
    r.f_e_star = opt_from<std::vector<double>>(j, "F_E_star");
    r.l2_deviation = opt_from<double>(j, "l2_deviation");
    r.epsilon = j.at("epsilon").get<double>();
    r.gamma = opt_from<double>(j, "gamma");
    r.kappa = opt_from<unsigned>(j, "kappa");
    r.M = j.at("M").get<std::size_t>();
    if (const auto& o = j.at("overflow"); !o.is_null()) {
      r.overflow = OverflowSummary{o.at("theoretical").get<bool>(), o.at("observed").get<bool>(),
                                   o.at("count").get<std::size_t>()};
    }
    r.wall_time = j.at("wall_time").get<double>();
    r.manifest = manifest_from(j.at("manifest"));
    return r;
  });
}

DesignReport parse_design_report(std::string_view text) {
  return parse_with(text, "design report", [](const json& j) {
    DesignReport r;
    r.gamma_bar = j.at("gamma_bar").get<double>();
    r.kappa_bar = j.at("kappa_bar").get<unsigned>();
    r.gamma_threshold = j.at("gamma_threshold").get<double>();
    r.q_bound_bits = j.at("q_bound_bits").get<unsigned>();
    r.q_bound = j.at("q_bound").get<std::string>();
    r.in_gamma = j.at("in_Gamma").get<bool>();
    r.in_q = j.at("in_Q").get<bool>();
    r.e_max = j.at("E_max").get<double>();
    r.w_max = j.at("W_max").get<double>();
    r.lambda_min = j.at("lambda_min").get<double>();
    r.M = j.at("M").get<std::size_t>();
    r.manifest = manifest_from(j.at("manifest"));
    return r;
  });
}

}  // namespace cfrit::report
