#include "cfrit/scenario.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "cfrit/errors.hpp"

namespace cfrit {

using nlohmann::json;

void Scenario::validate() const {
  plant.validate();
  const std::size_t n = plant.n();
  if (f_ini.size() != n) throw DimensionMismatch("scenario: F_ini length differs from n");
  if (h_star.size() != n) throw DimensionMismatch("scenario: need one H* per state");
  for (const auto& h : h_star) h.validate();
  if (N == 0) throw DomainError("scenario: N must be positive");
  if (steps < N) throw DomainError("scenario: steps must be >= N");
  if (excitation.size() < steps) throw DimensionMismatch("scenario: excitation shorter than steps");
  if (!(epsilon > 0.0)) throw DomainError("scenario: epsilon must be positive");
}

plant::SignalLog Scenario::simulate() const {
  validate();
  return plant::simulate(plant, f_ini, excitation, steps);
}

plant::TuningDataset Scenario::dataset() const {
  return plant::build_dataset(simulate(), h_star, N);
}

namespace {

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("scenario: missing field '") + key + "'");
  return j.at(key);
}

std::vector<double> numbers(const json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError("scenario: '" + what + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ParseError("scenario: '" + what + "' must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

linalg::Matrix matrix(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw ParseError("scenario: '" + what + "' must be a nested array");
  // A flat array is read as a column.
  if (!j.front().is_array()) {
    const auto col = numbers(j, what);
    linalg::Matrix m(col.size(), 1);
    for (std::size_t r = 0; r < col.size(); ++r) m(r, 0) = col[r];
    return m;
  }
  const std::size_t cols = j.front().size();
  linalg::Matrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const auto row = numbers(j[r], what);
    if (row.size() != cols) throw ParseError("scenario: '" + what + "' has ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

std::size_t count(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ParseError(std::string("scenario: '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double number(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number()) throw ParseError(std::string("scenario: '") + key + "' must be a number");
  return v.get<double>();
}

std::vector<double> excitation(const json& j, std::size_t steps) {
  if (j.is_array()) return numbers(j, "excitation");
  if (!j.is_object()) throw ParseError("scenario: 'excitation' must be an array or object");
  const auto type = field(j, "type");
  if (type != "pulse-window") {
    throw ParseError("scenario: unknown excitation type " + type.dump());
  }
  const std::size_t from = count(j, "on_from");
  const std::size_t to = count(j, "on_to");
  const double amp = number(j, "amplitude");
  std::vector<double> v(steps, 0.0);
  for (std::size_t t = from; t <= to && t < steps; ++t) v[t] = amp;
  return v;
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("scenario: malformed JSON at " + location(json_text, e.byte ? e.byte - 1 : 0) +
                     ": " + e.what());
  }
  if (!j.is_object()) throw ParseError("scenario: top level must be an object");

  Scenario s;
  s.name = j.value("name", std::string("unnamed"));
  s.plant.A = matrix(field(j, "A"), "A");
  s.plant.B = matrix(field(j, "B"), "B");
  s.f_ini.F = numbers(field(j, "F_ini"), "F_ini");
  const auto& hs = field(j, "H_star");
  if (!hs.is_array()) throw ParseError("scenario: 'H_star' must be an array");
  for (const auto& h : hs) {
    if (!h.is_object()) throw ParseError("scenario: H_star entries must be {num, den} objects");
    s.h_star.push_back({numbers(field(h, "num"), "H_star.num"), numbers(field(h, "den"), "H_star.den")});
  }
  s.N = count(j, "N");
  s.steps = j.contains("steps") ? count(j, "steps") : s.N;
  s.excitation = excitation(field(j, "excitation"), s.steps);
  if (j.contains("epsilon")) s.epsilon = number(j, "epsilon");
  if (j.contains("sampling_period")) s.sampling_period = number(j, "sampling_period");
  if (j.contains("injected_norms")) {
    const auto& in = j.at("injected_norms");
    s.injected_norms = InjectedNorms{number(in, "E_max"), number(in, "W_max"), number(in, "lambda_min")};
  }
  if (j.contains("reference")) {
    const auto& r = j.at("reference");
    ReferenceValues ref;
    if (r.contains("E_max")) ref.e_max = number(r, "E_max");
    if (r.contains("W_max")) ref.w_max = number(r, "W_max");
    if (r.contains("lambda_min")) ref.lambda_min = number(r, "lambda_min");
    if (r.contains("norm_tolerance")) ref.norm_tolerance = number(r, "norm_tolerance");
    if (r.contains("W_max_tolerance")) ref.w_max_tolerance = number(r, "W_max_tolerance");
    if (r.contains("kappa_bar")) ref.kappa_bar = static_cast<unsigned>(count(r, "kappa_bar"));
    if (r.contains("kappa_tolerance")) ref.kappa_tolerance = static_cast<unsigned>(count(r, "kappa_tolerance"));
    s.reference = ref;
  }

  try {
    s.validate();
  } catch (const std::exception& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open scenario file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_scenario(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  json a = json::array();
  for (std::size_t r = 0; r < s.plant.A.rows(); ++r) {
    const auto row = s.plant.A.row(r);
    a.push_back(std::vector<double>(row.begin(), row.end()));
  }
  j["A"] = a;
  json b = json::array();
  for (std::size_t r = 0; r < s.plant.B.rows(); ++r) b.push_back({s.plant.B(r, 0)});
  j["B"] = b;
  j["F_ini"] = s.f_ini.F;
  json hs = json::array();
  for (const auto& h : s.h_star) hs.push_back({{"num", h.num}, {"den", h.den}});
  j["H_star"] = hs;
  j["excitation"] = s.excitation;
  j["N"] = s.N;
  j["steps"] = s.steps;
  j["epsilon"] = s.epsilon;
  j["sampling_period"] = s.sampling_period;
  if (s.injected_norms) {
    j["injected_norms"] = {{"E_max", s.injected_norms->e_max},
                           {"W_max", s.injected_norms->w_max},
                           {"lambda_min", s.injected_norms->lambda_min}};
  }
  if (s.reference) {
    const auto& r = *s.reference;
    json ref = {{"norm_tolerance", r.norm_tolerance},
                {"W_max_tolerance", r.w_max_tolerance},
                {"kappa_tolerance", r.kappa_tolerance}};
    if (r.e_max) ref["E_max"] = *r.e_max;
    if (r.w_max) ref["W_max"] = *r.w_max;
    if (r.lambda_min) ref["lambda_min"] = *r.lambda_min;
    if (r.kappa_bar) ref["kappa_bar"] = *r.kappa_bar;
    j["reference"] = ref;
  }
  return j.dump(2);
}

Scenario random_toy_scenario(std::uint64_t seed, std::size_t n, std::size_t N, double epsilon) {
  if (n == 0 || N == 0) throw DomainError("toy scenario: n and N must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  Scenario s;
  s.name = "toy-" + std::to_string(seed);
  s.plant.A = linalg::Matrix(n, n);
  s.plant.B = linalg::Matrix(n, 1);
  const double a_scale = 0.6 / static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) s.plant.A(r, c) = a_scale * unit(rng);
    s.plant.B(r, 0) = 0.5 + 0.5 * std::fabs(unit(rng));
  }
  s.f_ini.F.resize(n);
  plant::FeedbackGain target{std::vector<double>(n)};
  for (std::size_t c = 0; c < n; ++c) {
    s.f_ini.F[c] = 0.2 * unit(rng);
    target.F[c] = s.f_ini.F[c] + 0.1 * unit(rng);
  }
  s.h_star = plant::closed_loop_transfer(s.plant, target);
  s.N = N;
  s.steps = N;
  s.excitation.resize(N);
  for (auto& v : s.excitation) v = unit(rng);
  s.epsilon = epsilon;
  return s;
}

}  // namespace cfrit
