#include "cfrit/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>

#include "cfrit/designer.hpp"
#include "cfrit/elgamal.hpp"
#include "cfrit/errors.hpp"
#include "cfrit/frit.hpp"
#include "parallel.hpp"

namespace cfrit::sweep {

namespace {

constexpr std::string_view kNames[] = {
    "feasible-blue",
    "accurate-but-unproven-yellow",
    "no-overflow-above-eps-magenta",
    "overflow-red",
};

constexpr double kGammaLo = 1.92e5;
constexpr double kGammaHi = 1.92e10;

std::string fmt17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string_view class_name(PointClass c) { return kNames[static_cast<int>(c)]; }

void SweepGrid::validate() const {
  if (kappa_values.empty() || gamma_values.empty()) throw DomainError("sweep grid is empty");
  for (unsigned k : kappa_values)
    if (k < 3) throw DomainError("sweep grid: kappa must be >= 3");
  for (double g : gamma_values)
    if (!(g >= 1.0) || std::isinf(g)) throw DomainError("sweep grid: gamma must be >= 1");
  if (!(epsilon > 0.0)) throw DomainError("sweep grid: epsilon must be positive");
}

PointClass classify(bool theory_ok, bool observed_overflow, double error, double epsilon) {
  if (observed_overflow) return PointClass::overflow_red;
  if (error <= epsilon) {
    return theory_ok ? PointClass::feasible_blue : PointClass::accurate_unproven_yellow;
  }
  return PointClass::above_eps_magenta;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) throw DomainError("log_spaced: bad range");
  if (count == 1) return {lo};
  const double step = std::log10(hi / lo) / static_cast<double>(count - 1);
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    double v = lo * std::pow(10.0, step * static_cast<double>(i));
    // Snap values such as 1.92e9 that should be exact integers.
    const double r = std::round(v);
    if (std::fabs(v - r) <= 1e-12 * v) v = r;
    out[i] = v;
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> linear_spaced(double lo, double hi, std::size_t count) {
  if (!(hi >= lo) || count == 0) throw DomainError("linear_spaced: bad range");
  if (count == 1) return {lo};
  std::vector<double> out(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

std::vector<unsigned> kappa_range(unsigned lo, unsigned hi, unsigned step) {
  if (step == 0 || hi < lo) throw DomainError("kappa_range: bad range");
  std::vector<unsigned> out;
  for (unsigned k = lo; k <= hi; k += step) out.push_back(k);
  return out;
}

SweepGrid desk_grid(double epsilon, std::uint64_t seed, bool linear_gamma) {
  return {kappa_range(250, 300, 5),
          linear_gamma ? linear_spaced(kGammaLo, kGammaHi, 11) : log_spaced(kGammaLo, kGammaHi, 11),
          epsilon, seed};
}

SweepGrid full_grid(double epsilon, std::uint64_t seed, bool linear_gamma) {
  return {kappa_range(250, 300, 1),
          linear_gamma ? linear_spaced(kGammaLo, kGammaHi, 51) : log_spaced(kGammaLo, kGammaHi, 51),
          epsilon, seed};
}

std::vector<SweepRecord> run_sweep(const plant::TuningDataset& ds, const SweepGrid& grid,
                                   const SweepOptions& options) {
  grid.validate();
  const auto f_star = frit::frit_gain(ds);
  const auto spec = design::DesignSpec::from_dataset(ds, grid.epsilon);

  // Safe-prime searches first, one per kappa, so grid points never race on them.
  detail::parallel_for(grid.kappa_values.size(), options.threads, [&](std::size_t ki) {
    modmath::largest_safe_q(grid.kappa_values[ki]);
  });

  const std::size_t ng = grid.gamma_values.size();
  std::vector<SweepRecord> records(grid.size());
  std::mutex callback_mu;
  detail::parallel_for(records.size(), options.threads, [&](std::size_t idx) {
    const std::size_t ki = idx / ng;
    const std::size_t gi = idx % ng;
    const auto t0 = std::chrono::steady_clock::now();

    SweepRecord rec;
    rec.kappa = grid.kappa_values[ki];
    rec.gamma = grid.gamma_values[gi];
    const auto primes = modmath::largest_safe_q(rec.kappa);
    rec.theory_ok = design::in_q(primes.q, design::q_requirement(spec, rec.gamma));
    try {
      SeededRandom rng(derive_seed(grid.seed, {ki, gi}));
      const auto keys = elgamal::gen(rec.kappa, rng);
      const codec::QuantizationConfig cfg{rec.gamma, primes};
      const auto res = confidential::cfrit_gain(ds, cfg, keys, rng, options.cfrit);
      std::vector<double> diff(f_star.F.size());
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = res.gain.F[i] - f_star.F[i];
      rec.error = linalg::l2_norm(diff);
      if (!std::isfinite(rec.error)) rec.error = std::numeric_limits<double>::infinity();
      rec.observed_overflow = res.overflow.observed;
    } catch (const std::exception&) {
      rec.error = std::numeric_limits<double>::infinity();
      rec.observed_overflow = true;
    }
    rec.cls = classify(rec.theory_ok, rec.observed_overflow, rec.error, grid.epsilon);
    rec.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    records[idx] = rec;
    if (options.on_point) {
      std::lock_guard lock(callback_mu);
      options.on_point(rec);
    }
  });
  return records;
}

void write_csv(std::ostream& os, std::span<const SweepRecord> records,
               std::string_view manifest_json) {
  if (!manifest_json.empty()) {
    std::istringstream lines{std::string(manifest_json)};
    for (std::string line; std::getline(lines, line);) os << "# " << line << '\n';
  }
  os << "kappa,gamma,error_l2,theory_ok,observed_overflow,class,wall_ms\n";
  for (const auto& r : records) {
    os << r.kappa << ',' << fmt17(r.gamma) << ',' << fmt17(r.error) << ','
       << (r.theory_ok ? "true" : "false") << ',' << (r.observed_overflow ? "true" : "false")
       << ',' << class_name(r.cls) << ',' << fmt17(r.wall_ms) << '\n';
  }
}

std::vector<SweepRecord> read_csv(std::istream& is) {
  std::vector<SweepRecord> out;
  bool header = false;
  std::size_t line_no = 0;
  for (std::string line; std::getline(is, line);) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    if (cells.size() != 7) throw ParseError("sweep csv line " + std::to_string(line_no) + ": expected 7 cells");
    try {
      SweepRecord r;
      r.kappa = static_cast<unsigned>(std::stoul(cells[0]));
      r.gamma = std::stod(cells[1]);
      r.error = cells[2] == "inf" ? std::numeric_limits<double>::infinity() : std::stod(cells[2]);
      r.theory_ok = cells[3] == "true";
      r.observed_overflow = cells[4] == "true";
      bool known = false;
      for (int c = 0; c < 4; ++c) {
        if (cells[5] == kNames[c]) {
          r.cls = static_cast<PointClass>(c);
          known = true;
        }
      }
      if (!known) throw ParseError("unknown class '" + cells[5] + "'");
      r.wall_ms = std::stod(cells[6]);
      out.push_back(r);
    } catch (const std::logic_error& e) {
      throw ParseError("sweep csv line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string plot_script(std::string_view csv_path, double epsilon) {
  std::ostringstream s;
  s << "#!/usr/bin/env python3\n"
       "# Admissible (kappa, gamma) region by class.\n"
       "import csv\n"
       "import math\n"
       "import sys\n"
       "\n"
       "import matplotlib\n"
       "matplotlib.use('Agg')\n"
       "import matplotlib.pyplot as plt\n"
       "\n"
       "CSV = sys.argv[1] if len(sys.argv) > 1 else r'''"
    << csv_path
    << "'''\n"
       "OUT = sys.argv[2] if len(sys.argv) > 2 else CSV.rsplit('.', 1)[0] + '.png'\n"
       "COLORS = {\n"
       "    'feasible-blue': 'tab:blue',\n"
       "    'accurate-but-unproven-yellow': 'gold',\n"
       "    'no-overflow-above-eps-magenta': 'magenta',\n"
       "    'overflow-red': 'red',\n"
       "}\n"
       "\n"
       "rows = [r for r in csv.DictReader(l for l in open(CSV) if not l.startswith('#'))]\n"
       "fig, ax = plt.subplots(figsize=(7, 5))\n"
       "for cls, color in COLORS.items():\n"
       "    pts = [r for r in rows if r['class'] == cls]\n"
       "    ax.scatter([int(r['kappa']) for r in pts],\n"
       "               [math.log10(float(r['gamma'])) for r in pts],\n"
       "               c=color, s=18, label=f'{cls} ({len(pts)})')\n"
       "ax.set_xlabel('kappa')\n"
       "ax.set_ylabel('log10 gamma')\n"
       "ax.set_title('epsilon = "
    << fmt17(epsilon)
    << "')\n"
       "ax.legend(loc='lower right', fontsize=8)\n"
       "fig.tight_layout()\n"
       "fig.savefig(OUT, dpi=150)\n"
       "print(OUT)\n";
  return s.str();
}

}  // namespace cfrit::sweep
