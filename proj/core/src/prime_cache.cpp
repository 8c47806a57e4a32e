#include "cfrit/prime_cache.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <string>
#include <system_error>

namespace cfrit::modmath {

namespace fs = std::filesystem;

std::optional<fs::path> prime_cache_dir() {
  if (const char* env = std::getenv(kPrimeCacheEnv); env && *env) {
    if (std::string(env) == "off") return std::nullopt;
    return fs::path(env);
  }
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
    return fs::path(xdg) / "cfrit-primes";
  }
  if (const char* home = std::getenv("HOME"); home && *home) {
    return fs::path(home) / ".cache" / "cfrit-primes";
  }
  return std::nullopt;
}

namespace {

fs::path entry_path(const fs::path& dir, unsigned kappa) {
  return dir / ("safe_q_" + std::to_string(kappa) + ".txt");
}

}  // namespace

std::optional<SafePrimePair> load_cached_pair(const fs::path& dir, unsigned kappa) {
  std::ifstream in(entry_path(dir, kappa));
  if (!in) return std::nullopt;
  std::string qs, ps;
  if (!(in >> qs >> ps)) return std::nullopt;

  SafePrimePair pair;
  if (pair.q.set_str(qs, 10) != 0 || pair.p.set_str(ps, 10) != 0) return std::nullopt;
  pair.kappa = kappa;
  // A stale or hand-edited entry is ignored, never trusted.
  if (bit_length(pair.q) != kappa || pair.p != 2 * pair.q + 1) return std::nullopt;
  if (!is_prime(pair.q) || !is_prime(pair.p)) return std::nullopt;
  return pair;
}

void store_cached_pair(const fs::path& dir, const SafePrimePair& pair) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) return;

  // Write-then-rename so concurrent writers never expose a half-written file.
  std::random_device rd;
  const fs::path final_path = entry_path(dir, pair.kappa);
  fs::path tmp = final_path;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << pair.q.get_str(10) << '\n' << pair.p.get_str(10) << '\n';
    if (!out) {
      fs::remove(tmp, ec);
      return;
    }
  }
  fs::rename(tmp, final_path, ec);
  if (ec) fs::remove(tmp, ec);
}

}  // namespace cfrit::modmath
