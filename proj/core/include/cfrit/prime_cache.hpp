#pragma once

#include <filesystem>
#include <optional>

#include "cfrit/modmath.hpp"

namespace cfrit::modmath {

// Environment variable naming the on-disk cache directory. "off" disables disk caching.
inline constexpr const char* kPrimeCacheEnv = "CFRIT_PRIME_CACHE";

// Resolved cache directory: $CFRIT_PRIME_CACHE, else $XDG_CACHE_HOME/cfrit-primes,
// else $HOME/.cache/cfrit-primes. Empty when caching is disabled or no home exists.
std::optional<std::filesystem::path> prime_cache_dir();

// Cache entry file: "<dir>/safe_q_<kappa>.txt" holding q and p in decimal, one per line.
std::optional<SafePrimePair> load_cached_pair(const std::filesystem::path& dir, unsigned kappa);
void store_cached_pair(const std::filesystem::path& dir, const SafePrimePair& pair);

}  // namespace cfrit::modmath
