#include <benchmark/benchmark.h>

#include <map>

#include "cfrit/cfrit.hpp"
#include "cfrit/elgamal.hpp"
#include "cfrit/modmath.hpp"
#include "cfrit/scenario.hpp"

using namespace cfrit;

namespace {

const elgamal::KeyPair& keys(unsigned kappa) {
  static std::map<unsigned, elgamal::KeyPair> cache;
  auto it = cache.find(kappa);
  if (it == cache.end()) {
    SeededRandom rng(kappa);
    it = cache.emplace(kappa, elgamal::gen(kappa, rng)).first;
  }
  return it->second;
}

void BM_ModPow(benchmark::State& state) {
  const auto& kp = keys(static_cast<unsigned>(state.range(0)));
  SeededRandom rng(1);
  const BigInt e = rng.below(kp.pk.q);
  for (auto _ : state) benchmark::DoNotOptimize(modmath::mod_pow(kp.pk.g, e, kp.pk.p));
}
BENCHMARK(BM_ModPow)->Arg(64)->Arg(128)->Arg(280);

void BM_Enc(benchmark::State& state) {
  const auto& kp = keys(static_cast<unsigned>(state.range(0)));
  const codec::QuantizationConfig cfg{1e6, kp.pk.primes()};
  const auto m = codec::ecd(-0.375, cfg);
  SeededRandom rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(elgamal::enc(kp.pk, m, rng));
}
BENCHMARK(BM_Enc)->Arg(64)->Arg(128)->Arg(280);

void BM_Dec(benchmark::State& state) {
  const auto& kp = keys(static_cast<unsigned>(state.range(0)));
  const codec::QuantizationConfig cfg{1e6, kp.pk.primes()};
  SeededRandom rng(3);
  const auto c = elgamal::enc(kp.pk, codec::ecd(0.5, cfg), rng);
  for (auto _ : state) benchmark::DoNotOptimize(elgamal::dec(kp.sk, kp.pk, c));
}
BENCHMARK(BM_Dec)->Arg(64)->Arg(128)->Arg(280);

void BM_CfritGainFourState(benchmark::State& state) {
  const auto ds = load_scenario(std::string(CFRIT_SOURCE_DIR) + "/scenarios/four_state.json").dataset();
  const auto& kp = keys(280);
  const codec::QuantizationConfig cfg{1.92e9, kp.pk.primes()};
  confidential::CfritOptions opt;
  opt.threads = static_cast<unsigned>(state.range(0));
  SeededRandom rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(confidential::cfrit_gain(ds, cfg, kp, rng, opt));
}
BENCHMARK(BM_CfritGainFourState)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
