#include <benchmark/benchmark.h>

#include "pmopi/channel.hpp"
#include "pmopi/cipher.hpp"
#include "pmopi/codebook.hpp"
#include "pmopi/mimo.hpp"
#include "pmopi/protocol/exchange.hpp"
#include "pmopi/random.hpp"

using namespace pmopi;

static void BM_Capacity(benchmark::State& state) {
  Rng rng(1);
  const ComplexMatrix h = gaussian_matrix(rng, 2, 4);
  const ComplexMatrix& f = householder_codebook()[3];
  for (auto _ : state) benchmark::DoNotOptimize(capacity(h, f, Snr(10.0)));
}
BENCHMARK(BM_Capacity);

static void BM_SelectPmi(benchmark::State& state) {
  Rng rng(2);
  const ComplexMatrix h = gaussian_matrix(rng, 2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(select_pmi(h, Snr(10.0), householder_codebook()));
}
BENCHMARK(BM_SelectPmi);

static void BM_SelectPmiRotated(benchmark::State& state) {
  Rng rng(3);
  const ComplexMatrix h = gaussian_matrix(rng, 2, 4);
  const ComplexMatrix u = random_unitary(rng, 4);
  for (auto _ : state) benchmark::DoNotOptimize(select_pmi_rotated(h, u, Snr(10.0), householder_codebook()));
}
BENCHMARK(BM_SelectPmiRotated);

static void BM_ChannelAt(benchmark::State& state) {
  ChannelParams p;
  p.velocity_kmh = 3.0;
  const ChannelProcess ch(p);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ch.channel_at(t, 600));
    t += 1e-4;
  }
}
BENCHMARK(BM_ChannelAt);

static void BM_Keystream(benchmark::State& state) {
  const CipherKey key(BitString::from_string(std::string(240, '1')));
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(keystream(key, Nonce{1}, n));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Keystream)->Arg(32)->Arg(4096);

static void BM_Exchange60Subbands(benchmark::State& state) {
  ChannelParams p;
  p.seed = 5;
  const ChannelProcess ch(p);
  protocol::ExchangeConfig cfg;
  cfg.subband_plan = protocol::plan_subbands(1200, 300e3, 15e3);
  for (auto _ : state) {
    Rng rng(7);
    benchmark::DoNotOptimize(protocol::run_exchange(ch, cfg, rng));
  }
}
BENCHMARK(BM_Exchange60Subbands);
BENCHMARK_MAIN();
