#include <benchmark/benchmark.h>

#include <random>

#include "ddoslab/models/architectures.hpp"
#include "ddoslab/nn/ops.hpp"
#include "ddoslab/nn/train.hpp"
#include "ddoslab/simcore/simulator.hpp"
#include "ddoslab/telemetry/collector.hpp"

using namespace ddoslab;

namespace {

nn::Tensor random_tensor(nn::Shape shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  nn::Tensor t(std::move(shape));
  for (double& v : t.values()) v = d(rng);
  return t;
}

void BM_Simulate(benchmark::State& state) {
  sim::ScenarioConfig c;
  c.scenario = state.range(0) ? sim::Scenario::ddos : sim::Scenario::normal;
  c.n_ue = 20;
  c.duration_s = 10.0;
  std::uint64_t events = 0;
  for (auto _ : state) {
    const auto trace = sim::run(c);
    events += trace.events_processed;
    benchmark::DoNotOptimize(trace.packets.data());
  }
  state.counters["events/s"] = benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Simulate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SimulateAndCollect(benchmark::State& state) {
  sim::ScenarioConfig c;
  c.scenario = sim::Scenario::ddos;
  c.n_ue = 20;
  c.duration_s = 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(telemetry::simulate_and_collect(c).records.size());
}
BENCHMARK(BM_SimulateAndCollect)->Unit(benchmark::kMillisecond);

// The CNN's widest layer: 64 filters in, 32 out, kernel 16.
void BM_Conv1DForward(benchmark::State& state) {
  const auto batch = static_cast<std::size_t>(state.range(0));
  const nn::Tensor x = random_tensor({batch, 3, 64}, 1), k = random_tensor({16, 64, 32}, 2), b({32});
  for (auto _ : state) benchmark::DoNotOptimize(nn::conv1d_forward(x, k, b).data());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch));
}
BENCHMARK(BM_Conv1DForward)->Arg(1)->Arg(64);

void BM_Conv1DBackward(benchmark::State& state) {
  const auto batch = static_cast<std::size_t>(state.range(0));
  const nn::Tensor x = random_tensor({batch, 3, 64}, 1), k = random_tensor({16, 64, 32}, 2);
  const nn::Tensor dy = random_tensor({batch, 3, 32}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(nn::conv1d_backward(x, k, dy).dk.data());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch));
}
BENCHMARK(BM_Conv1DBackward)->Arg(1)->Arg(64);

void BM_TrainStep(benchmark::State& state) {
  const auto arch = state.range(0) ? models::ArchName::fnn : models::ArchName::cnn;
  nn::Model model = models::build(arch, 6, 1);
  nn::Examples batch{random_tensor({64, 6}, 4), std::vector<double>(64)};
  for (std::size_t i = 0; i < 64; ++i) batch.y[i] = static_cast<double>(i % 2);
  nn::Adam opt;
  nn::Rng rng(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nn::compute_gradients(model, batch, true, &rng));
    opt.step(model.params());
  }
  state.SetLabel(models::to_string(arch));
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_TrainStep)->Arg(0)->Arg(1);

}  // namespace
BENCHMARK_MAIN();
