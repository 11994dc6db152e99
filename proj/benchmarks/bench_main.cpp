#include <benchmark/benchmark.h>

#include <vector>

#include "nrt/nrt.hpp"

using namespace nrt;

namespace {

NeuralClassifier bench_net(std::size_t dim, std::size_t width) {
  Rng rng(1);
  return make_classifier(dim, {width, width}, rng);
}

Dataset bench_data(std::size_t n) {
  return generate_synthetic(default_synthetic_spec(3, n, 4, 0.5, 7)).dataset;
}

void ForwardPass(benchmark::State& state) {
  const NeuralClassifier clf = bench_net(16, static_cast<std::size_t>(state.range(0)));
  Rng rng(2);
  std::vector<double> x(16);
  for (double& v : x) v = rng.gaussian();
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward(clf, x));
  }
}
BENCHMARK(ForwardPass)->Arg(16)->Arg(64)->Arg(256);

void BackwardPass(benchmark::State& state) {
  const NeuralClassifier clf = bench_net(16, static_cast<std::size_t>(state.range(0)));
  Rng rng(3);
  std::vector<double> x(16);
  for (double& v : x) v = rng.gaussian();
  Gradients grads = zero_gradients(clf);
  BackpropWorkspace ws;
  for (auto _ : state) {
    accumulate_backward(clf, x, 1.0, LossKind::binary_cross_entropy, grads, ws);
    benchmark::DoNotOptimize(grads);
  }
}
BENCHMARK(BackwardPass)->Arg(16)->Arg(64)->Arg(256);

void AdamStep(benchmark::State& state) {
  NeuralClassifier clf = bench_net(16, 64);
  AdamState adam = AdamState::init(clf, 1e-3);
  Gradients grads = zero_gradients(clf);
  for (Layer& l : grads) {
    for (double& w : l.weight.data) w = 0.01;
  }
  for (auto _ : state) {
    adam_step(clf, grads, adam);
    benchmark::DoNotOptimize(clf);
  }
}
BENCHMARK(AdamStep);

void NodeScan(benchmark::State& state) {
  const Dataset d = bench_data(static_cast<std::size_t>(state.range(0)));
  TrainConfig cfg;
  cfg.layer_sizes = {8};
  cfg.epochs_per_node = 20;
  cfg.learning_rate = 0.02;
  cfg.min_node_size = 5;
  cfg.scan_candidate_cap = 8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_node_scan(d, cfg, 1));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(NodeScan)->Arg(64)->Arg(256)->Complexity();

void BuildTree(benchmark::State& state) {
  const Dataset d = bench_data(256);
  TrainConfig cfg;
  cfg.layer_sizes = {8};
  cfg.epochs_per_node = 20;
  cfg.learning_rate = 0.02;
  cfg.min_node_size = 10;
  cfg.max_depth = static_cast<std::size_t>(state.range(0));
  cfg.scan_candidate_cap = 8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_tree(d, nullptr, cfg));
  }
}
BENCHMARK(BuildTree)->Arg(1)->Arg(3);

void PredictSoft(benchmark::State& state) {
  const Dataset d = bench_data(512);
  TrainConfig cfg;
  cfg.layer_sizes = {8};
  cfg.epochs_per_node = 20;
  cfg.learning_rate = 0.02;
  cfg.min_node_size = 10;
  cfg.max_depth = 4;
  cfg.scan_candidate_cap = 8;
  const NrtModel model = build_tree(d, nullptr, cfg);
  Rng rng(5);
  std::vector<double> x(4);
  for (double& v : x) v = rng.gaussian();
  for (auto _ : state) {
    benchmark::DoNotOptimize(predict_soft(model, x));
  }
}
BENCHMARK(PredictSoft);

}  // namespace

BENCHMARK_MAIN();
