#include <benchmark/benchmark.h>

#include <random>

#include "hmgc/engine.hpp"
#include "hmgc/metrics.hpp"
#include "hmgc/reference.hpp"
#include "hmgc/registry.hpp"
#include "hmgc/synthetic.hpp"

using namespace hmgc;

namespace {

struct Fixture {
    SyntheticData data;
    std::shared_ptr<ReferenceDetector> detector;
    ScorerBundle scorers;

    Fixture() : data(make_synthetic({40, 40, 20, 7})) {
        TrainConfig train;
        train.learning_rate = 2.0;
        train.epochs = 60;
        train.batch_size = 4096;
        train.seed = 5;
        detector = reference_detector_train(data.corpus, train);
        scorers = make_scorers("reference", data.background);
    }
};

const Fixture& fixture() {
    static Fixture f;
    return f;
}

const Sample& first_machine() {
    for (const auto& s : fixture().data.corpus)
        if (s.label == Label::machine) return s;
    throw std::runtime_error("no machine sample");
}

void BM_TokenizeWords(benchmark::State& state) {
    const std::string& text = first_machine().text;
    for (auto _ : state) benchmark::DoNotOptimize(tokenize_words(text));
}
BENCHMARK(BM_TokenizeWords);

void BM_DetectorScore(benchmark::State& state) {
    const auto& f = fixture();
    const std::string& text = first_machine().text;
    for (auto _ : state) benchmark::DoNotOptimize(f.detector->score(text));
}
BENCHMARK(BM_DetectorScore);

void BM_WordGradients(benchmark::State& state) {
    const auto& f = fixture();
    const std::string& text = first_machine().text;
    for (auto _ : state) benchmark::DoNotOptimize(f.detector->word_gradients(text));
}
BENCHMARK(BM_WordGradients);

void BM_AucRoc(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::vector<double> scores;
    std::vector<bool> labels;
    for (long i = 0; i < state.range(0); ++i) {
        scores.push_back(static_cast<double>(rng() % 1000) / 999.0);
        labels.push_back(i % 2 == 0);
    }
    for (auto _ : state) benchmark::DoNotOptimize(auc_roc(scores, labels));
}
BENCHMARK(BM_AucRoc)->Arg(100)->Arg(10000);

void BM_SingleAttack(benchmark::State& state) {
    const auto& f = fixture();
    const Sample& sample = first_machine();
    AttackConfig config;
    config.timing = false;
    for (auto _ : state)
        benchmark::DoNotOptimize(attack(sample, *f.detector, f.scorers, config));
}
BENCHMARK(BM_SingleAttack);

} // namespace

BENCHMARK_MAIN();
