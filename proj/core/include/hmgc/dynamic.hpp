#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hmgc/engine.hpp"
#include "hmgc/reference.hpp"

namespace hmgc {

// Per-round metrics of the dynamic adversarial-learning loop. Rate metrics
// are percentages in [0, 100].
struct RoundReport {
    int round = 0; // 1-based
    double auc = 0.0;
    double ppv = 0.0;
    double tnr = 0.0;
    double delta_acc = 0.0;
    double mean_seconds = 0.0;
    long train_added = 0;
    long eval_size = 0;
};

void save_reports(const std::vector<RoundReport>& reports, const std::string& path);
std::vector<RoundReport> load_reports(const std::string& path);

// TNR/AUC-vs-round curve as a standalone SVG image.
void render_round_plot(const std::vector<RoundReport>& reports, const std::string& path);

struct DynamicConfig {
    std::size_t rounds = 3;
    long split_seed = 7;
    double train_fraction = 0.8; // share of attack results harvested for fine-tuning
    TrainConfig train;
    AttackConfig attack;
    std::string artifacts_dir; // empty = no checkpointing
    bool resume = false;

    void validate() const;
};

// Round r: attack part r of the machine pool with the current detector,
// evaluate it on the held-out share of that round's adversarial outputs
// mixed with unseen human samples, then fine-tune on the harvested share
// (cumulative over rounds, balanced with human resamples). The detector
// carries into round r+1.
std::vector<RoundReport> run_rounds(const Corpus& corpus,
                                    std::shared_ptr<ReferenceDetector> detector,
                                    const ScorerBundle& scorers, const DynamicConfig& config);

} // namespace hmgc
