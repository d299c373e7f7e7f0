#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hmgc/corpus.hpp"
#include "hmgc/reference.hpp"
#include "hmgc/scorers.hpp"

namespace hmgc {

// Victim predictions on a pre-collected corpus, the distillation targets.
struct SoftLabelDataset {
    std::vector<std::pair<std::string, double>> items; // (text, p)
    std::string provenance;
};

// Binary cross-entropy with the prediction clamped to [eps, 1-eps].
double cross_entropy_loss(double p, double y_hat, double eps = 1e-7);

// Queries the victim on every corpus text. Decision-only victims contribute
// thresholded 0/1 labels.
SoftLabelDataset collect_soft_labels(const Detector& victim, const Corpus& corpus,
                                     double decision_threshold = 0.5);

struct DistillResult {
    std::shared_ptr<ReferenceDetector> surrogate;
    std::vector<double> epoch_losses;
    // Fraction of corpus texts where surrogate and victim decisions agree at 0.5.
    double agreement = 0.0;
};

// Trains a fresh white-box surrogate against the victim's soft labels.
DistillResult distill(const Detector& victim, const Corpus& corpus, const TrainConfig& config);

// Continues training an existing surrogate on hard-labeled texts
// (machine -> 1, human -> 0). Returns per-epoch losses.
std::vector<double> finetune(ReferenceDetector& surrogate,
                             const std::vector<std::pair<std::string, Label>>& labeled,
                             const TrainConfig& config);

} // namespace hmgc
