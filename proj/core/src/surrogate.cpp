#include "hmgc/surrogate.hpp"

#include <algorithm>
#include <cmath>

#include "hmgc/errors.hpp"

namespace hmgc {

double cross_entropy_loss(double p, double y_hat, double eps) {
    if (p < 0.0 || p > 1.0) throw ValidationError("cross_entropy_loss: p outside [0,1]");
    if (y_hat < 0.0 || y_hat > 1.0) throw ValidationError("cross_entropy_loss: y_hat outside [0,1]");
    double q = std::clamp(p, eps, 1.0 - eps);
    return -(y_hat * std::log(q) + (1.0 - y_hat) * std::log(1.0 - q));
}

SoftLabelDataset collect_soft_labels(const Detector& victim, const Corpus& corpus,
                                     double decision_threshold) {
    if (corpus.empty()) throw ValidationError("collect_soft_labels: empty corpus");
    SoftLabelDataset ds;
    ds.provenance = "victim";
    ds.items.reserve(corpus.size());
    for (const auto& s : corpus) {
        double p = victim.score(s.text, s.requirement);
        if (victim.capability() == Capability::black_box_decision)
            p = p >= decision_threshold ? 1.0 : 0.0;
        ds.items.push_back({s.text, p});
    }
    return ds;
}

DistillResult distill(const Detector& victim, const Corpus& corpus, const TrainConfig& config) {
    if (corpus.empty()) throw ValidationError("distill: empty corpus");
    auto ds = collect_soft_labels(victim, corpus);
    DistillResult result;
    result.surrogate = std::make_shared<ReferenceDetector>();
    result.epoch_losses = result.surrogate->fit(ds.items, config);

    std::size_t agree = 0;
    for (const auto& s : corpus) {
        bool v = victim.score(s.text, s.requirement) >= 0.5;
        bool g = result.surrogate->score(s.text, s.requirement) >= 0.5;
        if (v == g) ++agree;
    }
    result.agreement = static_cast<double>(agree) / static_cast<double>(corpus.size());
    return result;
}

std::vector<double> finetune(ReferenceDetector& surrogate,
                             const std::vector<std::pair<std::string, Label>>& labeled,
                             const TrainConfig& config) {
    if (labeled.empty()) throw ValidationError("finetune: empty training data");
    std::vector<std::pair<std::string, double>> data;
    data.reserve(labeled.size());
    for (const auto& [text, label] : labeled)
        data.push_back({text, label == Label::machine ? 1.0 : 0.0});
    return surrogate.fit(data, config);
}

} // namespace hmgc
