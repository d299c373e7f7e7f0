#include "hmgc/importance.hpp"

#include <algorithm>
#include <cmath>

#include "hmgc/corpus.hpp"
#include "hmgc/errors.hpp"

namespace hmgc {

std::vector<double> gradient_importance(const Detector& detector, const std::string& text) {
    if (detector.capability() != Capability::white_box)
        throw CapabilityError("gradient_importance requires a white-box detector");
    const auto& wb = dynamic_cast<const WhiteBoxDetector&>(detector);
    std::vector<double> norms;
    for (const auto& grad : wb.word_gradients(text)) {
        double l1 = 0.0;
        for (double g : grad) l1 += std::abs(g);
        norms.push_back(l1);
    }
    return norms;
}

std::vector<double> perplexity_importance(const PerplexityScorer& scorer,
                                          const std::string& text) {
    auto words = tokenize_words(text);
    if (words.size() < 2)
        throw ValidationError("perplexity_importance: need at least two words");
    const double base = scorer.ppl(text);
    std::vector<double> deltas;
    deltas.reserve(words.size());
    for (std::size_t i = 0; i < words.size(); ++i)
        deltas.push_back(scorer.ppl(words.without_word(i)) - base);
    return deltas;
}

namespace {

std::vector<double> min_max(const std::vector<double>& v) {
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    std::vector<double> out(v.size(), 0.0);
    if (*hi - *lo <= 0.0) return out; // constant stream
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - *lo) / (*hi - *lo);
    return out;
}

} // namespace

ImportanceProfile combined_importance(const std::vector<double>& grad,
                                      const std::vector<double>& ppl, double alpha) {
    if (grad.size() != ppl.size())
        throw ValidationError("combined_importance: stream length mismatch");
    if (grad.empty()) throw ValidationError("combined_importance: empty streams");
    if (alpha < 0.0 || alpha > 1.0)
        throw ValidationError("combined_importance: alpha outside [0,1]");
    auto g = min_max(grad);
    auto p = min_max(ppl);
    ImportanceProfile profile;
    profile.alpha = alpha;
    profile.records.reserve(grad.size());
    for (std::size_t i = 0; i < grad.size(); ++i)
        profile.records.push_back(
            {i, grad[i], ppl[i], (1.0 - alpha) * g[i] + alpha * p[i]});
    return profile;
}

std::vector<std::size_t> rank_words(const ImportanceProfile& profile, std::size_t k,
                                    const std::set<std::size_t>& excluded) {
    if (k < 1) throw ValidationError("rank_words: k must be >= 1");
    std::vector<std::size_t> indices;
    for (const auto& r : profile.records)
        if (!excluded.count(r.index)) indices.push_back(r.index);
    std::stable_sort(indices.begin(), indices.end(), [&](std::size_t a, std::size_t b) {
        return profile.records[a].combined > profile.records[b].combined;
    });
    if (indices.size() > k) indices.resize(k);
    return indices;
}

} // namespace hmgc
