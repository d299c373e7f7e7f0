#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "hmgc/scorers.hpp"

namespace hmgc {

struct WordImportance {
    std::size_t index = 0;
    double grad = 0.0;     // raw L1 gradient norm
    double ppl = 0.0;      // raw perplexity delta on removal
    double combined = 0.0; // (1-alpha)*norm(grad) + alpha*norm(ppl)
};

struct ImportanceProfile {
    std::vector<WordImportance> records;
    double alpha = 0.0;
};

// L1 norm of the machine-target loss gradient per word. Sub-token backends
// aggregate by sum; the reference detector is one token per word.
std::vector<double> gradient_importance(const Detector& detector, const std::string& text);

// ppl(text without word i) - ppl(text); needs at least two words.
std::vector<double> perplexity_importance(const PerplexityScorer& scorer,
                                          const std::string& text);

// Min-max normalizes each stream over the text (constant streams map to
// all-zeros), then mixes them with weight alpha on the perplexity side.
ImportanceProfile combined_importance(const std::vector<double>& grad,
                                      const std::vector<double>& ppl, double alpha);

// Non-excluded indices by combined importance descending, ties broken by
// lower index, truncated to k.
std::vector<std::size_t> rank_words(const ImportanceProfile& profile, std::size_t k,
                                    const std::set<std::size_t>& excluded = {});

} // namespace hmgc
