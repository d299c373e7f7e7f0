#pragma once

#include <string>
#include <vector>

#include "hmgc/corpus.hpp"

namespace hmgc {

// Deterministic benchmark corpus: machine texts carry a marker phrase that a
// detector can latch onto; the background corpus teaches the masked
// predictor a small pool of drop-in replacements per marker family, so the
// attack succeeds against a fresh detector and degrades as the detector is
// fine-tuned on harvested adversarial texts.
struct SyntheticSpec {
    std::size_t machine_samples = 200;
    std::size_t human_samples = 200;
    std::size_t words_per_text = 20;
    long seed = 7;
};

struct SyntheticData {
    Corpus corpus;
    std::vector<std::string> background; // fitting texts for MLM/perplexity
};

SyntheticData make_synthetic(const SyntheticSpec& spec);

} // namespace hmgc
