#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hmgc/corpus.hpp"

namespace hmgc {

enum class Capability {
    white_box,          // exposes per-token loss gradients
    black_box_score,    // probability only
    black_box_decision  // binary decision only
};

// Victim/surrogate detector. score() is the probability the text is
// machine-generated; decide() thresholds it.
class Detector {
public:
    virtual ~Detector() = default;
    virtual Capability capability() const = 0;
    virtual double score(const std::string& text,
                         const std::optional<std::string>& requirement = {}) const = 0;
    Label decide(const std::string& text, double threshold,
                 const std::optional<std::string>& requirement = {}) const {
        return score(text, requirement) >= threshold ? Label::machine : Label::human;
    }
    virtual bool concurrent_safe() const { return true; }
};

// Adds gradient access: per word of tokenize_words(text), the gradient of the
// machine-target loss -log(score) with respect to that word's embedding use.
class WhiteBoxDetector : public Detector {
public:
    Capability capability() const override { return Capability::white_box; }
    virtual std::vector<std::vector<double>> word_gradients(const std::string& text) const = 0;
};

struct TrainConfig {
    double learning_rate = 5e-6;
    int epochs = 2;
    int max_sequence_length = 512;
    long seed = 0;
    int batch_size = 32;

    void validate() const;
};

// White-box detector whose parameters can be fitted to (text, probability)
// pairs with the binary cross-entropy objective.
class TrainableDetector : public WhiteBoxDetector {
public:
    // Returns the mean training loss per epoch.
    virtual std::vector<double> fit(const std::vector<std::pair<std::string, double>>& data,
                                    const TrainConfig& config) = 0;
    virtual void save(const std::string& path) const = 0;
};

struct MaskCandidate {
    std::string word;
    double probability = 0.0;
};

// Masked-position fill model: ranked candidates with probabilities
// non-increasing, each in (0,1], at most M entries.
class MaskedPredictor {
public:
    virtual ~MaskedPredictor() = default;
    virtual std::vector<MaskCandidate> predict(const WordSequence& words,
                                               std::size_t masked_index,
                                               std::size_t max_candidates) const = 0;
};

class PerplexityScorer {
public:
    virtual ~PerplexityScorer() = default;
    virtual double ppl(const std::string& text) const = 0;
};

// similarity(a, a) == 1 within 1e-6; symmetric.
class SimilarityEncoder {
public:
    virtual ~SimilarityEncoder() = default;
    virtual double similarity(const std::string& a, const std::string& b) const = 0;
};

enum class PosTag { NOUN, VERB, ADJ, ADV, PRON, DET, ADP, NUM, CONJ, PRT, PUNCT, X };

std::string to_string(PosTag tag);

class PosTagger {
public:
    virtual ~PosTagger() = default;
    // One tag per word.
    virtual std::vector<PosTag> tag(const WordSequence& words) const = 0;
};

// The scorers the attack pipeline consumes, bundled for convenience.
struct ScorerBundle {
    std::shared_ptr<MaskedPredictor> predictor;
    std::shared_ptr<PerplexityScorer> perplexity;
    std::shared_ptr<SimilarityEncoder> encoder;
    std::shared_ptr<PosTagger> tagger;
};

} // namespace hmgc
