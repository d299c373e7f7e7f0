#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "hmgc/scorers.hpp"

namespace hmgc {

inline constexpr const char* kScorerMagic = "HMGC-SCORER/1";

// Deterministic white-box detector: each vocabulary word has a learned
// embedding; a text is scored by log-mean-exp pooling of per-word logits
// followed by a sigmoid. Mean pooling is useless here because it spreads
// the loss gradient uniformly over positions; the soft-max pool keeps
// per-position gradients distinct.
class ReferenceDetector : public TrainableDetector {
public:
    static constexpr std::size_t kDim = 8;
    using Vec = std::array<double, kDim>;

    ReferenceDetector() = default;

    // Explicit parameters, used by tests that need an arbitrary detector.
    ReferenceDetector(std::vector<std::pair<std::string, Vec>> vocab, Vec weights, double bias);

    double score(const std::string& text,
                 const std::optional<std::string>& requirement = {}) const override;
    std::vector<std::vector<double>> word_gradients(const std::string& text) const override;

    std::vector<double> fit(const std::vector<std::pair<std::string, double>>& data,
                            const TrainConfig& config) override;

    // Loss -log(score) with an offset added to the embedding used at word
    // position `pos` only. Backs the finite-difference gradient checks.
    double machine_loss(const std::string& text, std::size_t pos, const Vec& offset) const;
    double machine_loss(const std::string& text) const;

    void save(const std::string& path) const override;
    static std::shared_ptr<ReferenceDetector> load(const std::string& path);

    std::size_t vocab_size() const { return tokens_.size(); }

private:
    // token index (growing; unseen words get a deterministic hash-seeded embedding)
    std::size_t intern(const std::string& token);
    const Vec* lookup(const std::string& token) const;
    static Vec seeded_embedding(const std::string& token, long seed);

    struct Forward {
        std::vector<std::string> tokens;
        std::vector<double> logits;    // per position
        std::vector<double> softmax;   // pooling weights per position
        double z = 0.0;                // pooled logit
        double prob = 0.5;
    };
    Forward forward(const std::string& text, int max_len = 0) const;

    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::string> tokens_;
    std::vector<Vec> emb_;
    Vec w_{};
    double bias_ = 0.0;
    long init_seed_ = 0;
    int max_len_ = 0; // 0 = no truncation; set from TrainConfig on fit
};

// Trains a fresh reference detector on hard labels (machine -> 1).
std::shared_ptr<ReferenceDetector> reference_detector_train(const Corpus& corpus,
                                                            const TrainConfig& config);

// Add-one-smoothed unigram model; ppl is the exponentiated mean token
// negative log-probability.
class ReferencePerplexity : public PerplexityScorer {
public:
    static ReferencePerplexity fit(const std::vector<std::string>& texts);
    double ppl(const std::string& text) const override;

    void save(const std::string& path) const;
    static ReferencePerplexity load(const std::string& path);

private:
    std::map<std::string, long> counts_;
    long total_ = 0;
    std::size_t vocab_ = 0;
};

// Left/right-neighbor co-occurrence fill model. Candidates for a masked
// position are words seen adjacent to the same neighbors, scored by
// summed counts and softmax-normalized. Falls back to global frequency
// when neither neighbor has been seen.
class ReferenceMaskedPredictor : public MaskedPredictor {
public:
    static ReferenceMaskedPredictor fit(const std::vector<std::string>& texts);
    std::vector<MaskCandidate> predict(const WordSequence& words, std::size_t masked_index,
                                       std::size_t max_candidates) const override;

    void save(const std::string& path) const;
    static ReferenceMaskedPredictor load(const std::string& path);

private:
    std::map<std::string, std::map<std::string, long>> after_;  // left -> word -> count
    std::map<std::string, std::map<std::string, long>> before_; // right -> word -> count
    std::map<std::string, long> freq_;
};

// Cosine similarity of L2-normalized token-count vectors.
class ReferenceSimilarity : public SimilarityEncoder {
public:
    double similarity(const std::string& a, const std::string& b) const override;
};

// Lexicon + suffix rule tagger over the coarse universal tagset.
class ReferencePosTagger : public PosTagger {
public:
    std::vector<PosTag> tag(const WordSequence& words) const override;
    PosTag tag_word(const std::string& word) const;
};

} // namespace hmgc
