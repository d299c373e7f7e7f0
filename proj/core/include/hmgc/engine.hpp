#pragma once

#include <atomic>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hmgc/constraints.hpp"
#include "hmgc/corpus.hpp"
#include "hmgc/scorers.hpp"
#include "hmgc/substitution.hpp"

namespace hmgc {

struct AttackConfig {
    double tau = 0.5;            // score below this counts as human-written
    std::size_t attack_k = 10;   // positions attacked per pass
    std::size_t candidates_m = 8;
    double alpha = 0.2;          // perplexity weight in word importance
    std::size_t max_passes = 5;
    long max_queries = 2000;
    double max_perturb_ratio = 0.40;
    std::size_t use_window = 50;
    double use_threshold = 0.75;
    bool pos_enabled = true;
    bool mpr_enabled = true;
    bool use_enabled = true;
    bool pass_requirement = false; // forward the user prompt to the detector
    long seed = 0;
    std::size_t workers = 1;
    bool timing = true;            // record wall time per sample
    bool verbose = false;

    void validate() const;
    ConstraintSet constraints(const ScorerBundle& scorers) const;
};

enum class TerminationReason {
    below_tau,
    pass_limit,
    query_limit,
    no_progress,
    already_below_tau
};

std::string to_string(TerminationReason r);

struct AttackResult {
    std::string id;
    std::string original_text;
    std::string adversarial_text;
    double score_before = 0.0;
    double score_after = 0.0;
    bool success = false;
    long queries = 0;
    double perturbed_ratio = 0.0;
    double seconds = 0.0;
    std::vector<SubstitutionRecord> trace;
    TerminationReason reason = TerminationReason::pass_limit;
    std::vector<ConstraintViolation> rejections; // reasons of rejected steps

    AttackRecord to_record() const;
};

struct AggregateStats {
    std::size_t attacked = 0;
    std::size_t successes = 0;
    double mean_queries = 0.0;
    double mean_seconds = 0.0;
    double success_rate() const {
        return attacked == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(attacked);
    }
};

// Algorithm: assess, then repeat (rank words, greedy substitution over the
// top attack_k positions) until the score drops below tau or a limit is hit.
// The detector both ranks (gradients) and scores; in black-box mode the
// caller passes the surrogate here and judges the result against the victim
// at evaluation time.
AttackResult attack(const Sample& sample, const WhiteBoxDetector& detector,
                    const ScorerBundle& scorers, const AttackConfig& config);

struct CorpusAttackResult {
    std::vector<AttackResult> results; // machine samples, in input order
    std::vector<std::pair<std::string, std::string>> failures; // (sample id, error)
    AggregateStats stats;
};

// Attacks every machine-labeled sample; human samples pass through for
// downstream evaluation. Per-sample failures are recorded, not fatal.
CorpusAttackResult attack_corpus(const Corpus& samples, const WhiteBoxDetector& detector,
                                 const ScorerBundle& scorers, const AttackConfig& config);

} // namespace hmgc
