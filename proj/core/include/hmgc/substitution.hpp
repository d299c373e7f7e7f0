#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hmgc/constraints.hpp"
#include "hmgc/scorers.hpp"

namespace hmgc {

struct Candidate {
    std::string word;
    double probability = 0.0;
    std::optional<double> detector_score;
};

struct SubstitutionRecord {
    std::size_t index = 0;
    std::string original;
    std::string replacement;
    double score_before = 0.0;
    double score_after = 0.0;
};

// Working text during one attack: the original tokenization plus the current
// surface per position.
struct TextState {
    WordSequence words;
    std::vector<std::string> surfaces;
    std::set<std::size_t> substituted;
    double score = 0.0;

    static TextState from_text(const std::string& text);
    std::string render() const { return words.render(surfaces); }
};

// Masks `index` and queries the predictor; candidates equal to the original
// word (case-insensitive) are dropped, ranking preserved.
std::vector<Candidate> generate_candidates(const MaskedPredictor& predictor,
                                           const WordSequence& words, std::size_t index,
                                           std::size_t max_candidates);

// Candidates come back lowercase; the replacement inherits the replaced
// word's capitalization pattern.
std::string apply_case(const std::string& pattern, const std::string& candidate);

struct TryReplaceOutcome {
    bool accepted = false;
    SubstitutionRecord record;
    long queries = 0; // detector evaluations spent on the candidate set
    ConstraintViolation violation = ConstraintViolation::none;
};

// Greedy accept/reject step: scores every candidate fill, takes the argmin
// (ties to the earlier candidate), accepts only if it is strictly below the
// current score and every constraint passes on the resulting text. On
// rejection the state is left untouched.
TryReplaceOutcome try_replace(const Detector& detector, const ConstraintSet& constraints,
                              TextState& state, std::size_t index,
                              const std::vector<Candidate>& candidates,
                              const std::optional<std::string>& requirement = {});

} // namespace hmgc
