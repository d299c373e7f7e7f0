#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "hmgc/scorers.hpp"

namespace hmgc {

enum class ConstraintViolation { none, POS, MPR, USE };

std::string to_string(ConstraintViolation v);

// The substitution under test: the original word view, the current surface
// per word (with the new candidate already filled at `index`), and the full
// set of substituted positions including this one.
struct CandidateState {
    const WordSequence* original = nullptr;
    std::vector<std::string> surfaces;
    std::size_t index = 0;
    std::set<std::size_t> substituted;
};

struct ConstraintSet {
    bool pos_enabled = true;
    bool mpr_enabled = true;
    bool use_enabled = true;
    double max_perturb_ratio = 0.40;
    std::size_t use_window = 50;
    double use_threshold = 0.75;
    std::shared_ptr<SimilarityEncoder> encoder;
    std::shared_ptr<PosTagger> tagger;

    void validate() const;
};

// |substituted| / |words|.
double perturbed_ratio(const WordSequence& original, const std::set<std::size_t>& substituted);

// Candidate must keep the original word's coarse tag, computed in context.
bool pos_constraint(const PosTagger& tagger, const WordSequence& words, std::size_t index,
                    const std::string& candidate);

bool mpr_constraint(const WordSequence& original, const std::set<std::size_t>& substituted,
                    double max_ratio);

// Similarity of the word window centered on the replacement, original vs
// candidate text, must reach gamma. The window is clipped at text bounds.
bool use_constraint(const SimilarityEncoder& encoder, const WordSequence& original,
                    const std::vector<std::string>& candidate_surfaces, std::size_t index,
                    std::size_t window, double gamma);

// Conjunction of every enabled constraint; short-circuits in listed order
// (POS, MPR, USE) and reports the first failure.
bool check_all(const ConstraintSet& set, const CandidateState& state,
               ConstraintViolation* violation = nullptr);

} // namespace hmgc
