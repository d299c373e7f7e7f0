#include "hmgc/constraints.hpp"

#include <algorithm>
#include <sstream>

#include "hmgc/errors.hpp"

namespace hmgc {

std::string to_string(ConstraintViolation v) {
    switch (v) {
        case ConstraintViolation::none: return "none";
        case ConstraintViolation::POS: return "POS";
        case ConstraintViolation::MPR: return "MPR";
        case ConstraintViolation::USE: return "USE";
    }
    return "none";
}

void ConstraintSet::validate() const {
    if (max_perturb_ratio <= 0.0 || max_perturb_ratio > 1.0)
        throw ValidationError("max_perturb_ratio must be in (0,1]");
    if (use_window < 1) throw ValidationError("use_window must be >= 1");
    if (use_threshold < 0.0 || use_threshold > 1.0)
        throw ValidationError("use_threshold must be in [0,1]");
    if (pos_enabled && !tagger) throw ValidationError("POS constraint enabled without a tagger");
    if (use_enabled && !encoder) throw ValidationError("USE constraint enabled without an encoder");
}

double perturbed_ratio(const WordSequence& original, const std::set<std::size_t>& substituted) {
    for (auto idx : substituted)
        if (idx >= original.size()) throw ValidationError("perturbed_ratio: index out of range");
    if (original.size() == 0) return 0.0;
    return static_cast<double>(substituted.size()) / static_cast<double>(original.size());
}

bool pos_constraint(const PosTagger& tagger, const WordSequence& words, std::size_t index,
                    const std::string& candidate) {
    if (index >= words.size()) throw ValidationError("pos_constraint: index out of range");
    std::vector<std::string> surfaces;
    surfaces.reserve(words.size());
    for (const auto& w : words.words) surfaces.push_back(w.surface);
    PosTag before = tagger.tag(words)[index];
    surfaces[index] = candidate;
    WordSequence with_candidate = tokenize_words(words.render(surfaces));
    if (with_candidate.size() != words.size()) return false; // candidate broke tokenization
    PosTag after = tagger.tag(with_candidate)[index];
    return before == after;
}

bool mpr_constraint(const WordSequence& original, const std::set<std::size_t>& substituted,
                    double max_ratio) {
    return perturbed_ratio(original, substituted) <= max_ratio;
}

bool use_constraint(const SimilarityEncoder& encoder, const WordSequence& original,
                    const std::vector<std::string>& candidate_surfaces, std::size_t index,
                    std::size_t window, double gamma) {
    if (window < 1) throw ValidationError("use_constraint: window must be >= 1");
    if (candidate_surfaces.size() != original.size())
        throw ValidationError("use_constraint: surface count mismatch");
    const std::size_t n = original.size();
    std::size_t half = window / 2;
    std::size_t lo = index > half ? index - half : 0;
    std::size_t hi = std::min(n, lo + window);
    if (hi - lo < window && hi == n) lo = hi > window ? hi - window : 0;

    auto join = [&](auto surface_of) {
        std::ostringstream out;
        for (std::size_t i = lo; i < hi; ++i) {
            if (i > lo) out << ' ';
            out << surface_of(i);
        }
        return out.str();
    };
    std::string orig_window = join([&](std::size_t i) { return original.words[i].surface; });
    std::string cand_window = join([&](std::size_t i) { return candidate_surfaces[i]; });
    return encoder.similarity(orig_window, cand_window) >= gamma;
}

bool check_all(const ConstraintSet& set, const CandidateState& state,
               ConstraintViolation* violation) {
    set.validate();
    if (!state.original) throw ValidationError("check_all: missing original word sequence");
    auto fail = [&](ConstraintViolation v) {
        if (violation) *violation = v;
        return false;
    };
    if (violation) *violation = ConstraintViolation::none;

    if (set.pos_enabled &&
        !pos_constraint(*set.tagger, *state.original, state.index, state.surfaces[state.index]))
        return fail(ConstraintViolation::POS);
    if (set.mpr_enabled &&
        !mpr_constraint(*state.original, state.substituted, set.max_perturb_ratio))
        return fail(ConstraintViolation::MPR);
    if (set.use_enabled &&
        !use_constraint(*set.encoder, *state.original, state.surfaces, state.index,
                        set.use_window, set.use_threshold))
        return fail(ConstraintViolation::USE);
    return true;
}

} // namespace hmgc
