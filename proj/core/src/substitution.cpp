#include "hmgc/substitution.hpp"

#include <algorithm>
#include <cctype>

#include "hmgc/errors.hpp"

namespace hmgc {

TextState TextState::from_text(const std::string& text) {
    TextState state;
    state.words = tokenize_words(text);
    state.surfaces.reserve(state.words.size());
    for (const auto& w : state.words.words) state.surfaces.push_back(w.surface);
    return state;
}

std::vector<Candidate> generate_candidates(const MaskedPredictor& predictor,
                                           const WordSequence& words, std::size_t index,
                                           std::size_t max_candidates) {
    if (index >= words.size())
        throw ValidationError("generate_candidates: index out of range");
    if (max_candidates < 1)
        throw ValidationError("generate_candidates: max_candidates must be >= 1");
    const std::string original = lowercase(words.words[index].surface);
    std::vector<Candidate> out;
    for (const auto& c : predictor.predict(words, index, max_candidates)) {
        if (lowercase(c.word) == original) continue;
        out.push_back({c.word, c.probability, std::nullopt});
    }
    return out;
}

std::string apply_case(const std::string& pattern, const std::string& candidate) {
    if (pattern.empty() || candidate.empty()) return candidate;
    auto all_upper = [](const std::string& s) {
        bool any = false;
        for (unsigned char c : s) {
            if (std::isalpha(c)) {
                any = true;
                if (!std::isupper(c)) return false;
            }
        }
        return any;
    };
    std::string out = candidate;
    if (pattern.size() > 1 && all_upper(pattern)) {
        for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    } else if (std::isupper(static_cast<unsigned char>(pattern[0]))) {
        out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    }
    return out;
}

TryReplaceOutcome try_replace(const Detector& detector, const ConstraintSet& constraints,
                              TextState& state, std::size_t index,
                              const std::vector<Candidate>& candidates,
                              const std::optional<std::string>& requirement) {
    if (candidates.empty()) throw ValidationError("try_replace: no candidates");
    if (index >= state.words.size()) throw ValidationError("try_replace: index out of range");

    TryReplaceOutcome outcome;
    const std::string original_surface = state.surfaces[index];

    std::size_t best = 0;
    double best_score = 0.0;
    std::vector<std::string> surfaces = state.surfaces;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        surfaces[index] = apply_case(original_surface, candidates[i].word);
        double s = detector.score(state.words.render(surfaces), requirement);
        ++outcome.queries;
        if (i == 0 || s < best_score) {
            best = i;
            best_score = s;
        }
    }

    if (best_score >= state.score) return outcome; // no candidate improves

    surfaces[index] = apply_case(original_surface, candidates[best].word);
    CandidateState cand_state;
    cand_state.original = &state.words;
    cand_state.surfaces = surfaces;
    cand_state.index = index;
    cand_state.substituted = state.substituted;
    cand_state.substituted.insert(index);
    if (!check_all(constraints, cand_state, &outcome.violation)) return outcome;

    outcome.accepted = true;
    outcome.record = {index, original_surface, surfaces[index], state.score, best_score};
    state.surfaces = std::move(surfaces);
    state.substituted.insert(index);
    state.score = best_score;
    return outcome;
}

} // namespace hmgc
