#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>
#include <random>

#include "hmgc/errors.hpp"
#include "hmgc/reference.hpp"
#include "hmgc/substitution.hpp"

using namespace hmgc;

namespace {

// Deterministic detector: hashes the text into (0, 1). Arbitrary but stable,
// which is all the greedy-step oracle needs.
class HashDetector : public Detector {
public:
    Capability capability() const override { return Capability::black_box_score; }
    double score(const std::string& text, const std::optional<std::string>&) const override {
        ++queries;
        std::uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : text) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        return (static_cast<double>(h % 1000003) + 0.5) / 1000003.0;
    }
    mutable long queries = 0;
};

// Fixed candidate list regardless of context.
class FixedPredictor : public MaskedPredictor {
public:
    explicit FixedPredictor(std::vector<MaskCandidate> c) : cands_(std::move(c)) {}
    std::vector<MaskCandidate> predict(const WordSequence&, std::size_t,
                                       std::size_t max_candidates) const override {
        std::vector<MaskCandidate> out = cands_;
        if (out.size() > max_candidates) out.resize(max_candidates);
        return out;
    }

private:
    std::vector<MaskCandidate> cands_;
};

ConstraintSet open_constraints() {
    ConstraintSet set;
    set.pos_enabled = false;
    set.mpr_enabled = false;
    set.use_enabled = false;
    return set;
}

std::string random_text(std::mt19937_64& rng, std::size_t n) {
    const std::vector<std::string> pool = {"river", "stone", "cloud", "paper", "garden", "window"};
    std::string text;
    for (std::size_t i = 0; i < n; ++i) {
        if (i) text += ' ';
        text += pool[rng() % pool.size()];
    }
    return text;
}

} // namespace

TEST_CASE("generate_candidates drops the original word case-insensitively") {
    FixedPredictor predictor({{"Cloud", 0.5}, {"stone", 0.3}, {"mist", 0.2}});
    auto words = tokenize_words("big cloud here");
    auto cands = generate_candidates(predictor, words, 1, 3);
    REQUIRE(cands.size() == 2);
    CHECK(cands[0].word == "stone");
    CHECK(cands[1].word == "mist");
    CHECK(cands[0].probability == 0.3);
}

TEST_CASE("generate_candidates validates arguments") {
    FixedPredictor predictor({{"x", 1.0}});
    auto words = tokenize_words("a b");
    CHECK_THROWS_AS(generate_candidates(predictor, words, 2, 3), ValidationError);
    CHECK_THROWS_AS(generate_candidates(predictor, words, 0, 0), ValidationError);
}

TEST_CASE("apply_case inherits the replaced word's capitalization") {
    CHECK(apply_case("Hello", "world") == "World");
    CHECK(apply_case("HELLO", "world") == "WORLD");
    CHECK(apply_case("hello", "world") == "world");
    CHECK(apply_case("hello", "World") == "World");
    CHECK(apply_case("A", "b") == "B"); // single letter counts as initial-cap
    CHECK(apply_case("", "word") == "word");
}

TEST_CASE("try_replace picks the candidate with the lowest detector score") {
    HashDetector detector;
    auto state = TextState::from_text("river stone cloud");
    state.score = detector.score(state.render(), {});
    detector.queries = 0;

    std::vector<Candidate> cands = {{"paper", 0.4, {}}, {"window", 0.3, {}}, {"basket", 0.3, {}}};
    auto outcome = try_replace(detector, open_constraints(), state, 1, cands);
    CHECK(outcome.queries == 3);

    // Oracle: brute-force every candidate fill.
    auto seq = tokenize_words("river stone cloud");
    std::size_t best = 0;
    double best_score = 2.0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        double s = detector.score(seq.render({"river", cands[i].word, "cloud"}), {});
        if (s < best_score) {
            best = i;
            best_score = s;
        }
    }
    double original_score = detector.score("river stone cloud", {});
    if (best_score < original_score) {
        CHECK(outcome.accepted);
        CHECK(state.surfaces[1] == cands[best].word);
        CHECK(state.score == best_score);
        CHECK(outcome.record.index == 1);
        CHECK(outcome.record.original == "stone");
        CHECK(outcome.record.replacement == cands[best].word);
        CHECK(outcome.record.score_before == original_score);
        CHECK(outcome.record.score_after == best_score);
        CHECK(state.substituted == std::set<std::size_t>{1});
    } else {
        CHECK_FALSE(outcome.accepted);
        CHECK(state.surfaces[1] == "stone");
    }
}

TEST_CASE("greedy step agrees with a brute-force oracle over random inputs") {
    std::mt19937_64 rng(41);
    HashDetector detector;
    auto constraints = open_constraints();
    const std::vector<std::string> vocab = {"amber", "bronze", "copper", "denim",
                                            "ember", "fjord", "grove", "heath"};
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + rng() % 8;
        auto state = TextState::from_text(random_text(rng, n));
        state.score = detector.score(state.render(), {});
        std::size_t index = rng() % n;
        std::size_t m = 1 + rng() % 5;
        std::vector<Candidate> cands;
        for (std::size_t i = 0; i < m; ++i) cands.push_back({vocab[rng() % vocab.size()], 0.1, {}});

        // Oracle: lowest-scoring fill, ties to the earlier candidate, accept
        // only on strict improvement.
        std::size_t best = 0;
        double best_score = 2.0;
        for (std::size_t i = 0; i < m; ++i) {
            auto surfaces = state.surfaces;
            surfaces[index] = apply_case(state.surfaces[index], cands[i].word);
            double s = detector.score(state.words.render(surfaces), {});
            if (s < best_score) {
                best = i;
                best_score = s;
            }
        }
        bool expect_accept = best_score < state.score;

        auto before = state;
        auto outcome = try_replace(detector, constraints, state, index, cands);
        CHECK(outcome.accepted == expect_accept);
        CHECK(outcome.queries == static_cast<long>(m));
        if (expect_accept) {
            CHECK(state.surfaces[index] == apply_case(before.surfaces[index], cands[best].word));
            CHECK(state.score == best_score);
        } else {
            CHECK(state.surfaces == before.surfaces);
            CHECK(state.score == before.score);
            CHECK(state.substituted == before.substituted);
        }
    }
}

TEST_CASE("rejection by a constraint leaves the state untouched") {
    HashDetector detector;
    auto state = TextState::from_text("river stone");
    state.score = 1.0; // every candidate improves on this

    ConstraintSet strict = open_constraints();
    strict.mpr_enabled = true; // one change in a two-word text is ratio 0.5 > 0.4

    auto before_surfaces = state.surfaces;
    auto outcome = try_replace(detector, strict, state, 0, {{"cloud", 1.0, {}}});
    CHECK_FALSE(outcome.accepted);
    CHECK(outcome.violation == ConstraintViolation::MPR);
    CHECK(outcome.queries == 1);
    CHECK(state.surfaces == before_surfaces);
    CHECK(state.substituted.empty());
}

TEST_CASE("try_replace validates arguments") {
    HashDetector detector;
    auto state = TextState::from_text("river stone");
    state.score = 0.5;
    CHECK_THROWS_AS(try_replace(detector, open_constraints(), state, 0, {}), ValidationError);
    CHECK_THROWS_AS(try_replace(detector, open_constraints(), state, 2, {{"x", 1.0, {}}}),
                    ValidationError);
}

TEST_CASE("rendering preserves punctuation and casing around replacements") {
    auto state = TextState::from_text("Hello, world! (Nice day.)");
    state.surfaces[1] = "planet";
    CHECK(state.render() == "Hello, planet! (Nice day.)");
    state.surfaces[0] = apply_case("Hello", "greetings");
    CHECK(state.render() == "Greetings, planet! (Nice day.)");
}
