#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <memory>

#include "hmgc/engine.hpp"
#include "hmgc/errors.hpp"
#include "hmgc/reference.hpp"
#include "hmgc/registry.hpp"
#include "hmgc/synthetic.hpp"

using namespace hmgc;

namespace {

TrainConfig toy_train() {
    TrainConfig c;
    c.learning_rate = 2.0;
    c.epochs = 60;
    c.batch_size = 4096;
    c.seed = 5;
    return c;
}

struct Fixture {
    SyntheticData data;
    std::shared_ptr<ReferenceDetector> detector;
    ScorerBundle scorers;

    Fixture() : data(make_synthetic({40, 40, 20, 7})) {
        detector = reference_detector_train(data.corpus, toy_train());
        scorers = make_scorers("reference", data.background);
    }
};

const Fixture& fixture() {
    static Fixture f;
    return f;
}

AttackConfig quiet_config() {
    AttackConfig c;
    c.timing = false;
    return c;
}

// Counts every score() call; gradients are free.
class CountingDetector : public WhiteBoxDetector {
public:
    explicit CountingDetector(std::shared_ptr<ReferenceDetector> inner)
        : inner_(std::move(inner)) {}
    double score(const std::string& text, const std::optional<std::string>& req) const override {
        ++calls;
        return inner_->score(text, req);
    }
    std::vector<std::vector<double>> word_gradients(const std::string& text) const override {
        return inner_->word_gradients(text);
    }
    mutable std::atomic<long> calls{0};

private:
    std::shared_ptr<ReferenceDetector> inner_;
};

// Constant high score: nothing the attack tries can make progress.
class FlatDetector : public WhiteBoxDetector {
public:
    double score(const std::string&, const std::optional<std::string>&) const override {
        return 0.9;
    }
    std::vector<std::vector<double>> word_gradients(const std::string& text) const override {
        return std::vector<std::vector<double>>(tokenize_words(text).size(),
                                                std::vector<double>{0.0});
    }
};

const Sample& first_machine(const Corpus& corpus) {
    for (const auto& s : corpus)
        if (s.label == Label::machine) return s;
    throw std::runtime_error("no machine sample");
}

bool records_equal(const AttackRecord& a, const AttackRecord& b) {
    return a.id == b.id && a.original_text == b.original_text &&
           a.adversarial_text == b.adversarial_text && a.score_before == b.score_before &&
           a.score_after == b.score_after && a.success == b.success && a.queries == b.queries &&
           a.perturbed_ratio == b.perturbed_ratio && a.seconds == b.seconds;
}

} // namespace

TEST_CASE("the attack rewrites a marked text below the decision threshold") {
    const auto& f = fixture();
    const Sample& sample = first_machine(f.data.corpus);
    REQUIRE(f.detector->score(sample.text) >= 0.5);

    auto result = attack(sample, *f.detector, f.scorers, quiet_config());
    CHECK(result.success);
    CHECK(result.reason == TerminationReason::below_tau);
    CHECK(result.score_after < 0.5);
    CHECK(result.score_after < result.score_before);
    CHECK(result.adversarial_text != sample.text);
    CHECK_FALSE(result.trace.empty());
    CHECK(result.perturbed_ratio > 0.0);
    CHECK(result.perturbed_ratio <= 0.40 + 1e-12);
    // Timing disabled -> no wall-clock leak into the record.
    CHECK(result.seconds == 0.0);
}

TEST_CASE("every substitution in the trace improves the surrogate score") {
    const auto& f = fixture();
    auto result = attack(first_machine(f.data.corpus), *f.detector, f.scorers, quiet_config());
    for (const auto& step : result.trace) CHECK(step.score_after < step.score_before);
    for (std::size_t i = 1; i < result.trace.size(); ++i)
        CHECK(result.trace[i].score_before == result.trace[i - 1].score_after);
}

TEST_CASE("reported queries equal actual detector calls and respect the budget") {
    const auto& f = fixture();
    auto counting = std::make_shared<CountingDetector>(f.detector);
    auto config = quiet_config();

    const Sample& sample = first_machine(f.data.corpus);
    auto result = attack(sample, *counting, f.scorers, config);
    CHECK(result.queries == counting->calls.load());
    CHECK(result.queries <= config.max_queries);

    counting->calls = 0;
    config.max_queries = 1; // the initial assessment exhausts the budget
    auto limited = attack(sample, *counting, f.scorers, config);
    CHECK(limited.queries == counting->calls.load());
    CHECK(limited.queries <= 1);
    CHECK(limited.reason == TerminationReason::query_limit);
    CHECK_FALSE(limited.success);
}

TEST_CASE("texts already under the threshold are returned untouched") {
    const auto& f = fixture();
    Sample easy{"e1", std::nullopt, "Table chair stone river cloud garden.", Label::machine, "t"};
    REQUIRE(f.detector->score(easy.text) < 0.5);
    auto result = attack(easy, *f.detector, f.scorers, quiet_config());
    CHECK(result.reason == TerminationReason::already_below_tau);
    CHECK(result.success);
    CHECK(result.adversarial_text == easy.text);
    CHECK(result.queries == 1);
    CHECK(result.trace.empty());
    CHECK(result.perturbed_ratio == 0.0);
}

TEST_CASE("a detector that never improves terminates with no progress") {
    const auto& f = fixture();
    FlatDetector flat;
    auto result = attack(first_machine(f.data.corpus), flat, f.scorers, quiet_config());
    CHECK(result.reason == TerminationReason::no_progress);
    CHECK_FALSE(result.success);
    CHECK(result.adversarial_text == result.original_text);
    CHECK(result.score_after == 0.9);
}

TEST_CASE("attack rejects human-labeled samples and bad configs") {
    const auto& f = fixture();
    Sample human{"h", std::nullopt, "Some ordinary writing here.", Label::human, "t"};
    CHECK_THROWS_AS(attack(human, *f.detector, f.scorers, quiet_config()), ValidationError);

    auto bad = quiet_config();
    bad.tau = 1.5;
    CHECK_THROWS_AS(attack(first_machine(f.data.corpus), *f.detector, f.scorers, bad),
                    ValidationError);
    bad = quiet_config();
    bad.max_queries = 0;
    CHECK_THROWS_AS(attack(first_machine(f.data.corpus), *f.detector, f.scorers, bad),
                    ValidationError);
}

TEST_CASE("attack results are deterministic with timing off") {
    const auto& f = fixture();
    const Sample& sample = first_machine(f.data.corpus);
    auto a = attack(sample, *f.detector, f.scorers, quiet_config()).to_record();
    auto b = attack(sample, *f.detector, f.scorers, quiet_config()).to_record();
    CHECK(records_equal(a, b));
}

TEST_CASE("attack_corpus attacks machine samples in input order") {
    const auto& f = fixture();
    auto out = attack_corpus(f.data.corpus, *f.detector, f.scorers, quiet_config());
    std::vector<std::string> expected_ids;
    for (const auto& s : f.data.corpus)
        if (s.label == Label::machine) expected_ids.push_back(s.id);
    REQUIRE(out.results.size() == expected_ids.size());
    for (std::size_t i = 0; i < expected_ids.size(); ++i)
        CHECK(out.results[i].id == expected_ids[i]);
    CHECK(out.failures.empty());
    CHECK(out.stats.attacked == expected_ids.size());
    CHECK(out.stats.success_rate() > 0.9);
    CHECK(out.stats.mean_queries > 0.0);
}

TEST_CASE("per-sample failures are recorded without aborting the batch") {
    const auto& f = fixture();
    Corpus corpus;
    corpus.push_back(first_machine(f.data.corpus));
    corpus.push_back({"bad", std::nullopt, "   ", Label::machine, "t"});
    auto out = attack_corpus(corpus, *f.detector, f.scorers, quiet_config());
    CHECK(out.results.size() == 1);
    REQUIRE(out.failures.size() == 1);
    CHECK(out.failures[0].first == "bad");
    CHECK_FALSE(out.failures[0].second.empty());
}

TEST_CASE("parallel and serial corpus attacks agree") {
    const auto& f = fixture();
    Corpus subset(f.data.corpus.begin(), f.data.corpus.begin() + 10);
    auto serial_cfg = quiet_config();
    auto parallel_cfg = quiet_config();
    parallel_cfg.workers = 4;
    auto serial = attack_corpus(subset, *f.detector, f.scorers, serial_cfg);
    auto parallel = attack_corpus(subset, *f.detector, f.scorers, parallel_cfg);
    REQUIRE(serial.results.size() == parallel.results.size());
    for (std::size_t i = 0; i < serial.results.size(); ++i)
        CHECK(records_equal(serial.results[i].to_record(), parallel.results[i].to_record()));
}

TEST_CASE("synthetic corpus construction is deterministic and balanced") {
    auto a = make_synthetic({12, 10, 20, 3});
    auto b = make_synthetic({12, 10, 20, 3});
    REQUIRE(a.corpus.size() == 22);
    CHECK(a.background == b.background);
    for (std::size_t i = 0; i < a.corpus.size(); ++i) {
        CHECK(a.corpus[i].id == b.corpus[i].id);
        CHECK(a.corpus[i].text == b.corpus[i].text);
        CHECK(a.corpus[i].label == b.corpus[i].label);
    }
    std::size_t machine = 0;
    for (const auto& s : a.corpus)
        if (s.label == Label::machine) ++machine;
    CHECK(machine == 12);
}
