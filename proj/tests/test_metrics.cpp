#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hmgc/errors.hpp"
#include "hmgc/metrics.hpp"
#include "hmgc/reference.hpp"

using namespace hmgc;

namespace {

// O(n^2) pairwise oracle: P(score_pos > score_neg) + 0.5 P(equal).
double auc_oracle(const std::vector<double>& scores, const std::vector<bool>& labels) {
    double wins = 0.0;
    long pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!labels[i]) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j]) continue;
            ++pairs;
            if (scores[i] > scores[j]) wins += 1.0;
            else if (scores[i] == scores[j]) wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

} // namespace

TEST_CASE("auc hand cases") {
    CHECK(auc_roc({0.9, 0.1}, {true, false}) == doctest::Approx(1.0));
    CHECK(auc_roc({0.1, 0.9}, {true, false}) == doctest::Approx(0.0));
    CHECK(auc_roc({0.5, 0.5}, {true, false}) == doctest::Approx(0.5));
    // 2 positives, 2 negatives, one crossing: 3 of 4 pairs won.
    CHECK(auc_roc({0.8, 0.4, 0.6, 0.2}, {true, true, false, false}) == doctest::Approx(0.75));
}

TEST_CASE("auc matches the pairwise oracle with heavy ties") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 5 + rng() % 60;
        std::vector<double> scores;
        std::vector<bool> labels;
        bool any_pos = false, any_neg = false;
        for (std::size_t i = 0; i < n; ++i) {
            scores.push_back(static_cast<double>(rng() % 7) / 6.0); // quantized -> many ties
            bool pos = rng() % 2;
            labels.push_back(pos);
            (pos ? any_pos : any_neg) = true;
        }
        if (!any_pos || !any_neg) continue;
        CHECK(auc_roc(scores, labels) ==
              doctest::Approx(auc_oracle(scores, labels)).epsilon(1e-12));
    }
}

TEST_CASE("auc is undefined with a single class") {
    CHECK_THROWS_AS(auc_roc({0.1, 0.2}, {true, true}), UndefinedMetricError);
    CHECK_THROWS_AS(auc_roc({0.1, 0.2}, {false, false}), UndefinedMetricError);
    CHECK_THROWS_AS(auc_roc({}, {}), UndefinedMetricError);
    CHECK_THROWS_AS(auc_roc({0.1}, {true, false}), ValidationError);
}

TEST_CASE("confusion counts with human as the positive class") {
    std::vector<Label> truth = {Label::human, Label::human, Label::machine, Label::machine,
                                Label::machine};
    std::vector<Label> pred = {Label::human, Label::machine, Label::machine, Label::machine,
                               Label::human};
    auto cm = confusion(pred, truth);
    CHECK(cm.tp == 1); // human predicted human
    CHECK(cm.fn == 1); // human predicted machine
    CHECK(cm.tn == 2); // machine predicted machine
    CHECK(cm.fp == 1); // machine predicted human
    CHECK(cm.total() == 5);
    CHECK(*cm.ppv() == doctest::Approx(0.5));
    CHECK(*cm.tnr() == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("degenerate confusion rates are absent, not zero") {
    ConfusionMatrix none;
    none.fn = 2; // no positive predictions, no true machine samples
    CHECK_FALSE(none.ppv().has_value());
    CHECK_FALSE(none.tnr().has_value());
    CHECK_THROWS_AS(confusion({Label::human}, {}), ValidationError);
}

TEST_CASE("delta_acc matches the published anchor") {
    CHECK(delta_acc(99.63, 2.70) == doctest::Approx(97.29).epsilon(1e-4));
    CHECK(delta_acc(0.9963, 0.0270) == doctest::Approx(97.29).epsilon(1e-4));
    CHECK(delta_acc(0.5, 0.5) == doctest::Approx(0.0));
    CHECK(delta_acc(0.5, 0.0) == doctest::Approx(100.0));
    CHECK_THROWS_AS(delta_acc(0.0, 0.1), UndefinedMetricError);
}

TEST_CASE("syllable estimates") {
    CHECK(count_syllables("cat") == 1);
    CHECK(count_syllables("the") == 1);
    CHECK(count_syllables("make") == 1);      // silent final e
    CHECK(count_syllables("little") == 2);    // -le keeps the e syllable
    CHECK(count_syllables("happy") == 2);
    CHECK(count_syllables("over") == 2);
    CHECK(count_syllables("seven") == 2);
    CHECK(count_syllables("today") == 2);
    CHECK(count_syllables("beautiful") == 3);
    CHECK(count_syllables("rhythm") == 1);    // y as the only vowel
    CHECK(count_syllables("strength") == 1);
    CHECK(count_syllables("xkcd") == 1);      // floor of one per word
}

TEST_CASE("flesch hand case") {
    // 10 words, 1 sentence, 15 syllables:
    // 206.835 - 1.015*10 - 84.6*1.5 = 69.785.
    CHECK(flesch("The cat runs over seven happy little dogs today now.") ==
          doctest::Approx(69.785).epsilon(1e-9));
}

TEST_CASE("flesch sentence counting") {
    // Two terminated sentences plus a trailing unterminated one.
    double three = flesch("Cats run. Dogs sit! They nap");
    double one = flesch("Cats run and dogs sit and they nap");
    CHECK(three > one); // shorter sentences score easier
    CHECK(flesch("Stop!!! Go...") == flesch("Stop! Go.")); // punctuation runs collapse
    CHECK_THROWS_AS(flesch("   "), ValidationError);
}

TEST_CASE("delta_ppl is the perplexity shift of the rewrite") {
    auto model = ReferencePerplexity::fit({"a a a b", "a a c"});
    double expect = model.ppl("a b c") - model.ppl("a a a");
    CHECK(delta_ppl(model, "a a a", "a b c") == doctest::Approx(expect).epsilon(1e-12));
    CHECK(delta_ppl(model, "a a", "a a") == doctest::Approx(0.0));
}

TEST_CASE("report rendering includes every populated metric") {
    EvalReport report;
    report.auc = 0.9123;
    report.ppv = 0.8;
    report.tnr = 0.7;
    report.delta_acc = 12.5;
    report.delta_flesch_pct = -1.5;
    report.delta_ppl = 0.3;
    report.n = 42;
    auto line = report.to_line();
    CHECK(line.find("auc") != std::string::npos);
    CHECK(line.find("91.23") != std::string::npos); // rates render as percentages
    auto table = report.to_table();
    CHECK(table.find("AUC") != std::string::npos);
    CHECK(table.find("42") != std::string::npos);

    EvalReport sparse;
    sparse.auc = 0.5;
    sparse.n = 1;
    CHECK(sparse.to_table().find("n/a") != std::string::npos);
}
