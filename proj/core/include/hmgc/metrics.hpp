#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hmgc/corpus.hpp"
#include "hmgc/scorers.hpp"

namespace hmgc {

// Positive = human-written.
struct ConfusionMatrix {
    long tp = 0, fp = 0, tn = 0, fn = 0;

    std::optional<double> ppv() const; // tp / (tp + fp)
    std::optional<double> tnr() const; // tn / (tn + fp)
    long total() const { return tp + fp + tn + fn; }
};

struct EvalReport {
    double auc = 0.0;
    std::optional<double> ppv;
    std::optional<double> tnr;
    std::optional<double> delta_acc;
    double delta_flesch_pct = 0.0;
    double delta_ppl = 0.0;
    long n = 0;

    std::string to_line() const;  // single-line record
    std::string to_table() const; // aligned human-readable table
};

// Mann-Whitney statistic via rank sums: P(score_pos > score_neg) with
// half-credit for ties. Labels: true = positive.
double auc_roc(const std::vector<double>& scores, const std::vector<bool>& labels);

ConfusionMatrix confusion(const std::vector<Label>& predictions,
                          const std::vector<Label>& truth);

// 100 * (tnr_before - tnr_after) / tnr_before; inputs in any common scale.
double delta_acc(double tnr_before, double tnr_after);

// Deterministic vowel-group syllable estimate (silent final e dropped
// except after l; at least one syllable per word).
long count_syllables(const std::string& word);

// 206.835 - 1.015*(words/sentences) - 84.6*(syllables/words); sentences
// split on terminal punctuation.
double flesch(const std::string& text);

double delta_ppl(const PerplexityScorer& scorer, const std::string& before,
                 const std::string& after);

} // namespace hmgc
