#include "hmgc/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "hmgc/errors.hpp"

namespace hmgc {

std::optional<double> ConfusionMatrix::ppv() const {
    if (tp + fp == 0) return std::nullopt;
    return static_cast<double>(tp) / static_cast<double>(tp + fp);
}

std::optional<double> ConfusionMatrix::tnr() const {
    if (tn + fp == 0) return std::nullopt;
    return static_cast<double>(tn) / static_cast<double>(tn + fp);
}

double auc_roc(const std::vector<double>& scores, const std::vector<bool>& labels) {
    if (scores.size() != labels.size()) throw ValidationError("auc_roc: length mismatch");
    long pos = std::count(labels.begin(), labels.end(), true);
    long neg = static_cast<long>(labels.size()) - pos;
    if (pos == 0 || neg == 0)
        throw UndefinedMetricError("auc_roc: both classes must be present");

    // Rank-sum with mid-ranks for ties.
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    double pos_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
        double mid_rank = (static_cast<double>(i) + static_cast<double>(j - 1)) / 2.0 + 1.0;
        for (std::size_t k = i; k < j; ++k)
            if (labels[order[k]]) pos_rank_sum += mid_rank;
        i = j;
    }
    double u = pos_rank_sum - static_cast<double>(pos) * (static_cast<double>(pos) + 1.0) / 2.0;
    return u / (static_cast<double>(pos) * static_cast<double>(neg));
}

ConfusionMatrix confusion(const std::vector<Label>& predictions,
                          const std::vector<Label>& truth) {
    if (predictions.size() != truth.size()) throw ValidationError("confusion: length mismatch");
    if (predictions.empty()) throw ValidationError("confusion: empty input");
    ConfusionMatrix m;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        bool pred_human = predictions[i] == Label::human;
        bool true_human = truth[i] == Label::human;
        if (pred_human && true_human) ++m.tp;
        else if (pred_human && !true_human) ++m.fp;
        else if (!pred_human && !true_human) ++m.tn;
        else ++m.fn;
    }
    return m;
}

double delta_acc(double tnr_before, double tnr_after) {
    if (tnr_before <= 0.0)
        throw UndefinedMetricError("delta_acc: pre-attack TNR must be positive");
    return 100.0 * (tnr_before - tnr_after) / tnr_before;
}

long count_syllables(const std::string& word) {
    auto is_vowel = [](char c) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
    };
    long groups = 0;
    bool in_group = false;
    for (char c : word) {
        if (is_vowel(c)) {
            if (!in_group) ++groups;
            in_group = true;
        } else {
            in_group = false;
        }
    }
    // Silent final e ("make"), kept when it carries the syllable ("little").
    std::string w = lowercase(word);
    if (groups > 1 && w.size() >= 2 && w.back() == 'e' &&
        !is_vowel(w[w.size() - 2]) && w[w.size() - 2] != 'l')
        --groups;
    return std::max<long>(groups, 1);
}

double flesch(const std::string& text) {
    auto words = tokenize_words(text); // throws on empty text
    // A sentence per terminal-punctuation run, plus one for trailing
    // unterminated content.
    long sentences = 0;
    bool in_terminal = false;
    bool pending_content = false;
    for (char c : text) {
        if (c == '.' || c == '!' || c == '?') {
            if (!in_terminal) ++sentences;
            in_terminal = true;
            pending_content = false;
        } else {
            in_terminal = false;
            if (!std::isspace(static_cast<unsigned char>(c))) pending_content = true;
        }
    }
    if (pending_content || sentences == 0) ++sentences;

    long syllables = 0;
    for (const auto& w : words.words) syllables += count_syllables(w.surface);
    double nw = static_cast<double>(words.size());
    return 206.835 - 1.015 * (nw / static_cast<double>(sentences)) -
           84.6 * (static_cast<double>(syllables) / nw);
}

double delta_ppl(const PerplexityScorer& scorer, const std::string& before,
                 const std::string& after) {
    return scorer.ppl(after) - scorer.ppl(before);
}

namespace {
std::string fmt(std::optional<double> v, double scale = 100.0) {
    if (!v) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", *v * scale);
    return buf;
}
std::string fmt_raw(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}
} // namespace

std::string EvalReport::to_line() const {
    std::ostringstream out;
    out << "auc=" << fmt_raw(auc * 100.0) << " ppv=" << fmt(ppv) << " tnr=" << fmt(tnr)
        << " delta_acc=" << (delta_acc ? fmt_raw(*delta_acc) : "n/a")
        << " delta_flesch_pct=" << fmt_raw(delta_flesch_pct)
        << " delta_ppl=" << fmt_raw(delta_ppl) << " n=" << n;
    return out.str();
}

std::string EvalReport::to_table() const {
    std::ostringstream out;
    out << "  AUC     PPV     TNR     dAcc    dFlesch%  dPPL    n\n";
    auto cell = [](const std::string& s) {
        std::string c = s;
        c.resize(8, ' ');
        return c;
    };
    out << "  " << cell(fmt_raw(auc * 100.0)) << cell(fmt(ppv)) << cell(fmt(tnr))
        << cell(delta_acc ? fmt_raw(*delta_acc) : "n/a") << cell(fmt_raw(delta_flesch_pct)) << ' '
        << cell(fmt_raw(delta_ppl)) << n << "\n";
    return out.str();
}

} // namespace hmgc
