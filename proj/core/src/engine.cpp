#include "hmgc/engine.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <iostream>
#include <mutex>

#include "hmgc/errors.hpp"
#include "hmgc/importance.hpp"

namespace hmgc {

void AttackConfig::validate() const {
    if (tau <= 0.0 || tau >= 1.0) throw ValidationError("tau must be in (0,1)");
    if (attack_k < 1) throw ValidationError("attack_k must be >= 1");
    if (candidates_m < 1) throw ValidationError("candidates_m must be >= 1");
    if (alpha < 0.0 || alpha > 1.0) throw ValidationError("alpha must be in [0,1]");
    if (max_passes < 1) throw ValidationError("max_passes must be >= 1");
    if (max_queries < 1) throw ValidationError("max_queries must be >= 1");
    if (max_perturb_ratio <= 0.0 || max_perturb_ratio > 1.0)
        throw ValidationError("max_perturb_ratio must be in (0,1]");
    if (use_window < 1) throw ValidationError("use_window must be >= 1");
    if (use_threshold < 0.0 || use_threshold > 1.0)
        throw ValidationError("use_threshold must be in [0,1]");
    if (workers < 1) throw ValidationError("workers must be >= 1");
}

ConstraintSet AttackConfig::constraints(const ScorerBundle& scorers) const {
    ConstraintSet set;
    set.pos_enabled = pos_enabled;
    set.mpr_enabled = mpr_enabled;
    set.use_enabled = use_enabled;
    set.max_perturb_ratio = max_perturb_ratio;
    set.use_window = use_window;
    set.use_threshold = use_threshold;
    set.encoder = scorers.encoder;
    set.tagger = scorers.tagger;
    return set;
}

std::string to_string(TerminationReason r) {
    switch (r) {
        case TerminationReason::below_tau: return "below_tau";
        case TerminationReason::pass_limit: return "pass_limit";
        case TerminationReason::query_limit: return "query_limit";
        case TerminationReason::no_progress: return "no_progress";
        case TerminationReason::already_below_tau: return "already_below_tau";
    }
    return "pass_limit";
}

AttackRecord AttackResult::to_record() const {
    return {id,      original_text, adversarial_text, score_before, score_after,
            success, queries,       perturbed_ratio,  seconds};
}

AttackResult attack(const Sample& sample, const WhiteBoxDetector& detector,
                    const ScorerBundle& scorers, const AttackConfig& config) {
    config.validate();
    if (sample.label != Label::machine)
        throw ValidationError("attack: sample '" + sample.id + "' is not machine-labeled");
    if (!scorers.predictor || !scorers.perplexity)
        throw ValidationError("attack: missing masked predictor or perplexity scorer");

    const auto t0 = std::chrono::steady_clock::now();
    const auto requirement =
        config.pass_requirement ? sample.requirement : std::optional<std::string>{};
    const ConstraintSet constraint_set = config.constraints(scorers);

    AttackResult result;
    result.id = sample.id;
    result.original_text = sample.text;

    long queries = 0;
    auto scored = [&](const std::string& text) {
        ++queries;
        return detector.score(text, requirement);
    };

    TextState state = TextState::from_text(sample.text);
    state.score = scored(sample.text);
    result.score_before = state.score;

    auto finish = [&](TerminationReason reason) {
        result.reason = reason;
        result.adversarial_text = state.render();
        result.score_after = state.score;
        result.success = state.score < config.tau;
        result.queries = queries;
        result.perturbed_ratio = perturbed_ratio(state.words, state.substituted);
        if (config.timing) {
            result.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        return result;
    };

    if (state.score < config.tau) return finish(TerminationReason::already_below_tau);

    for (std::size_t pass = 0; pass < config.max_passes; ++pass) {
        const std::string current = state.render();
        std::vector<double> grad = gradient_importance(detector, current);
        std::vector<double> ppl(grad.size(), 0.0);
        if (state.words.size() >= 2) ppl = perplexity_importance(*scorers.perplexity, current);
        auto profile = combined_importance(grad, ppl, config.alpha);
        auto order = rank_words(profile, config.attack_k, state.substituted);

        bool accepted_any = false;
        for (std::size_t index : order) {
            if (queries >= config.max_queries) return finish(TerminationReason::query_limit);
            auto candidates =
                generate_candidates(*scorers.predictor, state.words, index, config.candidates_m);
            if (candidates.empty()) continue;
            if (queries + static_cast<long>(candidates.size()) > config.max_queries)
                return finish(TerminationReason::query_limit);
            auto outcome = try_replace(detector, constraint_set, state, index, candidates,
                                       requirement);
            queries += outcome.queries;
            if (outcome.accepted) {
                accepted_any = true;
                result.trace.push_back(outcome.record);
                if (config.verbose)
                    std::cerr << sample.id << ": [" << index << "] '" << outcome.record.original
                              << "' -> '" << outcome.record.replacement << "' score "
                              << outcome.record.score_after << "\n";
                if (state.score < config.tau) return finish(TerminationReason::below_tau);
            } else if (outcome.violation != ConstraintViolation::none) {
                result.rejections.push_back(outcome.violation);
                if (config.verbose)
                    std::cerr << sample.id << ": [" << index << "] rejected ("
                              << to_string(outcome.violation) << ")\n";
            }
        }
        if (state.score < config.tau) return finish(TerminationReason::below_tau);
        if (!accepted_any) return finish(TerminationReason::no_progress);
    }
    return finish(TerminationReason::pass_limit);
}

CorpusAttackResult attack_corpus(const Corpus& samples, const WhiteBoxDetector& detector,
                                 const ScorerBundle& scorers, const AttackConfig& config) {
    config.validate();
    if (samples.empty()) throw ValidationError("attack_corpus: empty corpus");

    std::vector<const Sample*> machine;
    for (const auto& s : samples)
        if (s.label == Label::machine) machine.push_back(&s);

    CorpusAttackResult out;
    std::vector<std::optional<AttackResult>> slots(machine.size());
    std::vector<std::pair<std::size_t, std::string>> errors;
    std::mutex error_mutex;

    auto run_one = [&](std::size_t i) {
        try {
            slots[i] = attack(*machine[i], detector, scorers, config);
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(error_mutex);
            errors.push_back({i, e.what()});
        }
    };

    std::size_t workers = config.workers;
    if (workers > 1 && !detector.concurrent_safe()) workers = 1;

    if (workers <= 1) {
        for (std::size_t i = 0; i < machine.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (std::size_t i = next.fetch_add(1); i < machine.size(); i = next.fetch_add(1))
                run_one(i);
        };
        std::vector<std::future<void>> futs;
        for (std::size_t w = 0; w < workers; ++w)
            futs.push_back(std::async(std::launch::async, worker));
        for (auto& f : futs) f.get();
    }

    for (std::size_t i = 0; i < slots.size(); ++i)
        if (slots[i]) out.results.push_back(std::move(*slots[i]));
    std::sort(errors.begin(), errors.end());
    for (const auto& [i, msg] : errors) out.failures.push_back({machine[i]->id, msg});

    out.stats.attacked = out.results.size();
    double q = 0.0, sec = 0.0;
    for (const auto& r : out.results) {
        if (r.success) ++out.stats.successes;
        q += static_cast<double>(r.queries);
        sec += r.seconds;
    }
    if (!out.results.empty()) {
        out.stats.mean_queries = q / static_cast<double>(out.results.size());
        out.stats.mean_seconds = sec / static_cast<double>(out.results.size());
    }
    return out;
}

} // namespace hmgc
