#include "hmgc/dynamic.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hmgc/errors.hpp"
#include "hmgc/metrics.hpp"
#include "hmgc/surrogate.hpp"

namespace hmgc {

namespace fs = std::filesystem;
using nlohmann::json;

void DynamicConfig::validate() const {
    if (rounds < 1) throw ValidationError("rounds must be >= 1");
    if (train_fraction <= 0.0 || train_fraction >= 1.0)
        throw ValidationError("train_fraction must be in (0,1)");
    train.validate();
    attack.validate();
}

void save_reports(const std::vector<RoundReport>& reports, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write reports file: " + path);
    for (const auto& r : reports) {
        json j;
        j["round"] = r.round;
        j["auc"] = r.auc;
        j["ppv"] = r.ppv;
        j["tnr"] = r.tnr;
        j["delta_acc"] = r.delta_acc;
        j["mean_seconds"] = r.mean_seconds;
        j["train_added"] = r.train_added;
        j["eval_size"] = r.eval_size;
        out << j.dump() << "\n";
    }
}

std::vector<RoundReport> load_reports(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open reports file: " + path);
    std::vector<RoundReport> reports;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        RoundReport r;
        r.round = j.at("round").get<int>();
        r.auc = j.at("auc").get<double>();
        r.ppv = j.at("ppv").get<double>();
        r.tnr = j.at("tnr").get<double>();
        r.delta_acc = j.at("delta_acc").get<double>();
        r.mean_seconds = j.at("mean_seconds").get<double>();
        r.train_added = j.at("train_added").get<long>();
        r.eval_size = j.at("eval_size").get<long>();
        reports.push_back(r);
    }
    return reports;
}

void render_round_plot(const std::vector<RoundReport>& reports, const std::string& path) {
    if (reports.empty()) throw ValidationError("render_round_plot: no reports");
    const double width = 640, height = 400, ml = 60, mr = 20, mt = 30, mb = 50;
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto x_of = [&](std::size_t i) {
        if (reports.size() == 1) return ml + pw / 2;
        return ml + pw * static_cast<double>(i) / static_cast<double>(reports.size() - 1);
    };
    auto y_of = [&](double pct) { return mt + ph * (1.0 - pct / 100.0); };

    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write plot file: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (int pct = 0; pct <= 100; pct += 25) {
        out << "<line x1=\"" << ml << "\" y1=\"" << y_of(pct) << "\" x2=\"" << width - mr
            << "\" y2=\"" << y_of(pct) << "\" stroke=\"#ddd\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << y_of(pct) + 4
            << "\" text-anchor=\"end\" font-size=\"12\">" << pct << "</text>\n";
    }
    auto series = [&](auto value_of, const char* color, const char* name, double legend_y) {
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < reports.size(); ++i)
            out << x_of(i) << "," << y_of(value_of(reports[i])) << " ";
        out << "\"/>\n";
        for (std::size_t i = 0; i < reports.size(); ++i)
            out << "<circle cx=\"" << x_of(i) << "\" cy=\"" << y_of(value_of(reports[i]))
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << width - mr - 70 << "\" y=\"" << legend_y
            << "\" font-size=\"12\" fill=\"" << color << "\">" << name << "</text>\n";
    };
    series([](const RoundReport& r) { return r.tnr; }, "#c0392b", "TNR", mt + 14);
    series([](const RoundReport& r) { return r.auc; }, "#2980b9", "AUC", mt + 30);
    for (std::size_t i = 0; i < reports.size(); ++i)
        out << "<text x=\"" << x_of(i) << "\" y=\"" << height - mb + 20
            << "\" text-anchor=\"middle\" font-size=\"12\">" << reports[i].round << "</text>\n";
    out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-size=\"13\">round</text>\n";
    out << "</svg>\n";
}

namespace {

std::string round_dir(const std::string& base, int round) {
    return base + "/rounds/" + std::to_string(round);
}

void write_round_artifacts(const std::string& base, int round, const ReferenceDetector& detector,
                           const std::vector<AttackResult>& results, const Corpus& train_set) {
    if (round < 1) throw ValidationError("round artifacts: round must be >= 1");
    fs::create_directories(round_dir(base, round));
    detector.save(round_dir(base, round) + "/surrogate-round-" + std::to_string(round));
    std::vector<AttackRecord> records;
    records.reserve(results.size());
    for (const auto& r : results) records.push_back(r.to_record());
    save_results(records, round_dir(base, round) + "/adversarial.jsonl");
    save_corpus(train_set, round_dir(base, round) + "/train.jsonl");
}

} // namespace

std::vector<RoundReport> run_rounds(const Corpus& corpus,
                                    std::shared_ptr<ReferenceDetector> detector,
                                    const ScorerBundle& scorers, const DynamicConfig& config) {
    config.validate();
    if (!detector) throw ValidationError("run_rounds: missing detector");

    std::vector<const Sample*> machine, human;
    for (const auto& s : corpus)
        (s.label == Label::machine ? machine : human).push_back(&s);
    if (machine.size() < config.rounds)
        throw ValidationError("run_rounds: fewer machine samples than rounds");

    std::mt19937_64 rng(static_cast<unsigned long long>(config.split_seed));
    std::shuffle(machine.begin(), machine.end(), rng);
    std::shuffle(human.begin(), human.end(), rng);

    // Humans are split half for round evaluation, half for fine-tuning
    // resamples; the two never mix, so no fine-tuning text is evaluated.
    std::size_t human_eval_count = human.size() / 2;
    std::vector<const Sample*> human_eval(human.begin(),
                                          human.begin() + static_cast<long>(human_eval_count));
    std::vector<const Sample*> human_train(human.begin() + static_cast<long>(human_eval_count),
                                           human.end());

    auto part_of = [&](const std::vector<const Sample*>& pool, std::size_t r,
                       std::size_t rounds) {
        std::size_t base = pool.size() / rounds, rem = pool.size() % rounds;
        std::size_t begin = r * base + std::min(r, rem);
        std::size_t len = base + (r < rem ? 1 : 0);
        return std::vector<const Sample*>(pool.begin() + static_cast<long>(begin),
                                          pool.begin() + static_cast<long>(begin + len));
    };

    std::vector<RoundReport> reports;
    std::vector<std::pair<std::string, Label>> cumulative;
    std::size_t first_round = 0;

    if (config.resume) {
        if (config.artifacts_dir.empty())
            throw ValidationError("run_rounds: resume requires an artifacts directory");
        std::string reports_path = config.artifacts_dir + "/reports.jsonl";
        if (fs::exists(reports_path)) {
            reports = load_reports(reports_path);
            first_round = reports.size();
            if (first_round > 0) {
                auto loaded = ReferenceDetector::load(
                    round_dir(config.artifacts_dir, static_cast<int>(first_round)) +
                    "/surrogate-round-" + std::to_string(first_round));
                *detector = *loaded;
                for (std::size_t r = 1; r <= first_round; ++r) {
                    Corpus train = load_corpus(
                        round_dir(config.artifacts_dir, static_cast<int>(r)) + "/train.jsonl");
                    for (const auto& s : train) cumulative.push_back({s.text, s.label});
                }
            }
        }
    }

    for (std::size_t r = first_round; r < config.rounds; ++r) {
        auto part = part_of(machine, r, config.rounds);
        Corpus part_corpus;
        for (const auto* s : part) part_corpus.push_back(*s);
        auto attacked = attack_corpus(part_corpus, *detector, scorers, config.attack);
        const auto& results = attacked.results;

        // 80/20 harvest/holdout split of this round's adversarial outputs.
        std::vector<std::size_t> order(results.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::mt19937_64 round_rng(
            static_cast<unsigned long long>(config.split_seed + 100 + static_cast<long>(r)));
        std::shuffle(order.begin(), order.end(), round_rng);
        std::size_t n_train =
            static_cast<std::size_t>(config.train_fraction * static_cast<double>(order.size()));
        std::vector<std::size_t> train_idx(order.begin(), order.begin() + static_cast<long>(n_train));
        std::vector<std::size_t> eval_idx(order.begin() + static_cast<long>(n_train), order.end());

        // Evaluate the round with the detector that produced the attacks.
        auto humans = part_of(human_eval, r, config.rounds);
        if (humans.size() > eval_idx.size()) humans.resize(eval_idx.size());

        std::vector<double> human_scores; // probability of the positive (human) class
        std::vector<bool> pos_labels;
        std::vector<Label> predictions, truth;
        long pre_tn = 0;
        for (std::size_t i : eval_idx) {
            const auto& res = results[i];
            if (detector->decide(res.original_text, config.attack.tau) == Label::machine)
                ++pre_tn;
            double s = detector->score(res.adversarial_text);
            human_scores.push_back(1.0 - s);
            pos_labels.push_back(false);
            predictions.push_back(s >= config.attack.tau ? Label::machine : Label::human);
            truth.push_back(Label::machine);
        }
        for (const auto* h : humans) {
            double s = detector->score(h->text);
            human_scores.push_back(1.0 - s);
            pos_labels.push_back(true);
            predictions.push_back(s >= config.attack.tau ? Label::machine : Label::human);
            truth.push_back(Label::human);
        }

        RoundReport report;
        report.round = static_cast<int>(r) + 1;
        report.eval_size = static_cast<long>(human_scores.size());
        report.mean_seconds = attacked.stats.mean_seconds;
        auto cm = confusion(predictions, truth);
        report.ppv = cm.ppv() ? *cm.ppv() * 100.0 : 0.0;
        report.tnr = cm.tnr() ? *cm.tnr() * 100.0 : 0.0;
        try {
            report.auc = auc_roc(human_scores, pos_labels) * 100.0;
        } catch (const UndefinedMetricError&) {
            report.auc = 0.0;
        }
        double tnr_before =
            eval_idx.empty() ? 0.0
                             : 100.0 * static_cast<double>(pre_tn) /
                                   static_cast<double>(eval_idx.size());
        report.delta_acc = tnr_before > 0.0 ? delta_acc(tnr_before, report.tnr) : 0.0;

        // Harvest: adversarial texts as machine, their originals as rehearsal
        // (so fine-tuning does not unlearn the pre-attack signal), plus an
        // equal human resample.
        Corpus round_train;
        for (std::size_t i : train_idx) {
            Sample s;
            s.id = "adv-r" + std::to_string(r + 1) + "-" + results[i].id;
            s.text = results[i].adversarial_text;
            s.label = Label::machine;
            s.source = "adversarial";
            round_train.push_back(std::move(s));
            Sample o;
            o.id = "org-r" + std::to_string(r + 1) + "-" + results[i].id;
            o.text = results[i].original_text;
            o.label = Label::machine;
            o.source = "rehearsal";
            round_train.push_back(std::move(o));
        }
        if (!human_train.empty()) {
            std::uniform_int_distribution<std::size_t> pick(0, human_train.size() - 1);
            // Two machine texts (adversarial + original) per harvested attack,
            // so draw two human resamples each to keep the classes balanced.
            for (std::size_t i = 0; i < 2 * train_idx.size(); ++i) {
                const Sample* h = human_train[pick(round_rng)];
                Sample s = *h;
                s.id = "res-r" + std::to_string(r + 1) + "-" + std::to_string(i) + "-" + h->id;
                round_train.push_back(std::move(s));
            }
        }
        for (const auto& s : round_train) cumulative.push_back({s.text, s.label});
        report.train_added = static_cast<long>(round_train.size());

        if (!cumulative.empty() && config.train.epochs > 0)
            finetune(*detector, cumulative, config.train);

        reports.push_back(report);
        if (!config.artifacts_dir.empty()) {
            write_round_artifacts(config.artifacts_dir, report.round, *detector, results,
                                  round_train);
            save_reports(reports, config.artifacts_dir + "/reports.jsonl");
        }
    }
    return reports;
}

} // namespace hmgc
