// hmgc: word-level adversarial attack toolkit for machine-text detectors.
//
// Subcommands:
//   synth    generate the deterministic benchmark corpus and background texts
//   distill  train a white-box surrogate against a victim detector
//   attack   rewrite machine-labeled texts until the detector flips
//   dynamic  alternate attack rounds with detector fine-tuning
//   eval     score an attack-result file against a detector

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "hmgc/dynamic.hpp"
#include "hmgc/engine.hpp"
#include "hmgc/errors.hpp"
#include "hmgc/metrics.hpp"
#include "hmgc/registry.hpp"
#include "hmgc/surrogate.hpp"
#include "hmgc/synthetic.hpp"

namespace fs = std::filesystem;
using namespace hmgc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

void add_train_flags(CLI::App* cmd, TrainConfig& t) {
    cmd->add_option("--lr", t.learning_rate, "training learning rate")->capture_default_str();
    cmd->add_option("--epochs", t.epochs, "training epochs")->capture_default_str();
    cmd->add_option("--max-seq-len", t.max_sequence_length, "max words per training text")
        ->capture_default_str();
    cmd->add_option("--batch-size", t.batch_size, "training batch size")->capture_default_str();
}

void add_attack_flags(CLI::App* cmd, AttackConfig& a) {
    cmd->add_option("--tau", a.tau, "machine-probability decision threshold")
        ->capture_default_str();
    cmd->add_option("--alpha", a.alpha, "perplexity weight in word importance")
        ->capture_default_str();
    cmd->add_option("--attack-k", a.attack_k, "words attacked per pass")->capture_default_str();
    cmd->add_option("--candidates-m", a.candidates_m, "mask-fill candidates per word")
        ->capture_default_str();
    cmd->add_option("--max-perturb-ratio", a.max_perturb_ratio, "word substitution budget")
        ->capture_default_str();
    cmd->add_option("--use-window", a.use_window, "similarity window in words")
        ->capture_default_str();
    cmd->add_option("--use-threshold", a.use_threshold, "minimum window similarity")
        ->capture_default_str();
    cmd->add_option("--max-passes", a.max_passes, "attack passes per text")
        ->capture_default_str();
    cmd->add_option("--max-queries", a.max_queries, "detector query budget per text")
        ->capture_default_str();
    cmd->add_option("--workers", a.workers, "parallel attack workers")->capture_default_str();
    cmd->add_flag("--timing,!--no-timing", a.timing,
                  "record wall time per sample (disable for byte-identical reruns)")
        ->capture_default_str();
    cmd->add_flag("--verbose", a.verbose, "log substitutions and rejections");
}

// The --config value is consumed before CLI11 parsing (see expand_config);
// the option is declared anyway so it shows in --help and parses cleanly.
std::string g_config_path;

void add_config_option(CLI::App* cmd) {
    cmd->add_option("--config", g_config_path,
                    "flat key=value configuration file; command-line flags override it");
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Loads the configuration file named by --config (if any) and splices its
// entries in as flags right after the subcommand name, so explicit
// command-line flags take precedence by simply being present already.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);

    std::string config_path;
    std::set<std::string> cli_keys;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i].rfind("--", 0) != 0) continue;
        std::string key = args[i].substr(2);
        auto eq = key.find('=');
        std::string value = eq == std::string::npos ? "" : key.substr(eq + 1);
        if (eq != std::string::npos) key.resize(eq);
        cli_keys.insert(key);
        if (key == "config")
            config_path = value.empty() && i + 1 < args.size() ? args[i + 1] : value;
    }
    if (config_path.empty()) return args;
    if (!fs::exists(config_path))
        throw ValidationError("configuration file not found: " + config_path);

    // Both spellings of a boolean pair count as "given on the command line".
    auto given = [&](const std::string& key) {
        if (cli_keys.count(key)) return true;
        if (key == "timing") return cli_keys.count("no-timing") > 0;
        if (key == "no-timing") return cli_keys.count("timing") > 0;
        return false;
    };

    std::vector<std::string> injected;
    std::ifstream in(config_path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string entry = trim(line);
        if (entry.empty() || entry[0] == '#') continue;
        auto eq = entry.find('=');
        std::string key = trim(eq == std::string::npos ? entry : entry.substr(0, eq));
        std::string value = eq == std::string::npos ? "true" : trim(entry.substr(eq + 1));
        if (key.empty())
            throw ValidationError(config_path + ":" + std::to_string(lineno) +
                                  ": malformed configuration entry");
        if (key == "config" || given(key)) continue;
        injected.push_back("--" + key + "=" + value);
    }

    // args[0] is the subcommand name; config entries follow it.
    std::vector<std::string> out;
    if (!args.empty() && args[0].rfind("--", 0) != 0) {
        out.push_back(args[0]);
        out.insert(out.end(), injected.begin(), injected.end());
        out.insert(out.end(), args.begin() + 1, args.end());
    } else {
        out = std::move(args);
    }
    return out;
}

void require_input(const std::string& path, const std::string& what) {
    if (!fs::exists(path)) throw ValidationError(what + " not found: " + path);
}

std::string percent(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f%%", fraction * 100.0);
    return buf;
}

// ---------------------------------------------------------------- synth ----

struct SynthArgs {
    SyntheticSpec spec;
    std::string out;
    std::string background_out;
};

int cmd_synth(const SynthArgs& args) {
    auto data = make_synthetic(args.spec);
    save_corpus(data.corpus, args.out);
    save_background(data.background, args.background_out);
    std::cout << "wrote " << data.corpus.size() << " samples to " << args.out << " and "
              << data.background.size() << " background texts to " << args.background_out << "\n";
    return kExitOk;
}

// -------------------------------------------------------------- distill ----

struct DistillArgs {
    std::string corpus;
    std::string victim;
    std::string out;
    std::string log;
    TrainConfig train;
};

int cmd_distill(const DistillArgs& args) {
    args.train.validate();
    require_input(args.corpus, "corpus file");
    if (args.victim.rfind("train:", 0) == 0)
        require_input(args.victim.substr(6), "victim training corpus");
    else
        require_input(args.victim, "victim checkpoint");

    Corpus corpus = load_corpus(args.corpus);
    auto victim = resolve_detector(args.victim, args.train);
    auto result = distill(*victim, corpus, args.train);
    result.surrogate->save(args.out);

    std::ostringstream log;
    for (std::size_t e = 0; e < result.epoch_losses.size(); ++e) {
        char line[64];
        std::snprintf(line, sizeof(line), "epoch %zu loss %.17g\n", e + 1,
                      result.epoch_losses[e]);
        log << line;
    }
    log << "agreement " << percent(result.agreement) << "\n";
    if (!args.log.empty()) {
        std::ofstream out(args.log);
        if (!out) throw ValidationError("cannot write training log: " + args.log);
        out << log.str();
    }
    std::cout << "surrogate checkpoint: " << args.out << "\n"
              << "agreement: " << percent(result.agreement) << "\n";
    return kExitOk;
}

// --------------------------------------------------------------- attack ----

struct AttackArgs {
    std::string mode = "white";
    std::string corpus;
    std::string victim;
    std::string surrogate;
    std::string background;
    std::string scorers = "reference";
    std::string out;
    AttackConfig attack;
    TrainConfig train;
};

int cmd_attack(const AttackArgs& args) {
    args.attack.validate();
    args.train.validate();
    std::string detector_spec;
    if (args.mode == "white") {
        if (args.victim.empty())
            throw ValidationError("mode white requires --victim");
        detector_spec = args.victim;
    } else if (args.mode == "black") {
        if (args.surrogate.empty())
            throw ValidationError("mode black requires a --surrogate checkpoint");
        detector_spec = args.surrogate;
    } else {
        throw ValidationError("mode must be 'white' or 'black'");
    }
    require_input(args.corpus, "corpus file");
    require_input(args.background, "background file");
    if (detector_spec.rfind("train:", 0) == 0)
        require_input(detector_spec.substr(6), "detector training corpus");
    else
        require_input(detector_spec, "detector checkpoint");

    Corpus corpus = load_corpus(args.corpus);
    auto detector = resolve_detector(detector_spec, args.train);
    auto scorers = make_scorers(args.scorers, load_background(args.background));

    auto outcome = attack_corpus(corpus, *detector, scorers, args.attack);
    std::vector<AttackRecord> records;
    records.reserve(outcome.results.size());
    for (const auto& r : outcome.results) records.push_back(r.to_record());
    save_results(records, args.out);

    for (const auto& [id, message] : outcome.failures)
        std::cerr << "attack failed for '" << id << "': " << message << "\n";
    char summary[160];
    std::snprintf(summary, sizeof(summary),
                  "attacked %zu  successes %zu  success_rate %.2f%%  mean_queries %.1f  "
                  "mean_sec %.3f",
                  outcome.stats.attacked, outcome.stats.successes,
                  outcome.stats.success_rate() * 100.0, outcome.stats.mean_queries,
                  outcome.stats.mean_seconds);
    std::cout << summary << "\nresults: " << args.out << "\n";
    return kExitOk;
}

// -------------------------------------------------------------- dynamic ----

struct DynamicArgs {
    std::string corpus;
    std::string detector;
    std::string background;
    std::string scorers = "reference";
    std::string out;
    DynamicConfig config;
};

int cmd_dynamic(const DynamicArgs& args) {
    args.config.validate();
    require_input(args.corpus, "corpus file");
    require_input(args.background, "background file");
    if (args.detector.rfind("train:", 0) == 0)
        require_input(args.detector.substr(6), "detector training corpus");
    else
        require_input(args.detector, "detector checkpoint");

    Corpus corpus = load_corpus(args.corpus);
    auto detector = resolve_detector(args.detector, args.config.train);
    auto scorers = make_scorers(args.scorers, load_background(args.background));

    DynamicConfig config = args.config;
    config.artifacts_dir = args.out;
    fs::create_directories(args.out);
    auto reports = run_rounds(corpus, detector, scorers, config);
    render_round_plot(reports, args.out + "/rounds.svg");

    for (const auto& r : reports) {
        char line[160];
        std::snprintf(line, sizeof(line),
                      "round %d  auc %.2f  ppv %.2f  tnr %.2f  delta_acc %.2f  mean_sec %.3f",
                      r.round, r.auc, r.ppv, r.tnr, r.delta_acc, r.mean_seconds);
        std::cout << line << "\n";
    }
    std::cout << "reports: " << args.out << "/reports.jsonl\nplot: " << args.out
              << "/rounds.svg\n";
    return kExitOk;
}

// ----------------------------------------------------------------- eval ----

struct EvalArgs {
    std::string results;
    std::string corpus;
    std::string detector;
    std::string background;
    std::string scorers = "reference";
    std::string out;
    double tau = 0.5;
    TrainConfig train;
};

int cmd_eval(const EvalArgs& args) {
    args.train.validate();
    if (args.tau <= 0.0 || args.tau >= 1.0) throw ValidationError("tau must be in (0,1)");
    require_input(args.results, "results file");
    require_input(args.corpus, "corpus file");
    require_input(args.background, "background file");
    if (args.detector.rfind("train:", 0) == 0)
        require_input(args.detector.substr(6), "detector training corpus");
    else
        require_input(args.detector, "detector checkpoint");

    auto records = load_results(args.results);
    if (records.empty()) throw ValidationError("results file is empty: " + args.results);
    Corpus corpus = load_corpus(args.corpus);
    auto detector = resolve_detector(args.detector, args.train);
    auto scorers = make_scorers(args.scorers, load_background(args.background));

    // Post-attack pool: adversarial rewrites plus every human sample.
    std::vector<double> human_scores; // probability of the positive (human) class
    std::vector<bool> labels;
    std::vector<Label> predictions, truth;
    long pre_tn = 0;
    double dflesch = 0.0, dppl = 0.0;
    long flesch_n = 0;
    for (const auto& r : records) {
        if (detector->decide(r.original_text, args.tau) == Label::machine) ++pre_tn;
        double s = detector->score(r.adversarial_text);
        human_scores.push_back(1.0 - s);
        labels.push_back(false);
        predictions.push_back(s >= args.tau ? Label::machine : Label::human);
        truth.push_back(Label::machine);
        double before = flesch(r.original_text);
        if (std::abs(before) > 1e-9) {
            dflesch += 100.0 * (flesch(r.adversarial_text) - before) / before;
            ++flesch_n;
        }
        dppl += delta_ppl(*scorers.perplexity, r.original_text, r.adversarial_text);
    }
    for (const auto& s : corpus) {
        if (s.label != Label::human) continue;
        double p = detector->score(s.text);
        human_scores.push_back(1.0 - p);
        labels.push_back(true);
        predictions.push_back(p >= args.tau ? Label::machine : Label::human);
        truth.push_back(Label::human);
    }

    EvalReport report;
    report.n = static_cast<long>(predictions.size());
    auto cm = confusion(predictions, truth);
    report.ppv = cm.ppv();
    report.tnr = cm.tnr();
    try {
        report.auc = auc_roc(human_scores, labels);
    } catch (const UndefinedMetricError&) {
        report.auc = std::nan("");
    }
    double tnr_before = static_cast<double>(pre_tn) / static_cast<double>(records.size());
    if (tnr_before > 0.0 && report.tnr)
        report.delta_acc = delta_acc(tnr_before, *report.tnr);
    report.delta_flesch_pct = flesch_n ? dflesch / static_cast<double>(flesch_n) : 0.0;
    report.delta_ppl = dppl / static_cast<double>(records.size());

    std::cout << report.to_table();
    if (!args.out.empty()) {
        std::ofstream out(args.out);
        if (!out) throw ValidationError("cannot write report file: " + args.out);
        out << report.to_line() << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"word-level adversarial attacks on machine-text detectors"};
    app.require_subcommand(1);

    SynthArgs synth;
    auto* synth_cmd = app.add_subcommand("synth", "generate the benchmark corpus");
    add_config_option(synth_cmd);
    synth_cmd->add_option("--machine", synth.spec.machine_samples, "machine samples")
        ->capture_default_str();
    synth_cmd->add_option("--human", synth.spec.human_samples, "human samples")
        ->capture_default_str();
    synth_cmd->add_option("--words", synth.spec.words_per_text, "words per text")
        ->capture_default_str();
    synth_cmd->add_option("--seed", synth.spec.seed, "generator seed")->capture_default_str();
    synth_cmd->add_option("--out", synth.out, "corpus output path")->required();
    synth_cmd->add_option("--background-out", synth.background_out, "background output path")
        ->required();

    DistillArgs distill_args;
    auto* distill_cmd = app.add_subcommand("distill", "train a surrogate against a victim");
    add_config_option(distill_cmd);
    distill_cmd->add_option("--corpus", distill_args.corpus, "distillation corpus")->required();
    distill_cmd->add_option("--victim", distill_args.victim,
                            "victim: 'train:<corpus>' or checkpoint path")
        ->required();
    distill_cmd->add_option("--out", distill_args.out, "surrogate checkpoint path")->required();
    distill_cmd->add_option("--log", distill_args.log, "training log path");
    distill_cmd->add_option("--seed", distill_args.train.seed, "training seed")
        ->capture_default_str();
    add_train_flags(distill_cmd, distill_args.train);

    AttackArgs attack_args;
    auto* attack_cmd = app.add_subcommand("attack", "attack machine-labeled texts");
    add_config_option(attack_cmd);
    attack_cmd->add_option("--mode", attack_args.mode, "white (victim) or black (surrogate)")
        ->capture_default_str();
    attack_cmd->add_option("--corpus", attack_args.corpus, "corpus to attack")->required();
    attack_cmd->add_option("--victim", attack_args.victim,
                           "white-box victim: 'train:<corpus>' or checkpoint path");
    attack_cmd->add_option("--surrogate", attack_args.surrogate,
                           "surrogate checkpoint (black mode)");
    attack_cmd->add_option("--background", attack_args.background, "scorer fitting texts")
        ->required();
    attack_cmd->add_option("--scorers", attack_args.scorers, "scorer family")
        ->capture_default_str();
    attack_cmd->add_option("--out", attack_args.out, "results output path")->required();
    attack_cmd->add_option("--seed", attack_args.attack.seed, "attack seed")
        ->capture_default_str();
    add_attack_flags(attack_cmd, attack_args.attack);
    add_train_flags(attack_cmd, attack_args.train);

    DynamicArgs dynamic_args;
    auto* dynamic_cmd = app.add_subcommand("dynamic", "attack/fine-tune rounds");
    add_config_option(dynamic_cmd);
    dynamic_cmd->add_option("--corpus", dynamic_args.corpus, "corpus")->required();
    dynamic_cmd->add_option("--detector", dynamic_args.detector,
                            "detector: 'train:<corpus>' or checkpoint path")
        ->required();
    dynamic_cmd->add_option("--background", dynamic_args.background, "scorer fitting texts")
        ->required();
    dynamic_cmd->add_option("--scorers", dynamic_args.scorers, "scorer family")
        ->capture_default_str();
    dynamic_cmd->add_option("--out", dynamic_args.out, "artifacts directory")->required();
    dynamic_cmd->add_option("--rounds", dynamic_args.config.rounds, "adversarial rounds")
        ->capture_default_str();
    dynamic_cmd->add_option("--seed", dynamic_args.config.split_seed, "corpus split seed")
        ->capture_default_str();
    dynamic_cmd->add_option("--train-fraction", dynamic_args.config.train_fraction,
                            "share of attacks harvested for fine-tuning")
        ->capture_default_str();
    dynamic_cmd->add_flag("--resume", dynamic_args.config.resume,
                          "continue from existing round artifacts");
    add_attack_flags(dynamic_cmd, dynamic_args.config.attack);
    add_train_flags(dynamic_cmd, dynamic_args.config.train);

    EvalArgs eval_args;
    auto* eval_cmd = app.add_subcommand("eval", "score attack results against a detector");
    add_config_option(eval_cmd);
    eval_cmd->add_option("--results", eval_args.results, "attack results file")->required();
    eval_cmd->add_option("--corpus", eval_args.corpus, "original corpus")->required();
    eval_cmd->add_option("--detector", eval_args.detector,
                         "detector: 'train:<corpus>' or checkpoint path")
        ->required();
    eval_cmd->add_option("--background", eval_args.background, "scorer fitting texts")
        ->required();
    eval_cmd->add_option("--scorers", eval_args.scorers, "scorer family")->capture_default_str();
    eval_cmd->add_option("--out", eval_args.out, "report output path");
    eval_cmd->add_option("--tau", eval_args.tau, "decision threshold")->capture_default_str();
    eval_cmd->add_option("--seed", eval_args.train.seed, "training seed")->capture_default_str();
    add_train_flags(eval_cmd, eval_args.train);

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end()); // CLI11 consumes from the back
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(synth_cmd)) return cmd_synth(synth);
        if (app.got_subcommand(distill_cmd)) return cmd_distill(distill_args);
        if (app.got_subcommand(attack_cmd)) return cmd_attack(attack_args);
        if (app.got_subcommand(dynamic_cmd)) return cmd_dynamic(dynamic_args);
        if (app.got_subcommand(eval_cmd)) return cmd_eval(eval_args);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
