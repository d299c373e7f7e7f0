#include "hmgc/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hmgc/errors.hpp"

namespace hmgc {

using nlohmann::json;

std::string to_string(Label label) {
    return label == Label::human ? "human" : "machine";
}

Label label_from_string(const std::string& s) {
    if (s == "human") return Label::human;
    if (s == "machine") return Label::machine;
    throw ValidationError("unknown label '" + s + "'");
}

std::string lowercase(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

namespace {

bool is_word_byte(unsigned char c) {
    return std::isalnum(c) || c == '\'' || c >= 0x80;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

WordSequence tokenize_words(const std::string& text) {
    if (trim(text).empty()) throw ValidationError("tokenize_words: empty text");
    WordSequence seq;
    seq.text = text;
    std::size_t i = 0;
    while (i < text.size()) {
        if (is_word_byte(static_cast<unsigned char>(text[i]))) {
            std::size_t b = i;
            while (i < text.size() && is_word_byte(static_cast<unsigned char>(text[i]))) ++i;
            seq.words.push_back({text.substr(b, i - b), b, i});
        } else {
            ++i;
        }
    }
    return seq;
}

std::string WordSequence::detokenize() const {
    std::vector<std::string> surfaces;
    surfaces.reserve(words.size());
    for (const auto& w : words) surfaces.push_back(w.surface);
    return render(surfaces);
}

std::string WordSequence::render(const std::vector<std::string>& surfaces) const {
    if (surfaces.size() != words.size())
        throw ValidationError("render: surface count does not match word count");
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
        out.append(text, pos, words[i].begin - pos);
        out.append(surfaces[i]);
        pos = words[i].end;
    }
    out.append(text, pos, text.size() - pos);
    return out;
}

std::string WordSequence::without_word(std::size_t index) const {
    if (index >= words.size()) throw ValidationError("without_word: index out of range");
    if (words.size() < 2)
        throw ValidationError("without_word: removal would leave no words");
    const Word& w = words[index];
    std::size_t cut_begin = w.begin;
    std::size_t cut_end = w.end;
    if (index + 1 < words.size()) {
        cut_end = words[index + 1].begin; // absorb the following separator
    } else {
        cut_begin = words[index - 1].end; // last word: absorb the preceding one
    }
    std::string out = text.substr(0, cut_begin);
    out += text.substr(cut_end);
    return out;
}

std::vector<std::string> word_tokens(const std::string& text) {
    std::vector<std::string> tokens;
    for (const auto& w : tokenize_words(text).words) tokens.push_back(lowercase(w.surface));
    return tokens;
}

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open corpus file: " + path);
    Corpus corpus;
    std::set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        if (!j.is_object() || !j.contains("id") || !j.contains("text") || !j.contains("label"))
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": record must contain id, text, label");
        Sample s;
        s.id = j.at("id").get<std::string>();
        s.text = j.at("text").get<std::string>();
        s.label = label_from_string(j.at("label").get<std::string>());
        if (j.contains("requirement") && !j.at("requirement").is_null())
            s.requirement = j.at("requirement").get<std::string>();
        if (j.contains("source")) s.source = j.at("source").get<std::string>();
        if (trim(s.text).empty())
            throw ValidationError(path + ":" + std::to_string(lineno) +
                                  ": empty text for id '" + s.id + "'");
        if (!seen.insert(s.id).second)
            throw ValidationError(path + ":" + std::to_string(lineno) +
                                  ": duplicate id '" + s.id + "'");
        corpus.push_back(std::move(s));
    }
    return corpus;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write corpus file: " + path);
    for (const auto& s : corpus) {
        json j;
        j["id"] = s.id;
        j["requirement"] = s.requirement ? json(*s.requirement) : json(nullptr);
        j["text"] = s.text;
        j["label"] = to_string(s.label);
        j["source"] = s.source;
        out << j.dump() << "\n";
    }
}

CorpusSplit split_corpus(const Corpus& corpus,
                         const std::map<std::string, double>& fractions,
                         long seed) {
    if (fractions.empty()) throw ValidationError("split_corpus: no fractions given");
    double total = 0.0;
    for (const auto& [name, frac] : fractions) {
        if (frac <= 0.0) throw ValidationError("split_corpus: fraction for '" + name +
                                               "' must be positive");
        total += frac;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw ValidationError("split_corpus: fractions must sum to 1");

    std::vector<std::string> ids;
    ids.reserve(corpus.size());
    for (const auto& s : corpus) ids.push_back(s.id);
    std::mt19937_64 rng(static_cast<unsigned long long>(seed));
    std::shuffle(ids.begin(), ids.end(), rng);

    // Largest-remainder apportionment keeps every part within one sample
    // of its exact share.
    const std::size_t n = ids.size();
    std::vector<std::pair<std::string, double>> order(fractions.begin(), fractions.end());
    std::vector<std::size_t> sizes(order.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        double exact = order[i].second * static_cast<double>(n);
        sizes[i] = static_cast<std::size_t>(exact);
        assigned += sizes[i];
        remainders.push_back({exact - static_cast<double>(sizes[i]), i});
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++sizes[remainders[i].second];

    CorpusSplit split;
    split.seed = seed;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        split.parts[order[i].first] =
            std::vector<std::string>(ids.begin() + pos, ids.begin() + pos + sizes[i]);
        pos += sizes[i];
    }
    return split;
}

void save_results(const std::vector<AttackRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write results file: " + path);
    for (const auto& r : records) {
        json j;
        j["id"] = r.id;
        j["original_text"] = r.original_text;
        j["adversarial_text"] = r.adversarial_text;
        j["score_before"] = r.score_before;
        j["score_after"] = r.score_after;
        j["success"] = r.success;
        j["queries"] = r.queries;
        j["perturbed_ratio"] = r.perturbed_ratio;
        j["seconds"] = r.seconds;
        out << j.dump() << "\n";
    }
}

std::vector<AttackRecord> load_results(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open results file: " + path);
    std::vector<AttackRecord> records;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        AttackRecord r;
        r.id = j.at("id").get<std::string>();
        r.original_text = j.at("original_text").get<std::string>();
        r.adversarial_text = j.at("adversarial_text").get<std::string>();
        r.score_before = j.at("score_before").get<double>();
        r.score_after = j.at("score_after").get<double>();
        r.success = j.at("success").get<bool>();
        r.queries = j.at("queries").get<long>();
        r.perturbed_ratio = j.at("perturbed_ratio").get<double>();
        r.seconds = j.at("seconds").get<double>();
        records.push_back(std::move(r));
    }
    return records;
}

} // namespace hmgc
