#include "hmgc/reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "hmgc/errors.hpp"

namespace hmgc {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }
double softplus(double z) { return z > 30.0 ? z : std::log1p(std::exp(z)); }

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

double unit_from_bits(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * (1.0 / 9007199254740992.0); // [0, 1)
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

// ---------------------------------------------------------------------------
// ReferenceDetector

ReferenceDetector::ReferenceDetector(std::vector<std::pair<std::string, Vec>> vocab,
                                     Vec weights, double bias)
    : w_(weights), bias_(bias) {
    for (auto& [token, vec] : vocab) {
        index_[token] = tokens_.size();
        tokens_.push_back(token);
        emb_.push_back(vec);
    }
}

ReferenceDetector::Vec ReferenceDetector::seeded_embedding(const std::string& token, long seed) {
    std::uint64_t state = fnv1a(token) ^ (static_cast<std::uint64_t>(seed) * 0x9e3779b97f4a7c15ULL);
    Vec v{};
    for (auto& x : v) x = 0.2 * unit_from_bits(splitmix64(state)) - 0.1;
    return v;
}

std::size_t ReferenceDetector::intern(const std::string& token) {
    auto it = index_.find(token);
    if (it != index_.end()) return it->second;
    std::size_t idx = tokens_.size();
    index_[token] = idx;
    tokens_.push_back(token);
    emb_.push_back(seeded_embedding(token, init_seed_));
    return idx;
}

const ReferenceDetector::Vec* ReferenceDetector::lookup(const std::string& token) const {
    auto it = index_.find(token);
    return it == index_.end() ? nullptr : &emb_[it->second];
}

ReferenceDetector::Forward ReferenceDetector::forward(const std::string& text, int max_len) const {
    Forward f;
    f.tokens = word_tokens(text);
    if (max_len > 0 && f.tokens.size() > static_cast<std::size_t>(max_len))
        f.tokens.resize(static_cast<std::size_t>(max_len));
    const std::size_t n = f.tokens.size();
    f.logits.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec* e = lookup(f.tokens[i]);
        Vec fallback{};
        if (!e) {
            fallback = seeded_embedding(f.tokens[i], init_seed_);
            e = &fallback;
        }
        double u = 0.0;
        for (std::size_t d = 0; d < kDim; ++d) u += w_[d] * (*e)[d];
        f.logits[i] = u;
    }
    double mx = *std::max_element(f.logits.begin(), f.logits.end());
    double sum = 0.0;
    f.softmax.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        f.softmax[i] = std::exp(f.logits[i] - mx);
        sum += f.softmax[i];
    }
    for (auto& s : f.softmax) s /= sum;
    f.z = mx + std::log(sum / static_cast<double>(n)) + bias_;
    f.prob = sigmoid(f.z);
    return f;
}

double ReferenceDetector::score(const std::string& text,
                                const std::optional<std::string>&) const {
    return forward(text, max_len_).prob;
}

std::vector<std::vector<double>> ReferenceDetector::word_gradients(const std::string& text) const {
    Forward f = forward(text, 0);
    std::vector<std::vector<double>> grads(f.tokens.size(), std::vector<double>(kDim, 0.0));
    // machine-target loss L = -log(prob); dL/dz = prob - 1
    const double dz = f.prob - 1.0;
    for (std::size_t i = 0; i < f.tokens.size(); ++i)
        for (std::size_t d = 0; d < kDim; ++d) grads[i][d] = dz * f.softmax[i] * w_[d];
    return grads;
}

double ReferenceDetector::machine_loss(const std::string& text) const {
    Forward f = forward(text, 0);
    return softplus(-f.z);
}

double ReferenceDetector::machine_loss(const std::string& text, std::size_t pos,
                                       const Vec& offset) const {
    auto tokens = word_tokens(text);
    if (pos >= tokens.size()) throw ValidationError("machine_loss: position out of range");
    const std::size_t n = tokens.size();
    std::vector<double> logits(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec* e = lookup(tokens[i]);
        Vec v = e ? *e : seeded_embedding(tokens[i], init_seed_);
        if (i == pos)
            for (std::size_t d = 0; d < kDim; ++d) v[d] += offset[d];
        double u = 0.0;
        for (std::size_t d = 0; d < kDim; ++d) u += w_[d] * v[d];
        logits[i] = u;
    }
    double mx = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (double u : logits) sum += std::exp(u - mx);
    double z = mx + std::log(sum / static_cast<double>(n)) + bias_;
    return softplus(-z);
}

std::vector<double> ReferenceDetector::fit(
    const std::vector<std::pair<std::string, double>>& data, const TrainConfig& config) {
    config.validate();
    if (data.empty()) throw ValidationError("fit: empty training data");
    for (const auto& [text, p] : data)
        if (p < 0.0 || p > 1.0) throw ValidationError("fit: target probability outside [0,1]");

    if (tokens_.empty() && w_ == Vec{}) {
        init_seed_ = config.seed;
        std::uint64_t state = 0x243f6a8885a308d3ULL ^ static_cast<std::uint64_t>(config.seed);
        for (auto& x : w_) x = 0.4 * unit_from_bits(splitmix64(state)) - 0.2;
    }
    max_len_ = config.max_sequence_length;

    // Pre-intern and truncate token streams once.
    std::vector<std::vector<std::size_t>> streams;
    streams.reserve(data.size());
    for (const auto& [text, p] : data) {
        auto toks = word_tokens(text);
        if (toks.size() > static_cast<std::size_t>(config.max_sequence_length))
            toks.resize(static_cast<std::size_t>(config.max_sequence_length));
        std::vector<std::size_t> ids;
        ids.reserve(toks.size());
        for (const auto& t : toks) ids.push_back(intern(t));
        streams.push_back(std::move(ids));
    }

    auto mean_loss = [&]() {
        double total = 0.0;
        for (std::size_t s = 0; s < streams.size(); ++s) {
            const auto& ids = streams[s];
            const std::size_t n = ids.size();
            std::vector<double> logits(n);
            for (std::size_t i = 0; i < n; ++i) {
                double u = 0.0;
                for (std::size_t d = 0; d < kDim; ++d) u += w_[d] * emb_[ids[i]][d];
                logits[i] = u;
            }
            double mx = *std::max_element(logits.begin(), logits.end());
            double sum = 0.0;
            for (double u : logits) sum += std::exp(u - mx);
            double z = mx + std::log(sum / static_cast<double>(n)) + bias_;
            total += softplus(z) - data[s].second * z; // BCE in logit form
        }
        return total / static_cast<double>(streams.size());
    };

    double lr = config.learning_rate;
    std::vector<double> epoch_losses;
    double prev = mean_loss();
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        // Snapshot so a diverging step can be retried with a smaller rate.
        auto emb_snap = emb_;
        Vec w_snap = w_;
        double bias_snap = bias_;

        int halvings = 0;
        while (true) {
            for (std::size_t start = 0; start < streams.size();
                 start += static_cast<std::size_t>(config.batch_size)) {
                std::size_t stop = std::min(streams.size(),
                                            start + static_cast<std::size_t>(config.batch_size));
                std::vector<std::pair<std::size_t, Vec>> emb_grads;
                Vec w_grad{};
                double bias_grad = 0.0;
                for (std::size_t s = start; s < stop; ++s) {
                    const auto& ids = streams[s];
                    const std::size_t n = ids.size();
                    std::vector<double> logits(n);
                    for (std::size_t i = 0; i < n; ++i) {
                        double u = 0.0;
                        for (std::size_t d = 0; d < kDim; ++d) u += w_[d] * emb_[ids[i]][d];
                        logits[i] = u;
                    }
                    double mx = *std::max_element(logits.begin(), logits.end());
                    double sum = 0.0;
                    std::vector<double> sm(n);
                    for (std::size_t i = 0; i < n; ++i) {
                        sm[i] = std::exp(logits[i] - mx);
                        sum += sm[i];
                    }
                    for (auto& v : sm) v /= sum;
                    double z = mx + std::log(sum / static_cast<double>(n)) + bias_;
                    double dz = sigmoid(z) - data[s].second;
                    bias_grad += dz;
                    for (std::size_t i = 0; i < n; ++i) {
                        Vec g{};
                        for (std::size_t d = 0; d < kDim; ++d) {
                            w_grad[d] += dz * sm[i] * emb_[ids[i]][d];
                            g[d] = dz * sm[i] * w_[d];
                        }
                        emb_grads.push_back({ids[i], g});
                    }
                }
                double scale = lr / static_cast<double>(stop - start);
                for (std::size_t d = 0; d < kDim; ++d) w_[d] -= scale * w_grad[d];
                bias_ -= scale * bias_grad;
                for (const auto& [idx, g] : emb_grads)
                    for (std::size_t d = 0; d < kDim; ++d) emb_[idx][d] -= scale * g[d];
            }
            double now = mean_loss();
            if (now <= prev + 1e-12 || halvings >= 30) {
                prev = now;
                epoch_losses.push_back(now);
                break;
            }
            emb_ = emb_snap;
            w_ = w_snap;
            bias_ = bias_snap;
            lr *= 0.5;
            ++halvings;
        }
    }
    return epoch_losses;
}

void ReferenceDetector::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write scorer file: " + path);
    out << kScorerMagic << " reference-detector\n";
    out << "seed " << init_seed_ << "\n";
    out << "max_len " << max_len_ << "\n";
    out << "bias " << fmt_double(bias_) << "\n";
    out << "w";
    for (double v : w_) out << " " << fmt_double(v);
    out << "\nvocab " << tokens_.size() << "\n";
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        out << tokens_[i];
        for (double v : emb_[i]) out << " " << fmt_double(v);
        out << "\n";
    }
}

std::shared_ptr<ReferenceDetector> ReferenceDetector::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scorer file: " + path);
    std::string magic, kind;
    in >> magic >> kind;
    if (magic != kScorerMagic || kind != "reference-detector")
        throw ParseError(path + ": not a reference-detector scorer file");
    auto det = std::make_shared<ReferenceDetector>();
    std::string key;
    std::size_t n = 0;
    in >> key >> det->init_seed_;
    in >> key >> det->max_len_;
    in >> key >> det->bias_;
    in >> key;
    for (auto& v : det->w_) in >> v;
    in >> key >> n;
    for (std::size_t i = 0; i < n; ++i) {
        std::string tok;
        Vec e{};
        in >> tok;
        for (auto& v : e) in >> v;
        det->index_[tok] = det->tokens_.size();
        det->tokens_.push_back(tok);
        det->emb_.push_back(e);
    }
    if (!in) throw ParseError(path + ": truncated scorer file");
    return det;
}

std::shared_ptr<ReferenceDetector> reference_detector_train(const Corpus& corpus,
                                                            const TrainConfig& config) {
    if (corpus.empty()) throw ValidationError("reference_detector_train: empty corpus");
    bool has_human = false, has_machine = false;
    for (const auto& s : corpus) (s.label == Label::human ? has_human : has_machine) = true;
    if (!has_human || !has_machine)
        throw ValidationError("reference_detector_train: corpus must contain both labels");
    std::vector<std::pair<std::string, double>> data;
    data.reserve(corpus.size());
    for (const auto& s : corpus)
        data.push_back({s.text, s.label == Label::machine ? 1.0 : 0.0});
    auto det = std::make_shared<ReferenceDetector>();
    det->fit(data, config);
    return det;
}

// ---------------------------------------------------------------------------
// ReferencePerplexity

ReferencePerplexity ReferencePerplexity::fit(const std::vector<std::string>& texts) {
    if (texts.empty()) throw ValidationError("perplexity fit: no texts");
    ReferencePerplexity model;
    for (const auto& t : texts)
        for (const auto& tok : word_tokens(t)) {
            ++model.counts_[tok];
            ++model.total_;
        }
    model.vocab_ = model.counts_.size();
    return model;
}

double ReferencePerplexity::ppl(const std::string& text) const {
    auto tokens = word_tokens(text);
    if (tokens.empty()) throw ValidationError("ppl: text has no tokens");
    double nll = 0.0;
    const double denom = static_cast<double>(total_) + static_cast<double>(vocab_);
    for (const auto& tok : tokens) {
        auto it = counts_.find(tok);
        double count = it == counts_.end() ? 0.0 : static_cast<double>(it->second);
        nll -= std::log((count + 1.0) / denom);
    }
    return std::exp(nll / static_cast<double>(tokens.size()));
}

void ReferencePerplexity::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write scorer file: " + path);
    out << kScorerMagic << " reference-unigram\n" << counts_.size() << "\n";
    for (const auto& [tok, c] : counts_) out << tok << " " << c << "\n";
}

ReferencePerplexity ReferencePerplexity::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scorer file: " + path);
    std::string magic, kind;
    std::size_t n = 0;
    in >> magic >> kind >> n;
    if (magic != kScorerMagic || kind != "reference-unigram")
        throw ParseError(path + ": not a reference-unigram scorer file");
    ReferencePerplexity model;
    for (std::size_t i = 0; i < n; ++i) {
        std::string tok;
        long c = 0;
        in >> tok >> c;
        model.counts_[tok] = c;
        model.total_ += c;
    }
    if (!in) throw ParseError(path + ": truncated scorer file");
    model.vocab_ = model.counts_.size();
    return model;
}

// ---------------------------------------------------------------------------
// ReferenceMaskedPredictor

ReferenceMaskedPredictor ReferenceMaskedPredictor::fit(const std::vector<std::string>& texts) {
    if (texts.empty()) throw ValidationError("masked predictor fit: no texts");
    ReferenceMaskedPredictor model;
    for (const auto& t : texts) {
        auto tokens = word_tokens(t);
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            ++model.freq_[tokens[i]];
            if (i > 0) ++model.after_[tokens[i - 1]][tokens[i]];
            if (i + 1 < tokens.size()) ++model.before_[tokens[i + 1]][tokens[i]];
        }
    }
    return model;
}

std::vector<MaskCandidate> ReferenceMaskedPredictor::predict(const WordSequence& words,
                                                             std::size_t masked_index,
                                                             std::size_t max_candidates) const {
    if (masked_index >= words.size())
        throw ValidationError("predict: masked index out of range");
    if (max_candidates < 1) throw ValidationError("predict: max_candidates must be >= 1");

    std::map<std::string, double> scores;
    if (masked_index > 0) {
        auto it = after_.find(lowercase(words.words[masked_index - 1].surface));
        if (it != after_.end())
            for (const auto& [w, c] : it->second) scores[w] += static_cast<double>(c);
    }
    if (masked_index + 1 < words.size()) {
        auto it = before_.find(lowercase(words.words[masked_index + 1].surface));
        if (it != before_.end())
            for (const auto& [w, c] : it->second) scores[w] += static_cast<double>(c);
    }
    if (scores.empty())
        for (const auto& [w, c] : freq_) scores[w] = static_cast<double>(c);
    if (scores.empty()) return {};

    double mx = 0.0;
    for (const auto& [w, s] : scores) mx = std::max(mx, s);
    double sum = 0.0;
    for (const auto& [w, s] : scores) sum += std::exp(s - mx);

    std::vector<MaskCandidate> all;
    all.reserve(scores.size());
    for (const auto& [w, s] : scores) all.push_back({w, std::exp(s - mx) / sum});
    std::sort(all.begin(), all.end(), [](const MaskCandidate& a, const MaskCandidate& b) {
        if (a.probability != b.probability) return a.probability > b.probability;
        return a.word < b.word;
    });
    if (all.size() > max_candidates) all.resize(max_candidates);
    return all;
}

void ReferenceMaskedPredictor::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write scorer file: " + path);
    out << kScorerMagic << " reference-mlm\n";
    out << "after " << after_.size() << "\n";
    for (const auto& [ctx, m] : after_) {
        out << ctx << " " << m.size();
        for (const auto& [w, c] : m) out << " " << w << " " << c;
        out << "\n";
    }
    out << "before " << before_.size() << "\n";
    for (const auto& [ctx, m] : before_) {
        out << ctx << " " << m.size();
        for (const auto& [w, c] : m) out << " " << w << " " << c;
        out << "\n";
    }
    out << "freq " << freq_.size() << "\n";
    for (const auto& [w, c] : freq_) out << w << " " << c << "\n";
}

ReferenceMaskedPredictor ReferenceMaskedPredictor::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scorer file: " + path);
    std::string magic, kind;
    in >> magic >> kind;
    if (magic != kScorerMagic || kind != "reference-mlm")
        throw ParseError(path + ": not a reference-mlm scorer file");
    ReferenceMaskedPredictor model;
    auto read_table = [&](std::map<std::string, std::map<std::string, long>>& table,
                          const char* name) {
        std::string key;
        std::size_t n = 0;
        in >> key >> n;
        if (key != name) throw ParseError(path + ": malformed scorer file");
        for (std::size_t i = 0; i < n; ++i) {
            std::string ctx;
            std::size_t m = 0;
            in >> ctx >> m;
            for (std::size_t j = 0; j < m; ++j) {
                std::string w;
                long c = 0;
                in >> w >> c;
                table[ctx][w] = c;
            }
        }
    };
    read_table(model.after_, "after");
    read_table(model.before_, "before");
    std::string key;
    std::size_t n = 0;
    in >> key >> n;
    for (std::size_t i = 0; i < n; ++i) {
        std::string w;
        long c = 0;
        in >> w >> c;
        model.freq_[w] = c;
    }
    if (!in) throw ParseError(path + ": truncated scorer file");
    return model;
}

// ---------------------------------------------------------------------------
// ReferenceSimilarity

double ReferenceSimilarity::similarity(const std::string& a, const std::string& b) const {
    auto count = [](const std::string& text) {
        std::map<std::string, double> c;
        for (const auto& tok : word_tokens(text)) ++c[tok];
        return c;
    };
    auto ca = count(a);
    auto cb = count(b);
    if (ca.empty() || cb.empty()) throw ValidationError("similarity: empty input");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (const auto& [tok, v] : ca) {
        na += v * v;
        auto it = cb.find(tok);
        if (it != cb.end()) dot += v * it->second;
    }
    for (const auto& [tok, v] : cb) nb += v * v;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

// ---------------------------------------------------------------------------
// ReferencePosTagger

std::string to_string(PosTag tag) {
    switch (tag) {
        case PosTag::NOUN: return "NOUN";
        case PosTag::VERB: return "VERB";
        case PosTag::ADJ: return "ADJ";
        case PosTag::ADV: return "ADV";
        case PosTag::PRON: return "PRON";
        case PosTag::DET: return "DET";
        case PosTag::ADP: return "ADP";
        case PosTag::NUM: return "NUM";
        case PosTag::CONJ: return "CONJ";
        case PosTag::PRT: return "PRT";
        case PosTag::PUNCT: return "PUNCT";
        case PosTag::X: return "X";
    }
    return "X";
}

PosTag ReferencePosTagger::tag_word(const std::string& word) const {
    static const std::map<std::string, PosTag> lexicon = {
        {"the", PosTag::DET},   {"a", PosTag::DET},      {"an", PosTag::DET},
        {"this", PosTag::DET},  {"that", PosTag::DET},   {"these", PosTag::DET},
        {"those", PosTag::DET}, {"i", PosTag::PRON},     {"you", PosTag::PRON},
        {"he", PosTag::PRON},   {"she", PosTag::PRON},   {"it", PosTag::PRON},
        {"we", PosTag::PRON},   {"they", PosTag::PRON},  {"me", PosTag::PRON},
        {"him", PosTag::PRON},  {"her", PosTag::PRON},   {"us", PosTag::PRON},
        {"them", PosTag::PRON}, {"my", PosTag::PRON},    {"your", PosTag::PRON},
        {"his", PosTag::PRON},  {"its", PosTag::PRON},   {"our", PosTag::PRON},
        {"their", PosTag::PRON},{"of", PosTag::ADP},     {"in", PosTag::ADP},
        {"on", PosTag::ADP},    {"at", PosTag::ADP},     {"by", PosTag::ADP},
        {"with", PosTag::ADP},  {"from", PosTag::ADP},   {"for", PosTag::ADP},
        {"into", PosTag::ADP},  {"about", PosTag::ADP},  {"under", PosTag::ADP},
        {"to", PosTag::PRT},    {"and", PosTag::CONJ},   {"or", PosTag::CONJ},
        {"but", PosTag::CONJ},  {"nor", PosTag::CONJ},   {"so", PosTag::CONJ},
        {"is", PosTag::VERB},   {"am", PosTag::VERB},    {"are", PosTag::VERB},
        {"was", PosTag::VERB},  {"were", PosTag::VERB},  {"be", PosTag::VERB},
        {"been", PosTag::VERB}, {"being", PosTag::VERB}, {"have", PosTag::VERB},
        {"has", PosTag::VERB},  {"had", PosTag::VERB},   {"do", PosTag::VERB},
        {"does", PosTag::VERB}, {"did", PosTag::VERB},   {"will", PosTag::VERB},
        {"would", PosTag::VERB},{"can", PosTag::VERB},   {"could", PosTag::VERB},
        {"should", PosTag::VERB},{"may", PosTag::VERB},  {"might", PosTag::VERB},
        {"must", PosTag::VERB}, {"go", PosTag::VERB},    {"goes", PosTag::VERB},
        {"went", PosTag::VERB}, {"run", PosTag::VERB},   {"runs", PosTag::VERB},
        {"like", PosTag::VERB}, {"likes", PosTag::VERB}, {"hate", PosTag::VERB},
        {"hates", PosTag::VERB},{"stop", PosTag::VERB},  {"stops", PosTag::VERB},
        {"walk", PosTag::VERB}, {"walks", PosTag::VERB}, {"jump", PosTag::VERB},
        {"jumps", PosTag::VERB},{"sit", PosTag::VERB},   {"sits", PosTag::VERB},
        {"nap", PosTag::VERB},  {"sat", PosTag::VERB},   {"ran", PosTag::VERB},
        {"happy", PosTag::ADJ}, {"glad", PosTag::ADJ},   {"good", PosTag::ADJ},
        {"bad", PosTag::ADJ},   {"great", PosTag::ADJ},  {"small", PosTag::ADJ},
        {"big", PosTag::ADJ},   {"little", PosTag::ADJ}, {"new", PosTag::ADJ},
        {"old", PosTag::ADJ},   {"nice", PosTag::ADJ},   {"same", PosTag::ADJ},
        {"very", PosTag::ADV},  {"quite", PosTag::ADV},  {"too", PosTag::ADV},
        {"also", PosTag::ADV},  {"not", PosTag::ADV},    {"now", PosTag::ADV},
        {"then", PosTag::ADV},  {"here", PosTag::ADV},   {"there", PosTag::ADV},
        {"today", PosTag::ADV}, {"never", PosTag::ADV},  {"always", PosTag::ADV},
        {"often", PosTag::ADV}, {"one", PosTag::NUM},    {"two", PosTag::NUM},
        {"three", PosTag::NUM}, {"four", PosTag::NUM},   {"five", PosTag::NUM},
        {"six", PosTag::NUM},   {"seven", PosTag::NUM},  {"eight", PosTag::NUM},
        {"nine", PosTag::NUM},  {"ten", PosTag::NUM},
    };

    std::string w = lowercase(word);
    if (w.empty()) return PosTag::X;
    if (std::all_of(w.begin(), w.end(), [](unsigned char c) { return std::isdigit(c); }))
        return PosTag::NUM;
    auto it = lexicon.find(w);
    if (it != lexicon.end()) return it->second;
    auto ends_with = [&](const char* suffix) {
        std::size_t len = std::strlen(suffix);
        return w.size() > len && w.compare(w.size() - len, len, suffix) == 0;
    };
    if (ends_with("ly")) return PosTag::ADV;
    if (ends_with("ing") || ends_with("ed")) return PosTag::VERB;
    // -able/-ible only bite on longer words: short nouns like "table",
    // "cable", or "bible" end the same way.
    if (ends_with("ous") || ends_with("ful") || ends_with("ive") || ends_with("ish") ||
        (w.size() >= 6 && (ends_with("able") || ends_with("ible"))))
        return PosTag::ADJ;
    return PosTag::NOUN;
}

std::vector<PosTag> ReferencePosTagger::tag(const WordSequence& words) const {
    std::vector<PosTag> tags;
    tags.reserve(words.size());
    for (const auto& w : words.words) tags.push_back(tag_word(w.surface));
    return tags;
}

void TrainConfig::validate() const {
    if (learning_rate <= 0.0) throw ValidationError("learning_rate must be positive");
    if (epochs < 0) throw ValidationError("epochs must be non-negative");
    if (max_sequence_length <= 0) throw ValidationError("max_sequence_length must be positive");
    if (batch_size <= 0) throw ValidationError("batch_size must be positive");
}

} // namespace hmgc
