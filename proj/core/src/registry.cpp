#include "hmgc/registry.hpp"

#include <fstream>

#include "hmgc/corpus.hpp"
#include "hmgc/errors.hpp"

namespace hmgc {

std::shared_ptr<ReferenceDetector> resolve_detector(const std::string& spec,
                                                    const TrainConfig& train) {
    if (spec.empty()) throw ValidationError("detector spec is empty");
    if (spec.rfind("train:", 0) == 0) {
        Corpus corpus = load_corpus(spec.substr(6));
        return reference_detector_train(corpus, train);
    }
    return ReferenceDetector::load(spec);
}

std::vector<std::string> load_background(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open background file: " + path);
    std::vector<std::string> texts;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) texts.push_back(line);
    if (texts.empty()) throw ValidationError("background file is empty: " + path);
    return texts;
}

void save_background(const std::vector<std::string>& texts, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write background file: " + path);
    for (const auto& t : texts) out << t << "\n";
}

ScorerBundle make_scorers(const std::string& name, const std::vector<std::string>& background) {
    if (name != "reference")
        throw ValidationError("unknown scorer family '" + name + "' (available: reference)");
    ScorerBundle bundle;
    bundle.predictor =
        std::make_shared<ReferenceMaskedPredictor>(ReferenceMaskedPredictor::fit(background));
    bundle.perplexity =
        std::make_shared<ReferencePerplexity>(ReferencePerplexity::fit(background));
    bundle.encoder = std::make_shared<ReferenceSimilarity>();
    bundle.tagger = std::make_shared<ReferencePosTagger>();
    return bundle;
}

} // namespace hmgc
