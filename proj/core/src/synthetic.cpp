#include "hmgc/synthetic.hpp"

#include <cctype>
#include <random>
#include <sstream>

namespace hmgc {

namespace {

const std::vector<std::string> kNeutral = {
    "table",  "chair",  "stone",  "river",  "cloud",  "garden", "window", "music",
    "paper",  "bottle", "candle", "forest", "market", "castle", "branch", "copper",
    "meadow", "pillow", "ribbon", "saddle", "lantern","harbor", "valley", "timber",
    "anchor", "basket", "button", "carpet", "desert", "engine",
};

// Two marker families with disjoint contexts and replacement pools of
// different depth, so detector hardening bites in over successive rounds.
struct Family {
    std::string left, marker, right;
    std::vector<std::string> pool;
};

const std::vector<Family> kFamilies = {
    {"quite", "zqa", "overall", {"zril"}},
    {"rather", "zqb", "altogether", {"zfen", "zgor"}},
};

std::string capitalize(std::string s) {
    if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
}

std::string join_sentence(const std::vector<std::string>& words) {
    std::ostringstream out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) out << ' ';
        out << (i == 0 ? capitalize(words[i]) : words[i]);
    }
    out << '.';
    return out.str();
}

} // namespace

SyntheticData make_synthetic(const SyntheticSpec& spec) {
    std::mt19937_64 rng(static_cast<unsigned long long>(spec.seed));
    std::uniform_int_distribution<std::size_t> pick_neutral(0, kNeutral.size() - 1);
    SyntheticData data;

    auto neutral_words = [&](std::size_t n) {
        std::vector<std::string> words;
        words.reserve(n);
        for (std::size_t i = 0; i < n; ++i) words.push_back(kNeutral[pick_neutral(rng)]);
        return words;
    };

    for (std::size_t i = 0; i < spec.machine_samples; ++i) {
        const Family& fam = kFamilies[i % kFamilies.size()];
        auto words = neutral_words(spec.words_per_text - 3);
        std::uniform_int_distribution<std::size_t> pos(1, words.size() - 1);
        std::size_t at = pos(rng);
        words.insert(words.begin() + static_cast<long>(at),
                     {fam.left, fam.marker, fam.right});
        data.corpus.push_back({"m" + std::to_string(i), std::nullopt, join_sentence(words),
                               Label::machine, "synthetic"});
    }
    for (std::size_t i = 0; i < spec.human_samples; ++i) {
        auto words = neutral_words(spec.words_per_text);
        // Context words appear in human text too, so only the markers are
        // class-discriminative.
        if (i % 2 == 0) {
            const Family& fam = kFamilies[(i / 2) % kFamilies.size()];
            std::uniform_int_distribution<std::size_t> pos(1, words.size() - 3);
            std::size_t at = pos(rng);
            words[at] = fam.left;
            words[at + 2] = fam.right;
        }
        data.corpus.push_back({"h" + std::to_string(i), std::nullopt, join_sentence(words),
                               Label::human, "synthetic"});
    }

    // Background: replacement contexts plus plain filler for the unigram
    // model and neutral-position candidates.
    for (const Family& fam : kFamilies) {
        std::vector<std::string> fills = fam.pool;
        fills.push_back(fam.marker);
        for (const auto& fill : fills)
            for (int rep = 0; rep < 3; ++rep) {
                auto words = neutral_words(4);
                words.insert(words.begin() + 2, {fam.left, fill, fam.right});
                data.background.push_back(join_sentence(words));
            }
    }
    for (int i = 0; i < 40; ++i) data.background.push_back(join_sentence(neutral_words(12)));
    return data;
}

} // namespace hmgc
