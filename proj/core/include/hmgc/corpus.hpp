#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hmgc {

enum class Label { human, machine };

std::string to_string(Label label);
Label label_from_string(const std::string& s);

// One corpus item: an article plus the prompt that produced it (if known).
struct Sample {
    std::string id;
    std::optional<std::string> requirement;
    std::string text;
    Label label = Label::human;
    std::string source;
};

using Corpus = std::vector<Sample>;

// A word with its character span [begin, end) into the original text.
struct Word {
    std::string surface;
    std::size_t begin = 0;
    std::size_t end = 0;
};

// Word-level view of a text. Spans are strictly increasing and non-overlapping;
// the original text is kept so inter-word material can be reproduced exactly.
struct WordSequence {
    std::string text;
    std::vector<Word> words;

    std::size_t size() const { return words.size(); }

    // Rebuilds the text byte-for-byte from spans and inter-word gaps.
    std::string detokenize() const;

    // Rebuilds the text with the given per-word surfaces spliced into the
    // original gaps. `surfaces` must have one entry per word.
    std::string render(const std::vector<std::string>& surfaces) const;

    // Text with word `index` removed, collapsing the separator next to it.
    std::string without_word(std::size_t index) const;
};

// Words are maximal runs of letters/digits/apostrophes (bytes >= 0x80 count
// as letters so UTF-8 text stays intact). Everything else is inter-word.
WordSequence tokenize_words(const std::string& text);

// Lowercased word surfaces, the token view used by the reference scorers.
std::vector<std::string> word_tokens(const std::string& text);
std::string lowercase(const std::string& s);

struct CorpusSplit {
    std::map<std::string, std::vector<std::string>> parts; // name -> sample ids
    long seed = 0;
};

// Loads a line-delimited corpus file. Throws ParseError with the line number
// on malformed records, ValidationError on duplicate ids or empty texts.
Corpus load_corpus(const std::string& path);
void save_corpus(const Corpus& corpus, const std::string& path);

// Deterministic seeded partition; part sizes differ from the exact
// proportions by at most one sample (largest-remainder apportionment).
CorpusSplit split_corpus(const Corpus& corpus,
                         const std::map<std::string, double>& fractions,
                         long seed);

// Per-sample attack output (serialized one record per line).
struct AttackRecord {
    std::string id;
    std::string original_text;
    std::string adversarial_text;
    double score_before = 0.0;
    double score_after = 0.0;
    bool success = false;
    long queries = 0;
    double perturbed_ratio = 0.0;
    double seconds = 0.0;
};

void save_results(const std::vector<AttackRecord>& records, const std::string& path);
std::vector<AttackRecord> load_results(const std::string& path);

} // namespace hmgc
