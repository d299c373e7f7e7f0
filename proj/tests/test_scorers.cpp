#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>

#include "hmgc/errors.hpp"
#include "hmgc/reference.hpp"
#include "hmgc/registry.hpp"
#include "hmgc/synthetic.hpp"

using namespace hmgc;

namespace {

Corpus marker_corpus(int per_class = 20) {
    // Machine texts carry the marker token "zq"; linearly separable.
    Corpus corpus;
    const std::vector<std::string> filler = {"river", "stone", "cloud", "paper", "garden"};
    for (int i = 0; i < per_class; ++i) {
        std::string base = filler[i % filler.size()] + " " + filler[(i + 1) % filler.size()] +
                           " " + filler[(i + 2) % filler.size()];
        corpus.push_back({"h" + std::to_string(i), std::nullopt, base + " today", Label::human, "t"});
        corpus.push_back({"m" + std::to_string(i), std::nullopt, base + " zq today",
                          Label::machine, "t"});
    }
    return corpus;
}

TrainConfig toy_train() {
    TrainConfig c;
    c.learning_rate = 2.0;
    c.epochs = 80;
    c.batch_size = 1024;
    c.seed = 5;
    return c;
}

} // namespace

TEST_CASE("reference detector reaches training accuracy 1.0 on separable corpus") {
    auto corpus = marker_corpus();
    auto det = reference_detector_train(corpus, toy_train());
    for (const auto& s : corpus)
        CHECK(det->decide(s.text, 0.5) == s.label);
    for (const auto& s : corpus) {
        double p = det->score(s.text);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
}

TEST_CASE("reference detector training rejects bad corpora") {
    CHECK_THROWS_AS(reference_detector_train({}, toy_train()), ValidationError);
    Corpus single = {{"a", std::nullopt, "only human text", Label::human, "t"}};
    CHECK_THROWS_AS(reference_detector_train(single, toy_train()), ValidationError);
}

TEST_CASE("retraining with the same seed reproduces scores") {
    auto corpus = marker_corpus();
    auto d1 = reference_detector_train(corpus, toy_train());
    auto d2 = reference_detector_train(corpus, toy_train());
    CHECK(d1->score("stone cloud zq") == d2->score("stone cloud zq"));
    CHECK(d1->score("stone cloud river") == d2->score("stone cloud river"));
}

TEST_CASE("detector scores are deterministic across repeated calls") {
    auto det = reference_detector_train(marker_corpus(), toy_train());
    double a = det->score("garden zq paper");
    for (int i = 0; i < 5; ++i) CHECK(det->score("garden zq paper") == a);
}

TEST_CASE("detector checkpoint round-trips scores exactly") {
    auto det = reference_detector_train(marker_corpus(), toy_train());
    det->save("/tmp/hmgc-test-det.ckpt");
    auto loaded = ReferenceDetector::load("/tmp/hmgc-test-det.ckpt");
    CHECK(loaded->score("garden zq paper") == det->score("garden zq paper"));
    CHECK(loaded->score("unseen words here") == det->score("unseen words here"));
    std::remove("/tmp/hmgc-test-det.ckpt");
}

TEST_CASE("uniform unigram model has ppl equal to vocabulary size") {
    // Every vocabulary word appears exactly twice: add-one smoothing stays uniform.
    auto model = ReferencePerplexity::fit({"a b c d", "a b c d"});
    CHECK(model.ppl("a b") == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(model.ppl("d c b a") == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("single token with probability 1/4 gives ppl 4") {
    // counts: x=1, y=1, z=1, w=1; total=4, V=4 -> p(x) = 2/8 = 1/4.
    auto model = ReferencePerplexity::fit({"x y z w"});
    CHECK(model.ppl("x") == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("5-token ppl matches hand arithmetic") {
    // counts: a=3, b=1; total=4, V=2. p(a)=4/6, p(b)=2/6, unseen=1/6.
    auto model = ReferencePerplexity::fit({"a a a b"});
    double expect = std::exp(-(3.0 * std::log(4.0 / 6.0) + std::log(2.0 / 6.0) +
                               std::log(1.0 / 6.0)) / 5.0);
    CHECK(model.ppl("a a b a q") == doctest::Approx(expect).epsilon(1e-9));
    CHECK(model.ppl("a a b a q") >= 1.0);
}

TEST_CASE("ppl rejects empty text") {
    auto model = ReferencePerplexity::fit({"a b"});
    CHECK_THROWS_AS(model.ppl("   "), ValidationError);
}

TEST_CASE("masked predictor returns the most frequent fill for M=1") {
    auto model = ReferenceMaskedPredictor::fit(
        {"the cat sat", "the cat sat", "the dog sat", "the cat ran"});
    auto words = tokenize_words("the cat sat");
    auto cands = model.predict(words, 1, 1);
    REQUIRE(cands.size() == 1);
    CHECK(cands[0].word == "cat"); // cat between the/sat twice, dog once
}

TEST_CASE("masked predictor probabilities are a truncated softmax") {
    auto model = ReferenceMaskedPredictor::fit(
        {"a x b", "a x b", "a y b", "a z c", "c q a"});
    auto words = tokenize_words("a x b");
    auto cands = model.predict(words, 1, 10);
    double sum = 0.0, prev = 1.0;
    for (const auto& c : cands) {
        CHECK(c.probability > 0.0);
        CHECK(c.probability <= prev);
        prev = c.probability;
        sum += c.probability;
    }
    CHECK(sum <= 1.0 + 1e-12);
}

TEST_CASE("masked predictor validates the index") {
    auto model = ReferenceMaskedPredictor::fit({"a b c"});
    auto words = tokenize_words("a b c");
    CHECK_THROWS_AS(model.predict(words, 3, 5), ValidationError);
}

TEST_CASE("masked predictor persistence round-trip") {
    auto model = ReferenceMaskedPredictor::fit({"the cat sat", "the dog sat"});
    model.save("/tmp/hmgc-test-mlm.ckpt");
    auto loaded = ReferenceMaskedPredictor::load("/tmp/hmgc-test-mlm.ckpt");
    auto words = tokenize_words("the cat sat");
    auto a = model.predict(words, 1, 5);
    auto b = loaded.predict(words, 1, 5);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].word == b[i].word);
        CHECK(a[i].probability == b[i].probability);
    }
    std::remove("/tmp/hmgc-test-mlm.ckpt");
}

TEST_CASE("similarity identities") {
    ReferenceSimilarity sim;
    CHECK(sim.similarity("a b b", "a b b") == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(sim.similarity("a b", "c d") == doctest::Approx(0.0));
    CHECK(sim.similarity("a b b", "a b") == doctest::Approx(3.0 / std::sqrt(10.0)).epsilon(1e-9));
    CHECK(sim.similarity("x y", "y x") ==
          doctest::Approx(sim.similarity("y x", "x y")).epsilon(1e-6));
    CHECK_THROWS_AS(sim.similarity("", "a"), ValidationError);
}

TEST_CASE("pos tagger covers the coarse categories") {
    ReferencePosTagger tagger;
    CHECK(tagger.tag_word("happy") == PosTag::ADJ);
    CHECK(tagger.tag_word("glad") == PosTag::ADJ);
    CHECK(tagger.tag_word("runs") == PosTag::VERB);
    CHECK(tagger.tag_word("quickly") == PosTag::ADV);
    CHECK(tagger.tag_word("the") == PosTag::DET);
    CHECK(tagger.tag_word("they") == PosTag::PRON);
    CHECK(tagger.tag_word("42") == PosTag::NUM);
    CHECK(tagger.tag_word("table") == PosTag::NOUN);
    auto tags = tagger.tag(tokenize_words("The happy dog runs quickly"));
    REQUIRE(tags.size() == 5);
    CHECK(tags[0] == PosTag::DET);
    CHECK(tags[1] == PosTag::ADJ);
    CHECK(tags[3] == PosTag::VERB);
}

TEST_CASE("scorer registry resolves reference backends and rejects unknown ones") {
    auto data = make_synthetic({10, 10, 16, 3});
    auto bundle = make_scorers("reference", data.background);
    CHECK(bundle.predictor);
    CHECK(bundle.perplexity);
    CHECK(bundle.encoder);
    CHECK(bundle.tagger);
    CHECK_THROWS_AS(make_scorers("nonexistent", data.background), ValidationError);
}
