#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "medqc/dictionary.hpp"
#include "medqc/error.hpp"

using namespace medqc;

namespace {

const TextPipeline& pipeline() {
    static const TextPipeline p = TextPipeline::load(MEDQC_DATA_DIR "/lexicon/lemmas.tsv",
                                                     MEDQC_DATA_DIR "/lexicon/stopwords.txt",
                                                     MEDQC_DATA_DIR "/lexicon/function_words.txt");
    return p;
}

Dictionary make_dict(const std::vector<std::pair<std::string, SemanticGroup>>& defs) {
    return Dictionary::from_definitions(defs, pipeline());
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content) : path(name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("approximate key drops function words and folds inflection") {
    auto key = build_approx_key("aneurysm of the vein of galen", pipeline());
    CHECK(key == std::vector<std::string>{"aneurysm", "vein", "galen"});
    CHECK(build_approx_key("Fever", pipeline()) == std::vector<std::string>{"fever"});
    CHECK(build_approx_key("history of head injuries", pipeline()) ==
          std::vector<std::string>{"history", "head", "injury"});
}

TEST_CASE("loading skips comments, malformed lines and function-word-only entries") {
    TempFile file("medqc_dict_test.tsv",
                  "# comment\n"
                  "aneurysm of the vein of galen\tDisorder\n"
                  "fever\tSignOrSymptom\n"
                  "of the\tDisorder\n"
                  "missing group column\n"
                  "bad\tNotAGroup\n"
                  "too\tmany\tcolumns\n");
    Dictionary dict = Dictionary::load(file.path, pipeline());
    CHECK(dict.entries().size() == 2);
    CHECK(dict.skipped_lines() == 4);
    CHECK(dict.entries()[0].surface == "aneurysm of the vein of galen");
    CHECK(dict.entries()[0].approx_key == std::vector<std::string>{"aneurysm", "vein", "galen"});
    CHECK(dict.entries()[1].exact_key == std::vector<std::string>{"fever"});
    CHECK(dict.entries()[1].approx_key == std::vector<std::string>{"fever"});
}

TEST_CASE("unreadable dictionary file is a hard error") {
    CHECK_THROWS_AS(Dictionary::load("/nonexistent/dict.tsv", pipeline()), DataError);
}

TEST_CASE("published example: interleaved function words still match") {
    Dictionary dict = make_dict({{"aneurysm of the vein of galen", SemanticGroup::Disorder}});
    auto text = pipeline().tokenize("the aneurysm and vein of galen");
    auto mentions = match_entities(text, dict);
    REQUIRE(mentions.size() == 1);
    CHECK(mentions[0].kind == MatchKind::Approximate);
    CHECK(mentions[0].sentence_index == 0);
    CHECK(mentions[0].token_start == 1);
    CHECK(mentions[0].token_end == 6);
}

TEST_CASE("published example: lemma matching folds plurals") {
    Dictionary dict = make_dict({{"injury", SemanticGroup::Disorder}});
    auto text = pipeline().tokenize("head injuries");
    auto mentions = match_entities(text, dict);
    REQUIRE(mentions.size() == 1);
    CHECK(mentions[0].kind == MatchKind::Approximate);
    CHECK(mentions[0].token_start == 1);
    CHECK(mentions[0].token_end == 2);
}

TEST_CASE("empty text yields no mentions") {
    Dictionary dict = make_dict({{"fever", SemanticGroup::SignOrSymptom}});
    CHECK(match_entities(TokenizedText{}, dict).empty());
    CHECK(count_mentions({}) == 0);
}

TEST_CASE("longest match wins over an embedded shorter key") {
    Dictionary dict = make_dict({{"bone marrow transplant", SemanticGroup::Treatment},
                                 {"bone marrow", SemanticGroup::BodyPart}});
    auto text = pipeline().tokenize("a bone marrow transplant was done");
    auto mentions = match_entities(text, dict);
    REQUIRE(mentions.size() == 1);
    CHECK(mentions[0].token_end - mentions[0].token_start == 3);
    CHECK(dict.entries()[mentions[0].entry_id].surface == "bone marrow transplant");
}

TEST_CASE("exact match takes precedence over approximate") {
    Dictionary dict = make_dict({{"fever", SemanticGroup::SignOrSymptom}});
    auto text = pipeline().tokenize("Fever persisted");
    auto mentions = match_entities(text, dict);
    REQUIRE(mentions.size() == 1);
    CHECK(mentions[0].kind == MatchKind::Exact);
}

TEST_CASE("repeating the text doubles the mention count") {
    Dictionary dict = make_dict({{"fever", SemanticGroup::SignOrSymptom},
                                 {"injury", SemanticGroup::Disorder}});
    std::string once = "Fever follows the injury. ";
    auto single = match_entities(pipeline().tokenize(once), dict);
    auto twice = match_entities(pipeline().tokenize(once + once), dict);
    CHECK(count_mentions(twice) == 2 * count_mentions(single));
}

TEST_CASE("shared keys resolve to the lowest entry id") {
    Dictionary dict = make_dict({{"paracetamol", SemanticGroup::Drug},
                                 {"Paracetamol", SemanticGroup::ActiveIngredient}});
    // the duplicate collapses onto the first entry
    CHECK(dict.entries().size() == 1);
    auto text = pipeline().tokenize("paracetamol given");
    auto mentions = match_entities(text, dict);
    REQUIRE(mentions.size() == 1);
    CHECK(mentions[0].entry_id == 0);
}

TEST_CASE("mentions never overlap and never exceed the window bound") {
    Dictionary dict =
        Dictionary::load(MEDQC_DATA_DIR "/dictionary/med_dictionary.tsv", pipeline());
    CHECK(dict.skipped_lines() == 0);
    auto text = pipeline().tokenize(
        "Severe fever with headache and nausea after a fracture of the femur. "
        "The aneurysm of the vein of galen was treated with radiation therapy. "
        "Chronic cough, fatigue, dizziness and vertigo followed the concussion.");
    auto mentions = match_entities(text, dict);
    CHECK(mentions.size() >= 10);
    for (std::size_t i = 0; i < mentions.size(); ++i) {
        CHECK(mentions[i].token_start < mentions[i].token_end);
        CHECK(mentions[i].token_end - mentions[i].token_start <= Dictionary::kMaxNgram);
        if (i > 0) {
            CHECK(mentions[i].sentence_index >= mentions[i - 1].sentence_index);
            if (mentions[i].sentence_index == mentions[i - 1].sentence_index) {
                CHECK(mentions[i].token_start >= mentions[i - 1].token_end);
            }
        }
    }
}

TEST_CASE("property: inflecting a matched content token keeps the match") {
    Dictionary dict = make_dict({{"fracture of the femur", SemanticGroup::Disorder}});
    auto base = match_entities(pipeline().tokenize("fracture of the femur"), dict);
    REQUIRE(base.size() == 1);
    CHECK(base[0].kind == MatchKind::Exact);
    for (const char* variant : {"fractures of the femur", "fracture of the femora"}) {
        auto mentions = match_entities(pipeline().tokenize(variant), dict);
        REQUIRE(mentions.size() == 1);
        CHECK(mentions[0].kind == MatchKind::Approximate);
    }
}

TEST_CASE("window bound: eleven-token definitions cannot match") {
    // 11 content words; the matcher never tries windows beyond 10 tokens
    std::string long_term = "alpha beta gamma delta epsilon zeta eta theta iota kappa lambda";
    Dictionary dict = make_dict({{long_term, SemanticGroup::Disorder}});
    auto mentions = match_entities(pipeline().tokenize(long_term), dict);
    CHECK(mentions.empty());
}
