#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "medqc/error.hpp"
#include "medqc/features.hpp"
#include "medqc/rng.hpp"

using namespace medqc;

namespace {

const TextPipeline& pipeline() {
    static const TextPipeline p = TextPipeline::load(MEDQC_DATA_DIR "/lexicon/lemmas.tsv",
                                                     MEDQC_DATA_DIR "/lexicon/stopwords.txt",
                                                     MEDQC_DATA_DIR "/lexicon/function_words.txt");
    return p;
}

const Dictionary& dictionary() {
    static const Dictionary d =
        Dictionary::load(MEDQC_DATA_DIR "/dictionary/med_dictionary.tsv", pipeline());
    return d;
}

double info_noise_of(const std::string& wikitext) {
    RawArticle raw = make_article("T", wikitext);
    return compute_info_noise(raw, parse_article(raw), pipeline());
}

}  // namespace

TEST_CASE("info noise: all stopwords, all content, mixed markup") {
    CHECK(info_noise_of("the the the") == 0.0);
    CHECK(info_noise_of("fever") == 1.0);
    // plain text "Fever is common." -> surviving "Fever common" = 12 bytes over 20
    CHECK(info_noise_of("[[Fever]] is common.") == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(info_noise_of("") == 0.0);
}

TEST_CASE("baseline formulas on the worked examples") {
    ExtractionIntermediates inter;
    inter.num_wikilinks = 10;
    inter.num_broken_wikilinks = 2;
    inter.info_noise = 0.5;
    inter.num_images = 1;
    inter.num_references = 3;
    inter.raw_bytes = 1000;
    BaselineFeatures f = compute_baseline(inter);
    CHECK(f.completeness == doctest::Approx(4.8).epsilon(1e-12));
    CHECK(f.informativeness == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(f.article_length == 3.0);  // log10(1000) exactly
    CHECK(f.refs_per_length == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("refs_per_length guards the empty article") {
    ExtractionIntermediates inter;
    inter.num_references = 5;
    inter.raw_bytes = 0;
    BaselineFeatures f = compute_baseline(inter);
    CHECK(f.article_length == 0.0);
    CHECK(f.refs_per_length == 0.0);
}

TEST_CASE("property: formulas are linear with the published weights") {
    Rng rng(41);
    for (int i = 0; i < 1000; ++i) {
        ExtractionIntermediates inter;
        inter.num_wikilinks = static_cast<int>(rng.index(500));
        inter.num_broken_wikilinks = static_cast<int>(rng.index(inter.num_wikilinks + 1));
        inter.info_noise = rng.next_unit();
        inter.num_images = static_cast<int>(rng.index(50));
        inter.num_references = static_cast<int>(rng.index(100));
        inter.raw_bytes = 1 + static_cast<int64_t>(rng.index(100000));
        BaselineFeatures f = compute_baseline(inter);
        CHECK(std::abs(f.completeness -
                       (0.4 * inter.num_broken_wikilinks + 0.4 * inter.num_wikilinks)) <= 1e-12);
        CHECK(std::abs(f.informativeness - (0.6 * inter.info_noise + 0.3 * inter.num_images)) <=
              1e-12);
    }
}

TEST_CASE("article length is exact on powers of ten") {
    for (int exp = 0; exp <= 9; ++exp) {
        ExtractionIntermediates inter;
        inter.raw_bytes = 1;
        for (int k = 0; k < exp; ++k) inter.raw_bytes *= 10;
        CHECK(compute_baseline(inter).article_length == static_cast<double>(exp));
    }
}

TEST_CASE("infobox normalized size") {
    ExtractionIntermediates none;
    none.raw_bytes = 10000;
    CHECK(compute_infobox_norm_size(none) == 0.0);

    ExtractionIntermediates powers;
    powers.raw_bytes = 10000;
    powers.infobox_bytes = 100;
    CHECK(compute_infobox_norm_size(powers) == doctest::Approx(0.5).epsilon(1e-12));

    ExtractionIntermediates one_byte;
    one_byte.raw_bytes = 10000;
    one_byte.infobox_bytes = 1;
    CHECK(compute_infobox_norm_size(one_byte) == 0.0);
}

TEST_CASE("category assignment follows the keyword table") {
    const TextPipeline& p = pipeline();
    CHECK(assign_category({"Human anatomy"}, p) == ArticleCategory::A);
    CHECK(assign_category({"1901 births"}, p) == ArticleCategory::B);
    CHECK(assign_category({"Rare diseases"}, p) == ArticleCategory::D);
    CHECK(assign_category({"First aid techniques"}, p) == ArticleCategory::F);
    CHECK(assign_category({}, p) == ArticleCategory::O);
    CHECK(assign_category({"Medical stubs"}, p) == ArticleCategory::O);

    // prefix keywords
    CHECK(assign_category({"Embryology"}, p) == ArticleCategory::A);
    CHECK(assign_category({"Anatomical structures"}, p) == ArticleCategory::A);
    // whole-word keywords do not match prefixes
    CHECK(assign_category({"Organizations"}, p) == ArticleCategory::O);
    // lemma folding of plural category words
    CHECK(assign_category({"Deaths in 1900"}, p) == ArticleCategory::B);
    CHECK(assign_category({"Pathology"}, p) == ArticleCategory::D);
    // "first aid" matches as a phrase only
    CHECK(assign_category({"First responders and aid stations"}, p) == ArticleCategory::O);
    // fixed row order decides when several rows match
    CHECK(assign_category({"Organ diseases"}, p) == ArticleCategory::A);
}

TEST_CASE("category assignment is order stable") {
    const TextPipeline& p = pipeline();
    std::vector<std::string> strings = {"Plain topic", "Rare diseases", "General articles"};
    ArticleCategory expected = assign_category(strings, p);
    std::vector<std::string> permuted = {"Rare diseases", "General articles", "Plain topic"};
    CHECK(assign_category(permuted, p) == expected);
    CHECK(expected == ArticleCategory::D);
}

TEST_CASE("empty article extracts to all-zero features") {
    TitleIndex index = TitleIndex::build({});
    FeatureVector v = extract_features(make_article("Empty", ""), index, &dictionary(), pipeline());
    CHECK(v.completeness == 0.0);
    CHECK(v.informativeness == 0.0);
    CHECK(v.num_headings == 0.0);
    CHECK(v.article_length == 0.0);
    CHECK(v.refs_per_length == 0.0);
    CHECK(v.domain_informativeness == 0.0);
    CHECK(v.infobox_norm_size == 0.0);
    CHECK(v.category == ArticleCategory::O);
}

TEST_CASE("infobox-only article has no mentions but a positive infobox size") {
    std::string text = "{{Infobox condition | name = Fever of unknown origin | code = F99 }}";
    RawArticle raw = make_article("Infobox only", text);
    TitleIndex index = TitleIndex::build({raw});
    FeatureVector v = extract_features(raw, index, &dictionary(), pipeline());
    CHECK(v.domain_informativeness == 0.0);  // the matcher runs on prose, which excludes the infobox
    CHECK(v.infobox_norm_size > 0.0);
}

TEST_CASE("property: duplicating the body doubles counts, info noise stays put") {
    Rng rng(314);
    const char* bodies[] = {
        "Fever is a [[symptom]] of many [[Disease|diseases]].<ref>a</ref> [[File:x.png]] more "
        "prose here to pad the article body length.",
        "== Causes ==\nThe [[infection]] spreads.<ref>b</ref><ref name=\"c\"/> Words follow "
        "and keep following across the line.",
    };
    for (const char* body : bodies) {
        (void)rng;
        std::string once(body);
        std::string twice = once + "\n" + once;
        auto e1 = parse_wikitext(once);
        auto e2 = parse_wikitext(twice);
        CHECK(e2.internal_links.size() == 2 * e1.internal_links.size());
        CHECK(e2.references == 2 * e1.references);
        CHECK(e2.images == 2 * e1.images);
        double noise1 = info_noise_of(once);
        double noise2 = info_noise_of(twice);
        CHECK(std::abs(noise1 - noise2) <= 0.01);
    }
}

TEST_CASE("extraction is deterministic") {
    RawArticle raw = make_article(
        "Det", "[[Fever]] and [[cough]] with {{Infobox x|y=1}}.<ref>s</ref> [[Category:Rare "
               "diseases]] text tail.");
    TitleIndex index = TitleIndex::build({raw});
    std::ostringstream a, b;
    write_feature_csv(a, {extract_features(raw, index, &dictionary(), pipeline())});
    write_feature_csv(b, {extract_features(raw, index, &dictionary(), pipeline())});
    CHECK(a.str() == b.str());
}

TEST_CASE("feature CSV round trip is stable") {
    Rng rng(5150);
    std::vector<FeatureVector> vectors;
    for (int i = 0; i < 25; ++i) {
        FeatureVector v;
        v.title = i % 3 ? "Article " + std::to_string(i) : "Quoted, \"name\" " + std::to_string(i);
        for (int f = 0; f < kNumNumericFeatures; ++f) {
            set_numeric_feature(v, f, rng.next_unit() * 10);
        }
        v.category = kAllCategories[rng.index(kNumCategories)];
        v.label = kAllClasses[rng.index(kNumClasses)];
        vectors.push_back(v);
    }
    std::ostringstream first;
    write_feature_csv(first, vectors);
    std::istringstream in(first.str());
    auto parsed = read_feature_csv(in);
    REQUIRE(parsed.size() == vectors.size());
    std::ostringstream second;
    write_feature_csv(second, parsed);
    CHECK(first.str() == second.str());
    CHECK(parsed[0].title == vectors[0].title);
}

TEST_CASE("malformed feature CSV raises DataError") {
    std::istringstream bad_header("nope\n");
    CHECK_THROWS_AS(read_feature_csv(bad_header), DataError);
    std::istringstream short_row(std::string(kFeatureCsvHeader) + "\nonly,two\n");
    CHECK_THROWS_AS(read_feature_csv(short_row), DataError);
}

TEST_CASE("variant feature sets grow from Baseline to FullMedicalDomain") {
    auto base = variant_features(ModelVariant::Baseline);
    auto medical = variant_features(ModelVariant::MedicalDomain);
    auto full = variant_features(ModelVariant::FullMedicalDomain);
    CHECK(base.size() == 5);
    CHECK(medical.size() == 6);
    CHECK(full.size() == 8);
    CHECK(std::vector<int>(medical.begin(), medical.begin() + 5) == base);
    CHECK(std::vector<int>(full.begin(), full.begin() + 6) == medical);
    CHECK(full[7] == kCategoryFeature);
}
