#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "medqc/dictionary.hpp"
#include "medqc/quality.hpp"
#include "medqc/text_pipeline.hpp"
#include "medqc/wikitext.hpp"

namespace medqc {

// Raw counts an article's features are assembled from.
struct ExtractionIntermediates {
    int num_wikilinks = 0;
    int num_broken_wikilinks = 0;
    int num_images = 0;
    int num_references = 0;
    int num_headings = 0;
    double info_noise = 0.0;  // in [0,1]
    int64_t raw_bytes = 0;
    int64_t infobox_bytes = 0;
};

// The full model feature vector. num_headings is integral for real articles;
// it is held as a double because synthetic oversampling interpolates every
// numeric attribute.
struct FeatureVector {
    std::string title;
    double completeness = 0.0;
    double informativeness = 0.0;
    double num_headings = 0.0;
    double article_length = 0.0;  // log10 of wikitext bytes
    double refs_per_length = 0.0;
    double domain_informativeness = 0.0;  // entity mention count
    double infobox_norm_size = 0.0;
    ArticleCategory category = ArticleCategory::O;
    QualityClass label = QualityClass::Stub;
    bool synthetic = false;
};

inline constexpr int kNumNumericFeatures = 7;
inline constexpr int kCategoryFeature = 7;  // nominal feature id
inline constexpr int kNumFeatures = 8;

// Numeric feature ids 0..6 in FeatureVector field order.
double numeric_feature(const FeatureVector& v, int id);
void set_numeric_feature(FeatureVector& v, int id, double value);
std::string_view feature_name(int id);  // 0..7

enum class ModelVariant { Baseline, MedicalDomain, FullMedicalDomain };

std::string_view to_string(ModelVariant v);
std::optional<ModelVariant> parse_model_variant(std::string_view s);

// Feature ids used by a variant, in ranking-report order.
std::vector<int> variant_features(ModelVariant v);

// Surviving prose after stopword and punctuation cleaning, in bytes, over the
// raw markup size. Clamped to [0,1]; 0 for an empty article.
double compute_info_noise(const RawArticle& raw, const StructuralElements& elems,
                          const TextPipeline& pipeline);

struct BaselineFeatures {
    double completeness = 0.0;
    double informativeness = 0.0;
    double num_headings = 0.0;
    double article_length = 0.0;
    double refs_per_length = 0.0;
};

// The five weighted structural/linguistic features.
BaselineFeatures compute_baseline(const ExtractionIntermediates& inter);

// log10 of the infobox byte count over article_length; 0 without an infobox
// or for an empty article.
double compute_infobox_norm_size(const ExtractionIntermediates& inter);

// First matching keyword class in fixed order A, B, D, F; O otherwise.
// `word*` keywords prefix-match any word of a category string; bare keywords
// match a whole word or its lemma; multi-word keywords match consecutive words.
ArticleCategory assign_category(const std::vector<std::string>& category_strings,
                                const TextPipeline& pipeline);

ExtractionIntermediates compute_intermediates(const RawArticle& raw,
                                              const StructuralElements& elems,
                                              const TitleIndex& index,
                                              const TextPipeline& pipeline);

// Total function: any article yields a vector. dict may be null, in which
// case domain_informativeness is 0.
FeatureVector extract_features(const RawArticle& raw, const TitleIndex& index,
                               const Dictionary* dict, const TextPipeline& pipeline);

// Corpus-level extraction. The serial loop is the reference implementation;
// the parallel one fans articles out over OpenMP threads and must produce an
// identical result (output order equals input order).
std::vector<FeatureVector> extract_corpus_serial(const std::vector<RawArticle>& corpus,
                                                 const TitleIndex& index, const Dictionary* dict,
                                                 const TextPipeline& pipeline);
std::vector<FeatureVector> extract_corpus_parallel(const std::vector<RawArticle>& corpus,
                                                   const TitleIndex& index, const Dictionary* dict,
                                                   const TextPipeline& pipeline, int threads = 0);

// CSV feature matrix: fixed header, reals with 6 decimal digits, category as
// its letter.
extern const char* const kFeatureCsvHeader;
void write_feature_csv(std::ostream& out, const std::vector<FeatureVector>& vectors);
std::vector<FeatureVector> read_feature_csv(std::istream& in);  // throws DataError

}  // namespace medqc
