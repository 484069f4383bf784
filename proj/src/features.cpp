#include "medqc/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "medqc/error.hpp"

namespace medqc {
namespace {

struct KeywordRow {
    ArticleCategory category;
    std::vector<std::string> keywords;
};

const std::vector<KeywordRow>& keyword_rows() {
    static const std::vector<KeywordRow> kRows = {
        {ArticleCategory::A, {"anatom*", "embryolog*", "organ", "tissue"}},
        {ArticleCategory::B, {"born", "death", "birth"}},
        {ArticleCategory::D, {"disorder", "disease", "pathology"}},
        {ArticleCategory::F, {"first aid"}},
    };
    return kRows;
}

std::vector<std::string> split_words(std::string_view lowered) {
    std::vector<std::string> words;
    std::size_t i = 0;
    while (i < lowered.size()) {
        if (!std::isalnum(static_cast<unsigned char>(lowered[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < lowered.size() && std::isalnum(static_cast<unsigned char>(lowered[j]))) ++j;
        words.emplace_back(lowered.substr(i, j - i));
        i = j;
    }
    return words;
}

bool keyword_matches(const std::string& keyword, const std::vector<std::string>& words,
                     const TextPipeline& pipeline) {
    if (keyword.back() == '*') {
        std::string_view prefix = std::string_view(keyword).substr(0, keyword.size() - 1);
        for (const std::string& w : words) {
            if (w.size() >= prefix.size() && std::string_view(w).substr(0, prefix.size()) == prefix)
                return true;
        }
        return false;
    }
    if (keyword.find(' ') != std::string::npos) {
        std::vector<std::string> parts = split_words(keyword);
        if (parts.empty() || words.size() < parts.size()) return false;
        for (std::size_t i = 0; i + parts.size() <= words.size(); ++i) {
            bool all = true;
            for (std::size_t k = 0; k < parts.size(); ++k) {
                if (words[i + k] != parts[k]) {
                    all = false;
                    break;
                }
            }
            if (all) return true;
        }
        return false;
    }
    for (const std::string& w : words) {
        if (w == keyword || pipeline.lemmatize(w) == keyword) return true;
    }
    return false;
}

void append_csv_field(std::string& row, std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\n") != std::string_view::npos;
    if (!needs_quotes) {
        row.append(field);
        return;
    }
    row.push_back('"');
    for (char c : field) {
        if (c == '"') row.push_back('"');
        row.push_back(c);
    }
    row.push_back('"');
}

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

// One CSV record; understands quoted fields.
std::vector<std::string> split_csv_record(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

double parse_real(const std::string& s, int line_no) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw DataError("feature CSV line " + std::to_string(line_no) + ": bad number \"" + s +
                        "\"");
    }
    return v;
}

}  // namespace

double numeric_feature(const FeatureVector& v, int id) {
    switch (id) {
        case 0: return v.completeness;
        case 1: return v.informativeness;
        case 2: return v.num_headings;
        case 3: return v.article_length;
        case 4: return v.refs_per_length;
        case 5: return v.domain_informativeness;
        case 6: return v.infobox_norm_size;
    }
    return 0.0;
}

void set_numeric_feature(FeatureVector& v, int id, double value) {
    switch (id) {
        case 0: v.completeness = value; break;
        case 1: v.informativeness = value; break;
        case 2: v.num_headings = value; break;
        case 3: v.article_length = value; break;
        case 4: v.refs_per_length = value; break;
        case 5: v.domain_informativeness = value; break;
        case 6: v.infobox_norm_size = value; break;
        default: break;
    }
}

std::string_view feature_name(int id) {
    switch (id) {
        case 0: return "Completeness";
        case 1: return "Informativeness";
        case 2: return "NumHeadings";
        case 3: return "ArticleLength";
        case 4: return "NumRefPerLength";
        case 5: return "DomainInformativeness";
        case 6: return "InfoBoxNormSize";
        case 7: return "Category";
    }
    return "?";
}

std::string_view to_string(ModelVariant v) {
    switch (v) {
        case ModelVariant::Baseline: return "Baseline";
        case ModelVariant::MedicalDomain: return "MedicalDomain";
        case ModelVariant::FullMedicalDomain: return "FullMedicalDomain";
    }
    return "?";
}

std::optional<ModelVariant> parse_model_variant(std::string_view s) {
    for (ModelVariant v : {ModelVariant::Baseline, ModelVariant::MedicalDomain,
                           ModelVariant::FullMedicalDomain}) {
        if (s == to_string(v)) return v;
    }
    return std::nullopt;
}

std::vector<int> variant_features(ModelVariant v) {
    // Ranking-report order: structural features first, then the domain ones.
    std::vector<int> ids = {3, 2, 0, 4, 1};
    if (v == ModelVariant::MedicalDomain || v == ModelVariant::FullMedicalDomain) ids.push_back(5);
    if (v == ModelVariant::FullMedicalDomain) {
        ids.push_back(6);
        ids.push_back(kCategoryFeature);
    }
    return ids;
}

double compute_info_noise(const RawArticle& raw, const StructuralElements& elems,
                          const TextPipeline& pipeline) {
    if (raw.byte_length <= 0) return 0.0;
    TokenizedText tokens = pipeline.tokenize(elems.plain_text);
    int64_t surviving_bytes = 0;
    int64_t surviving_count = 0;
    for (const auto& sentence : tokens.sentences) {
        for (const Token& tok : sentence) {
            if (tok.is_stopword || is_pure_punctuation(tok.surface)) continue;
            surviving_bytes += static_cast<int64_t>(tok.surface.size());
            ++surviving_count;
        }
    }
    if (surviving_count > 1) surviving_bytes += surviving_count - 1;  // joining spaces
    double ratio = static_cast<double>(surviving_bytes) / static_cast<double>(raw.byte_length);
    return std::clamp(ratio, 0.0, 1.0);
}

ArticleCategory assign_category(const std::vector<std::string>& category_strings,
                                const TextPipeline& pipeline) {
    std::vector<std::vector<std::string>> words_per_string;
    words_per_string.reserve(category_strings.size());
    for (const std::string& s : category_strings) {
        words_per_string.push_back(split_words(to_lower(s)));
    }
    for (const KeywordRow& row : keyword_rows()) {
        for (const auto& words : words_per_string) {
            for (const std::string& kw : row.keywords) {
                if (keyword_matches(kw, words, pipeline)) return row.category;
            }
        }
    }
    return ArticleCategory::O;
}

ExtractionIntermediates compute_intermediates(const RawArticle& raw,
                                              const StructuralElements& elems,
                                              const TitleIndex& index,
                                              const TextPipeline& pipeline) {
    ExtractionIntermediates inter;
    WikilinkCounts links = count_wikilinks(elems, index);
    inter.num_wikilinks = links.total;
    inter.num_broken_wikilinks = links.broken;
    inter.num_images = elems.images;
    inter.num_references = elems.references;
    inter.num_headings = static_cast<int>(elems.headings.size());
    inter.info_noise = compute_info_noise(raw, elems, pipeline);
    inter.raw_bytes = raw.byte_length;
    inter.infobox_bytes = extract_infobox_bytes(elems);
    return inter;
}

BaselineFeatures compute_baseline(const ExtractionIntermediates& inter) {
    BaselineFeatures f;
    f.completeness = 0.4 * inter.num_broken_wikilinks + 0.4 * inter.num_wikilinks;
    f.informativeness = 0.6 * inter.info_noise + 0.3 * inter.num_images;
    f.num_headings = inter.num_headings;
    f.article_length = std::log10(static_cast<double>(std::max<int64_t>(inter.raw_bytes, 1)));
    f.refs_per_length = f.article_length > 0.0 ? inter.num_references / f.article_length : 0.0;
    return f;
}

double compute_infobox_norm_size(const ExtractionIntermediates& inter) {
    if (inter.infobox_bytes <= 0) return 0.0;
    double article_length = std::log10(static_cast<double>(std::max<int64_t>(inter.raw_bytes, 1)));
    if (article_length <= 0.0) return 0.0;
    return std::log10(static_cast<double>(inter.infobox_bytes)) / article_length;
}

FeatureVector extract_features(const RawArticle& raw, const TitleIndex& index,
                               const Dictionary* dict, const TextPipeline& pipeline) {
    StructuralElements elems = parse_article(raw);
    ExtractionIntermediates inter = compute_intermediates(raw, elems, index, pipeline);
    BaselineFeatures base = compute_baseline(inter);

    FeatureVector v;
    v.title = raw.title;
    v.label = raw.label;
    v.completeness = base.completeness;
    v.informativeness = base.informativeness;
    v.num_headings = base.num_headings;
    v.article_length = base.article_length;
    v.refs_per_length = base.refs_per_length;
    v.infobox_norm_size = compute_infobox_norm_size(inter);
    if (dict) {
        TokenizedText tokens = pipeline.tokenize(elems.plain_text);
        v.domain_informativeness = count_mentions(match_entities(tokens, *dict));
    }
    v.category = assign_category(elems.category_strings, pipeline);
    return v;
}

std::vector<FeatureVector> extract_corpus_serial(const std::vector<RawArticle>& corpus,
                                                 const TitleIndex& index, const Dictionary* dict,
                                                 const TextPipeline& pipeline) {
    std::vector<FeatureVector> out(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        out[i] = extract_features(corpus[i], index, dict, pipeline);
    }
    return out;
}

std::vector<FeatureVector> extract_corpus_parallel(const std::vector<RawArticle>& corpus,
                                                   const TitleIndex& index, const Dictionary* dict,
                                                   const TextPipeline& pipeline, int threads) {
    std::vector<FeatureVector> out(corpus.size());
    const int64_t n = static_cast<int64_t>(corpus.size());
#ifdef _OPENMP
    if (threads > 0) {
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
        for (int64_t i = 0; i < n; ++i) {
            out[i] = extract_features(corpus[i], index, dict, pipeline);
        }
    } else {
#pragma omp parallel for schedule(dynamic, 8)
        for (int64_t i = 0; i < n; ++i) {
            out[i] = extract_features(corpus[i], index, dict, pipeline);
        }
    }
#else
    (void)threads;
    for (int64_t i = 0; i < n; ++i) {
        out[i] = extract_features(corpus[i], index, dict, pipeline);
    }
#endif
    return out;
}

const char* const kFeatureCsvHeader =
    "title,completeness,informativeness,num_headings,article_length,refs_per_length,"
    "domain_informativeness,infobox_norm_size,category,label";

void write_feature_csv(std::ostream& out, const std::vector<FeatureVector>& vectors) {
    out << kFeatureCsvHeader << '\n';
    for (const FeatureVector& v : vectors) {
        std::string row;
        append_csv_field(row, v.title);
        for (int id = 0; id < kNumNumericFeatures; ++id) {
            row.push_back(',');
            row.append(format_real(numeric_feature(v, id)));
        }
        row.push_back(',');
        row.push_back(to_letter(v.category));
        row.push_back(',');
        row.append(to_string(v.label));
        row.push_back('\n');
        out << row;
    }
}

std::vector<FeatureVector> read_feature_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("feature CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kFeatureCsvHeader) throw DataError("feature CSV has an unexpected header");

    std::vector<FeatureVector> out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields = split_csv_record(line);
        if (fields.size() != 10) {
            throw DataError("feature CSV line " + std::to_string(line_no) + ": expected 10 fields");
        }
        FeatureVector v;
        v.title = fields[0];
        for (int id = 0; id < kNumNumericFeatures; ++id) {
            set_numeric_feature(v, id, parse_real(fields[1 + id], line_no));
        }
        auto category = parse_category_letter(fields[8]);
        if (!category) {
            throw DataError("feature CSV line " + std::to_string(line_no) + ": bad category \"" +
                            fields[8] + "\"");
        }
        v.category = *category;
        auto label = parse_quality_class(fields[9]);
        if (!label) {
            throw DataError("feature CSV line " + std::to_string(line_no) + ": bad label \"" +
                            fields[9] + "\"");
        }
        v.label = *label;
        v.synthetic = v.title.rfind("synthetic:", 0) == 0;
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace medqc
