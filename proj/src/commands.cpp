#include "medqc/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "medqc/corpus.hpp"
#include "medqc/error.hpp"

namespace medqc {
namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

TextPipeline load_pipeline(const ResourceOptions& res) {
    return TextPipeline::load(res.lemmas, res.stopwords, res.function_words);
}

void require_dictionary(const ResourceOptions& res, ModelVariant variant) {
    if (variant != ModelVariant::Baseline && res.dictionary.empty()) {
        throw DataError("variant " + std::string(to_string(variant)) +
                        " needs a dictionary; pass --dictionary");
    }
}

std::vector<RawArticle> load_corpus_logged(const std::string& path) {
    CorpusLoadResult loaded = load_corpus_jsonl(path);
    std::cerr << "corpus: " << loaded.articles.size() << " articles parsed, "
              << loaded.skipped_lines << " malformed lines skipped\n";
    return std::move(loaded.articles);
}

std::vector<FeatureVector> extract_all(const std::vector<RawArticle>& corpus,
                                       const TitleIndex& index, const Dictionary* dict,
                                       const TextPipeline& pipeline, int threads) {
    if (threads == 1) return extract_corpus_serial(corpus, index, dict, pipeline);
    return extract_corpus_parallel(corpus, index, dict, pipeline, threads);
}

Dataset dataset_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read feature CSV: " + path);
    Dataset data;
    data.vectors = read_feature_csv(in);
    return data;
}

Dataset apply_sampling(Dataset data, const SamplingOptions& sampling) {
    data = undersample(data, sampling.undersample, sampling.smote.seed);
    if (sampling.smote.active()) data = smote(data, sampling.smote);
    return data;
}

std::string feature_csv_string(const std::vector<FeatureVector>& vectors) {
    std::ostringstream out;
    write_feature_csv(out, vectors);
    return out.str();
}

constexpr int kModelFormatVersion = 1;
constexpr const char* kModelKind = "medqc-forest";

nlohmann::json model_to_json(const ForestModel& model, ModelVariant variant,
                             const TitleIndex& index) {
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["kind"] = kModelKind;
    j["variant"] = std::string(to_string(variant));
    nlohmann::json classes = nlohmann::json::array();
    for (QualityClass c : kAllClasses) classes.push_back(std::string(to_string(c)));
    j["classes"] = std::move(classes);
    nlohmann::json names = nlohmann::json::array();
    for (int f : model.active_features) names.push_back(std::string(feature_name(f)));
    j["feature_names"] = std::move(names);
    j["title_index"] = index.sorted_titles();
    j["forest"] = forest_to_json(model);
    return j;
}

struct LoadedModel {
    ForestModel forest;
    ModelVariant variant;
    TitleIndex index;
};

LoadedModel model_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read model: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw DataError("model file is not valid JSON: " + path);
    try {
        if (j.at("format_version").get<int>() != kModelFormatVersion ||
            j.at("kind").get<std::string>() != kModelKind) {
            throw DataError("unsupported model format in " + path);
        }
        auto variant = parse_model_variant(j.at("variant").get<std::string>());
        if (!variant) throw DataError("model names an unknown variant");
        LoadedModel loaded;
        loaded.variant = *variant;
        loaded.forest = forest_from_json(j.at("forest"));

        std::vector<int> expected = variant_features(*variant);
        if (loaded.forest.active_features != expected) {
            throw DataError("model feature set does not match its variant");
        }
        auto names = j.at("feature_names").get<std::vector<std::string>>();
        if (names.size() != expected.size()) throw DataError("model feature names mismatch");
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (names[i] != feature_name(expected[i])) {
                throw DataError("model feature names mismatch");
            }
        }
        auto classes = j.at("classes").get<std::vector<std::string>>();
        if (classes.size() != kNumClasses) throw DataError("model class list mismatch");
        for (int c = 0; c < kNumClasses; ++c) {
            if (classes[c] != to_string(kAllClasses[c])) {
                throw DataError("model class list mismatch");
            }
        }
        loaded.index =
            TitleIndex::from_normalized(j.at("title_index").get<std::vector<std::string>>());
        return loaded;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed model file: ") + e.what());
    }
}

}  // namespace

bool SamplingOptions::any() const {
    for (int t : undersample)
        if (t != kKeepClass) return true;
    return smote.active() || reference_defaults;
}

void SamplingOptions::resolve(uint64_t seed) {
    if (reference_defaults) {
        for (QualityClass c :
             {QualityClass::Stub, QualityClass::Start, QualityClass::C, QualityClass::B}) {
            if (undersample[static_cast<int>(c)] == kKeepClass) {
                undersample[static_cast<int>(c)] = 1015;
            }
        }
        if (smote.percent[static_cast<int>(QualityClass::GA)] == 0) {
            smote.percent[static_cast<int>(QualityClass::GA)] = 40;
        }
        if (smote.percent[static_cast<int>(QualityClass::FA)] == 0) {
            smote.percent[static_cast<int>(QualityClass::FA)] = 180;
        }
    }
    smote.seed = seed;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw DataError("cannot write " + tmp);
        out << content;
        out.flush();
        if (!out) throw DataError("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw DataError("cannot move " + tmp + " into place");
    }
}

void cmd_extract(const ExtractOptions& opt) {
    require_dictionary(opt.res, opt.variant);
    TextPipeline pipeline = load_pipeline(opt.res);
    Dictionary dict;
    const Dictionary* dict_ptr = nullptr;
    if (!opt.res.dictionary.empty()) {
        dict = Dictionary::load(opt.res.dictionary, pipeline);
        if (dict.skipped_lines() > 0) {
            std::cerr << "dictionary: " << dict.skipped_lines() << " lines skipped\n";
        }
        dict_ptr = &dict;
    }
    std::vector<RawArticle> corpus = load_corpus_logged(opt.corpus_path);
    TitleIndex index = TitleIndex::build(corpus);
    std::vector<FeatureVector> vectors =
        extract_all(corpus, index, dict_ptr, pipeline, opt.threads);
    write_file_atomic(opt.out_path, feature_csv_string(vectors));
    std::cerr << "wrote " << vectors.size() << " feature rows to " << opt.out_path << "\n";
}

void cmd_sample(const SampleOptions& opt) {
    Dataset data = dataset_from_csv(opt.in_csv);
    SamplingOptions sampling = opt.sampling;
    sampling.resolve(opt.seed);
    data = apply_sampling(std::move(data), sampling);
    write_file_atomic(opt.out_csv, feature_csv_string(data.vectors));
    std::cerr << "wrote " << data.vectors.size() << " rows to " << opt.out_csv << "\n";
}

void cmd_rank(const RankOptions& opt) {
    Dataset data = dataset_from_csv(opt.in_csv);
    std::vector<std::pair<std::string, double>> gains;
    for (int f : variant_features(opt.variant)) {
        gains.emplace_back(std::string(feature_name(f)), info_gain(data, f));
    }
    std::stable_sort(gains.begin(), gains.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });

    std::string out;
    out.append("information gain ranking\n");
    out.append("variant: ").append(to_string(opt.variant)).append("\n\n");
    for (const auto& [name, gain] : gains) {
        std::string row = name;
        if (row.size() < 28) row.append(28 - row.size(), ' ');
        row.append(fixed6(gain));
        row.push_back('\n');
        out.append(row);
    }
    if (opt.out_path.empty()) {
        std::cout << out;
    } else {
        write_file_atomic(opt.out_path, out);
    }
}

void cmd_train(const TrainOptions& opt) {
    require_dictionary(opt.res, opt.variant);
    TextPipeline pipeline = load_pipeline(opt.res);
    Dictionary dict;
    const Dictionary* dict_ptr = nullptr;
    if (!opt.res.dictionary.empty()) {
        dict = Dictionary::load(opt.res.dictionary, pipeline);
        dict_ptr = &dict;
    }
    std::vector<RawArticle> corpus = load_corpus_logged(opt.corpus_path);
    TitleIndex index = TitleIndex::build(corpus);
    Dataset data;
    data.vectors = extract_all(corpus, index, dict_ptr, pipeline, opt.threads);

    SamplingOptions sampling = opt.sampling;
    sampling.resolve(opt.seed);
    if (sampling.any()) data = apply_sampling(std::move(data), sampling);

    ForestConfig cfg = opt.forest;
    cfg.seed = opt.seed;
    ForestModel model = opt.threads == 1
                            ? train_forest_serial(data, variant_features(opt.variant), cfg)
                            : train_forest(data, variant_features(opt.variant), cfg, opt.threads);
    write_file_atomic(opt.model_out, model_to_json(model, opt.variant, index).dump(1) + "\n");
    std::cerr << "trained " << cfg.num_trees << " trees on " << data.vectors.size()
              << " vectors; model written to " << opt.model_out << "\n";
}

void cmd_evaluate(const EvaluateOptions& opt) {
    if (opt.corpus_path.empty() == opt.features_csv.empty()) {
        throw DataError("evaluate needs exactly one of --corpus or --features");
    }
    Dataset data;
    if (!opt.features_csv.empty()) {
        data = dataset_from_csv(opt.features_csv);
    } else {
        require_dictionary(opt.res, opt.variant);
        TextPipeline pipeline = load_pipeline(opt.res);
        Dictionary dict;
        const Dictionary* dict_ptr = nullptr;
        if (!opt.res.dictionary.empty()) {
            dict = Dictionary::load(opt.res.dictionary, pipeline);
            dict_ptr = &dict;
        }
        std::vector<RawArticle> corpus = load_corpus_logged(opt.corpus_path);
        TitleIndex index = TitleIndex::build(corpus);
        data.vectors = extract_all(corpus, index, dict_ptr, pipeline, opt.threads);
    }

    SamplingOptions sampling = opt.sampling;
    sampling.resolve(opt.seed);

    ForestConfig cfg = opt.forest;
    cfg.seed = opt.seed;

    EvalReport report;
    if (opt.smote_in_folds && sampling.any()) {
        InFoldSampling in_fold;
        in_fold.undersample_targets = sampling.undersample;
        in_fold.smote = sampling.smote;
        report = cross_validate(data, opt.variant, cfg, opt.folds, opt.seed, opt.threads, &in_fold);
    } else {
        if (sampling.any()) data = apply_sampling(std::move(data), sampling);
        report = cross_validate(data, opt.variant, cfg, opt.folds, opt.seed, opt.threads);
    }

    std::string rendered = render_report(report);
    if (opt.report_out.empty()) {
        std::cout << rendered;
    } else {
        write_file_atomic(opt.report_out, rendered);
        std::cerr << "report written to " << opt.report_out << "\n";
    }
}

void cmd_classify(const ClassifyOptions& opt) {
    LoadedModel loaded = model_from_file(opt.model_path);
    ResourceOptions res = opt.res;
    require_dictionary(res, loaded.variant);
    TextPipeline pipeline = load_pipeline(res);
    Dictionary dict;
    const Dictionary* dict_ptr = nullptr;
    if (!res.dictionary.empty()) {
        dict = Dictionary::load(res.dictionary, pipeline);
        dict_ptr = &dict;
    }
    std::vector<RawArticle> corpus = load_corpus_logged(opt.corpus_path);
    // broken-link counting against the training snapshot stored in the model
    std::vector<FeatureVector> vectors =
        extract_all(corpus, loaded.index, dict_ptr, pipeline, opt.threads);

    std::string out = "title,predicted_class";
    for (QualityClass c : kAllClasses) out += ",p_" + std::string(to_string(c));
    out.push_back('\n');
    for (const FeatureVector& v : vectors) {
        auto proba = predict_proba(loaded.forest, v);
        QualityClass predicted = predict_class(proba);
        std::string row;
        bool needs_quotes = v.title.find_first_of(",\"\n") != std::string::npos;
        if (needs_quotes) {
            row.push_back('"');
            for (char ch : v.title) {
                if (ch == '"') row.push_back('"');
                row.push_back(ch);
            }
            row.push_back('"');
        } else {
            row = v.title;
        }
        row.push_back(',');
        row.append(to_string(predicted));
        for (int c = 0; c < kNumClasses; ++c) {
            row.push_back(',');
            row.append(fixed6(proba[c]));
        }
        row.push_back('\n');
        out.append(row);
    }
    write_file_atomic(opt.out_csv, out);
    std::cerr << "wrote " << vectors.size() << " predictions to " << opt.out_csv << "\n";
}

}  // namespace medqc
