#pragma once

#include <cstdint>
#include <string>

#include "medqc/evaluate.hpp"
#include "medqc/features.hpp"
#include "medqc/sampling.hpp"

namespace medqc {

struct ResourceOptions {
    std::string lemmas = "data/lexicon/lemmas.tsv";
    std::string stopwords = "data/lexicon/stopwords.txt";
    std::string function_words = "data/lexicon/function_words.txt";
    std::string dictionary;  // required unless the variant is Baseline
};

struct SamplingOptions {
    UndersampleTargets undersample = no_undersampling();
    SmoteConfig smote;
    bool reference_defaults = false;  // majority classes to 1015; GA 40%, FA 180%

    bool any() const;
    void resolve(uint64_t seed);  // applies reference defaults and the seed
};

struct ExtractOptions {
    std::string corpus_path;
    std::string out_path;
    ResourceOptions res;
    ModelVariant variant = ModelVariant::FullMedicalDomain;
    int threads = 0;  // 0 = all cores, 1 = serial reference path
};

struct SampleOptions {
    std::string in_csv;
    std::string out_csv;
    SamplingOptions sampling;
    uint64_t seed = 0;
};

struct RankOptions {
    std::string in_csv;
    std::string out_path;  // empty = stdout
    ModelVariant variant = ModelVariant::FullMedicalDomain;
};

struct TrainOptions {
    std::string corpus_path;
    std::string model_out;
    ResourceOptions res;
    ModelVariant variant = ModelVariant::FullMedicalDomain;
    SamplingOptions sampling;
    ForestConfig forest;
    uint64_t seed = 0;
    int threads = 0;
};

struct EvaluateOptions {
    std::string corpus_path;   // one of corpus_path / features_csv
    std::string features_csv;
    std::string report_out;  // empty = stdout
    ResourceOptions res;
    ModelVariant variant = ModelVariant::FullMedicalDomain;
    SamplingOptions sampling;
    bool smote_in_folds = false;  // rebalance inside training folds only
    ForestConfig forest;
    int folds = 10;
    uint64_t seed = 0;
    int threads = 0;
};

struct ClassifyOptions {
    std::string model_path;
    std::string corpus_path;
    std::string out_csv;
    ResourceOptions res;
    int threads = 0;
};

// All commands throw DataError on bad input and write output files atomically
// (temp file + rename), so a failed run never leaves partial output.
void cmd_extract(const ExtractOptions& opt);
void cmd_sample(const SampleOptions& opt);
void cmd_rank(const RankOptions& opt);
void cmd_train(const TrainOptions& opt);
void cmd_evaluate(const EvaluateOptions& opt);
void cmd_classify(const ClassifyOptions& opt);

void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace medqc
