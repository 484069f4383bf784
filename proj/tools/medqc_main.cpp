// Command-line driver for the article quality pipeline:
//   extract   wikitext corpus -> feature CSV
//   sample    feature CSV -> rebalanced feature CSV (undersampling + SMOTE)
//   rank      feature CSV -> information-gain ranking
//   train     wikitext corpus -> random-forest model file
//   evaluate  corpus or feature CSV -> cross-validated report
//   classify  model + corpus -> predictions CSV
//
// Exit codes: 0 success, 1 usage error, 2 data error.
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "medqc/commands.hpp"
#include "medqc/error.hpp"

namespace {

using medqc::kKeepClass;
using medqc::kNumClasses;

std::pair<medqc::QualityClass, int> parse_class_assignment(const std::string& s,
                                                           const char* flag) {
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) {
        throw CLI::ValidationError(flag, "expected CLASS=VALUE, got \"" + s + "\"");
    }
    auto cls = medqc::parse_quality_class(s.substr(0, eq));
    if (!cls) {
        throw CLI::ValidationError(flag, "unknown class \"" + s.substr(0, eq) + "\"");
    }
    int value = 0;
    try {
        value = std::stoi(s.substr(eq + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError(flag, "bad value in \"" + s + "\"");
    }
    if (value < 0) throw CLI::ValidationError(flag, "value must be >= 0");
    return {*cls, value};
}

void apply_sampling_flags(medqc::SamplingOptions& sampling,
                          const std::vector<std::string>& undersample_flags,
                          const std::vector<std::string>& smote_flags, int smote_k,
                          bool reference_defaults) {
    for (const std::string& s : undersample_flags) {
        auto [cls, value] = parse_class_assignment(s, "--undersample");
        sampling.undersample[static_cast<int>(cls)] = value;
    }
    for (const std::string& s : smote_flags) {
        auto [cls, value] = parse_class_assignment(s, "--smote");
        sampling.smote.percent[static_cast<int>(cls)] = value;
    }
    sampling.smote.k = smote_k;
    sampling.reference_defaults = reference_defaults;
}

void add_resource_flags(CLI::App* cmd, medqc::ResourceOptions& res, bool with_dictionary = true) {
    cmd->add_option("--lemmas", res.lemmas, "lemma lexicon TSV")->capture_default_str();
    cmd->add_option("--stopwords", res.stopwords, "stopword list")->capture_default_str();
    cmd->add_option("--function-words", res.function_words, "function-word list")
        ->capture_default_str();
    if (with_dictionary) {
        cmd->add_option("--dictionary", res.dictionary,
                        "medical terminology TSV (required unless --variant Baseline)");
    }
}

void add_variant_flag(CLI::App* cmd, medqc::ModelVariant& variant) {
    cmd->add_option_function<std::string>(
           "--variant",
           [&variant](const std::string& s) {
               auto v = medqc::parse_model_variant(s);
               if (!v) {
                   throw CLI::ValidationError("--variant", "unknown variant \"" + s + "\"");
               }
               variant = *v;
           },
           "Baseline, MedicalDomain, or FullMedicalDomain")
        ->default_str(std::string(medqc::to_string(variant)));
}

void add_forest_flags(CLI::App* cmd, medqc::ForestConfig& forest) {
    cmd->add_option("--trees", forest.num_trees, "number of trees")->capture_default_str();
    cmd->add_option("--features-per-split", forest.features_per_split,
                    "features tried per node (0 = sqrt of feature count)")
        ->capture_default_str();
    cmd->add_option("--min-leaf", forest.min_leaf, "minimum instances per leaf")
        ->capture_default_str();
    cmd->add_option("--max-depth", forest.max_depth, "maximum tree depth (-1 = unlimited)")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quality classification pipeline for MediaWiki medical articles"};
    app.require_subcommand(1);

    medqc::ExtractOptions extract;
    medqc::SampleOptions sample;
    medqc::RankOptions rank;
    medqc::TrainOptions train;
    medqc::EvaluateOptions evaluate;
    medqc::ClassifyOptions classify;

    std::vector<std::string> sample_undersample, sample_smote;
    std::vector<std::string> train_undersample, train_smote;
    std::vector<std::string> eval_undersample, eval_smote;
    int sample_k = 5, train_k = 5, eval_k = 5;
    bool sample_refdef = false, train_refdef = false, eval_refdef = false;

    CLI::App* c_extract = app.add_subcommand("extract", "extract feature vectors from a corpus");
    c_extract->add_option("--corpus", extract.corpus_path, "JSONL corpus")->required();
    c_extract->add_option("--out", extract.out_path, "output feature CSV")->required();
    add_resource_flags(c_extract, extract.res);
    add_variant_flag(c_extract, extract.variant);
    c_extract->add_option("--threads", extract.threads, "worker threads (0 = all, 1 = serial)")
        ->capture_default_str();

    CLI::App* c_sample = app.add_subcommand("sample", "rebalance a feature CSV");
    c_sample->add_option("--in", sample.in_csv, "input feature CSV")->required();
    c_sample->add_option("--out", sample.out_csv, "output feature CSV")->required();
    c_sample->add_option("--undersample", sample_undersample,
                         "CLASS=N target size, repeatable");
    c_sample->add_option("--smote", sample_smote, "CLASS=PERCENT oversampling, repeatable");
    c_sample->add_option("--smote-k", sample_k, "SMOTE nearest neighbors")->capture_default_str();
    c_sample->add_flag("--reference-defaults", sample_refdef,
                       "majority classes to 1015; GA 40%, FA 180%");
    c_sample->add_option("--seed", sample.seed, "RNG seed")->capture_default_str();

    CLI::App* c_rank = app.add_subcommand("rank", "information-gain feature ranking");
    c_rank->add_option("--in", rank.in_csv, "input feature CSV")->required();
    c_rank->add_option("--out", rank.out_path, "output file (default stdout)");
    add_variant_flag(c_rank, rank.variant);

    CLI::App* c_train = app.add_subcommand("train", "train a random forest on a corpus");
    c_train->add_option("--corpus", train.corpus_path, "JSONL corpus")->required();
    c_train->add_option("--model-out", train.model_out, "output model file")->required();
    add_resource_flags(c_train, train.res);
    add_variant_flag(c_train, train.variant);
    add_forest_flags(c_train, train.forest);
    c_train->add_option("--undersample", train_undersample, "CLASS=N target size, repeatable");
    c_train->add_option("--smote", train_smote, "CLASS=PERCENT oversampling, repeatable");
    c_train->add_option("--smote-k", train_k, "SMOTE nearest neighbors")->capture_default_str();
    c_train->add_flag("--reference-defaults", train_refdef,
                      "majority classes to 1015; GA 40%, FA 180%");
    c_train->add_option("--seed", train.seed, "RNG seed")->capture_default_str();
    c_train->add_option("--threads", train.threads, "worker threads (0 = all, 1 = serial)")
        ->capture_default_str();

    CLI::App* c_eval = app.add_subcommand("evaluate", "stratified cross-validated evaluation");
    c_eval->add_option("--corpus", evaluate.corpus_path, "JSONL corpus");
    c_eval->add_option("--features", evaluate.features_csv, "precomputed feature CSV");
    c_eval->add_option("--report-out", evaluate.report_out, "output report (default stdout)");
    add_resource_flags(c_eval, evaluate.res);
    add_variant_flag(c_eval, evaluate.variant);
    add_forest_flags(c_eval, evaluate.forest);
    c_eval->add_option("--undersample", eval_undersample, "CLASS=N target size, repeatable");
    c_eval->add_option("--smote", eval_smote, "CLASS=PERCENT oversampling, repeatable");
    c_eval->add_option("--smote-k", eval_k, "SMOTE nearest neighbors")->capture_default_str();
    c_eval->add_flag("--reference-defaults", eval_refdef,
                     "majority classes to 1015; GA 40%, FA 180%");
    c_eval->add_flag("--smote-in-folds", evaluate.smote_in_folds,
                     "rebalance inside training folds only (no test leakage)");
    c_eval->add_option("--folds", evaluate.folds, "cross-validation folds")->capture_default_str();
    c_eval->add_option("--seed", evaluate.seed, "RNG seed")->capture_default_str();
    c_eval->add_option("--threads", evaluate.threads, "worker threads (0 = all, 1 = serial)")
        ->capture_default_str();

    CLI::App* c_classify = app.add_subcommand("classify", "predict classes with a trained model");
    c_classify->add_option("--model", classify.model_path, "model file from train")->required();
    c_classify->add_option("--corpus", classify.corpus_path, "JSONL corpus")->required();
    c_classify->add_option("--out", classify.out_csv, "output predictions CSV")->required();
    add_resource_flags(c_classify, classify.res);
    c_classify->add_option("--threads", classify.threads, "worker threads (0 = all, 1 = serial)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (c_extract->parsed()) {
            cmd_extract(extract);
        } else if (c_sample->parsed()) {
            apply_sampling_flags(sample.sampling, sample_undersample, sample_smote, sample_k,
                                 sample_refdef);
            cmd_sample(sample);
        } else if (c_rank->parsed()) {
            cmd_rank(rank);
        } else if (c_train->parsed()) {
            apply_sampling_flags(train.sampling, train_undersample, train_smote, train_k,
                                 train_refdef);
            cmd_train(train);
        } else if (c_eval->parsed()) {
            apply_sampling_flags(evaluate.sampling, eval_undersample, eval_smote, eval_k,
                                 eval_refdef);
            cmd_evaluate(evaluate);
        } else if (c_classify->parsed()) {
            cmd_classify(classify);
        }
        return 0;
    } catch (const medqc::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
