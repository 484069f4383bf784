// Compares the serial reference implementations against the OpenMP kernels
// on a synthetic corpus: per-article feature extraction and per-tree forest
// training. Verifies that both paths produce identical results before
// reporting timings.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "medqc/dictionary.hpp"
#include "medqc/error.hpp"
#include "medqc/features.hpp"
#include "medqc/forest.hpp"
#include "medqc/synthetic.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool same_vectors(const std::vector<medqc::FeatureVector>& a,
                  const std::vector<medqc::FeatureVector>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (int f = 0; f < medqc::kNumNumericFeatures; ++f) {
            if (medqc::numeric_feature(a[i], f) != medqc::numeric_feature(b[i], f)) return false;
        }
        if (a[i].category != b[i].category || a[i].label != b[i].label ||
            a[i].title != b[i].title) {
            return false;
        }
    }
    return true;
}

void report(const char* kernel, double serial_s, double parallel_s, bool identical) {
    std::printf("%-20s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   identical: %s\n",
                kernel, serial_s, parallel_s, parallel_s > 0 ? serial_s / parallel_s : 0.0,
                identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"medqc serial vs OpenMP benchmark"};
    int per_class = 200;
    int trees = 200;
    int threads = 0;
    uint64_t seed = 42;
    std::string data_dir = "data";
    app.add_option("--per-class", per_class, "articles per class")->capture_default_str();
    app.add_option("--trees", trees, "forest size")->capture_default_str();
    app.add_option("--threads", threads, "OpenMP threads (0 = all)")->capture_default_str();
    app.add_option("--seed", seed, "corpus and forest seed")->capture_default_str();
    app.add_option("--data-dir", data_dir, "bundled data directory")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    try {
        medqc::TextPipeline pipeline =
            medqc::TextPipeline::load(data_dir + "/lexicon/lemmas.tsv",
                                      data_dir + "/lexicon/stopwords.txt",
                                      data_dir + "/lexicon/function_words.txt");
        medqc::Dictionary dict =
            medqc::Dictionary::load(data_dir + "/dictionary/med_dictionary.tsv", pipeline);

        medqc::SyntheticSpec spec;
        spec.per_class = per_class;
        spec.seed = seed;
        std::vector<medqc::RawArticle> corpus = medqc::make_synthetic_corpus(spec);
        medqc::TitleIndex index = medqc::TitleIndex::build(corpus);
        std::cout << "corpus: " << corpus.size() << " synthetic articles\n";

        auto t0 = Clock::now();
        auto serial_vectors = medqc::extract_corpus_serial(corpus, index, &dict, pipeline);
        double extract_serial = seconds_since(t0);

        t0 = Clock::now();
        auto parallel_vectors =
            medqc::extract_corpus_parallel(corpus, index, &dict, pipeline, threads);
        double extract_parallel = seconds_since(t0);
        report("extract", extract_serial, extract_parallel,
               same_vectors(serial_vectors, parallel_vectors));

        medqc::Dataset data;
        data.vectors = std::move(serial_vectors);
        medqc::ForestConfig cfg;
        cfg.num_trees = trees;
        cfg.seed = seed;
        auto features = medqc::variant_features(medqc::ModelVariant::FullMedicalDomain);

        t0 = Clock::now();
        auto serial_model = medqc::train_forest_serial(data, features, cfg);
        double train_serial = seconds_since(t0);

        t0 = Clock::now();
        auto parallel_model = medqc::train_forest(data, features, cfg, threads);
        double train_parallel = seconds_since(t0);
        report("train-forest", train_serial, train_parallel,
               medqc::forest_to_json(serial_model) == medqc::forest_to_json(parallel_model));
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
