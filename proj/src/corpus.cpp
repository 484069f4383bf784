#include "medqc/corpus.hpp"

#include <fstream>

#include <json.hpp>

#include "medqc/error.hpp"

namespace medqc {

CorpusLoadResult load_corpus_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read corpus: " + path);
    CorpusLoadResult result;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        nlohmann::json obj = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (obj.is_discarded() || !obj.is_object() || !obj.contains("title") ||
            !obj.contains("wikitext") || !obj.contains("label") || !obj["title"].is_string() ||
            !obj["wikitext"].is_string() || !obj["label"].is_string()) {
            ++result.skipped_lines;
            continue;
        }
        auto label = parse_quality_class(obj["label"].get<std::string>());
        if (!label) {
            ++result.skipped_lines;
            continue;
        }
        result.articles.push_back(make_article(obj["title"].get<std::string>(),
                                               obj["wikitext"].get<std::string>(), *label));
    }
    return result;
}

void write_corpus_jsonl(const std::string& path, const std::vector<RawArticle>& articles) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write corpus: " + path);
    for (const RawArticle& a : articles) {
        nlohmann::json obj;
        obj["title"] = a.title;
        obj["wikitext"] = a.wikitext;
        obj["label"] = std::string(to_string(a.label));
        out << obj.dump() << '\n';
    }
}

}  // namespace medqc
