#pragma once

#include <string>
#include <vector>

#include "medqc/wikitext.hpp"

namespace medqc {

struct CorpusLoadResult {
    std::vector<RawArticle> articles;
    int skipped_lines = 0;  // unparseable JSON or bad fields
};

// JSON Lines, one object per line with fields title, wikitext, label.
// An unreadable file throws DataError; malformed lines are skipped and counted.
CorpusLoadResult load_corpus_jsonl(const std::string& path);

void write_corpus_jsonl(const std::string& path, const std::vector<RawArticle>& articles);

}  // namespace medqc
