#include "medqc/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "medqc/rng.hpp"

namespace medqc {
namespace {

const std::vector<std::string>& filler_words() {
    static const std::vector<std::string> kWords = {
        "bridge", "lantern", "meadow",  "harbor",  "castle",
        "orchard", "gallery", "terrace", "balcony", "chimney",
    };
    return kWords;
}

struct Tier {
    int prose_lo, prose_hi;      // prose byte target
    int links_lo, links_hi;      // valid internal links
    int broken_lo, broken_hi;    // broken internal links
    int refs_lo, refs_hi;
    int images_lo, images_hi;
    int headings_lo, headings_hi;
};

constexpr Tier kSmall = {600, 900, 2, 4, 1, 2, 1, 2, 0, 1, 1, 2};
constexpr Tier kMedium = {3500, 5000, 12, 18, 2, 3, 8, 12, 2, 4, 5, 8};
constexpr Tier kLarge = {12000, 16000, 40, 60, 4, 6, 25, 40, 6, 10, 12, 16};

int draw(Rng& rng, int lo, int hi) { return lo + static_cast<int>(rng.index(hi - lo + 1)); }

std::string padded_template(const std::string& name, int target_bytes, Rng& rng) {
    std::string body = "{{" + name + "\n| subject = entry-" + std::to_string(rng.index(1000)) +
                       "\n| data = ";
    int pad = target_bytes - static_cast<int>(body.size());
    for (int i = 0; i < pad; ++i) body.push_back('x');
    body += "\n}}\n";
    return body;
}

}  // namespace

const std::vector<std::string>& synthetic_domain_terms() {
    static const std::vector<std::string> kTerms = {
        "fever",   "headache", "nausea",  "fatigue", "cough",
        "vertigo", "migraine", "asthma",  "insomnia", "dizziness",
    };
    return kTerms;
}

std::vector<RawArticle> make_synthetic_corpus(const SyntheticSpec& spec) {
    const int total = spec.per_class * kNumClasses;
    std::vector<RawArticle> corpus;
    corpus.reserve(total);

    int broken_counter = 0;
    for (int c = 0; c < kNumClasses; ++c) {
        QualityClass cls = kAllClasses[c];
        const Tier& tier = (c <= 1) ? kSmall : (c <= 3) ? kMedium : kLarge;

        for (int k = 0; k < spec.per_class; ++k) {
            const int article_index = c * spec.per_class + k;
            Rng rng(mix64(spec.seed, static_cast<uint64_t>(article_index)));

            int domain_sentences = 0;
            if (cls == QualityClass::Start) domain_sentences = draw(rng, 18, 24);
            if (cls == QualityClass::C || cls == QualityClass::B) domain_sentences = draw(rng, 8, 12);
            if (cls == QualityClass::GA || cls == QualityClass::FA)
                domain_sentences = draw(rng, 8, 12);

            int prose_target = draw(rng, tier.prose_lo, tier.prose_hi);
            int links = draw(rng, tier.links_lo, tier.links_hi);
            int broken = draw(rng, tier.broken_lo, tier.broken_hi);
            int refs = draw(rng, tier.refs_lo, tier.refs_hi);
            int images = draw(rng, tier.images_lo, tier.images_hi);
            int headings = draw(rng, tier.headings_lo, tier.headings_hi);

            std::string text;

            // C gets a non-infobox template of the same size as B's infobox so
            // the pair differs only in the infobox-derived feature.
            if (cls == QualityClass::B || cls == QualityClass::GA || cls == QualityClass::FA) {
                text += padded_template("Infobox condition", draw(rng, 600, 900), rng);
            } else if (cls == QualityClass::C) {
                text += padded_template("Navbox general", draw(rng, 600, 900), rng);
            }

            // prose: identical sentence template; only the lead word decides
            // whether the sentence carries a dictionary term
            std::string prose;
            const auto& terms = synthetic_domain_terms();
            const auto& fillers = filler_words();
            for (int s = 0; s < domain_sentences; ++s) {
                std::string word = terms[rng.index(terms.size())];
                word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
                prose += word + " was noted in the record. ";
            }
            while (static_cast<int>(prose.size()) < prose_target) {
                std::string word = fillers[rng.index(fillers.size())];
                word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
                prose += word + " was noted in the record. ";
            }

            // slice prose into heading sections
            int per_section = std::max(1, static_cast<int>(prose.size()) / (headings + 1));
            int cursor = 0;
            auto take_prose = [&](int want) {
                int end = std::min<int>(cursor + want, static_cast<int>(prose.size()));
                // cut at a sentence boundary
                while (end < static_cast<int>(prose.size()) && prose[end - 1] != ' ') ++end;
                std::string chunk = prose.substr(cursor, end - cursor);
                cursor = end;
                return chunk;
            };
            text += take_prose(per_section) + "\n";
            for (int h = 0; h < headings; ++h) {
                text += "== Section " + std::to_string(h + 1) + " ==\n";
                text += take_prose(per_section) + "\n";
            }
            text += prose.substr(cursor) + "\n";

            for (int l = 0; l < links; ++l) {
                int target = static_cast<int>(rng.index(total));
                text += "See [[Synthetic topic " + std::to_string(target) + "]].\n";
            }
            for (int b = 0; b < broken; ++b) {
                text += "See [[Missing page " + std::to_string(broken_counter++) + "]].\n";
            }
            for (int r = 0; r < refs; ++r) {
                text += "Claim " + std::to_string(r + 1) + ".<ref>source " + std::to_string(r + 1) +
                        "</ref>\n";
            }
            for (int im = 0; im < images; ++im) {
                text += "[[File:figure-" + std::to_string(im + 1) + ".png|thumb|Figure " +
                        std::to_string(im + 1) + "]]\n";
            }

            if (cls == QualityClass::GA) {
                text += "[[Category:Rare diseases]]\n";
            } else if (cls == QualityClass::FA) {
                text += "[[Category:Human anatomy]]\n";
            } else {
                text += "[[Category:General articles]]\n";
            }

            corpus.push_back(make_article("Synthetic topic " + std::to_string(article_index),
                                          std::move(text), cls));
        }
    }
    return corpus;
}

}  // namespace medqc
