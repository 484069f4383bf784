#pragma once

#include <cstdint>
#include <vector>

#include "medqc/wikitext.hpp"

namespace medqc {

// Deterministic six-class benchmark corpus. The classes are separable through
// the model features, with the signal split across feature families:
//
//   tier (byte size, links, refs, headings, images) separates
//       {Stub,Start} vs {C,B} vs {GA,FA};
//   the entity-mention count separates Stub (none) from Start (many);
//   infobox size separates C (plain template of equal size) from B (infobox);
//   category keywords separate GA ("Rare diseases") from FA ("Human anatomy").
//
// Within a pair the remaining features are drawn from identical ranges, so a
// model without the distinguishing feature cannot tell the pair apart.
struct SyntheticSpec {
    int per_class = 100;
    uint64_t seed = 1;
};

std::vector<RawArticle> make_synthetic_corpus(const SyntheticSpec& spec);

// Single-word dictionary terms the generator plants in article prose; all of
// them appear in the bundled dictionary.
const std::vector<std::string>& synthetic_domain_terms();

}  // namespace medqc
