#include <doctest.h>

#include <string>
#include <vector>

#include "medqc/error.hpp"
#include "medqc/rng.hpp"
#include "medqc/wikitext.hpp"

using namespace medqc;

namespace {

// Well-formed markup soup for the round-trip properties.
std::string random_wikitext(Rng& rng, int pieces) {
    static const std::vector<std::string> kWords = {
        "fever", "cough", "symptom", "rare", "chronic", "acute", "treatment", "onset",
    };
    std::string text;
    for (int i = 0; i < pieces; ++i) {
        switch (rng.index(12)) {
            case 0: text += kWords[rng.index(kWords.size())] + " "; break;
            case 1: text += "[[Target " + std::to_string(rng.index(20)) + "]] "; break;
            case 2:
                text += "[[Target " + std::to_string(rng.index(20)) + "|" +
                        kWords[rng.index(kWords.size())] + "]] ";
                break;
            case 3: text += "\n== Heading " + std::to_string(rng.index(9)) + " ==\n"; break;
            case 4: text += "claim.<ref>source " + std::to_string(rng.index(9)) + "</ref> "; break;
            case 5: text += "<ref name=\"n" + std::to_string(rng.index(9)) + "\" /> "; break;
            case 6: text += "[[File:img" + std::to_string(rng.index(9)) + ".png|thumb|cap]] "; break;
            case 7: text += "[[Category:Group " + std::to_string(rng.index(9)) + "]] "; break;
            case 8: text += "{{Cite|x=" + std::to_string(rng.index(9)) + "}} "; break;
            case 9: text += "[http://example.org/" + std::to_string(rng.index(9)) + " site] "; break;
            case 10: text += "'''" + kWords[rng.index(kWords.size())] + "''' "; break;
            case 11: text += "<!-- hidden --> "; break;
        }
    }
    return text;
}

bool no_structure(const StructuralElements& e) {
    return e.internal_links.empty() && e.external_links.empty() && e.headings.empty() &&
           e.references == 0 && e.images == 0 && !e.infobox_raw && e.category_strings.empty();
}

}  // namespace

TEST_CASE("minimal link markup") {
    auto e = parse_wikitext("[[Fever]] is a [[symptom]].");
    CHECK(e.internal_links == std::vector<std::string>{"Fever", "symptom"});
    CHECK(e.plain_text == "Fever is a symptom.");
}

TEST_CASE("heading, reference and image") {
    auto e = parse_wikitext("== Signs ==\nText.<ref>src</ref> [[File:x.png]]");
    CHECK(e.headings == std::vector<std::string>{"Signs"});
    CHECK(e.references == 1);
    CHECK(e.images == 1);
    CHECK(e.internal_links.empty());
}

TEST_CASE("empty input") {
    auto e = parse_wikitext("");
    CHECK(no_structure(e));
    CHECK(e.plain_text.empty());
}

TEST_CASE("labeled links keep the label in plain text") {
    auto e = parse_wikitext("A [[Myocardial infarction|heart attack]] occurred.");
    CHECK(e.internal_links == std::vector<std::string>{"Myocardial infarction"});
    CHECK(e.plain_text == "A heart attack occurred.");
}

TEST_CASE("link fragments are stripped from the target") {
    auto e = parse_wikitext("[[Fever#Causes]] and [[#local]] here.");
    CHECK(e.internal_links == std::vector<std::string>{"Fever"});
    CHECK(e.plain_text == "Fever#Causes and #local here.");
}

TEST_CASE("category strings are collected, not linked") {
    auto e = parse_wikitext("Body.\n[[Category:Rare diseases]]\n[[Category:Infections|sort]]\n");
    CHECK(e.category_strings == std::vector<std::string>{"Rare diseases", "Infections"});
    CHECK(e.internal_links.empty());
    CHECK(e.plain_text.find("Category") == std::string::npos);
}

TEST_CASE("image counting covers File and Image namespaces") {
    auto e = parse_wikitext("[[File:a.png]] [[Image:b.jpg|thumb]] [[file:c.svg]]");
    CHECK(e.images == 3);
    CHECK(e.internal_links.empty());
}

TEST_CASE("file caption with a nested link is consumed whole") {
    auto e = parse_wikitext("[[File:x.png|thumb|see [[Fever]] here]] tail");
    CHECK(e.images == 1);
    CHECK(e.plain_text == " tail");
}

TEST_CASE("references: paired, self-closing, case-insensitive, unclosed") {
    auto e = parse_wikitext("a<ref>x</ref>b<ref name=\"n\"/>c<REF>y</REF>d");
    CHECK(e.references == 3);
    CHECK(e.plain_text == "abcd");
    auto unclosed = parse_wikitext("a<ref>never closed");
    CHECK(unclosed.references == 1);
    CHECK(unclosed.plain_text == "a");
    // "<references/>" is not a ref tag
    auto listing = parse_wikitext("x<references/>y");
    CHECK(listing.references == 0);
    CHECK(listing.plain_text == "xy");
}

TEST_CASE("templates are dropped from plain text") {
    auto e = parse_wikitext("before {{Cite web|url=http://x|title=T}} after");
    CHECK(e.plain_text == "before  after");
    CHECK(!e.infobox_raw);
    CHECK(e.external_links.empty());  // inside a dropped template
}

TEST_CASE("first outermost infobox is captured with nested templates") {
    std::string text = "{{Infobox disease\n| name = Flu\n| code = {{ICD|10}}\n}} body "
                       "{{Infobox other|x=1}}";
    auto e = parse_wikitext(text);
    REQUIRE(e.infobox_raw.has_value());
    CHECK(*e.infobox_raw == "Infobox disease\n| name = Flu\n| code = {{ICD|10}}\n");
    CHECK(e.plain_text == " body ");
    CHECK(extract_infobox_bytes(e) == static_cast<int64_t>(e.infobox_raw->size()));
}

TEST_CASE("infobox nested in another template is not outermost") {
    auto e = parse_wikitext("{{Wrapper|{{Infobox x|y=1}}}} text");
    CHECK(!e.infobox_raw);
}

TEST_CASE("unclosed template closes at end of input") {
    auto e = parse_wikitext("text {{Infobox broken|a=b");
    REQUIRE(e.infobox_raw.has_value());
    CHECK(*e.infobox_raw == "Infobox broken|a=b");
    CHECK(e.plain_text == "text ");
}

TEST_CASE("extract_infobox_bytes counts UTF-8 bytes") {
    StructuralElements none;
    CHECK(extract_infobox_bytes(none) == 0);
    StructuralElements some;
    some.infobox_raw = "Name=Flu";
    CHECK(extract_infobox_bytes(some) == 8);
}

TEST_CASE("heading levels 2 through 6 count; 7 equals signs is literal text") {
    auto e = parse_wikitext("== a ==\n=== b ===\n====== c ======\n======= d =======\n= e =\n");
    CHECK(e.headings == std::vector<std::string>{"a", "b", "c"});
    CHECK(e.plain_text.find("======= d =======") != std::string::npos);
    CHECK(e.plain_text.find("= e =") != std::string::npos);
}

TEST_CASE("heading must start the line") {
    auto e = parse_wikitext("text == not a heading ==\n");
    CHECK(e.headings.empty());
}

TEST_CASE("external links: bracketed with label, bracketed bare, and bare") {
    auto e = parse_wikitext(
        "[http://a.org Site A] and [https://b.org] and see http://c.org/page. done");
    CHECK(e.external_links ==
          std::vector<std::string>{"http://a.org", "https://b.org", "http://c.org/page"});
    CHECK(e.plain_text == "Site A and  and see . done");
}

TEST_CASE("html tags are stripped, their inner text kept") {
    auto e = parse_wikitext("a <b>bold</b> and <br/> and 1 < 2 stays");
    CHECK(e.plain_text == "a bold and  and 1 < 2 stays");
}

TEST_CASE("quote markup is stripped") {
    auto e = parse_wikitext("'''bold''' and ''italic'' and don't");
    CHECK(e.plain_text == "bold and italic and don't");
}

TEST_CASE("title normalization") {
    CHECK(normalize_title("a_b") == "A b");
    CHECK(normalize_title("  fever   test ") == "Fever test");
    CHECK(normalize_title("Fever") == "Fever");
    CHECK(normalize_title("") == "");
}

TEST_CASE("count_wikilinks keeps duplicates and normalizes for brokenness") {
    StructuralElements e;
    e.internal_links = {"A", "B", "A"};
    TitleIndex index = TitleIndex::build({make_article("A", "")});
    auto counts = count_wikilinks(e, index);
    CHECK(counts.total == 3);
    CHECK(counts.broken == 1);

    StructuralElements empty;
    auto zero = count_wikilinks(empty, index);
    CHECK(zero.total == 0);
    CHECK(zero.broken == 0);

    StructuralElements underscore;
    underscore.internal_links = {"a_b"};
    TitleIndex ab = TitleIndex::build({make_article("A b", "")});
    auto norm = count_wikilinks(underscore, ab);
    CHECK(norm.total == 1);
    CHECK(norm.broken == 0);
}

TEST_CASE("title index rejects duplicates after normalization") {
    CHECK(TitleIndex::build({make_article("Fever", ""), make_article("Cough", "")}).size() == 2);
    CHECK_THROWS_AS(TitleIndex::build({make_article("fever", ""), make_article("Fever", "")}),
                    DataError);
    TitleIndex empty = TitleIndex::build({});
    CHECK(empty.size() == 0);
    StructuralElements e;
    e.internal_links = {"Anything"};
    CHECK(count_wikilinks(e, empty).broken == 1);
}

TEST_CASE("property: parsing plain text again yields no structure and the same text") {
    Rng rng(2024);
    for (int round = 0; round < 60; ++round) {
        std::string text = random_wikitext(rng, 3 + static_cast<int>(rng.index(40)));
        auto first = parse_wikitext(text);
        auto second = parse_wikitext(first.plain_text);
        CHECK(no_structure(second));
        CHECK(second.plain_text == first.plain_text);
    }
}

TEST_CASE("property: appending a link increments the count by exactly one") {
    Rng rng(77);
    for (int round = 0; round < 60; ++round) {
        std::string text = random_wikitext(rng, 1 + static_cast<int>(rng.index(30)));
        auto before = parse_wikitext(text);
        auto after = parse_wikitext(text + "[[Probe link]]");
        CHECK(after.internal_links.size() == before.internal_links.size() + 1);
        CHECK(after.internal_links.back() == "Probe link");
    }
}

TEST_CASE("property: plain text never exceeds the raw byte count") {
    Rng rng(99);
    for (int round = 0; round < 60; ++round) {
        std::string text = random_wikitext(rng, 1 + static_cast<int>(rng.index(50)));
        auto e = parse_wikitext(text);
        CHECK(e.plain_text.size() <= text.size());
    }
}

TEST_CASE("property: parsing is deterministic") {
    Rng rng(5);
    for (int round = 0; round < 20; ++round) {
        std::string text = random_wikitext(rng, 1 + static_cast<int>(rng.index(40)));
        CHECK(parse_wikitext(text) == parse_wikitext(text));
    }
}
