#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "litlink/extraction.hpp"
#include "helpers.hpp"

using namespace litlink;
using litlink::testing::make_record;

static std::string strip_ws(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (!is_ascii_space(c)) out.push_back(c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// split_sentences
// ---------------------------------------------------------------------------

TEST_CASE("split_sentences guards initials and abbreviations", "[extraction]") {
    auto s = split_sentences("A. B. Smith wrote it. It worked.");
    REQUIRE(s.size() == 2);
    CHECK(s[0] == "A. B. Smith wrote it.");
    CHECK(s[1] == "It worked.");

    CHECK(split_sentences("").empty());
    CHECK(split_sentences("No terminal punctuation here") ==
          std::vector<std::string>{"No terminal punctuation here"});

    auto t = split_sentences("Dr. Doe et al. report results. The end?");
    REQUIRE(t.size() == 2);
    CHECK(t[0] == "Dr. Doe et al. report results.");
}

TEST_CASE("split_sentences keeps decimals and quoted endings intact", "[extraction]") {
    auto s = split_sentences("The dose was 3.5 mg. \"It works!\" she said.");
    REQUIRE(s.size() == 2);
    CHECK(s[0] == "The dose was 3.5 mg.");
}

TEST_CASE("sentence concatenation reproduces the text up to whitespace",
          "[extraction][property]") {
    std::vector<std::string> bodies = {
        "Dr. Jane Doe of Harvard University said it worked. The study appeared in Nature. "
        "Results improved 3.5 percent! Really? Yes.",
        "One sentence",
        "Trailing spaces.   ",
        "\"Quoted.\" Plain. (Parenthetical.) Done",
    };
    for (const auto& body : bodies) {
        std::string joined;
        for (const auto& s : split_sentences(body)) joined += s;
        CHECK(strip_ws(joined) == strip_ws(body));
    }
}

// ---------------------------------------------------------------------------
// gazetteer + journal sentence filter
// ---------------------------------------------------------------------------

static JournalGazetteer demo_gazetteer() {
    JournalGazetteer g;
    g.add("The Lancet", "The Lancet");
    g.add("PNAS",
          "Proceedings of the National Academy of Sciences of the United States of America");
    g.add("Proc Natl Acad Sci",
          "Proceedings of the National Academy of Sciences of the United States of America");
    g.add("Science", "Science");
    g.add("Science Immunology", "Science Immunology");
    return g;
}

TEST_CASE("is_journal_sentence distinguishes gazetteer hits, cues, and neither", "[extraction]") {
    auto g = demo_gazetteer();
    CHECK(is_journal_sentence("The study was published in The Lancet.", g) ==
          std::pair<bool, double>{true, 1.0});
    CHECK(is_journal_sentence("Researchers report the findings in a journal.", g) ==
          std::pair<bool, double>{true, 0.6});
    CHECK(is_journal_sentence("The paper appears in an outlet.", g) ==
          std::pair<bool, double>{true, 0.6});
    CHECK(is_journal_sentence("Mice were fed a high-fat diet.", g) ==
          std::pair<bool, double>{false, 0.0});
}

TEST_CASE("extract_journal_names maps aliases to canonical names", "[extraction]") {
    auto g = demo_gazetteer();
    auto hits = extract_journal_names("The work appeared in PNAS this week.", g);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].canonical ==
          "Proceedings of the National Academy of Sciences of the United States of America");

    auto hits2 = extract_journal_names("It ran in Proc. Natl. Acad. Sci. last year.", g);
    REQUIRE(hits2.size() == 1);
    CHECK(hits2[0].canonical == hits[0].canonical);
}

TEST_CASE("extract_journal_names prefers the longest registered match", "[extraction]") {
    auto g = demo_gazetteer();
    auto hits = extract_journal_names("both published in Science Immunology today", g);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].canonical == "Science Immunology");

    CHECK(extract_journal_names("No registered venue here.", g).empty());
}

TEST_CASE("journal mention spans are valid half-open ranges", "[extraction]") {
    auto g = demo_gazetteer();
    std::string sentence = "It was published in The Lancet on Monday.";
    auto hits = extract_journal_names(sentence, g);
    REQUIRE(hits.size() == 1);
    CHECK(sentence.substr(hits[0].begin, hits[0].end - hits[0].begin) == "The Lancet");
}

TEST_CASE("is_journal_sentence is true whenever extraction is nonempty",
          "[extraction][property]") {
    auto g = demo_gazetteer();
    std::vector<std::string> sentences = {
        "Published in The Lancet.",
        "PNAS carried the result",
        "Mice were fed a high-fat diet.",
        "Science says so.",
        "Nothing notable here",
    };
    for (const auto& s : sentences) {
        if (!extract_journal_names(s, g).empty()) {
            auto [is_journal, confidence] = is_journal_sentence(s, g);
            CHECK(is_journal);
            CHECK(confidence == 1.0);
        }
    }
}

// ---------------------------------------------------------------------------
// entity extraction
// ---------------------------------------------------------------------------

TEST_CASE("extract_entities finds cue-driven persons and organizations", "[extraction]") {
    auto entities = extract_entities("Dr. Jane Doe of Harvard University said it worked.");
    REQUIRE(entities.size() == 2);
    CHECK(entities[0].surface == "Jane Doe");
    CHECK(entities[0].kind == EntityKind::Person);
    CHECK(entities[1].surface == "Harvard University");
    CHECK(entities[1].kind == EntityKind::Org);

    CHECK(extract_entities("").empty());
}

TEST_CASE("extract_entities keeps quoted non-author experts", "[extraction]") {
    std::string text =
        "\"The result is promising,\" said John Smith of Yale University, who was not involved.";
    auto entities = extract_entities(text);
    bool found = false;
    for (const auto& e : entities) {
        if (e.surface == "John Smith" && e.kind == EntityKind::Person) found = true;
    }
    CHECK(found);
}

TEST_CASE("extract_entities extends organizations across connectors", "[extraction]") {
    auto entities = extract_entities("The team at the University of Western Somewhere agreed.");
    REQUIRE(entities.size() == 1);
    CHECK(entities[0].surface == "University of Western Somewhere");
    CHECK(entities[0].kind == EntityKind::Org);
}

TEST_CASE("entity spans index into the original text", "[extraction][property]") {
    std::string text = "Dr. Ada Lovelace and Grace Hopper of the Navy Research Laboratory spoke.";
    for (const auto& e : extract_entities(text)) {
        CHECK(e.begin < e.end);
        CHECK(e.end <= text.size());
        CHECK(text.substr(e.begin, e.end - e.begin) == e.surface);
    }
}

// ---------------------------------------------------------------------------
// build_query
// ---------------------------------------------------------------------------

static NewsArticle demo_article() {
    NewsArticle art;
    art.news_id = "N1";
    art.title = "Gut microbes alter cardiac outcomes";
    art.body =
        "A new study finds gut microbes can alter cardiac outcomes. "
        "The findings were published in The Lancet. "
        "Dr. Jane Doe of Harvard University led the work. "
        "\"We were surprised,\" said Wei Chen, a coauthor.";
    art.release_date = make_date(2020, 6, 1);
    return art;
}

TEST_CASE("build_query populates exactly the enabled kinds", "[extraction]") {
    auto g = demo_gazetteer();
    NewsArticle art = demo_article();

    SECTION("AuJo configuration") {
        Query q = build_query(art, g, {Kind::Au, Kind::Jo});
        CHECK(!q.tokens(Kind::Au).empty());
        CHECK(!q.tokens(Kind::Jo).empty());
        CHECK(q.tokens(Kind::Af).empty());
        CHECK(q.tokens(Kind::Ti).empty());
        CHECK(q.tokens(Kind::Co).empty());
        CHECK(q.tokens(Kind::Jo) == TokenStream{"the", "lancet"});
        REQUIRE(q.news_date.has_value());
        CHECK(*q.news_date == art.release_date);
    }
    SECTION("full configuration") {
        Query q = build_query(art, g, all_kinds());
        for (Kind k : kAllKinds) {
            CHECK(!q.tokens(k).empty());
        }
    }
}

TEST_CASE("metadata lists are deduplicated after case folding, order preserved", "[extraction]") {
    auto g = demo_gazetteer();
    NewsArticle art = demo_article();
    art.body += " JANE DOE and Jane Doe were both mentioned again by Wei Chen.";
    RuleBasedExtractor plugin(g);
    ExtractedMetadata meta = extract_metadata(art, plugin);
    int jane_count = 0;
    for (const auto& a : meta.authors) {
        if (to_lower_ascii(a) == "jane doe") ++jane_count;
    }
    CHECK(jane_count == 1);
    CHECK(meta.authors.front() == "Jane Doe");  // first occurrence wins
}

TEST_CASE("content prefix stops at 300 tokens", "[extraction]") {
    auto g = demo_gazetteer();
    NewsArticle art = demo_article();
    art.body = "The study was published in The Lancet. ";
    for (int i = 0; i < 1000; ++i) art.body += "w" + std::to_string(i) + " ";
    Query q = build_query(art, g, {Kind::Co});
    CHECK(q.tokens(Kind::Co).size() == 300);

    RuleBasedExtractor plugin(g);
    ExtractedMetadata meta = extract_metadata(art, plugin);
    CHECK(tokenize(meta.content_prefix).size() == 300);
}

TEST_CASE("a short body keeps its full content prefix", "[extraction]") {
    CHECK(content_prefix("only a few words here") == "only a few words here");
    CHECK(content_prefix("") == "");
}

TEST_CASE("build_query with nothing extractable is an input error", "[extraction]") {
    JournalGazetteer empty_gazetteer;
    NewsArticle art;
    art.news_id = "N9";
    art.title = "";
    art.body = "nothing here matches anything at all.";
    art.release_date = make_date(2020, 1, 1);
    // au/jo/af all empty; ti empty (no title); co disabled
    CHECK_THROWS_AS(build_query(art, empty_gazetteer, {Kind::Au, Kind::Jo}), InputError);
}

TEST_CASE("the pipeline is deterministic", "[extraction][property]") {
    auto g = demo_gazetteer();
    NewsArticle art = demo_article();
    RuleBasedExtractor plugin(g);
    ExtractedMetadata a = extract_metadata(art, plugin);
    ExtractedMetadata b = extract_metadata(art, plugin);
    CHECK(a.authors == b.authors);
    CHECK(a.affiliations == b.affiliations);
    CHECK(a.journals == b.journals);
    CHECK(a.title == b.title);
    CHECK(a.content_prefix == b.content_prefix);

    Query qa = build_query(art, g, all_kinds());
    Query qb = build_query(art, g, all_kinds());
    for (Kind k : kAllKinds) {
        CHECK(qa.tokens(k) == qb.tokens(k));
    }
}

TEST_CASE("gazetteer built from the corpus resolves record aliases", "[extraction]") {
    std::vector<PaperRecord> records = {
        make_record({.paper_id = "1", .title = "t", .journal = "The Lancet",
                     .aliases = {"Lancet"}}),
        make_record({.paper_id = "2", .title = "t", .journal = "Science Immunology"}),
    };
    auto g = JournalGazetteer::from_corpus(records);
    REQUIRE(g.lookup("lancet") != nullptr);
    CHECK(*g.lookup("lancet") == "The Lancet");
    CHECK(g.lookup("Science Immunology") != nullptr);
    CHECK(g.lookup("nature") == nullptr);
}

TEST_CASE("a supplemental gazetteer file adds surface forms", "[extraction]") {
    std::vector<PaperRecord> records = {
        make_record({.paper_id = "1", .title = "t", .journal = "Nature Medicine"})};
    std::istringstream supplemental("\tNature Medicine\tNat Med\tNatMed\n");
    JournalAliasTable table = load_alias_table(supplemental, /*require_issn=*/false);
    auto g = JournalGazetteer::from_corpus(records, &table);
    REQUIRE(g.lookup("Nat Med") != nullptr);
    CHECK(*g.lookup("Nat Med") == "Nature Medicine");
    auto hits = extract_journal_names("It ran in Nat Med today.", g);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].canonical == "Nature Medicine");
}
