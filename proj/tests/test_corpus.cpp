#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "litlink/corpus.hpp"

using namespace litlink;

static DateEntry d(int y, unsigned m, unsigned day, bool placeholder = false) {
    return DateEntry{make_date(y, m, day), placeholder};
}

TEST_CASE("resolve_earliest_date prefers the online publication date", "[corpus]") {
    PublicationDates dates;
    dates.online_pub = d(2020, 3, 1);
    dates.journal_pub = d(2020, 4, 1);
    dates.pubmed_pub = d(2020, 3, 15);
    dates.accepted = d(2020, 2, 1);
    CHECK(resolve_earliest_date(dates) == make_date(2020, 3, 1));
}

TEST_CASE("resolve_earliest_date falls back to the earlier of journal and pubmed", "[corpus]") {
    PublicationDates dates;
    dates.journal_pub = d(2020, 4, 1);
    dates.pubmed_pub = d(2020, 3, 15);
    CHECK(resolve_earliest_date(dates) == make_date(2020, 3, 15));

    PublicationDates only_journal;
    only_journal.journal_pub = d(2020, 4, 1);
    CHECK(resolve_earliest_date(only_journal) == make_date(2020, 4, 1));
}

TEST_CASE("resolve_earliest_date lets the accepted date override placeholder artifacts", "[corpus]") {
    PublicationDates dates;
    dates.online_pub = d(2020, 1, 1, true);
    dates.accepted = d(2020, 5, 10);
    CHECK(resolve_earliest_date(dates) == make_date(2020, 5, 10));
}

TEST_CASE("resolve_earliest_date errors when no publication date exists", "[corpus]") {
    PublicationDates dates;
    dates.accepted = d(2020, 5, 10);
    CHECK_THROWS_AS(resolve_earliest_date(dates), ValidationError);
}

TEST_CASE("resolve_earliest_date never precedes the accepted date", "[corpus][property]") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> day_offset(0, 900);
    auto base = make_date(2019, 1, 1);
    for (int i = 0; i < 500; ++i) {
        PublicationDates dates;
        if (rng() % 2) dates.online_pub = DateEntry{add_days(base, day_offset(rng))};
        if (rng() % 2) dates.journal_pub = DateEntry{add_days(base, day_offset(rng))};
        if (rng() % 2) dates.pubmed_pub = DateEntry{add_days(base, day_offset(rng))};
        if (!dates.has_any_pub()) continue;
        if (rng() % 2) dates.accepted = DateEntry{add_days(base, day_offset(rng))};
        Date got = resolve_earliest_date(dates);
        if (dates.accepted) {
            CHECK(days_between(got, dates.accepted->value) >= 0);
        }
        // deterministic
        CHECK(resolve_earliest_date(dates) == got);
    }
}

static const char* kFullRecord = R"({"paper_id":"100001","doi":"10.1000/j.1","title":"Cardiac  outcomes","abstract":"A study.","journal_name":"The Lancet","journal_issn":"0140-6736","journal_aliases":["Lancet"],"authors":["Jane Doe","Wei Chen"],"affiliations":["Harvard University"],"dates":{"online_pub":{"value":"2020-03-01"},"journal_pub":{"value":"2020-04-01"},"accepted":{"value":"2020-01-15"}}})";

TEST_CASE("parse_paper_record maps and normalizes every field", "[corpus]") {
    PaperRecord rec = parse_paper_record(kFullRecord);
    CHECK(rec.paper_id == "100001");
    CHECK(rec.doi == "10.1000/j.1");
    CHECK(rec.title == "Cardiac outcomes");  // whitespace collapsed
    CHECK(rec.abstract == "A study.");
    CHECK(rec.journal_name == "The Lancet");
    CHECK(rec.journal_issn == "0140-6736");
    CHECK(rec.journal_aliases == std::vector<std::string>{"Lancet"});
    CHECK(rec.authors == std::vector<std::string>{"Jane Doe", "Wei Chen"});
    CHECK(rec.affiliations == std::vector<std::string>{"Harvard University"});
    CHECK(rec.earliest_date == make_date(2020, 3, 1));
}

TEST_CASE("parse_paper_record reports the offending field", "[corpus]") {
    CHECK_THROWS_WITH(parse_paper_record(R"({"title":"x","journal_name":"y","dates":{"online_pub":{"value":"2020-01-01"}}})"),
                      Catch::Matchers::ContainsSubstring("paper_id"));
    CHECK_THROWS_WITH(parse_paper_record(R"({"paper_id":"1","title":"x","journal_name":"y","dates":{},"bogus":1})"),
                      Catch::Matchers::ContainsSubstring("bogus"));
    CHECK_THROWS_WITH(parse_paper_record("not json"),
                      Catch::Matchers::ContainsSubstring("JSON"));
}

TEST_CASE("parse_paper_record requires at least one publication date", "[corpus]") {
    CHECK_THROWS_AS(parse_paper_record(R"({"paper_id":"1","title":"x","journal_name":"y","dates":{"accepted":{"value":"2020-05-10"}}})"),
                    ValidationError);
}

TEST_CASE("parse_paper_record applies the accepted-date override", "[corpus]") {
    PaperRecord rec = parse_paper_record(R"({"paper_id":"1","title":"x","journal_name":"y","dates":{"journal_pub":{"value":"2020-01-01","placeholder":true},"accepted":{"value":"2020-05-10"}}})");
    CHECK(rec.earliest_date == make_date(2020, 5, 10));
    REQUIRE(rec.dates.journal_pub.has_value());
    CHECK(rec.dates.journal_pub->placeholder);
}

TEST_CASE("parse_paper_record normalizes decomposed unicode to NFC", "[corpus]") {
    // "José" (decomposed) must equal "José" (precomposed) after parse.
    PaperRecord rec = parse_paper_record("{\"paper_id\":\"1\",\"title\":\"x\",\"journal_name\":\"y\","
                                         "\"authors\":[\"Jose\\u0301 Gil\"],"
                                         "\"dates\":{\"online_pub\":{\"value\":\"2020-01-01\"}}}");
    CHECK(rec.authors.at(0) == "Jos\xC3\xA9 Gil");
}

TEST_CASE("parse_paper_record drops aliases equal to the canonical name", "[corpus]") {
    PaperRecord rec = parse_paper_record(R"({"paper_id":"1","title":"x","journal_name":"The BMJ","journal_aliases":["the bmj","BMJ","bmj."],"dates":{"online_pub":{"value":"2020-01-01"}}})");
    CHECK(rec.journal_aliases == std::vector<std::string>{"BMJ"});
}

static PaperRecord random_record(std::mt19937_64& rng) {
    static const std::vector<std::string> words = {"cardiac", "tumor",  "énergie", "study",
                                                   "Omega",   "insulin", "B12",    "naïve"};
    auto word = [&] { return words[rng() % words.size()]; };
    PaperRecord rec;
    rec.paper_id = "P" + std::to_string(100000 + rng() % 100000);
    if (rng() % 2) rec.doi = "10.1000/" + std::to_string(rng() % 1000);
    rec.title = word() + " " + word();
    if (rng() % 2) rec.abstract = word() + " " + word() + " " + word();
    rec.journal_name = "Journal of " + word();
    if (rng() % 2) rec.journal_issn = "1000-000" + std::to_string(rng() % 10);
    if (rng() % 2) rec.journal_aliases = {"J " + word()};
    for (size_t i = 0, n = rng() % 4; i < n; ++i) rec.authors.push_back(word() + " " + word());
    if (rng() % 2) rec.affiliations.push_back(word() + " University");
    auto base = make_date(2020, 1, 1);
    if (rng() % 2) rec.dates.online_pub = DateEntry{add_days(base, long(rng() % 600))};
    rec.dates.journal_pub = DateEntry{add_days(base, long(rng() % 600)), rng() % 4 == 0};
    if (rng() % 2) rec.dates.accepted = DateEntry{add_days(base, long(rng() % 600))};
    rec.earliest_date = resolve_earliest_date(rec.dates);
    rec.journal_aliases = detail::dedupe_aliases(rec.journal_aliases, rec.journal_name);
    return rec;
}

TEST_CASE("paper records round-trip through serialization", "[corpus][property]") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        PaperRecord rec = random_record(rng);
        PaperRecord back = parse_paper_record(serialize_paper_record(rec));
        CHECK(back == rec);
    }
}

TEST_CASE("news articles parse, validate, and round-trip", "[corpus]") {
    NewsArticle art = parse_news_article(R"({"news_id":"N1","source":"wire","title":"A finding","body":"Text body.","release_date":"2020-06-01","gold_paper_id":"100001"})");
    CHECK(art.news_id == "N1");
    CHECK(art.release_date == make_date(2020, 6, 1));
    CHECK(parse_news_article(serialize_news_article(art)) == art);

    CHECK_THROWS_AS(parse_news_article(R"({"news_id":"N2","title":"t","body":"","release_date":"2020-06-01"})"),
                    ValidationError);
    CHECK_THROWS_WITH(parse_news_article(R"({"news_id":"N3","title":"t","body":"b","release_date":"June"})"),
                      Catch::Matchers::ContainsSubstring("YYYY-MM-DD"));
}

TEST_CASE("load_alias_table reads one journal per line", "[corpus]") {
    std::istringstream in("1000-0001\tThe Lancet\tLancet\tLancet (London)\n");
    JournalAliasTable table = load_alias_table(in);
    REQUIRE(table.entries.size() == 1);
    const auto* e = table.lookup("1000-0001");
    REQUIRE(e != nullptr);
    CHECK(e->canonical == "The Lancet");
    CHECK(e->aliases == std::vector<std::string>{"Lancet", "Lancet (London)"});
}

TEST_CASE("load_alias_table merges duplicate ISSN lines", "[corpus]") {
    std::istringstream in(
        "1000-0001\tThe Lancet\tLancet\n"
        "1000-0001\tThe Lancet\tLANCET\tLancet (London)\n");
    JournalAliasTable table = load_alias_table(in);
    REQUIRE(table.entries.size() == 1);
    CHECK(table.lookup("1000-0001")->aliases ==
          std::vector<std::string>{"Lancet", "Lancet (London)"});
}

TEST_CASE("load_alias_table resolves the PNAS example", "[corpus]") {
    std::istringstream in(
        "0027-8424\tProceedings of the National Academy of Sciences of the United States of "
        "America\tPNAS\tProc Natl Acad Sci\n");
    JournalAliasTable table = load_alias_table(in);
    const auto* e = table.lookup("0027-8424");
    REQUIRE(e != nullptr);
    CHECK(e->canonical ==
          "Proceedings of the National Academy of Sciences of the United States of America");
    CHECK(e->aliases == std::vector<std::string>{"PNAS", "Proc Natl Acad Sci"});
}

TEST_CASE("load_alias_table reports malformed lines by number", "[corpus]") {
    std::istringstream in("1000-0001\tGood Journal\n\nonly-one-column\n");
    CHECK_THROWS_WITH(load_alias_table(in), Catch::Matchers::ContainsSubstring("line 3"));
}

TEST_CASE("expand_journal_aliases unions table aliases", "[corpus]") {
    std::istringstream in("1000-0001\tThe Lancet\tLancet\tLancet Journal\n");
    JournalAliasTable table = load_alias_table(in);
    PaperRecord rec;
    rec.paper_id = "1";
    rec.journal_name = "The Lancet";
    rec.journal_issn = "1000-0001";
    rec.journal_aliases = {"Lancet"};

    PaperRecord expanded = expand_journal_aliases(rec, table);
    CHECK(expanded.journal_aliases == std::vector<std::string>{"Lancet", "Lancet Journal"});

    SECTION("idempotent") {
        CHECK(expand_journal_aliases(expanded, table) == expanded);
    }
    SECTION("missing ISSN leaves the record unchanged") {
        rec.journal_issn.clear();
        CHECK(expand_journal_aliases(rec, table) == rec);
    }
    SECTION("unknown ISSN leaves the record unchanged") {
        rec.journal_issn = "9999-9999";
        CHECK(expand_journal_aliases(rec, table) == rec);
    }
    SECTION("a differing table canonical becomes an alias") {
        rec.journal_name = "Lancet (UK edition)";
        rec.journal_aliases.clear();
        PaperRecord e2 = expand_journal_aliases(rec, table);
        CHECK(e2.journal_aliases ==
              std::vector<std::string>{"The Lancet", "Lancet", "Lancet Journal"});
    }
}

TEST_CASE("expand_journal_aliases never removes aliases", "[corpus][property]") {
    std::mt19937_64 rng(23);
    std::istringstream in("1000-0001\tJournal A\tJA\tJ Alpha\n1000-0002\tJournal B\tJB\n");
    JournalAliasTable table = load_alias_table(in);
    for (int i = 0; i < 100; ++i) {
        PaperRecord rec = random_record(rng);
        rec.journal_issn = (rng() % 3 == 0) ? "" : (rng() % 2 ? "1000-0001" : "1000-0002");
        PaperRecord expanded = expand_journal_aliases(rec, table);
        for (const auto& a : rec.journal_aliases) {
            CHECK(std::find(expanded.journal_aliases.begin(), expanded.journal_aliases.end(), a) !=
                  expanded.journal_aliases.end());
        }
        CHECK(expand_journal_aliases(expanded, table) == expanded);
    }
}

TEST_CASE("alias tables accept unkeyed supplemental entries", "[corpus]") {
    std::istringstream in("\tNature Medicine\tNat Med\n");
    CHECK_THROWS_AS(load_alias_table(in), ParseError);
    std::istringstream in2("\tNature Medicine\tNat Med\n");
    JournalAliasTable table = load_alias_table(in2, /*require_issn=*/false);
    REQUIRE(table.unkeyed.size() == 1);
    CHECK(table.unkeyed[0].canonical == "Nature Medicine");
}
