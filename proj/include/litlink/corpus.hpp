#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "litlink/dates.hpp"
#include "litlink/errors.hpp"
#include "litlink/text.hpp"

namespace litlink {

/// One publication date. A placeholder date is a year-only value whose
/// month/day the source recorded as January 1 for lack of real data.
struct DateEntry {
    Date value{};
    bool placeholder = false;

    bool operator==(const DateEntry&) const = default;
};

struct PublicationDates {
    std::optional<DateEntry> journal_pub;
    std::optional<DateEntry> pubmed_pub;
    std::optional<DateEntry> online_pub;
    std::optional<DateEntry> accepted;

    bool has_any_pub() const {
        return journal_pub.has_value() || pubmed_pub.has_value() || online_pub.has_value();
    }

    bool operator==(const PublicationDates&) const = default;
};

/// Resolves the earliest public-availability date: the online publication
/// date when present, otherwise the earlier of the journal and PubMed dates.
/// If the chosen date precedes the accepted date (a year-only placeholder
/// artifact), the accepted date wins.
inline Date resolve_earliest_date(const PublicationDates& dates) {
    std::optional<Date> candidate;
    if (dates.online_pub) {
        candidate = dates.online_pub->value;
    } else {
        if (dates.journal_pub) candidate = dates.journal_pub->value;
        if (dates.pubmed_pub &&
            (!candidate || std::chrono::sys_days(dates.pubmed_pub->value) < std::chrono::sys_days(*candidate))) {
            candidate = dates.pubmed_pub->value;
        }
    }
    if (!candidate) {
        throw ValidationError("publication dates: none of online_pub/journal_pub/pubmed_pub present");
    }
    if (dates.accepted &&
        std::chrono::sys_days(*candidate) < std::chrono::sys_days(dates.accepted->value)) {
        return dates.accepted->value;
    }
    return *candidate;
}

/// One indexed publication. Optional string fields use "" for absent.
struct PaperRecord {
    std::string paper_id;
    std::string doi;
    std::string title;
    std::string abstract;
    std::string journal_name;
    std::string journal_issn;
    std::vector<std::string> journal_aliases;
    std::vector<std::string> authors;
    std::vector<std::string> affiliations;
    PublicationDates dates;
    Date earliest_date{};

    bool operator==(const PaperRecord&) const = default;
};

struct NewsArticle {
    std::string news_id;
    std::string source;
    std::string title;
    std::string body;
    Date release_date{};
    std::string gold_paper_id;

    bool operator==(const NewsArticle&) const = default;
};

namespace detail {

using nlohmann::json;

inline const json& require_key(const json& obj, const char* key, const char* what) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(std::string(what) + ": missing field '" + key + "'");
    return *it;
}

inline std::string get_string(const json& obj, const char* key, const char* what,
                              bool required, std::string fallback = "") {
    auto it = obj.find(key);
    if (it == obj.end()) {
        if (required) throw ParseError(std::string(what) + ": missing field '" + key + "'");
        return fallback;
    }
    if (!it->is_string()) throw ParseError(std::string(what) + ": field '" + key + "' must be a string");
    return normalize_text(it->get<std::string>());
}

inline std::vector<std::string> get_string_list(const json& obj, const char* key, const char* what) {
    auto it = obj.find(key);
    if (it == obj.end()) return {};
    if (!it->is_array()) throw ParseError(std::string(what) + ": field '" + key + "' must be an array");
    std::vector<std::string> out;
    for (const auto& v : *it) {
        if (!v.is_string()) throw ParseError(std::string(what) + ": field '" + key + "' must contain strings");
        out.push_back(normalize_text(v.get<std::string>()));
    }
    return out;
}

inline void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                                const char* what) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known) {
            if (it.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) throw ParseError(std::string(what) + ": unknown field '" + it.key() + "'");
    }
}

inline std::optional<DateEntry> get_date_entry(const json& dates, const char* key, const char* what) {
    auto it = dates.find(key);
    if (it == dates.end()) return std::nullopt;
    if (!it->is_object()) {
        throw ParseError(std::string(what) + ": field 'dates." + key + "' must be an object");
    }
    reject_unknown_keys(*it, {"value", "placeholder"}, what);
    const json& value = require_key(*it, "value", what);
    if (!value.is_string()) {
        throw ParseError(std::string(what) + ": field 'dates." + key + ".value' must be a string");
    }
    DateEntry entry;
    entry.value = parse_date(value.get<std::string>());
    if (auto p = it->find("placeholder"); p != it->end()) {
        if (!p->is_boolean()) {
            throw ParseError(std::string(what) + ": field 'dates." + key + ".placeholder' must be a boolean");
        }
        entry.placeholder = p->get<bool>();
    }
    return entry;
}

inline json date_entry_json(const DateEntry& e) {
    json j;
    j["value"] = format_date(e.value);
    if (e.placeholder) j["placeholder"] = true;
    return j;
}

/// Dedups a list under norm_key, preserving first occurrence order, and
/// drops entries equal to the canonical name.
inline std::vector<std::string> dedupe_aliases(const std::vector<std::string>& aliases,
                                               const std::string& canonical) {
    std::vector<std::string> out;
    std::vector<std::string> seen;
    std::string canon = norm_key(canonical);
    for (const auto& a : aliases) {
        std::string key = norm_key(a);
        if (key.empty() || key == canon) continue;
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(key);
        out.push_back(a);
    }
    return out;
}

}  // namespace detail

/// Parses one line of the paper record file (JSON object per line).
/// Text fields are normalized (NFC + whitespace collapse) and
/// earliest_date is resolved before returning.
inline PaperRecord parse_paper_record(std::string_view line) {
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ParseError("paper record: line is not a JSON object");
    }
    detail::reject_unknown_keys(j,
                                {"paper_id", "doi", "title", "abstract", "journal_name",
                                 "journal_issn", "journal_aliases", "authors", "affiliations",
                                 "dates"},
                                "paper record");
    PaperRecord rec;
    rec.paper_id = detail::get_string(j, "paper_id", "paper record", true);
    if (rec.paper_id.empty()) throw ParseError("paper record: field 'paper_id' must be non-empty");
    rec.doi = detail::get_string(j, "doi", "paper record", false);
    rec.title = detail::get_string(j, "title", "paper record", true);
    rec.abstract = detail::get_string(j, "abstract", "paper record", false);
    rec.journal_name = detail::get_string(j, "journal_name", "paper record", true);
    rec.journal_issn = detail::get_string(j, "journal_issn", "paper record", false);
    rec.journal_aliases =
        detail::dedupe_aliases(detail::get_string_list(j, "journal_aliases", "paper record"),
                               rec.journal_name);
    rec.authors = detail::get_string_list(j, "authors", "paper record");
    rec.affiliations = detail::get_string_list(j, "affiliations", "paper record");

    const auto& dates = detail::require_key(j, "dates", "paper record");
    if (!dates.is_object()) throw ParseError("paper record: field 'dates' must be an object");
    detail::reject_unknown_keys(dates, {"journal_pub", "pubmed_pub", "online_pub", "accepted"},
                                "paper record");
    rec.dates.journal_pub = detail::get_date_entry(dates, "journal_pub", "paper record");
    rec.dates.pubmed_pub = detail::get_date_entry(dates, "pubmed_pub", "paper record");
    rec.dates.online_pub = detail::get_date_entry(dates, "online_pub", "paper record");
    rec.dates.accepted = detail::get_date_entry(dates, "accepted", "paper record");
    if (!rec.dates.has_any_pub()) {
        throw ValidationError("paper record '" + rec.paper_id +
                              "': none of dates.online_pub/journal_pub/pubmed_pub present");
    }
    rec.earliest_date = resolve_earliest_date(rec.dates);
    return rec;
}

inline std::string serialize_paper_record(const PaperRecord& rec) {
    nlohmann::json j;
    j["paper_id"] = rec.paper_id;
    if (!rec.doi.empty()) j["doi"] = rec.doi;
    j["title"] = rec.title;
    if (!rec.abstract.empty()) j["abstract"] = rec.abstract;
    j["journal_name"] = rec.journal_name;
    if (!rec.journal_issn.empty()) j["journal_issn"] = rec.journal_issn;
    if (!rec.journal_aliases.empty()) j["journal_aliases"] = rec.journal_aliases;
    if (!rec.authors.empty()) j["authors"] = rec.authors;
    if (!rec.affiliations.empty()) j["affiliations"] = rec.affiliations;
    nlohmann::json dates = nlohmann::json::object();
    if (rec.dates.journal_pub) dates["journal_pub"] = detail::date_entry_json(*rec.dates.journal_pub);
    if (rec.dates.pubmed_pub) dates["pubmed_pub"] = detail::date_entry_json(*rec.dates.pubmed_pub);
    if (rec.dates.online_pub) dates["online_pub"] = detail::date_entry_json(*rec.dates.online_pub);
    if (rec.dates.accepted) dates["accepted"] = detail::date_entry_json(*rec.dates.accepted);
    j["dates"] = dates;
    return j.dump();
}

inline NewsArticle parse_news_article(std::string_view line) {
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ParseError("news article: line is not a JSON object");
    }
    detail::reject_unknown_keys(
        j, {"news_id", "source", "title", "body", "release_date", "gold_paper_id"}, "news article");
    NewsArticle art;
    art.news_id = detail::get_string(j, "news_id", "news article", true);
    if (art.news_id.empty()) throw ParseError("news article: field 'news_id' must be non-empty");
    art.source = detail::get_string(j, "source", "news article", false);
    art.title = detail::get_string(j, "title", "news article", true);
    art.body = detail::get_string(j, "body", "news article", true);
    if (art.body.empty()) throw ValidationError("news article '" + art.news_id + "': body is empty");
    const auto& rd = detail::require_key(j, "release_date", "news article");
    if (!rd.is_string()) throw ParseError("news article: field 'release_date' must be a string");
    art.release_date = parse_date(rd.get<std::string>());
    art.gold_paper_id = detail::get_string(j, "gold_paper_id", "news article", false);
    return art;
}

inline std::string serialize_news_article(const NewsArticle& art) {
    nlohmann::json j;
    j["news_id"] = art.news_id;
    if (!art.source.empty()) j["source"] = art.source;
    j["title"] = art.title;
    j["body"] = art.body;
    j["release_date"] = format_date(art.release_date);
    if (!art.gold_paper_id.empty()) j["gold_paper_id"] = art.gold_paper_id;
    return j.dump();
}

inline std::vector<PaperRecord> load_paper_records(std::istream& in) {
    std::vector<PaperRecord> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            out.push_back(parse_paper_record(line));
        } catch (const Error& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

inline std::vector<PaperRecord> load_paper_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open paper record file: " + path);
    return load_paper_records(in);
}

inline std::vector<NewsArticle> load_news_articles(std::istream& in) {
    std::vector<NewsArticle> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            out.push_back(parse_news_article(line));
        } catch (const Error& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

inline std::vector<NewsArticle> load_news_articles(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open news article file: " + path);
    return load_news_articles(in);
}

/// Journal alias table keyed by ISSN. Entries without an ISSN (allowed in
/// supplemental gazetteer files) are kept in `unkeyed` and feed only the
/// gazetteer, never ISSN-based alias expansion.
struct JournalAliasTable {
    struct Entry {
        std::string canonical;
        std::vector<std::string> aliases;

        bool operator==(const Entry&) const = default;
    };

    std::map<std::string, Entry> entries;
    std::vector<Entry> unkeyed;

    const Entry* lookup(const std::string& issn) const {
        auto it = entries.find(issn);
        return it == entries.end() ? nullptr : &it->second;
    }

    size_t size() const { return entries.size() + unkeyed.size(); }

    bool operator==(const JournalAliasTable&) const = default;
};

/// Reads a tab-separated alias table: ISSN, canonical name, then zero or
/// more aliases per line. Blank lines and '#' comments are skipped.
/// Duplicate ISSN lines merge with alias-list union; a conflicting
/// canonical name is kept as an alias of the first one seen.
inline JournalAliasTable load_alias_table(std::istream& in, bool require_issn = true) {
    JournalAliasTable table;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cols;
        size_t start = 0;
        while (true) {
            size_t tab = line.find('\t', start);
            cols.push_back(normalize_text(line.substr(start, tab == std::string::npos
                                                                 ? std::string::npos
                                                                 : tab - start)));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (cols.size() < 2) {
            throw ParseError("alias table line " + std::to_string(lineno) +
                             ": expected at least ISSN and canonical name");
        }
        const std::string& issn = cols[0];
        const std::string& canonical = cols[1];
        if (canonical.empty()) {
            throw ParseError("alias table line " + std::to_string(lineno) + ": empty canonical name");
        }
        if (issn.empty() && require_issn) {
            throw ParseError("alias table line " + std::to_string(lineno) + ": empty ISSN");
        }
        std::vector<std::string> aliases(cols.begin() + 2, cols.end());
        if (issn.empty()) {
            JournalAliasTable::Entry e{canonical, detail::dedupe_aliases(aliases, canonical)};
            table.unkeyed.push_back(std::move(e));
            continue;
        }
        auto [it, inserted] = table.entries.try_emplace(issn);
        JournalAliasTable::Entry& entry = it->second;
        if (inserted) {
            entry.canonical = canonical;
            entry.aliases = detail::dedupe_aliases(aliases, canonical);
        } else {
            std::vector<std::string> merged = entry.aliases;
            if (norm_key(canonical) != norm_key(entry.canonical)) merged.push_back(canonical);
            merged.insert(merged.end(), aliases.begin(), aliases.end());
            entry.aliases = detail::dedupe_aliases(merged, entry.canonical);
        }
    }
    return table;
}

inline JournalAliasTable load_alias_table(const std::string& path, bool require_issn = true) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open alias table file: " + path);
    return load_alias_table(in, require_issn);
}

/// Unions the record's aliases with the table entry for its ISSN. The
/// canonical name never appears among aliases; applying twice is a no-op.
inline PaperRecord expand_journal_aliases(PaperRecord record, const JournalAliasTable& table) {
    if (record.journal_issn.empty()) return record;
    const auto* entry = table.lookup(record.journal_issn);
    if (!entry) return record;
    std::vector<std::string> merged = record.journal_aliases;
    if (norm_key(entry->canonical) != norm_key(record.journal_name)) {
        merged.push_back(entry->canonical);
    }
    merged.insert(merged.end(), entry->aliases.begin(), entry->aliases.end());
    record.journal_aliases = detail::dedupe_aliases(merged, record.journal_name);
    return record;
}

inline std::vector<PaperRecord> expand_journal_aliases(std::vector<PaperRecord> records,
                                                       const JournalAliasTable& table) {
    for (auto& r : records) r = expand_journal_aliases(std::move(r), table);
    return records;
}

}  // namespace litlink
