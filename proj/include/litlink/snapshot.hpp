#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "litlink/corpus.hpp"

namespace litlink {

/// On-disk corpus snapshot. It stores the normalized records (before alias
/// expansion) together with the alias table, so loading can rebuild an
/// index byte-identical to a fresh build and ablations can still toggle
/// alias expansion.
///
/// Format (UTF-8, line-oriented, versioned):
///   line 1:  litlink-snapshot <version>
///   line 2:  {"papers": N, "aliases": M, "unkeyed": U}
///   N paper-record JSON lines, ascending paper_id
///   M alias-table JSON lines, ascending ISSN
///   U unkeyed alias JSON lines
struct Snapshot {
    std::vector<PaperRecord> papers;
    JournalAliasTable aliases;
};

inline constexpr int kSnapshotVersion = 1;
inline constexpr std::string_view kSnapshotMagic = "litlink-snapshot";

inline void save_snapshot(std::ostream& out, const std::vector<PaperRecord>& papers,
                          const JournalAliasTable& aliases) {
    std::vector<const PaperRecord*> sorted;
    sorted.reserve(papers.size());
    for (const auto& p : papers) sorted.push_back(&p);
    std::sort(sorted.begin(), sorted.end(),
              [](const PaperRecord* a, const PaperRecord* b) { return a->paper_id < b->paper_id; });

    out << kSnapshotMagic << ' ' << kSnapshotVersion << '\n';
    nlohmann::json counts;
    counts["papers"] = papers.size();
    counts["aliases"] = aliases.entries.size();
    counts["unkeyed"] = aliases.unkeyed.size();
    out << counts.dump() << '\n';
    for (const auto* p : sorted) out << serialize_paper_record(*p) << '\n';
    auto entry_json = [](const std::string& issn, const JournalAliasTable::Entry& e) {
        nlohmann::json j;
        j["issn"] = issn;
        j["canonical"] = e.canonical;
        j["aliases"] = e.aliases;
        return j.dump();
    };
    for (const auto& [issn, entry] : aliases.entries) out << entry_json(issn, entry) << '\n';
    for (const auto& entry : aliases.unkeyed) out << entry_json("", entry) << '\n';
}

inline void save_snapshot(const std::string& path, const std::vector<PaperRecord>& papers,
                          const JournalAliasTable& aliases) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write snapshot file: " + path);
    save_snapshot(out, papers, aliases);
}

inline Snapshot load_snapshot(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw ParseError("snapshot: empty file");
    std::string expected = std::string(kSnapshotMagic) + " " + std::to_string(kSnapshotVersion);
    if (header != expected) {
        throw ParseError("snapshot: unsupported header '" + header + "' (expected '" + expected +
                         "')");
    }
    std::string counts_line;
    if (!std::getline(in, counts_line)) throw ParseError("snapshot: missing counts line");
    nlohmann::json counts = nlohmann::json::parse(counts_line, nullptr, false);
    if (counts.is_discarded() || !counts.is_object()) {
        throw ParseError("snapshot: malformed counts line");
    }
    size_t n_papers = counts.value("papers", size_t(0));
    size_t n_aliases = counts.value("aliases", size_t(0));
    size_t n_unkeyed = counts.value("unkeyed", size_t(0));

    Snapshot snap;
    snap.papers.reserve(n_papers);
    std::string line;
    for (size_t i = 0; i < n_papers; ++i) {
        if (!std::getline(in, line)) throw ParseError("snapshot: truncated paper section");
        snap.papers.push_back(parse_paper_record(line));
    }
    auto parse_entry = [](const std::string& text, bool keyed) {
        nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw ParseError("snapshot: malformed alias line");
        detail::reject_unknown_keys(j, {"issn", "canonical", "aliases"}, "snapshot alias");
        std::string issn = detail::get_string(j, "issn", "snapshot alias", false);
        if (keyed && issn.empty()) throw ParseError("snapshot: keyed alias entry without ISSN");
        JournalAliasTable::Entry entry;
        entry.canonical = detail::get_string(j, "canonical", "snapshot alias", true);
        entry.aliases = detail::get_string_list(j, "aliases", "snapshot alias");
        return std::pair{issn, entry};
    };
    for (size_t i = 0; i < n_aliases; ++i) {
        if (!std::getline(in, line)) throw ParseError("snapshot: truncated alias section");
        auto [issn, entry] = parse_entry(line, true);
        snap.aliases.entries[issn] = std::move(entry);
    }
    for (size_t i = 0; i < n_unkeyed; ++i) {
        if (!std::getline(in, line)) throw ParseError("snapshot: truncated unkeyed alias section");
        auto [issn, entry] = parse_entry(line, false);
        snap.aliases.unkeyed.push_back(std::move(entry));
    }
    return snap;
}

inline Snapshot load_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open snapshot file: " + path);
    return load_snapshot(in);
}

}  // namespace litlink
