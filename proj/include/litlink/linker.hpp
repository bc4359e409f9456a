#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "litlink/baseline.hpp"
#include "litlink/eval.hpp"
#include "litlink/extraction.hpp"
#include "litlink/snapshot.hpp"

namespace litlink {

/// One linking request: a news article plus retrieval options.
struct LinkRequest {
    std::string title;
    std::string body;
    Date release_date{};
    std::set<Kind> kinds = all_kinds();
    int top_k = 3;
    std::optional<double> threshold;  // overrides the config threshold
    Backend backend = Backend::Main;
    int window_days = 45;  // crossref-like backend only
};

/// Loaded corpus plus everything needed to serve link requests. Immutable
/// after construction; safe for concurrent use.
class Engine {
  public:
    /// The optional supplemental table feeds only the gazetteer (extra
    /// journal surface forms); ISSN-based alias expansion uses `aliases`.
    Engine(std::vector<PaperRecord> papers, JournalAliasTable aliases, SearchConfig config,
           const JournalAliasTable* supplemental = nullptr)
        : records_(expand_journal_aliases(std::move(papers), aliases)),
          aliases_(std::move(aliases)),
          index_(build_index(records_)),
          gazetteer_(JournalGazetteer::from_corpus(records_, &aliases_)),
          config_(std::move(config)) {
        if (supplemental) gazetteer_.add_table(*supplemental);
        config_.validate();
    }

    static Engine from_snapshot(const std::string& path, SearchConfig config,
                                const std::string& supplemental_gazetteer = "") {
        Snapshot snap = load_snapshot(path);
        if (supplemental_gazetteer.empty()) {
            return Engine(std::move(snap.papers), std::move(snap.aliases), std::move(config));
        }
        JournalAliasTable supplemental =
            load_alias_table(supplemental_gazetteer, /*require_issn=*/false);
        return Engine(std::move(snap.papers), std::move(snap.aliases), std::move(config),
                      &supplemental);
    }

    const Index& index() const { return index_; }
    const JournalGazetteer& gazetteer() const { return gazetteer_; }
    const SearchConfig& config() const { return config_; }
    const std::vector<PaperRecord>& records() const { return records_; }

    /// Extracts metadata from the request text and runs the selected
    /// backend. Throws InputError when nothing extractable is found.
    std::vector<RankedHit> link(const LinkRequest& request) const {
        NewsArticle art;
        art.news_id = "request";
        art.title = normalize_text(request.title);
        art.body = normalize_text(request.body);
        art.release_date = request.release_date;
        if (art.body.empty()) throw InputError("body must be non-empty");

        RuleBasedExtractor plugin(gazetteer_);
        Query query = build_query(art, gazetteer_, plugin, request.kinds);

        SearchConfig cfg = config_;
        cfg.top_k = request.top_k;
        if (request.threshold) cfg.min_score_threshold = *request.threshold;
        cfg.validate();
        if (request.backend == Backend::CrossrefLike) {
            AndQuery aq = to_and_query(query, art.release_date, request.window_days);
            return and_search(index_, aq, cfg.top_k);
        }
        return search(index_, query, cfg);
    }

  private:
    std::vector<PaperRecord> records_;
    JournalAliasTable aliases_;
    Index index_;
    JournalGazetteer gazetteer_;
    SearchConfig config_;
};

/// Parses a LinkRequest from JSON, reporting problems field by field.
inline LinkRequest parse_link_request(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("link request: expected a JSON object");
    detail::reject_unknown_keys(
        j, {"title", "body", "release_date", "kinds", "top_k", "threshold", "backend"},
        "link request");
    LinkRequest req;
    req.title = detail::get_string(j, "title", "link request", false);
    req.body = detail::get_string(j, "body", "link request", true);
    if (req.body.empty()) throw ValidationError("link request: field 'body' must be non-empty");
    auto rd = j.find("release_date");
    if (rd == j.end()) throw ParseError("link request: missing field 'release_date'");
    if (!rd->is_string()) throw ParseError("link request: field 'release_date' must be a string");
    req.release_date = parse_date(rd->get<std::string>());
    if (auto it = j.find("kinds"); it != j.end()) {
        if (!it->is_array()) throw ParseError("link request: field 'kinds' must be an array");
        req.kinds.clear();
        for (const auto& v : *it) {
            if (!v.is_string()) throw ParseError("link request: field 'kinds' must contain strings");
            auto kind = kind_from_name(v.get<std::string>());
            if (!kind) {
                throw ParseError("link request: unknown kind '" + v.get<std::string>() + "'");
            }
            req.kinds.insert(*kind);
        }
        if (req.kinds.empty()) throw ParseError("link request: field 'kinds' must be non-empty");
    }
    if (auto it = j.find("top_k"); it != j.end()) {
        if (!it->is_number_integer()) throw ParseError("link request: field 'top_k' must be an integer");
        req.top_k = it->get<int>();
        if (req.top_k < 1) throw ValidationError("link request: field 'top_k' must be >= 1");
    }
    if (auto it = j.find("threshold"); it != j.end()) {
        if (!it->is_number()) throw ParseError("link request: field 'threshold' must be a number");
        req.threshold = it->get<double>();
    }
    if (auto it = j.find("backend"); it != j.end()) {
        if (!it->is_string()) throw ParseError("link request: field 'backend' must be a string");
        auto backend = backend_from_name(it->get<std::string>());
        if (!backend) {
            throw ParseError("link request: unknown backend '" + it->get<std::string>() + "'");
        }
        req.backend = *backend;
    }
    return req;
}

/// The machine-readable response document shared by the CLI and the HTTP
/// service; both must emit it byte-identically.
inline nlohmann::json link_response_json(const Index& index, const std::vector<RankedHit>& hits) {
    nlohmann::json out;
    out["schema_version"] = 1;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& h : hits) {
        auto doc = index.find(h.paper_id);
        nlohmann::json hj;
        hj["rank"] = h.rank;
        hj["paper_id"] = h.paper_id;
        if (doc && !index.doc(*doc).doi.empty()) {
            hj["doi"] = index.doc(*doc).doi;
        } else {
            hj["doi"] = nullptr;
        }
        hj["title"] = doc ? index.doc(*doc).title : "";
        hj["journal"] = doc ? index.doc(*doc).journal_name : "";
        hj["final_score"] = h.final_score;
        hj["date_score"] = h.date_score;
        hj["weighted_score"] = h.weighted_score;
        nlohmann::json fs = nlohmann::json::object();
        for (Kind k : kAllKinds) {
            fs[std::string(kind_name(k))] = h.field_scores[static_cast<size_t>(k)];
        }
        hj["field_scores"] = fs;
        arr.push_back(hj);
    }
    out["hits"] = arr;
    return out;
}

}  // namespace litlink
