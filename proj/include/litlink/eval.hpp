#pragma once

#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "litlink/baseline.hpp"
#include "litlink/extraction.hpp"
#include "litlink/ranking.hpp"

namespace litlink {

struct ArticleOutcome {
    std::string news_id;
    std::string gold_paper_id;
    std::optional<int> gold_rank;  // empty = miss
    double latency_s = 0.0;
};

struct EvalResult {
    std::map<int, double> accuracy;  // k -> m/n
    size_t n = 0;
    std::vector<ArticleOutcome> outcomes;
    std::vector<std::string> excluded;  // news ids whose gold is absent from the corpus
    double mean_latency_s = 0.0;
};

/// m/n over the given per-article gold ranks; misses never count as hits.
inline double top_k_accuracy(const std::vector<std::optional<int>>& gold_ranks, int k) {
    if (gold_ranks.empty()) throw InputError("top_k_accuracy needs at least one outcome");
    if (k < 1) throw ValidationError("k must be >= 1");
    size_t m = 0;
    for (const auto& r : gold_ranks) {
        if (r && *r <= k) ++m;
    }
    return static_cast<double>(m) / static_cast<double>(gold_ranks.size());
}

inline double top_k_accuracy(const std::vector<ArticleOutcome>& outcomes, int k) {
    std::vector<std::optional<int>> ranks;
    ranks.reserve(outcomes.size());
    for (const auto& o : outcomes) ranks.push_back(o.gold_rank);
    return top_k_accuracy(ranks, k);
}

enum class Backend : uint8_t { Main, CrossrefLike };

inline std::string_view backend_name(Backend b) {
    return b == Backend::Main ? "main" : "crossref-like";
}

inline std::optional<Backend> backend_from_name(std::string_view name) {
    if (name == "main") return Backend::Main;
    if (name == "crossref-like") return Backend::CrossrefLike;
    return std::nullopt;
}

/// One ablation configuration: which subqueries to build and which engine
/// features to enable.
struct AblationRow {
    std::string label;
    std::set<Kind> kinds = {Kind::Au, Kind::Jo};
    bool alias_expansion = true;
    bool tuned_weights = true;  // false: uniform weight 1 per subquery
    bool author_b_zero = true;  // false: stock b=0.75 for the author field
    bool decay = true;
    Backend backend = Backend::Main;
};

struct EvalOptions {
    std::vector<int> ks = {1, 3, 5};
    SearchConfig base;      // top_k is overridden with max(ks)
    int window_days = 45;   // crossref-like hard window
    int latency_repeats = 1;  // mean latency = min of per-repeat means
};

namespace detail {

struct PreparedCorpus {
    std::vector<PaperRecord> records;
    Index index;
    JournalGazetteer gazetteer;
    std::vector<ExtractedMetadata> metadata;  // parallel to articles
};

inline PreparedCorpus prepare_corpus(const std::vector<PaperRecord>& papers,
                                     const JournalAliasTable& aliases, bool expand,
                                     const std::vector<NewsArticle>& articles) {
    PreparedCorpus out;
    out.records = expand ? expand_journal_aliases(papers, aliases) : papers;
    out.index = build_index(out.records);
    out.gazetteer = JournalGazetteer::from_corpus(out.records, expand ? &aliases : nullptr);
    RuleBasedExtractor plugin(out.gazetteer);
    out.metadata.reserve(articles.size());
    for (const auto& art : articles) out.metadata.push_back(extract_metadata(art, plugin));
    return out;
}

inline SearchConfig row_config(const AblationRow& row, const EvalOptions& opts) {
    SearchConfig cfg = opts.base;
    if (!row.tuned_weights) cfg.weights = {1.0, 1.0, 1.0, 1.0, 1.0};
    cfg.b(Field::Authors) = row.author_b_zero ? 0.0 : 0.75;
    cfg.decay.enabled = row.decay;
    int max_k = 1;
    for (int k : opts.ks) max_k = std::max(max_k, k);
    cfg.top_k = max_k;
    return cfg;
}

}  // namespace detail

/// Evaluates one configuration over a paired dataset. Articles whose gold
/// paper is absent from the corpus are excluded from n; articles with an
/// empty query after extraction count as misses.
inline EvalResult evaluate_row(const detail::PreparedCorpus& corpus,
                               const std::vector<NewsArticle>& articles, const AblationRow& row,
                               const EvalOptions& opts) {
    SearchConfig cfg = detail::row_config(row, opts);
    cfg.validate();
    EvalResult result;

    std::vector<Query> queries(articles.size());
    std::vector<char> usable(articles.size(), 0);
    for (size_t i = 0; i < articles.size(); ++i) {
        const NewsArticle& art = articles[i];
        if (art.gold_paper_id.empty() || !corpus.index.find(art.gold_paper_id)) {
            result.excluded.push_back(art.news_id);
            continue;
        }
        queries[i] = query_from_metadata(corpus.metadata[i], row.kinds, art.release_date);
        usable[i] = 1;
    }

    int repeats = std::max(1, opts.latency_repeats);
    double best_mean = 0.0;
    for (int rep = 0; rep < repeats; ++rep) {
        bool record = rep == 0;
        if (record) result.outcomes.clear();
        double total_latency = 0.0;
        size_t measured = 0;
        for (size_t i = 0; i < articles.size(); ++i) {
            if (!usable[i]) continue;
            const NewsArticle& art = articles[i];
            ArticleOutcome outcome;
            outcome.news_id = art.news_id;
            outcome.gold_paper_id = art.gold_paper_id;
            if (!queries[i].all_empty()) {
                std::vector<RankedHit> hits;
                auto t0 = std::chrono::steady_clock::now();
                if (row.backend == Backend::Main) {
                    hits = search(corpus.index, queries[i], cfg);
                } else {
                    AndQuery aq = to_and_query(queries[i], art.release_date, opts.window_days);
                    hits = and_search(corpus.index, aq, cfg.top_k);
                }
                auto t1 = std::chrono::steady_clock::now();
                outcome.latency_s = std::chrono::duration<double>(t1 - t0).count();
                total_latency += outcome.latency_s;
                ++measured;
                for (const auto& h : hits) {
                    if (h.paper_id == art.gold_paper_id) {
                        outcome.gold_rank = h.rank;
                        break;
                    }
                }
            }
            if (record) result.outcomes.push_back(std::move(outcome));
        }
        double mean = measured == 0 ? 0.0 : total_latency / static_cast<double>(measured);
        best_mean = rep == 0 ? mean : std::min(best_mean, mean);
    }

    result.n = result.outcomes.size();
    result.mean_latency_s = best_mean;
    for (int k : opts.ks) result.accuracy[k] = top_k_accuracy(result.outcomes, k);
    return result;
}

/// Runs every ablation row against the paired dataset. Rows differing only
/// in features share the two prepared corpora (alias expansion on/off).
inline std::vector<std::pair<AblationRow, EvalResult>> run_ablation(
    const std::vector<PaperRecord>& papers, const JournalAliasTable& aliases,
    const std::vector<NewsArticle>& articles, const std::vector<AblationRow>& rows,
    const EvalOptions& opts = {}) {
    if (articles.empty()) throw InputError("run_ablation needs at least one article");
    std::set<std::string> labels;
    for (const auto& row : rows) {
        if (!labels.insert(row.label).second) {
            throw ValidationError("duplicate ablation label '" + row.label + "'");
        }
    }
    std::optional<detail::PreparedCorpus> with_alias;
    std::optional<detail::PreparedCorpus> without_alias;
    std::vector<std::pair<AblationRow, EvalResult>> results;
    for (const auto& row : rows) {
        auto& corpus = row.alias_expansion ? with_alias : without_alias;
        if (!corpus) {
            corpus = detail::prepare_corpus(papers, aliases, row.alias_expansion, articles);
        }
        results.emplace_back(row, evaluate_row(*corpus, articles, row, opts));
    }
    return results;
}

/// The metadata-combination ladder, all engine features enabled.
inline std::vector<AblationRow> metadata_ablation_rows() {
    auto row = [](std::string label, std::set<Kind> kinds) {
        AblationRow r;
        r.label = std::move(label);
        r.kinds = std::move(kinds);
        return r;
    };
    return {
        row("AuJo", {Kind::Au, Kind::Jo}),
        row("AuJoTi", {Kind::Au, Kind::Jo, Kind::Ti}),
        row("AuJoAf", {Kind::Au, Kind::Jo, Kind::Af}),
        row("AuJoCo", {Kind::Au, Kind::Jo, Kind::Co}),
        row("AuJoAfTiCo", {Kind::Au, Kind::Jo, Kind::Af, Kind::Ti, Kind::Co}),
    };
}

/// The engine-feature ladder over author+journal queries.
inline std::vector<AblationRow> feature_ablation_rows() {
    auto row = [](std::string label, bool alias, bool weights, bool b0, bool decay) {
        AblationRow r;
        r.label = std::move(label);
        r.kinds = {Kind::Au, Kind::Jo};
        r.alias_expansion = alias;
        r.tuned_weights = weights;
        r.author_b_zero = b0;
        r.decay = decay;
        return r;
    };
    return {
        row("baseline-aujo", false, false, false, false),
        row("+alias-names", true, false, false, false),
        row("+subquery-weights", false, true, false, false),
        row("+author-b0", false, false, true, false),
        row("+date-decay", false, false, false, true),
        row("all-features", true, true, true, true),
    };
}

/// The crossref-like head-to-head pair.
inline std::vector<AblationRow> backend_ablation_rows() {
    AblationRow crossref;
    crossref.label = "crossref-like-AuJo";
    crossref.kinds = {Kind::Au, Kind::Jo};
    crossref.tuned_weights = false;
    crossref.author_b_zero = false;
    crossref.decay = false;
    crossref.backend = Backend::CrossrefLike;
    AblationRow main_row;
    main_row.label = "main-AuJoAfTiCo";
    main_row.kinds = {Kind::Au, Kind::Jo, Kind::Af, Kind::Ti, Kind::Co};
    return {crossref, main_row};
}

// ---------------------------------------------------------------------------
// grid search over subquery weights
// ---------------------------------------------------------------------------

struct WeightGrid {
    std::array<std::vector<double>, kKindCount> values;

    static WeightGrid default_grid() {
        WeightGrid g;
        for (auto& v : g.values) v = {0.0, 0.1, 0.2, 0.3, 0.5, 1.0, 1.5, 2.0};
        return g;
    }

    void validate() const {
        for (const auto& v : values) {
            if (v.empty()) throw ValidationError("weight grid must be nonempty for every kind");
            for (double w : v) {
                if (w < 0.0) throw ValidationError("grid weights must be nonnegative");
            }
        }
    }

    size_t combinations() const {
        size_t n = 1;
        for (const auto& v : values) n *= v.size();
        return n;
    }
};

struct GridPoint {
    std::array<double, kKindCount> weights{};
    double top1 = 0.0;
};

struct GridSearchResult {
    std::array<double, kKindCount> best_weights{};
    double best_top1 = 0.0;
    size_t n = 0;
    std::vector<GridPoint> table;
};

/// Exhaustive search over the Cartesian weight grid, maximizing top-1
/// accuracy; ties go to the lexicographically smaller weight vector (in
/// au, jo, af, ti, co order). Candidate score breakdowns are precomputed
/// once per article, and candidates that can never outrank the gold paper
/// under any nonnegative weights are pruned.
inline GridSearchResult grid_search_weights(const std::vector<PaperRecord>& papers,
                                            const JournalAliasTable& aliases,
                                            const std::vector<NewsArticle>& articles,
                                            const WeightGrid& grid, const EvalOptions& opts = {}) {
    grid.validate();
    if (articles.empty()) throw InputError("grid_search_weights needs at least one article");
    detail::PreparedCorpus corpus = detail::prepare_corpus(papers, aliases, true, articles);

    SearchConfig cfg = opts.base;
    cfg.validate();

    struct Rival {
        uint32_t doc;
        FieldScores scaled{};  // date_score * field score, per kind
    };
    struct ArticleCase {
        bool usable = false;
        FieldScores gold_scaled{};
        double gold_date = 1.0;
        uint32_t gold_doc = 0;
        std::vector<Rival> rivals;
    };

    std::vector<ArticleCase> cases(articles.size());
    size_t n_usable = 0;
    for (size_t i = 0; i < articles.size(); ++i) {
        const NewsArticle& art = articles[i];
        auto gold_doc = corpus.index.find(art.gold_paper_id);
        if (art.gold_paper_id.empty() || !gold_doc) continue;
        Query q = query_from_metadata(corpus.metadata[i], all_kinds(), art.release_date);
        if (q.all_empty()) continue;
        ArticleCase& c = cases[i];
        c.usable = true;
        ++n_usable;
        c.gold_doc = *gold_doc;

        auto candidates = detail::score_subqueries(corpus.index, q, cfg);
        FieldScores gold_scores{};
        bool gold_matched = false;
        for (const auto& cand : candidates) {
            if (cand.doc == c.gold_doc) {
                gold_scores = cand.field_scores;
                gold_matched = true;
                break;
            }
        }
        c.gold_date = detail::candidate_date_score(corpus.index, c.gold_doc, q.news_date, cfg.decay);
        for (size_t k = 0; k < kKindCount; ++k) c.gold_scaled[k] = c.gold_date * gold_scores[k];
        if (!gold_matched) {
            // gold never retrieved: a permanent miss, rivals are irrelevant
            c.rivals.clear();
            c.gold_scaled = {};
            c.gold_date = 0.0;
            continue;
        }

        for (const auto& cand : candidates) {
            if (cand.doc == c.gold_doc) continue;
            double ds = detail::candidate_date_score(corpus.index, cand.doc, q.news_date, cfg.decay);
            Rival r;
            r.doc = cand.doc;
            bool any_strict = false;
            bool dominated = true;
            for (size_t k = 0; k < kKindCount; ++k) {
                r.scaled[k] = ds * cand.field_scores[k];
                if (r.scaled[k] == 0.0 && c.gold_scaled[k] == 0.0) continue;
                if (r.scaled[k] < c.gold_scaled[k] * (1.0 - 1e-9)) {
                    any_strict = true;
                } else {
                    dominated = false;
                }
            }
            if (dominated && any_strict) continue;  // can never outrank the gold
            c.rivals.push_back(r);
        }
    }
    if (n_usable == 0) throw InputError("no usable articles: gold papers missing from the corpus");

    GridSearchResult result;
    result.n = n_usable;
    result.table.reserve(grid.combinations());

    std::array<size_t, kKindCount> idx{};
    std::array<double, kKindCount> w{};
    bool first = true;
    while (true) {
        for (size_t k = 0; k < kKindCount; ++k) w[k] = grid.values[k][idx[k]];

        size_t hits = 0;
        for (const auto& c : cases) {
            if (!c.usable) continue;
            if (c.gold_date == 0.0) continue;  // permanent miss
            double gold_final = weighted_score(c.gold_scaled, w);
            if (gold_final < cfg.min_score_threshold) continue;
            bool beaten = false;
            for (const auto& r : c.rivals) {
                double rf = weighted_score(r.scaled, w);
                if (rf < cfg.min_score_threshold) continue;
                if (rf > gold_final || (rf == gold_final && r.doc < c.gold_doc)) {
                    beaten = true;
                    break;
                }
            }
            if (!beaten) ++hits;
        }
        double top1 = static_cast<double>(hits) / static_cast<double>(n_usable);
        result.table.push_back(GridPoint{w, top1});
        if (first || top1 > result.best_top1) {
            // enumeration ascends lexicographically, so the first maximum
            // seen is the lexicographically smallest
            result.best_top1 = top1;
            result.best_weights = w;
            first = false;
        }

        size_t k = kKindCount;
        while (k > 0) {
            --k;
            if (++idx[k] < grid.values[k].size()) break;
            idx[k] = 0;
            if (k == 0) return result;
        }
    }
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

inline std::string render_eval_table(const std::vector<std::pair<AblationRow, EvalResult>>& rows,
                                     const std::vector<int>& ks = {1, 3, 5}) {
    std::string out;
    char line[256];
    std::string header = "configuration        ";
    for (int k : ks) {
        std::snprintf(line, sizeof(line), "  top-%-4d", k);
        header += line;
    }
    header += "  avg-time-s    n\n";
    out += header;
    for (const auto& [row, result] : rows) {
        std::snprintf(line, sizeof(line), "%-21s", row.label.c_str());
        out += line;
        for (int k : ks) {
            auto it = result.accuracy.find(k);
            std::snprintf(line, sizeof(line), "  %8.3f", it == result.accuracy.end() ? 0.0 : it->second);
            out += line;
        }
        std::snprintf(line, sizeof(line), "  %10.6f  %4zu\n", result.mean_latency_s, result.n);
        out += line;
    }
    return out;
}

inline nlohmann::json eval_result_json(const AblationRow& row, const EvalResult& result) {
    nlohmann::json j;
    j["label"] = row.label;
    std::vector<std::string> kinds;
    for (Kind k : kAllKinds) {
        if (row.kinds.count(k)) kinds.emplace_back(kind_name(k));
    }
    j["kinds"] = kinds;
    j["alias_expansion"] = row.alias_expansion;
    j["tuned_weights"] = row.tuned_weights;
    j["author_b_zero"] = row.author_b_zero;
    j["decay"] = row.decay;
    j["backend"] = std::string(backend_name(row.backend));
    nlohmann::json acc = nlohmann::json::object();
    for (const auto& [k, v] : result.accuracy) acc[std::to_string(k)] = v;
    j["accuracy"] = acc;
    j["n"] = result.n;
    j["mean_latency_s"] = result.mean_latency_s;
    j["excluded"] = result.excluded;
    nlohmann::json outcomes = nlohmann::json::array();
    for (const auto& o : result.outcomes) {
        nlohmann::json oj;
        oj["news_id"] = o.news_id;
        oj["gold_paper_id"] = o.gold_paper_id;
        if (o.gold_rank) {
            oj["gold_rank"] = *o.gold_rank;
        } else {
            oj["gold_rank"] = nullptr;
        }
        outcomes.push_back(oj);
    }
    j["outcomes"] = outcomes;
    return j;
}

inline nlohmann::json eval_report_json(const std::vector<std::pair<AblationRow, EvalResult>>& rows) {
    nlohmann::json j;
    j["schema_version"] = 1;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [row, result] : rows) arr.push_back(eval_result_json(row, result));
    j["rows"] = arr;
    return j;
}

inline nlohmann::json grid_report_json(const GridSearchResult& result) {
    auto weights_json = [](const std::array<double, kKindCount>& w) {
        nlohmann::json j = nlohmann::json::object();
        for (Kind k : kAllKinds) j[std::string(kind_name(k))] = w[static_cast<size_t>(k)];
        return j;
    };
    nlohmann::json j;
    j["schema_version"] = 1;
    j["best_weights"] = weights_json(result.best_weights);
    j["best_top1"] = result.best_top1;
    j["n"] = result.n;
    nlohmann::json table = nlohmann::json::array();
    for (const auto& p : result.table) {
        nlohmann::json pj;
        pj["weights"] = weights_json(p.weights);
        pj["top1"] = p.top1;
        table.push_back(pj);
    }
    j["grid"] = table;
    return j;
}

/// Parses an ablation spec: one JSON object per line.
inline std::vector<AblationRow> parse_ablation_spec(std::istream& in) {
    std::vector<AblationRow> rows;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw ParseError("ablation spec line " + std::to_string(lineno) +
                             ": not a JSON object");
        }
        detail::reject_unknown_keys(j,
                                    {"label", "kinds", "alias_expansion", "tuned_weights",
                                     "author_b_zero", "decay", "backend"},
                                    "ablation spec");
        AblationRow row;
        row.label = detail::get_string(j, "label", "ablation spec", true);
        if (auto it = j.find("kinds"); it != j.end()) {
            if (!it->is_array()) throw ParseError("ablation spec: 'kinds' must be an array");
            row.kinds.clear();
            for (const auto& v : *it) {
                auto kind = kind_from_name(v.get<std::string>());
                if (!kind) throw ParseError("ablation spec: unknown kind '" + v.get<std::string>() + "'");
                row.kinds.insert(*kind);
            }
            if (row.kinds.empty()) throw ParseError("ablation spec: 'kinds' must be nonempty");
        }
        auto get_bool = [&](const char* key, bool fallback) {
            auto it = j.find(key);
            if (it == j.end()) return fallback;
            if (!it->is_boolean()) {
                throw ParseError(std::string("ablation spec: '") + key + "' must be a boolean");
            }
            return it->get<bool>();
        };
        row.alias_expansion = get_bool("alias_expansion", true);
        row.tuned_weights = get_bool("tuned_weights", true);
        row.author_b_zero = get_bool("author_b_zero", true);
        row.decay = get_bool("decay", true);
        if (auto it = j.find("backend"); it != j.end()) {
            auto backend = backend_from_name(it->get<std::string>());
            if (!backend) {
                throw ParseError("ablation spec: unknown backend '" + it->get<std::string>() + "'");
            }
            row.backend = *backend;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Parses a weight grid file: a JSON object mapping kind names to arrays.
inline WeightGrid parse_weight_grid(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("weight grid: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("weight grid: expected a JSON object");
    detail::reject_unknown_keys(j, {"au", "jo", "af", "ti", "co"}, "weight grid");
    WeightGrid grid = WeightGrid::default_grid();
    for (Kind k : kAllKinds) {
        auto it = j.find(std::string(kind_name(k)));
        if (it == j.end()) continue;
        if (!it->is_array()) throw ParseError("weight grid: values must be arrays of numbers");
        std::vector<double> values;
        for (const auto& v : *it) {
            if (!v.is_number()) throw ParseError("weight grid: values must be numbers");
            values.push_back(v.get<double>());
        }
        grid.values[static_cast<size_t>(k)] = std::move(values);
    }
    grid.validate();
    return grid;
}

}  // namespace litlink
