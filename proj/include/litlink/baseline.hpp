#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "litlink/ranking.hpp"

namespace litlink {

/// A query under logical-AND semantics with a hard release-date window,
/// emulating CrossRef-style retrieval for head-to-head comparison.
struct AndQuery {
    std::array<TokenStream, kKindCount> subqueries;
    Date news_date{};
    int window_days = 45;

    TokenStream& tokens(Kind k) { return subqueries[static_cast<size_t>(k)]; }
    const TokenStream& tokens(Kind k) const { return subqueries[static_cast<size_t>(k)]; }

    bool all_empty() const {
        for (const auto& s : subqueries) {
            if (!s.empty()) return false;
        }
        return true;
    }
};

inline AndQuery to_and_query(const Query& q, Date fallback_news_date, int window_days = 45) {
    AndQuery a;
    a.subqueries = q.subqueries;
    a.news_date = q.news_date.value_or(fallback_news_date);
    a.window_days = window_days;
    return a;
}

/// Documents matching at least one token of every nonempty subquery in its
/// field AND dated within the window. Ascending by paper_id.
inline std::vector<uint32_t> and_candidate_set(const Index& index, const AndQuery& query) {
    size_t n_docs = index.doc_count();
    std::vector<uint32_t> match_count(n_docs, 0);
    uint32_t required = 0;
    for (Kind k : kAllKinds) {
        const TokenStream& tokens = query.tokens(k);
        if (tokens.empty()) continue;
        ++required;
        std::vector<char> seen(n_docs, 0);
        Field field = kind_field(k);
        for (const auto& term : tokens) {
            for (const Posting& p : index.postings(field, term)) seen[p.doc] = 1;
        }
        for (size_t d = 0; d < n_docs; ++d) match_count[d] += seen[d];
    }
    std::vector<uint32_t> out;
    for (uint32_t doc = 0; doc < n_docs; ++doc) {
        if (match_count[doc] != required) continue;
        long delta = days_apart(index.doc(doc).earliest_date, query.news_date);
        if (delta > query.window_days) continue;
        out.push_back(doc);
    }
    return out;
}

/// AND-semantics retrieval: intersection candidates inside the hard date
/// window, ranked by the unweighted sum of per-field BM25 scores with the
/// stock parameters (k1=1.2, b=0.75 for every field, no decay).
inline std::vector<RankedHit> and_search(const Index& index, const AndQuery& query, int k) {
    if (query.all_empty()) throw InputError("query has no nonempty subquery");
    if (query.window_days <= 0) throw ValidationError("window_days must be > 0");
    if (k < 1) throw ValidationError("k must be >= 1");

    std::vector<uint32_t> candidates = and_candidate_set(index, query);
    constexpr double k1 = 1.2;
    constexpr double b = 0.75;
    double N = static_cast<double>(index.doc_count());

    std::vector<RankedHit> scored;
    scored.reserve(candidates.size());
    struct Entry {
        uint32_t doc;
        FieldScores scores{};
        double sum = 0.0;
    };
    std::vector<Entry> entries;
    entries.reserve(candidates.size());
    for (uint32_t doc : candidates) entries.push_back(Entry{doc});

    for (Kind kind : kAllKinds) {
        size_t ki = static_cast<size_t>(kind);
        const TokenStream& tokens = query.tokens(kind);
        if (tokens.empty()) continue;
        Field field = kind_field(kind);
        const auto& fi = index.field_index(field);
        if (fi.avgdl == 0.0) continue;
        for (const auto& term : tokens) {
            const auto& postings = index.postings(field, term);
            if (postings.empty()) continue;
            double n = static_cast<double>(postings.size());
            double term_idf = std::log(1.0 + (N - n + 0.5) / (n + 0.5));
            for (auto& e : entries) {
                auto it = std::lower_bound(
                    postings.begin(), postings.end(), e.doc,
                    [](const Posting& p, uint32_t d) { return p.doc < d; });
                if (it == postings.end() || it->doc != e.doc) continue;
                double tf = static_cast<double>(it->tf);
                double len = static_cast<double>(fi.doc_len[e.doc]);
                e.scores[ki] += term_idf * (tf * (k1 + 1.0)) /
                                (tf + k1 * (1.0 - b + b * (len / fi.avgdl)));
            }
        }
    }
    for (auto& e : entries) {
        e.sum = weighted_score(e.scores, {1.0, 1.0, 1.0, 1.0, 1.0});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b2) {
        if (a.sum != b2.sum) return a.sum > b2.sum;
        return a.doc < b2.doc;
    });
    if (entries.size() > static_cast<size_t>(k)) entries.resize(k);
    for (size_t i = 0; i < entries.size(); ++i) {
        const Entry& e = entries[i];
        scored.push_back(RankedHit{index.doc(e.doc).paper_id, e.scores, e.sum, 1.0, e.sum,
                                   static_cast<int>(i) + 1});
    }
    return scored;
}

}  // namespace litlink
