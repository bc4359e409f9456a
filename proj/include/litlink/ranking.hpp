#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "litlink/index.hpp"

namespace litlink {

/// The five metadata subquery kinds: authors, journal, affiliations,
/// title, and news content.
enum class Kind : uint8_t { Au = 0, Jo, Af, Ti, Co };

inline constexpr size_t kKindCount = 5;

inline constexpr std::array<Kind, kKindCount> kAllKinds = {Kind::Au, Kind::Jo, Kind::Af, Kind::Ti,
                                                           Kind::Co};

inline std::string_view kind_name(Kind k) {
    switch (k) {
        case Kind::Au: return "au";
        case Kind::Jo: return "jo";
        case Kind::Af: return "af";
        case Kind::Ti: return "ti";
        case Kind::Co: return "co";
    }
    return "?";
}

inline std::optional<Kind> kind_from_name(std::string_view name) {
    for (Kind k : kAllKinds) {
        if (kind_name(k) == name) return k;
    }
    return std::nullopt;
}

/// Field each subquery kind is scored against.
inline Field kind_field(Kind k) {
    switch (k) {
        case Kind::Au: return Field::Authors;
        case Kind::Jo: return Field::Journal;
        case Kind::Af: return Field::Affiliations;
        case Kind::Ti: return Field::Title;
        case Kind::Co: return Field::Content;
    }
    return Field::Content;
}

/// Exponential date-decay parameters: score 1 within offset_days of the
/// news date, decay_at_half_life after a further half_life_days.
struct DecayConfig {
    int offset_days = 7;
    int half_life_days = 180;
    double decay_at_half_life = 0.5;
    bool enabled = true;

    void validate() const {
        if (offset_days < 0) throw ValidationError("decay.offset_days must be >= 0");
        if (half_life_days <= 0) throw ValidationError("decay.half_life_days must be > 0");
        if (!(decay_at_half_life > 0.0 && decay_at_half_life < 1.0)) {
            throw ValidationError("decay.decay_at_half_life must be in (0,1)");
        }
    }

    bool operator==(const DecayConfig&) const = default;
};

/// All ranking tunables. Defaults are the tuned settings: subquery weights
/// au=1, jo=1.5, af=0.3, ti=0.3, co=0.2, and b=0 for the author field.
struct SearchConfig {
    double k1 = 1.2;
    std::array<double, kFieldCount> b_per_field = {0.0, 0.75, 0.75, 0.75, 0.75, 0.75};
    std::array<double, kKindCount> weights = {1.0, 1.5, 0.3, 0.3, 0.2};
    DecayConfig decay;
    double min_score_threshold = 0.0;  // 0 disables the threshold
    int top_k = 10;

    double b(Field f) const { return b_per_field[static_cast<size_t>(f)]; }
    double& b(Field f) { return b_per_field[static_cast<size_t>(f)]; }
    double weight(Kind k) const { return weights[static_cast<size_t>(k)]; }
    double& weight(Kind k) { return weights[static_cast<size_t>(k)]; }

    void validate() const {
        if (k1 < 0.0) throw ValidationError("k1 must be >= 0");
        for (double b : b_per_field) {
            if (!(b >= 0.0 && b <= 1.0)) throw ValidationError("b must be in [0,1]");
        }
        for (double w : weights) {
            if (w < 0.0) throw ValidationError("weights must be nonnegative");
        }
        if (min_score_threshold < 0.0) throw ValidationError("min_score_threshold must be >= 0");
        if (top_k < 1) throw ValidationError("top_k must be >= 1");
        decay.validate();
    }

    bool operator==(const SearchConfig&) const = default;
};

/// A news-derived search request: one token stream per subquery kind.
struct Query {
    std::array<TokenStream, kKindCount> subqueries;
    std::optional<Date> news_date;

    TokenStream& tokens(Kind k) { return subqueries[static_cast<size_t>(k)]; }
    const TokenStream& tokens(Kind k) const { return subqueries[static_cast<size_t>(k)]; }

    bool all_empty() const {
        for (const auto& s : subqueries) {
            if (!s.empty()) return false;
        }
        return true;
    }
};

/// Raw per-subquery BM25 scores, indexed by Kind.
using FieldScores = std::array<double, kKindCount>;

struct RankedHit {
    std::string paper_id;
    FieldScores field_scores{};
    double weighted_score = 0.0;
    double date_score = 1.0;
    double final_score = 0.0;
    int rank = 0;
};

/// IDF(q) = ln(1 + (N - n + 0.5) / (n + 0.5)); strictly positive, maximal
/// for unseen terms.
inline double idf(const Index& index, Field field, const std::string& term) {
    double N = static_cast<double>(index.field_stats(field).doc_count);
    double n = static_cast<double>(index.doc_frequency(field, term));
    return std::log(1.0 + (N - n + 0.5) / (n + 0.5));
}

/// BM25 score of one document's field against a token stream. Each query
/// token is one summand, so repeated tokens contribute repeatedly.
inline double bm25_score(const Index& index, Field field, const TokenStream& query,
                         const std::string& paper_id, double k1, double b) {
    auto doc = index.find(paper_id);
    if (!doc) throw LookupError("unknown paper_id '" + paper_id + "'");
    double avgdl = index.field_stats(field).avgdl;
    if (avgdl == 0.0) return 0.0;
    double len = static_cast<double>(index.doc_length(field, *doc));
    double score = 0.0;
    for (const auto& term : query) {
        double tf = static_cast<double>(index.term_frequency(field, term, *doc));
        if (tf == 0.0) continue;
        score += idf(index, field, term) * (tf * (k1 + 1.0)) /
                 (tf + k1 * (1.0 - b + b * (len / avgdl)));
    }
    return score;
}

/// Exponential decay on the publication/news date gap: exactly 1 within
/// offset_days, decay_at_half_life^m at offset + m half-lives.
inline double date_score(const Date& paper_date, const Date& news_date, const DecayConfig& cfg) {
    if (!cfg.enabled) return 1.0;
    long delta = days_apart(paper_date, news_date);
    long past_offset = std::max(0L, delta - cfg.offset_days);
    return std::exp(std::log(cfg.decay_at_half_life) / cfg.half_life_days *
                    static_cast<double>(past_offset));
}

/// Weighted linear combination over subquery kinds, in fixed Kind order.
inline double weighted_score(const FieldScores& scores, const std::array<double, kKindCount>& weights) {
    double acc = 0.0;
    for (size_t k = 0; k < kKindCount; ++k) acc += weights[k] * scores[k];
    return acc;
}

inline double weighted_score(const std::map<Kind, double>& scores,
                             const std::map<Kind, double>& weights) {
    FieldScores s{};
    std::array<double, kKindCount> w{};
    for (const auto& [k, v] : scores) s[static_cast<size_t>(k)] = v;
    for (const auto& [k, v] : weights) w[static_cast<size_t>(k)] = v;
    return weighted_score(s, w);
}

namespace detail {

/// Per-candidate scoring state shared by search() and the ranking step.
struct Candidate {
    uint32_t doc = 0;
    FieldScores field_scores{};
};

inline double candidate_date_score(const Index& index, uint32_t doc,
                                   const std::optional<Date>& news_date, const DecayConfig& decay) {
    if (!news_date) return 1.0;  // no news date: decay treated as disabled
    return date_score(index.doc(doc).earliest_date, *news_date, decay);
}

inline std::vector<RankedHit> rank_candidates(const Index& index,
                                              const std::vector<Candidate>& candidates,
                                              const std::optional<Date>& news_date,
                                              const SearchConfig& cfg, bool apply_decay_config) {
    struct Scored {
        uint32_t doc;
        FieldScores field_scores;
        double weighted;
        double date;
        double final_score;
    };
    std::vector<Scored> scored;
    scored.reserve(candidates.size());
    for (const auto& c : candidates) {
        double w = weighted_score(c.field_scores, cfg.weights);
        double d = apply_decay_config ? candidate_date_score(index, c.doc, news_date, cfg.decay) : 1.0;
        double f = d * w;
        if (f < cfg.min_score_threshold) continue;
        scored.push_back(Scored{c.doc, c.field_scores, w, d, f});
    }
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.final_score != b.final_score) return a.final_score > b.final_score;
        return a.doc < b.doc;  // docs ascend by paper_id
    });
    if (scored.size() > static_cast<size_t>(cfg.top_k)) scored.resize(cfg.top_k);
    std::vector<RankedHit> hits;
    hits.reserve(scored.size());
    for (size_t i = 0; i < scored.size(); ++i) {
        const Scored& s = scored[i];
        hits.push_back(RankedHit{index.doc(s.doc).paper_id, s.field_scores, s.weighted, s.date,
                                 s.final_score, static_cast<int>(i) + 1});
    }
    return hits;
}

}  // namespace detail

/// Documents matching at least one subquery token in the corresponding
/// field (OR semantics), ascending by paper_id.
inline std::vector<uint32_t> candidate_set(const Index& index, const Query& query) {
    std::vector<char> touched(index.doc_count(), 0);
    for (Kind k : kAllKinds) {
        Field field = kind_field(k);
        for (const auto& term : query.tokens(k)) {
            for (const Posting& p : index.postings(field, term)) touched[p.doc] = 1;
        }
    }
    std::vector<uint32_t> out;
    for (uint32_t doc = 0; doc < touched.size(); ++doc) {
        if (touched[doc]) out.push_back(doc);
    }
    return out;
}

namespace detail {

/// Term-at-a-time BM25 accumulation over the candidate union: every
/// document matching at least one subquery token, with its raw per-field
/// scores. Candidates come out in ascending paper_id order.
inline std::vector<Candidate> score_subqueries(const Index& index, const Query& query,
                                               const SearchConfig& cfg) {
    size_t n_docs = index.doc_count();
    std::array<std::vector<double>, kKindCount> scores;
    std::vector<char> touched(n_docs, 0);
    for (Kind k : kAllKinds) {
        size_t ki = static_cast<size_t>(k);
        const TokenStream& tokens = query.tokens(k);
        if (tokens.empty()) continue;
        Field field = kind_field(k);
        const auto& fi = index.field_index(field);
        if (fi.avgdl == 0.0) continue;  // field empty corpus-wide: unscorable
        scores[ki].assign(n_docs, 0.0);
        double k1 = cfg.k1;
        double b = cfg.b(field);
        double N = static_cast<double>(n_docs);
        double avgdl = fi.avgdl;
        for (const auto& term : tokens) {
            const auto& postings = index.postings(field, term);
            if (postings.empty()) continue;
            double n = static_cast<double>(postings.size());
            double term_idf = std::log(1.0 + (N - n + 0.5) / (n + 0.5));
            for (const Posting& p : postings) {
                double tf = static_cast<double>(p.tf);
                double len = static_cast<double>(fi.doc_len[p.doc]);
                scores[ki][p.doc] += term_idf * (tf * (k1 + 1.0)) /
                                     (tf + k1 * (1.0 - b + b * (len / avgdl)));
                touched[p.doc] = 1;
            }
        }
    }

    std::vector<Candidate> candidates;
    for (uint32_t doc = 0; doc < n_docs; ++doc) {
        if (!touched[doc]) continue;
        Candidate c;
        c.doc = doc;
        for (size_t ki = 0; ki < kKindCount; ++ki) {
            c.field_scores[ki] = scores[ki].empty() ? 0.0 : scores[ki][doc];
        }
        candidates.push_back(c);
    }
    return candidates;
}

}  // namespace detail

/// Weighted multi-field retrieval: per-field BM25 over the candidate union,
/// combined with subquery weights, multiplied by the date-decay score.
/// Deterministic: descending final score, ties broken by ascending paper_id.
inline std::vector<RankedHit> search(const Index& index, const Query& query,
                                     const SearchConfig& cfg) {
    if (query.all_empty()) throw InputError("query has no nonempty subquery");
    cfg.validate();
    if (index.doc_count() == 0) return {};
    std::vector<detail::Candidate> candidates = detail::score_subqueries(index, query, cfg);
    return detail::rank_candidates(index, candidates, query.news_date, cfg, true);
}

/// Reference implementation of search(): scores every record directly,
/// without the inverted index. Intended as an equivalence oracle on small
/// corpora (at most 10,000 records).
inline std::vector<RankedHit> brute_force_search(std::span<const PaperRecord> records,
                                                 const Query& query, const SearchConfig& cfg) {
    if (query.all_empty()) throw InputError("query has no nonempty subquery");
    cfg.validate();
    if (records.size() > 10'000) {
        throw InputError("brute_force_search is limited to 10,000 records");
    }

    // Field text baked from the record, independent of the index builder.
    auto own_field_tokens = [](const PaperRecord& r, Field f) {
        TokenStream t;
        auto add = [&t](const std::string& s) { append_tokens(t, s); };
        auto add_all = [&add](const std::vector<std::string>& v) {
            for (const auto& s : v) add(s);
        };
        switch (f) {
            case Field::Authors: add_all(r.authors); break;
            case Field::Journal:
                add(r.journal_name);
                add_all(r.journal_aliases);
                break;
            case Field::Affiliations: add_all(r.affiliations); break;
            case Field::Title: add(r.title); break;
            case Field::Abstract: add(r.abstract); break;
            case Field::Content:
                add(r.title);
                add_all(r.authors);
                add_all(r.affiliations);
                add(r.journal_name);
                add_all(r.journal_aliases);
                add(r.abstract);
                break;
        }
        return t;
    };

    // Records in ascending paper_id order, mirroring index doc order.
    std::vector<const PaperRecord*> docs;
    docs.reserve(records.size());
    for (const auto& r : records) docs.push_back(&r);
    std::sort(docs.begin(), docs.end(),
              [](const PaperRecord* a, const PaperRecord* b) { return a->paper_id < b->paper_id; });
    for (size_t i = 1; i < docs.size(); ++i) {
        if (docs[i]->paper_id == docs[i - 1]->paper_id) {
            throw ValidationError("duplicate paper_id '" + docs[i]->paper_id + "'");
        }
    }

    size_t n_docs = docs.size();
    struct DocField {
        std::map<std::string, uint32_t> tf;
        double len = 0.0;
    };
    // Per kind: per-doc term counts, avgdl, and term document frequencies.
    std::array<std::vector<DocField>, kKindCount> fields;
    std::array<double, kKindCount> avgdl{};
    for (Kind k : kAllKinds) {
        size_t ki = static_cast<size_t>(k);
        if (query.tokens(k).empty()) continue;
        auto& per_doc = fields[ki];
        per_doc.resize(n_docs);
        uint64_t total = 0;
        uint64_t nonzero = 0;
        for (size_t d = 0; d < n_docs; ++d) {
            TokenStream tokens = own_field_tokens(*docs[d], kind_field(k));
            per_doc[d].len = static_cast<double>(tokens.size());
            for (auto& t : tokens) ++per_doc[d].tf[t];
            if (!tokens.empty()) {
                ++nonzero;
                total += tokens.size();
            }
        }
        avgdl[ki] = nonzero == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(nonzero);
    }

    auto doc_frequency = [&](size_t ki, const std::string& term) {
        size_t n = 0;
        for (const auto& df : fields[ki]) {
            if (df.tf.count(term)) ++n;
        }
        return n;
    };

    struct Entry {
        FieldScores scores{};
        bool matched = false;
    };
    std::vector<Entry> entries(n_docs);
    double N = static_cast<double>(n_docs);
    for (Kind k : kAllKinds) {
        size_t ki = static_cast<size_t>(k);
        const TokenStream& tokens = query.tokens(k);
        if (tokens.empty() || avgdl[ki] == 0.0) continue;
        double k1 = cfg.k1;
        double b = cfg.b(kind_field(k));
        for (const auto& term : tokens) {
            size_t df = doc_frequency(ki, term);
            if (df == 0) continue;
            double n = static_cast<double>(df);
            double term_idf = std::log(1.0 + (N - n + 0.5) / (n + 0.5));
            for (size_t d = 0; d < n_docs; ++d) {
                auto it = fields[ki][d].tf.find(term);
                if (it == fields[ki][d].tf.end()) continue;
                double tf = static_cast<double>(it->second);
                double len = fields[ki][d].len;
                entries[d].scores[ki] += term_idf * (tf * (k1 + 1.0)) /
                                         (tf + k1 * (1.0 - b + b * (len / avgdl[ki])));
                entries[d].matched = true;
            }
        }
    }

    struct Scored {
        size_t doc;
        FieldScores field_scores;
        double weighted;
        double date;
        double final_score;
    };
    std::vector<Scored> scored;
    for (size_t d = 0; d < n_docs; ++d) {
        if (!entries[d].matched) continue;
        double w = weighted_score(entries[d].scores, cfg.weights);
        double ds = 1.0;
        if (query.news_date) ds = date_score(docs[d]->earliest_date, *query.news_date, cfg.decay);
        double f = ds * w;
        if (f < cfg.min_score_threshold) continue;
        scored.push_back(Scored{d, entries[d].scores, w, ds, f});
    }
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.final_score != b.final_score) return a.final_score > b.final_score;
        return a.doc < b.doc;
    });
    if (scored.size() > static_cast<size_t>(cfg.top_k)) scored.resize(cfg.top_k);
    std::vector<RankedHit> hits;
    for (size_t i = 0; i < scored.size(); ++i) {
        const Scored& s = scored[i];
        hits.push_back(RankedHit{docs[s.doc]->paper_id, s.field_scores, s.weighted, s.date,
                                 s.final_score, static_cast<int>(i) + 1});
    }
    return hits;
}

}  // namespace litlink
