#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "litlink/corpus.hpp"
#include "litlink/ranking.hpp"
#include "litlink/text.hpp"

namespace litlink {

enum class EntityKind : uint8_t { Person, Org };

/// An extracted entity with its half-open byte span in the input text.
struct EntityMention {
    std::string surface;
    EntityKind kind = EntityKind::Person;
    size_t begin = 0;
    size_t end = 0;
};

/// A journal mention mapped to its canonical name.
struct JournalMention {
    std::string canonical;
    size_t begin = 0;
    size_t end = 0;
};

/// The five subquery sources pulled from one news article.
struct ExtractedMetadata {
    std::vector<std::string> authors;
    std::vector<std::string> affiliations;
    std::vector<std::string> journals;
    std::string title;
    std::string content_prefix;  // at most 300 tokens of the body
};

/// Seam for swapping in learned extractors. The default implementation is
/// rule- and gazetteer-based; any replacement must honor the same contract.
class ExtractorPlugin {
  public:
    virtual ~ExtractorPlugin() = default;
    /// (contains a journal mention?, confidence in [0,1])
    virtual std::pair<bool, double> classify_sentence(std::string_view sentence) const = 0;
    virtual std::vector<JournalMention> extract_journals(std::string_view sentence) const = 0;
    virtual std::vector<EntityMention> extract_entities(std::string_view text) const = 0;
};

/// Dictionary of journal surface forms (canonical names and aliases) with
/// case- and punctuation-insensitive longest-match lookup.
class JournalGazetteer {
  public:
    /// Registers a surface form for a canonical journal name. On key
    /// collisions a form that is itself canonical wins; remaining ties go
    /// to the lexicographically smaller canonical name.
    void add(const std::string& surface, const std::string& canonical) {
        std::string key = norm_key(surface);
        if (key.empty()) return;
        bool is_canon = norm_key(canonical) == key;
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            entries_.emplace(key, Entry{canonical, is_canon});
        } else if ((is_canon && !it->second.is_canonical) ||
                   (is_canon == it->second.is_canonical && canonical < it->second.canonical)) {
            it->second = Entry{canonical, is_canon};
        }
        size_t tokens = 1 + std::count(key.begin(), key.end(), ' ');
        max_tokens_ = std::max(max_tokens_, tokens);
    }

    void add_table(const JournalAliasTable& table) {
        for (const auto& [issn, entry] : table.entries) add_entry(entry);
        for (const auto& entry : table.unkeyed) add_entry(entry);
    }

    static JournalGazetteer from_corpus(std::span<const PaperRecord> records,
                                        const JournalAliasTable* supplemental = nullptr) {
        JournalGazetteer g;
        for (const auto& r : records) {
            g.add(r.journal_name, r.journal_name);
            for (const auto& a : r.journal_aliases) g.add(a, r.journal_name);
        }
        if (supplemental) g.add_table(*supplemental);
        return g;
    }

    bool empty() const { return entries_.empty(); }
    size_t size() const { return entries_.size(); }

    const std::string* lookup(std::string_view surface) const {
        auto it = entries_.find(norm_key(surface));
        return it == entries_.end() ? nullptr : &it->second.canonical;
    }

    /// Longest non-overlapping matches, greedy left to right.
    std::vector<JournalMention> find(std::string_view text) const {
        std::vector<JournalMention> out;
        if (entries_.empty()) return out;
        auto tokens = scan_tokens(text);
        std::vector<std::string> lower;
        lower.reserve(tokens.size());
        for (const auto& t : tokens) lower.push_back(to_lower_ascii(t.text));
        size_t i = 0;
        while (i < tokens.size()) {
            size_t max_len = std::min(max_tokens_, tokens.size() - i);
            bool matched = false;
            for (size_t len = max_len; len >= 1; --len) {
                std::string key = lower[i];
                for (size_t j = 1; j < len; ++j) {
                    key.push_back(' ');
                    key += lower[i + j];
                }
                auto it = entries_.find(key);
                if (it != entries_.end()) {
                    out.push_back(JournalMention{it->second.canonical, tokens[i].begin,
                                                 tokens[i + len - 1].end});
                    i += len;
                    matched = true;
                    break;
                }
            }
            if (!matched) ++i;
        }
        return out;
    }

  private:
    struct Entry {
        std::string canonical;
        bool is_canonical = false;
    };

    void add_entry(const JournalAliasTable::Entry& entry) {
        add(entry.canonical, entry.canonical);
        for (const auto& a : entry.aliases) add(a, entry.canonical);
    }

    std::map<std::string, Entry> entries_;
    size_t max_tokens_ = 0;
};

namespace detail {

inline bool is_sentence_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

inline bool is_closing_mark(char c) {
    return c == '"' || c == '\'' || c == ')' || c == ']';
}

inline const std::set<std::string>& abbreviation_guards() {
    static const std::set<std::string> guards = {
        "dr",  "prof", "mr",  "mrs", "ms",  "st",  "sr",   "jr",   "vs",  "etc", "eg",
        "ie",  "al",   "fig", "figs", "no",  "vol", "dept", "univ", "inc", "ltd",
        "jan", "feb",  "mar", "apr", "jun", "jul", "aug",  "sep",  "sept", "oct",
        "nov", "dec",  "approx"};
    return guards;
}

}  // namespace detail

/// Rule-based sentence splitting on terminal punctuation, guarded against
/// common abbreviations and single-letter initials. The concatenation of
/// the returned sentences reproduces the input up to whitespace.
inline std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> out;
    size_t start = 0;
    size_t i = 0;
    auto flush = [&](size_t end) {
        while (start < end && is_ascii_space(text[start])) ++start;
        size_t stop = end;
        while (stop > start && is_ascii_space(text[stop - 1])) --stop;
        if (stop > start) out.emplace_back(text.substr(start, stop - start));
        start = end;
    };
    while (i < text.size()) {
        char c = text[i];
        if (!detail::is_sentence_terminal(c)) {
            ++i;
            continue;
        }
        // consume the run of terminals plus closing quotes/brackets
        size_t run_end = i;
        while (run_end < text.size() &&
               (detail::is_sentence_terminal(text[run_end]) ||
                detail::is_closing_mark(text[run_end]))) {
            ++run_end;
        }
        bool boundary = true;
        if (c == '.') {
            // word immediately before the period
            size_t w_end = i;
            size_t w_begin = w_end;
            while (w_begin > start && (is_ascii_alnum(text[w_begin - 1]) ||
                                       static_cast<unsigned char>(text[w_begin - 1]) >= 0x80)) {
                --w_begin;
            }
            std::string_view word = text.substr(w_begin, w_end - w_begin);
            if (word.size() == 1 && word[0] >= 'A' && word[0] <= 'Z') {
                boundary = false;  // an initial such as "A."
            } else if (detail::abbreviation_guards().count(to_lower_ascii(word))) {
                boundary = false;
            }
        }
        if (boundary) {
            // require whitespace (or end of text) after the punctuation run,
            // then an uppercase letter, digit, or opening mark
            if (run_end < text.size() && !is_ascii_space(text[run_end])) {
                boundary = false;
            } else {
                size_t next = run_end;
                while (next < text.size() && is_ascii_space(text[next])) ++next;
                if (next < text.size()) {
                    unsigned char c2 = text[next];
                    bool starts_sentence = (c2 >= 'A' && c2 <= 'Z') || (c2 >= '0' && c2 <= '9') ||
                                           c2 >= 0x80 || c2 == '"' || c2 == '\'' || c2 == '(' ||
                                           c2 == '[';
                    if (!starts_sentence) boundary = false;
                }
            }
        }
        if (boundary) {
            flush(run_end);
            i = run_end;
        } else {
            i = run_end > i ? run_end : i + 1;
        }
    }
    flush(text.size());
    return out;
}

namespace detail {

inline const std::vector<std::string>& journal_cue_words() {
    // single-token cues; "appears in" is handled as a bigram
    static const std::vector<std::string> cues = {"journal", "published", "publish", "report",
                                                  "reported", "write",    "wrote",   "study"};
    return cues;
}

inline bool has_journal_cue(const TokenStream& tokens) {
    const auto& cues = journal_cue_words();
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (std::find(cues.begin(), cues.end(), tokens[i]) != cues.end()) return true;
        if (tokens[i] == "appears" && i + 1 < tokens.size() && tokens[i + 1] == "in") return true;
    }
    return false;
}

}  // namespace detail

/// Default journal-sentence filter: confidence 1.0 on a gazetteer match,
/// 0.6 on a cue word alone, 0.0 otherwise.
inline std::pair<bool, double> is_journal_sentence(std::string_view sentence,
                                                   const JournalGazetteer& gazetteer) {
    if (!gazetteer.find(sentence).empty()) return {true, 1.0};
    if (detail::has_journal_cue(tokenize(sentence))) return {true, 0.6};
    return {false, 0.0};
}

/// Default journal NER: longest non-overlapping gazetteer matches mapped
/// to canonical names.
inline std::vector<JournalMention> extract_journal_names(std::string_view sentence,
                                                         const JournalGazetteer& gazetteer) {
    return gazetteer.find(sentence);
}

namespace detail {

inline const std::set<std::string>& honorifics() {
    static const std::set<std::string> h = {"Dr", "Prof", "Professor", "Mr", "Mrs",
                                            "Ms", "Sir",  "Dame"};
    return h;
}

inline const std::set<std::string>& person_pre_cues() {
    static const std::set<std::string> c = {"said", "says",   "told",       "added",
                                            "by",   "author", "researcher", "coauthor"};
    return c;
}

inline const std::set<std::string>& person_post_cues() {
    static const std::set<std::string> c = {"said", "says", "told", "added",
                                            "wrote", "explained", "noted", "who"};
    return c;
}

inline const std::set<std::string>& org_suffixes() {
    static const std::set<std::string> s = {
        "University", "Institute", "Institutes", "Hospital",   "Center",  "Centre",
        "College",    "School",    "Laboratory", "Clinic",     "Foundation",
        "Academy",    "Department"};
    return s;
}

inline const std::set<std::string>& org_connectors() {
    static const std::set<std::string> c = {"of", "for", "and", "the"};
    return c;
}

inline const std::set<std::string>& run_start_skips() {
    static const std::set<std::string> s = {
        "The",  "A",     "An",   "In",    "On",   "At",   "By",         "For",     "This",
        "These", "Those", "But",  "And",   "It",   "He",   "She",        "They",    "We",
        "Their", "Its",   "However", "Meanwhile", "According", "After", "Before", "During",
        "Researchers", "Scientists", "One", "Two"};
    return s;
}

inline bool is_capitalized(const std::string& token) {
    return !token.empty() && token[0] >= 'A' && token[0] <= 'Z';
}

/// True when the raw text between two adjacent tokens contains punctuation
/// that should stop a capitalized run. Periods are tolerated after a
/// single-letter initial or an honorific ("Ada M. Lovelace", "Dr. Doe").
inline bool gap_breaks_run(std::string_view text, const RawToken& prev, const RawToken& next) {
    bool initial_like = (prev.text.size() == 1 && is_capitalized(prev.text)) ||
                        honorifics().count(prev.text) > 0;
    for (size_t i = prev.end; i < next.begin; ++i) {
        char c = text[i];
        if (c == ',' || c == ';' || c == ':' || c == '!' || c == '?' || c == '"' || c == '(' ||
            c == ')' || c == '[' || c == ']') {
            return true;
        }
        if (c == '.' && !initial_like) return true;
    }
    return false;
}

}  // namespace detail

/// Default entity extraction: capitalized token runs classified via
/// honorific/verb cues (PERSON) and organization suffixes (ORG). Recall is
/// favored over precision, so bare two-to-four-token capitalized runs are
/// emitted as PERSON even without a cue.
inline std::vector<EntityMention> extract_entities(std::string_view text) {
    using namespace detail;
    std::vector<EntityMention> out;
    auto tokens = scan_tokens(text);
    size_t n = tokens.size();

    auto emit = [&](size_t first, size_t last, EntityKind kind) {
        size_t begin = tokens[first].begin;
        size_t end = tokens[last].end;
        out.push_back(EntityMention{std::string(text.substr(begin, end - begin)), kind, begin, end});
    };

    size_t i = 0;
    while (i < n) {
        const std::string& tok = tokens[i].text;
        if (honorifics().count(tok) && i + 1 < n && is_capitalized(tokens[i + 1].text)) {
            size_t j = i + 1;
            size_t count = 0;
            while (j < n && count < 4 && is_capitalized(tokens[j].text) &&
                   !honorifics().count(tokens[j].text) && !org_suffixes().count(tokens[j].text)) {
                if (count > 0 && gap_breaks_run(text, tokens[j - 1], tokens[j])) break;
                ++j;
                ++count;
            }
            if (count > 0) emit(i + 1, j - 1, EntityKind::Person);
            i = j;
            continue;
        }
        if (is_capitalized(tok) && !run_start_skips().count(tok) && !honorifics().count(tok)) {
            size_t j = i;
            size_t last_cap = i;
            bool has_org = false;
            while (j < n) {
                const std::string& t = tokens[j].text;
                if (j > i && gap_breaks_run(text, tokens[j - 1], tokens[j])) break;
                if (honorifics().count(t)) break;
                if (is_capitalized(t)) {
                    if (org_suffixes().count(t)) has_org = true;
                    last_cap = j;
                    ++j;
                    continue;
                }
                // connectors only extend organization names
                if (has_org && org_connectors().count(to_lower_ascii(t)) && j + 1 < n &&
                    is_capitalized(tokens[j + 1].text)) {
                    ++j;
                    continue;
                }
                break;
            }
            size_t cap_count = 0;
            for (size_t k = i; k <= last_cap; ++k) {
                if (is_capitalized(tokens[k].text)) ++cap_count;
            }
            if (has_org) {
                emit(i, last_cap, EntityKind::Org);
            } else {
                bool pre_cue = i > 0 && person_pre_cues().count(to_lower_ascii(tokens[i - 1].text));
                bool post_cue = last_cap + 1 < n &&
                                person_post_cues().count(to_lower_ascii(tokens[last_cap + 1].text));
                if (pre_cue || post_cue || (cap_count >= 2 && cap_count <= 4)) {
                    emit(i, last_cap, EntityKind::Person);
                }
            }
            i = last_cap + 1;
            continue;
        }
        ++i;
    }
    return out;
}

/// The default rule/gazetteer extractor behind the plugin seam.
class RuleBasedExtractor : public ExtractorPlugin {
  public:
    explicit RuleBasedExtractor(const JournalGazetteer& gazetteer) : gazetteer_(&gazetteer) {}

    std::pair<bool, double> classify_sentence(std::string_view sentence) const override {
        return is_journal_sentence(sentence, *gazetteer_);
    }

    std::vector<JournalMention> extract_journals(std::string_view sentence) const override {
        return extract_journal_names(sentence, *gazetteer_);
    }

    std::vector<EntityMention> extract_entities(std::string_view text) const override {
        return litlink::extract_entities(text);
    }

  private:
    const JournalGazetteer* gazetteer_;
};

namespace detail {

inline void dedupe_case_folded(std::vector<std::string>& items) {
    std::set<std::string> seen;
    std::vector<std::string> out;
    for (auto& s : items) {
        if (seen.insert(to_lower_ascii(s)).second) out.push_back(std::move(s));
    }
    items = std::move(out);
}

}  // namespace detail

/// Body prefix covering at most `limit` tokens under the index tokenizer.
inline std::string content_prefix(std::string_view body, size_t limit = 300) {
    auto tokens = scan_tokens(body);
    if (tokens.size() <= limit) return std::string(body);
    return std::string(body.substr(0, tokens[limit - 1].end));
}

/// Runs the full extraction pipeline on one article: sentence split,
/// journal-sentence filter, journal NER on filtered sentences, entity
/// extraction on the whole body.
inline ExtractedMetadata extract_metadata(const NewsArticle& news, const ExtractorPlugin& plugin) {
    ExtractedMetadata meta;
    meta.title = news.title;
    meta.content_prefix = content_prefix(news.body);
    for (const auto& sentence : split_sentences(news.body)) {
        if (!plugin.classify_sentence(sentence).first) continue;
        for (auto& mention : plugin.extract_journals(sentence)) {
            meta.journals.push_back(std::move(mention.canonical));
        }
    }
    for (auto& entity : plugin.extract_entities(news.body)) {
        if (entity.kind == EntityKind::Person) {
            meta.authors.push_back(std::move(entity.surface));
        } else {
            meta.affiliations.push_back(std::move(entity.surface));
        }
    }
    detail::dedupe_case_folded(meta.authors);
    detail::dedupe_case_folded(meta.affiliations);
    detail::dedupe_case_folded(meta.journals);
    return meta;
}

/// Assembles the retrieval query for the enabled subquery kinds.
inline Query query_from_metadata(const ExtractedMetadata& meta, const std::set<Kind>& enabled,
                                 std::optional<Date> news_date) {
    Query q;
    q.news_date = news_date;
    auto fill = [&](Kind k, const std::vector<std::string>& parts) {
        if (!enabled.count(k)) return;
        for (const auto& p : parts) append_tokens(q.tokens(k), p);
    };
    fill(Kind::Au, meta.authors);
    fill(Kind::Jo, meta.journals);
    fill(Kind::Af, meta.affiliations);
    if (enabled.count(Kind::Ti)) append_tokens(q.tokens(Kind::Ti), meta.title);
    if (enabled.count(Kind::Co)) append_tokens(q.tokens(Kind::Co), meta.content_prefix);
    return q;
}

inline const std::set<Kind>& all_kinds() {
    static const std::set<Kind> kinds = {Kind::Au, Kind::Jo, Kind::Af, Kind::Ti, Kind::Co};
    return kinds;
}

/// extract_metadata + query_from_metadata. Errors if every enabled
/// subquery came out empty.
inline Query build_query(const NewsArticle& news, const JournalGazetteer& gazetteer,
                         const ExtractorPlugin& plugin, const std::set<Kind>& enabled) {
    (void)gazetteer;  // the plugin owns the gazetteer reference
    ExtractedMetadata meta = extract_metadata(news, plugin);
    Query q = query_from_metadata(meta, enabled, news.release_date);
    if (q.all_empty()) {
        throw InputError("article '" + news.news_id + "': no extractable metadata for the enabled subqueries");
    }
    return q;
}

inline Query build_query(const NewsArticle& news, const JournalGazetteer& gazetteer,
                         const std::set<Kind>& enabled = all_kinds()) {
    RuleBasedExtractor plugin(gazetteer);
    return build_query(news, gazetteer, plugin, enabled);
}

}  // namespace litlink
