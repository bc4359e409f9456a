#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "litlink/corpus.hpp"
#include "litlink/errors.hpp"
#include "litlink/text.hpp"

namespace litlink {

/// The six indexed fields. CONTENT is the per-paper concatenation of
/// title, author names, affiliations, journal name + aliases, and abstract.
enum class Field : uint8_t { Authors = 0, Journal, Affiliations, Title, Abstract, Content };

inline constexpr size_t kFieldCount = 6;

inline constexpr std::array<Field, kFieldCount> kAllFields = {
    Field::Authors, Field::Journal, Field::Affiliations,
    Field::Title,   Field::Abstract, Field::Content};

inline std::string_view field_name(Field f) {
    switch (f) {
        case Field::Authors: return "authors";
        case Field::Journal: return "journal";
        case Field::Affiliations: return "affiliations";
        case Field::Title: return "title";
        case Field::Abstract: return "abstract";
        case Field::Content: return "content";
    }
    return "?";
}

inline std::optional<Field> field_from_name(std::string_view name) {
    for (Field f : kAllFields) {
        if (field_name(f) == name) return f;
    }
    return std::nullopt;
}

/// Token stream a record contributes to one field.
inline TokenStream field_tokens(const PaperRecord& rec, Field f) {
    TokenStream out;
    auto add_all = [&out](const std::vector<std::string>& parts) {
        for (const auto& p : parts) append_tokens(out, p);
    };
    switch (f) {
        case Field::Authors:
            add_all(rec.authors);
            break;
        case Field::Journal:
            append_tokens(out, rec.journal_name);
            add_all(rec.journal_aliases);
            break;
        case Field::Affiliations:
            add_all(rec.affiliations);
            break;
        case Field::Title:
            append_tokens(out, rec.title);
            break;
        case Field::Abstract:
            append_tokens(out, rec.abstract);
            break;
        case Field::Content: {
            append_tokens(out, rec.title);
            add_all(rec.authors);
            add_all(rec.affiliations);
            append_tokens(out, rec.journal_name);
            add_all(rec.journal_aliases);
            append_tokens(out, rec.abstract);
            break;
        }
    }
    return out;
}

struct Posting {
    uint32_t doc = 0;
    uint32_t tf = 0;

    bool operator==(const Posting&) const = default;
};

struct FieldStats {
    uint64_t doc_count = 0;  // N: all documents in the corpus
    double avgdl = 0.0;      // mean length over documents with nonzero length
};

/// Display metadata kept per indexed paper.
struct DocInfo {
    std::string paper_id;
    std::string doi;
    std::string title;
    std::string journal_name;
    Date earliest_date{};
};

/// Immutable per-field inverted index. Documents are stored in ascending
/// paper_id order, so postings lists ascend by paper_id as well. Safe for
/// unlimited concurrent readers once built.
class Index {
  public:
    struct FieldIndex {
        std::map<std::string, std::vector<Posting>> postings;
        std::vector<uint32_t> doc_len;
        double avgdl = 0.0;

        bool operator==(const FieldIndex&) const = default;
    };

    static Index build(std::span<const PaperRecord> records) {
        Index ix;
        std::vector<uint32_t> order(records.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
            return records[a].paper_id < records[b].paper_id;
        });
        ix.docs_.reserve(records.size());
        for (uint32_t src : order) {
            const PaperRecord& rec = records[src];
            if (!ix.id_to_doc_.emplace(rec.paper_id, static_cast<uint32_t>(ix.docs_.size())).second) {
                throw ValidationError("duplicate paper_id '" + rec.paper_id + "'");
            }
            ix.docs_.push_back(
                DocInfo{rec.paper_id, rec.doi, rec.title, rec.journal_name, rec.earliest_date});
        }
        for (size_t fi = 0; fi < kFieldCount; ++fi) {
            FieldIndex& field = ix.fields_[fi];
            field.doc_len.assign(records.size(), 0);
            uint64_t nonzero_docs = 0;
            uint64_t total_len = 0;
            for (uint32_t doc = 0; doc < ix.docs_.size(); ++doc) {
                TokenStream tokens = field_tokens(records[order[doc]], kAllFields[fi]);
                field.doc_len[doc] = static_cast<uint32_t>(tokens.size());
                if (!tokens.empty()) {
                    ++nonzero_docs;
                    total_len += tokens.size();
                }
                std::map<std::string, uint32_t> tf;
                for (auto& t : tokens) ++tf[t];
                for (auto& [term, count] : tf) {
                    field.postings[term].push_back(Posting{doc, count});
                }
            }
            field.avgdl = nonzero_docs == 0
                              ? 0.0
                              : static_cast<double>(total_len) / static_cast<double>(nonzero_docs);
        }
        return ix;
    }

    size_t doc_count() const { return docs_.size(); }

    const DocInfo& doc(uint32_t i) const { return docs_[i]; }

    std::optional<uint32_t> find(std::string_view paper_id) const {
        auto it = id_to_doc_.find(std::string(paper_id));
        if (it == id_to_doc_.end()) return std::nullopt;
        return it->second;
    }

    /// Exact postings for (field, term); empty for unseen terms.
    const std::vector<Posting>& postings(Field f, const std::string& term) const {
        static const std::vector<Posting> kEmpty;
        const auto& m = fields_[static_cast<size_t>(f)].postings;
        auto it = m.find(term);
        return it == m.end() ? kEmpty : it->second;
    }

    size_t doc_frequency(Field f, const std::string& term) const {
        return postings(f, term).size();
    }

    /// Term frequency of `term` in one document's field, 0 if absent.
    uint32_t term_frequency(Field f, const std::string& term, uint32_t doc) const {
        const auto& list = postings(f, term);
        auto it = std::lower_bound(list.begin(), list.end(), doc,
                                   [](const Posting& p, uint32_t d) { return p.doc < d; });
        return (it != list.end() && it->doc == doc) ? it->tf : 0;
    }

    FieldStats field_stats(Field f) const {
        return FieldStats{docs_.size(), fields_[static_cast<size_t>(f)].avgdl};
    }

    uint32_t doc_length(Field f, uint32_t doc) const {
        return fields_[static_cast<size_t>(f)].doc_len[doc];
    }

    const FieldIndex& field_index(Field f) const { return fields_[static_cast<size_t>(f)]; }

    bool same_contents(const Index& other) const {
        return docs_equal(other) && fields_ == other.fields_;
    }

  private:
    bool docs_equal(const Index& other) const {
        if (docs_.size() != other.docs_.size()) return false;
        for (size_t i = 0; i < docs_.size(); ++i) {
            const DocInfo& a = docs_[i];
            const DocInfo& b = other.docs_[i];
            if (a.paper_id != b.paper_id || a.doi != b.doi || a.title != b.title ||
                a.journal_name != b.journal_name || a.earliest_date != b.earliest_date) {
                return false;
            }
        }
        return true;
    }

    std::vector<DocInfo> docs_;
    std::array<FieldIndex, kFieldCount> fields_;
    std::unordered_map<std::string, uint32_t> id_to_doc_;
};

inline Index build_index(std::span<const PaperRecord> records) { return Index::build(records); }

inline Index build_index(const std::vector<PaperRecord>& records) {
    return Index::build(std::span<const PaperRecord>(records));
}

}  // namespace litlink
