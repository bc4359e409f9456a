#pragma once

// Shared fixture builders for the test suites.

#include <random>
#include <string>
#include <vector>

#include "litlink/corpus.hpp"

namespace litlink::testing {

struct RecordSpec {
    std::string paper_id;
    std::string title;
    std::string abstract;
    std::string journal = "Journal of Tests";
    std::vector<std::string> aliases;
    std::vector<std::string> authors;
    std::vector<std::string> affiliations;
    Date earliest = make_date(2020, 6, 1);
};

inline PaperRecord make_record(RecordSpec spec) {
    PaperRecord rec;
    rec.paper_id = std::move(spec.paper_id);
    rec.title = std::move(spec.title);
    rec.abstract = std::move(spec.abstract);
    rec.journal_name = std::move(spec.journal);
    rec.journal_aliases = std::move(spec.aliases);
    rec.authors = std::move(spec.authors);
    rec.affiliations = std::move(spec.affiliations);
    rec.dates.online_pub = DateEntry{spec.earliest};
    rec.earliest_date = resolve_earliest_date(rec.dates);
    return rec;
}

/// Small random corpus with overlapping vocabulary, for property tests.
inline std::vector<PaperRecord> random_corpus(std::mt19937_64& rng, size_t n) {
    static const std::vector<std::string> vocab = {
        "cardiac", "tumor",   "immune",  "neural",  "glucose", "insulin", "study",
        "trial",   "cohort",  "risk",    "cells",   "protein", "gene",    "brain",
        "heart",   "cancer",  "therapy", "vaccine", "omega",   "naïve"};
    static const std::vector<std::string> first = {"Jane", "Wei", "Ada", "Omar", "Lena", "Kofi"};
    static const std::vector<std::string> last = {"Doe", "Chen", "Stone", "Haddad", "Fog", "Mensah"};
    auto word = [&] { return vocab[rng() % vocab.size()]; };
    auto name = [&] { return first[rng() % first.size()] + " " + last[rng() % last.size()]; };

    std::vector<PaperRecord> out;
    for (size_t i = 0; i < n; ++i) {
        RecordSpec spec;
        spec.paper_id = std::to_string(100000 + i);
        spec.title = word() + " " + word() + " " + word();
        size_t abs_len = rng() % 12;
        for (size_t k = 0; k < abs_len; ++k) spec.abstract += (k ? " " : "") + word();
        spec.journal = "Journal of " + vocab[rng() % vocab.size()];
        if (rng() % 2) spec.aliases = {"J " + vocab[rng() % vocab.size()]};
        size_t n_auth = 1 + rng() % 5;
        for (size_t k = 0; k < n_auth; ++k) spec.authors.push_back(name());
        if (rng() % 3) spec.affiliations.push_back(word() + " University");
        spec.earliest = add_days(make_date(2019, 1, 1), long(rng() % 900));
        out.push_back(make_record(std::move(spec)));
    }
    return out;
}

}  // namespace litlink::testing
