#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "litlink/corpus.hpp"

namespace litlink {

/// Deterministic generator RNG (splitmix64) with hand-rolled bounded draws,
/// so a committed seed reproduces the same dataset on any platform.
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n); n must be positive.
    uint64_t below(uint64_t n) {
        return static_cast<uint64_t>((static_cast<__uint128_t>(next()) * n) >> 64);
    }

    int range(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    bool chance(double p) {
        return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
    }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items[below(items.size())];
    }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[below(i)]);
        }
    }

  private:
    uint64_t state_;
};

struct SyntheticConfig {
    uint64_t seed = 42;
    size_t num_papers = 500;
    size_t num_articles = 200;
    double editorial_fraction = 0.12;  // one-author commentary distractors
    double sibling_fraction = 0.35;    // same-journal papers sharing authors and topic
    double expert_quote_rate = 0.25;   // articles quoting an uninvolved expert
    int release_lag_min = 0;           // days between paper and news release
    int release_lag_max = 30;
};

struct SyntheticDataset {
    std::vector<PaperRecord> papers;   // journal_aliases empty; aliases live in the table
    JournalAliasTable alias_table;
    std::vector<NewsArticle> articles;
};

namespace synth {

inline const std::vector<std::string>& topic_words() {
    static const std::vector<std::string> words = {
        "cardiac",     "vascular",   "tumor",      "immune",     "neural",      "metabolic",
        "glucose",     "insulin",    "cholesterol", "microbiome", "genome",     "mutation",
        "receptor",    "protein",    "enzyme",     "antibody",   "vaccine",     "inflammation",
        "cytokine",    "biomarker",  "cohort",     "trial",      "placebo",     "screening",
        "diagnosis",   "prognosis",  "therapy",    "remission",  "relapse",     "mortality",
        "morbidity",   "incidence",  "prevalence", "risk",       "exposure",    "outcomes",
        "adherence",   "dosage",     "toxicity",   "efficacy",   "pathway",     "signaling",
        "expression",  "regulation", "cells",      "tissue",     "plasma",      "serum",
        "cortex",      "hippocampus", "synapse",   "memory",     "cognition",   "behavior",
        "sleep",       "stress",     "anxiety",    "depression", "obesity",     "diabetes",
        "hypertension", "stroke",    "infarction", "arrhythmia", "fibrosis",    "cirrhosis",
        "nephropathy", "retinopathy", "asthma",    "allergy",    "infection",   "sepsis",
        "antibiotic",  "resistance", "bacteria",   "virus",      "influenza",   "coronavirus",
        "lymphocyte",  "macrophage", "platelet",   "hemoglobin", "anemia",      "leukemia",
        "melanoma",    "carcinoma",  "metastasis", "biopsy",     "imaging",     "ultrasound",
        "sequencing",  "transcriptome", "methylation", "telomere", "mitochondria", "oxidative",
        "nutrient",    "fasting",    "exercise",   "rehabilitation", "pregnancy", "neonatal",
        "pediatric",   "geriatric",  "bone",       "cartilage",  "muscle",      "tendon"};
    return words;
}

inline const std::vector<std::string>& first_names() {
    static const std::vector<std::string> names = {
        "Jane",   "Wei",    "Ada",     "Omar",   "Lena",   "Kofi",   "Maria",  "John",
        "Priya",  "Hans",   "Yuki",    "Ivan",   "Li",     "Sara",   "Tomas",  "Nadia",
        "Elias",  "Ingrid", "Mateo",   "Aisha",  "Pavel",  "Chloe",  "Ravi",   "Sofia",
        "Dmitri", "Amara",  "Felix",   "Hana",   "Oscar",  "Meera",  "Lucas",  "Anya",
        "Jorge",  "Emiko",  "Samuel",  "Leila",  "Viktor", "Rosa",   "Arjun",  "Freja",
        "Bruno",  "Carys",  "Dario",   "Edith",  "Farid",  "Greta",  "Hamid",  "Iris",
        "Jonas",  "Keiko",  "Lars",    "Mona",   "Nils",   "Oona",   "Pedro",  "Quinn",
        "Rohan",  "Signe",  "Talia",   "Umut",   "Vera",   "Wren",   "Ximena", "Yusuf",
        "Zofia",  "Alber",  "Beatriz", "Cormac", "Daphne", "Enzo",   "Fiona",  "Gustav",
        "Helena", "Imre",   "Jolan",   "Katya",  "Lorcan", "Marit",  "Nestor", "Odile"};
    return names;
}

inline const std::vector<std::string>& last_names() {
    static const std::vector<std::string> names = {
        "Doe",      "Chen",      "Stone",     "Haddad",    "Fog",       "Mensah",
        "Silva",    "Smith",     "Patel",     "Vogel",     "Tanaka",    "Petrov",
        "Na",       "Lindqvist", "Moreau",    "Okafor",    "Ibrahim",   "Novak",
        "Costa",    "Kim",       "Larsen",    "Weber",     "Rossi",     "Nakamura",
        "Singh",    "Andersson", "Dubois",    "Keita",     "Alvarez",   "Horvat",
        "Popescu",  "Nilsson",   "Marino",    "Farah",     "Kowalski",  "Berg",
        "Sato",     "Iyer",      "Mbeki",     "Olsen",     "Ferrari",   "Zhang",
        "Gonzalez", "Murphy",    "Schmidt",   "Ali",       "Johansson", "Ricci",
        "Yamamoto", "Varga",     "Nowak",     "Klein",     "Duran",     "Eriksen",
        "Moretti",  "Abebe",     "Bauer",     "Castillo",  "Dalgaard",  "Egede",
        "Fontaine", "Grieg",     "Hassan",    "Iversen",   "Jansen",    "Kato",
        "Lombardi", "Mwangi",    "Nygaard",   "Oliveira",  "Pearce",    "Quraishi",
        "Romero",   "Soler",     "Takeda",    "Ueda",      "Vidal",     "Wagner",
        "Xu",       "Yilmaz",    "Zamora",    "Acharya",   "Bellini",   "Cardoso",
        "Dimitrov", "Ekwueme",   "Fischer",   "Gallo",     "Hoffmann",  "Ishida",
        "Jensen",   "Kovacs",    "Lehmann",   "Morel",     "Nakano",    "Oduya",
        "Pavlov",   "Quint",     "Ramos",     "Sorensen",  "Tesfaye",   "Uzun",
        "Visser",   "Wolf",      "Yoshida",   "Zeman",     "Albrecht",  "Boateng",
        "Cisse",    "Dahl",      "Engel",     "Fuentes",   "Gruber",    "Hamsun",
        "Ilves",    "Jalonen",   "Kristens",  "Lorenz",    "Madsen",    "Noring"};
    return names;
}

inline const std::vector<std::string>& cities() {
    static const std::vector<std::string> names = {
        "Boston",    "Geneva",   "Kyoto",     "Nairobi",  "Toronto", "Uppsala", "Leiden",
        "Porto",     "Adelaide", "Bergen",    "Trieste",  "Graz",    "Quebec",  "Seville",
        "Tampere",   "Galway",   "Odense",    "Krakow",   "Leipzig", "Valencia", "Brno",
        "Ljubljana", "Bristol",  "Dunedin",   "Rochester", "Halifax", "Padua",  "Ghent",
        "Lausanne",  "Turku"};
    return names;
}

struct FieldWord {
    const char* full;
    const char* abbrev;
};

inline const std::vector<FieldWord>& field_words() {
    static const std::vector<FieldWord> fields = {
        {"Cardiology", "Cardiol"},    {"Oncology", "Oncol"},       {"Neurology", "Neurol"},
        {"Immunology", "Immunol"},    {"Pediatrics", "Pediatr"},   {"Genomics", "Genom"},
        {"Epidemiology", "Epidemiol"}, {"Nutrition", "Nutr"},      {"Endocrinology", "Endocrinol"},
        {"Psychiatry", "Psychiatr"},  {"Radiology", "Radiol"},     {"Hematology", "Hematol"},
        {"Nephrology", "Nephrol"},    {"Dermatology", "Dermatol"}, {"Pulmonology", "Pulmonol"},
        {"Rheumatology", "Rheumatol"}, {"Virology", "Virol"},      {"Microbiology", "Microbiol"},
        {"Metabolism", "Metab"},      {"Physiology", "Physiol"}};
    return fields;
}

struct Journal {
    std::string issn;
    std::string canonical;
    std::vector<std::string> aliases;
};

inline std::vector<Journal> make_journals() {
    std::vector<Journal> out;
    std::set<std::string> used_keys;
    auto claim = [&used_keys](const std::string& name) {
        return used_keys.insert(norm_key(name)).second;
    };
    int issn_counter = 1;
    auto push = [&](const std::string& canonical, std::vector<std::string> alias_candidates) {
        if (!claim(canonical)) return;
        Journal j;
        char issn[16];
        std::snprintf(issn, sizeof(issn), "1000-%04d", issn_counter++);
        j.issn = issn;
        j.canonical = canonical;
        for (auto& a : alias_candidates) {
            if (claim(a)) j.aliases.push_back(a);
        }
        out.push_back(std::move(j));
    };
    const auto& fields = field_words();
    for (size_t i = 0; i < fields.size(); ++i) {
        const auto& f = fields[i];
        const auto& g = fields[(i + 7) % fields.size()];
        push("Journal of Clinical " + std::string(f.full),
             {"J Clin " + std::string(f.abbrev)});
        push("Annals of " + std::string(f.full), {"Ann " + std::string(f.abbrev)});
        if (i % 2 == 0) {
            push(std::string(f.full) + " and " + g.full + " Reports",
                 {std::string(f.abbrev) + " " + g.abbrev + " Rep"});
        }
    }
    return out;
}

struct Affiliation {
    std::string name;
};

inline std::vector<std::string> make_affiliations() {
    std::vector<std::string> out;
    const auto& c = cities();
    const auto& f = field_words();
    for (size_t i = 0; i < c.size(); ++i) {
        out.push_back("University of " + c[i]);
        out.push_back(c[i] + " Institute of " + f[i % f.size()].full);
        if (i % 2 == 0) out.push_back(c[i] + " Medical Center");
    }
    return out;
}

inline std::string sample_words(SplitMix64& rng, const std::vector<std::string>& pool, size_t n,
                                const std::string& sep = " ") {
    std::string out;
    for (size_t i = 0; i < n; ++i) {
        if (i) out += sep;
        out += rng.pick(pool);
    }
    return out;
}

}  // namespace synth

/// Serializes an alias table back to its tab-separated file format.
inline std::string serialize_alias_table(const JournalAliasTable& table) {
    std::string out;
    for (const auto& [issn, entry] : table.entries) {
        out += issn;
        out += '\t';
        out += entry.canonical;
        for (const auto& a : entry.aliases) {
            out += '\t';
            out += a;
        }
        out += '\n';
    }
    for (const auto& entry : table.unkeyed) {
        out += '\t';
        out += entry.canonical;
        for (const auto& a : entry.aliases) {
            out += '\t';
            out += a;
        }
        out += '\n';
    }
    return out;
}

/// Seeded synthetic benchmark: a PubMed-style corpus plus news articles
/// that embed their gold paper's journal (alternating canonical name and
/// alias), two to four author names, one affiliation, noised title tokens,
/// and a release date shortly after publication. Distractors include
/// same-journal papers, shared author names, and one-author editorials.
inline SyntheticDataset generate_synthetic(const SyntheticConfig& cfg) {
    SplitMix64 rng(cfg.seed ^ 0xA5A5A5A5DEADBEEFull);
    SyntheticDataset data;

    const auto journals = synth::make_journals();
    for (const auto& j : journals) {
        data.alias_table.entries[j.issn] = JournalAliasTable::Entry{j.canonical, j.aliases};
    }
    const auto affiliations = synth::make_affiliations();
    const auto& topics = synth::topic_words();

    // Paper authors draw on a small pool, so names repeat across papers.
    // Editors and quoted outside experts use reserved name ranges that never
    // appear in author lists, mirroring populations that rarely overlap.
    const auto& firsts = synth::first_names();
    const auto& lasts = synth::last_names();
    const size_t reserved_firsts = 12;
    const size_t reserved_lasts = 20;
    std::vector<std::string> name_pool;
    {
        std::set<std::string> seen;
        size_t target = std::max<size_t>(60, cfg.num_papers * 2 / 5);
        size_t combos = (firsts.size() - reserved_firsts) * (lasts.size() - reserved_lasts);
        while (name_pool.size() < target && seen.size() < combos) {
            std::string name = firsts[rng.below(firsts.size() - reserved_firsts)] + " " +
                               lasts[rng.below(lasts.size() - reserved_lasts)];
            if (seen.insert(name).second) name_pool.push_back(std::move(name));
        }
    }
    auto noise_name = [&]() {
        return firsts[firsts.size() - reserved_firsts + rng.below(reserved_firsts)] + " " +
               lasts[lasts.size() - reserved_lasts + rng.below(reserved_lasts)];
    };

    const Date epoch = make_date(2019, 1, 1);
    size_t editorial_count = static_cast<size_t>(cfg.editorial_fraction * cfg.num_papers);
    size_t research_count = cfg.num_papers - editorial_count;

    struct PaperExtra {
        std::vector<std::string> theme;  // per-paper vocabulary bias
        size_t journal_idx = 0;
    };
    std::vector<PaperExtra> extras;

    auto make_dates = [&](Date online_base, bool force_online) {
        PublicationDates dates;
        bool has_online = force_online || rng.chance(0.85);
        if (has_online) dates.online_pub = DateEntry{online_base};
        if (rng.chance(0.9)) {
            if (!has_online && rng.chance(0.10)) {
                // year-only placeholder artifact: recorded as January 1
                dates.journal_pub =
                    DateEntry{make_date(static_cast<int>(online_base.year()), 1, 1), true};
            } else {
                dates.journal_pub = DateEntry{add_days(online_base, rng.range(0, 45))};
            }
        }
        if (rng.chance(0.85)) dates.pubmed_pub = DateEntry{add_days(online_base, rng.range(0, 21))};
        if (!dates.has_any_pub()) dates.online_pub = DateEntry{online_base};
        if (rng.chance(0.7)) dates.accepted = DateEntry{add_days(online_base, -rng.range(10, 80))};
        return dates;
    };

    auto fill_body = [&](PaperRecord& rec, const PaperExtra& extra) {
        const auto& journal = journals[extra.journal_idx];
        rec.journal_name = journal.canonical;
        rec.journal_issn = journal.issn;
        rec.title = synth::sample_words(rng, extra.theme, 4) + " in " +
                    synth::sample_words(rng, extra.theme, 2);
        size_t abstract_len = 60 + rng.below(50);
        std::string abstract;
        for (size_t w = 0; w < abstract_len; ++w) {
            if (w) abstract += " ";
            abstract += rng.chance(0.6) ? rng.pick(extra.theme) : rng.pick(topics);
        }
        rec.abstract = abstract;
        int n_affils = rng.range(1, 3);
        std::set<std::string> chosen_affils;
        while (static_cast<int>(rec.affiliations.size()) < n_affils) {
            const std::string& a = rng.pick(affiliations);
            if (chosen_affils.insert(a).second) rec.affiliations.push_back(a);
        }
    };
    auto add_authors = [&](PaperRecord& rec, int target) {
        std::set<std::string> chosen(rec.authors.begin(), rec.authors.end());
        while (static_cast<int>(rec.authors.size()) < target) {
            const std::string& name = rng.pick(name_pool);
            if (chosen.insert(name).second) rec.authors.push_back(name);
        }
    };
    auto paper_id_for = [](size_t i) {
        char id[24];
        std::snprintf(id, sizeof(id), "%06lu", static_cast<unsigned long>(100000 + i));
        return std::string(id);
    };

    // research papers; a slice of them come in same-journal sibling pairs
    // that share authors, topic vocabulary, and nearby dates
    size_t i = 0;
    while (i < research_count) {
        PaperRecord rec;
        rec.paper_id = paper_id_for(i);
        rec.doi = "10.5555/synth." + rec.paper_id;

        PaperExtra extra;
        extra.journal_idx = rng.below(journals.size());
        for (int t = 0; t < 10; ++t) extra.theme.push_back(rng.pick(topics));

        fill_body(rec, extra);
        add_authors(rec, rng.range(3, 15));
        Date online = add_days(epoch, rng.range(0, 1000));
        rec.dates = make_dates(online, false);
        rec.earliest_date = resolve_earliest_date(rec.dates);
        data.papers.push_back(rec);
        extras.push_back(extra);
        ++i;

        if (i < research_count && rng.chance(cfg.sibling_fraction)) {
            PaperRecord sib;
            sib.paper_id = paper_id_for(i);
            sib.doi = "10.5555/synth." + sib.paper_id;

            PaperExtra sib_extra;
            sib_extra.journal_idx = extra.journal_idx;  // same venue
            for (int t = 0; t < 7; ++t) sib_extra.theme.push_back(rng.pick(extra.theme));
            for (int t = 0; t < 3; ++t) sib_extra.theme.push_back(rng.pick(topics));

            // share one or two authors, preferring the lead
            sib.authors.push_back(rng.chance(0.5) ? rec.authors[0]
                                                  : rec.authors[rng.below(rec.authors.size())]);
            if (rng.chance(0.5)) {
                const std::string& extra_shared = rec.authors[rng.below(rec.authors.size())];
                if (extra_shared != sib.authors[0]) sib.authors.push_back(extra_shared);
            }
            fill_body(sib, sib_extra);
            add_authors(sib, rng.range(3, 15));
            Date sib_online = add_days(online, rng.range(-60, 60));
            sib.dates = make_dates(sib_online, false);
            sib.earliest_date = resolve_earliest_date(sib.dates);
            data.papers.push_back(std::move(sib));
            extras.push_back(std::move(sib_extra));
            ++i;
        }
    }

    // one-author editorials commenting on a research paper in the same
    // journal. The editor is a distinct author the news article will quote,
    // so the short editorial competes with the long gold author list under
    // default length normalization.
    std::vector<std::string> editor_of(research_count);
    for (size_t e = 0; e < editorial_count; ++e) {
        size_t victim = rng.below(research_count);
        const PaperRecord& v = data.papers[victim];
        std::string editor = noise_name();
        if (editor_of[victim].empty()) editor_of[victim] = editor;

        PaperRecord rec;
        rec.paper_id = paper_id_for(research_count + e);
        rec.doi = "10.5555/synth." + rec.paper_id;
        rec.journal_name = v.journal_name;
        rec.journal_issn = v.journal_issn;
        rec.title = "Editorial comment on " +
                    synth::sample_words(rng, extras[victim].theme, 3);
        rec.abstract = "Commentary on recent findings about " +
                       synth::sample_words(rng, extras[victim].theme, 5);
        rec.authors = {editor};
        rec.affiliations = {rng.pick(affiliations)};
        Date online = add_days(v.earliest_date, rng.range(-15, 15));
        rec.dates = make_dates(online, true);
        rec.earliest_date = resolve_earliest_date(rec.dates);
        data.papers.push_back(std::move(rec));
        PaperExtra extra;
        extra.journal_idx = extras[victim].journal_idx;
        extra.theme = extras[victim].theme;
        extras.push_back(std::move(extra));
    }

    // articles: distinct gold papers among the research set
    std::vector<size_t> gold_pool(research_count);
    for (size_t i = 0; i < research_count; ++i) gold_pool[i] = i;
    rng.shuffle(gold_pool);
    size_t n_articles = std::min(cfg.num_articles, research_count);

    for (size_t a = 0; a < n_articles; ++a) {
        const PaperRecord& gold = data.papers[gold_pool[a]];
        const PaperExtra& extra = extras[gold_pool[a]];
        const auto& journal = journals[extra.journal_idx];

        NewsArticle art;
        char id[24];
        std::snprintf(id, sizeof(id), "N%05lu", static_cast<unsigned long>(a));
        art.news_id = id;
        art.source = "synthetic-wire";
        art.gold_paper_id = gold.paper_id;
        art.release_date = add_days(gold.earliest_date,
                                    rng.range(cfg.release_lag_min, cfg.release_lag_max));

        // noised title: keep ~70% of the gold title tokens
        TokenStream title_tokens = tokenize(gold.title);
        std::string noised;
        size_t kept = 0;
        for (const auto& t : title_tokens) {
            if (rng.chance(0.7)) {
                if (!noised.empty()) noised += " ";
                noised += t;
                ++kept;
            }
        }
        if (kept < 2 && title_tokens.size() >= 2) {
            noised = title_tokens[0] + " " + title_tokens[1];
        }
        art.title = "Study finds " + noised;

        // journal mention: alternating canonical and alias
        bool use_alias = (a % 2 == 1) && !journal.aliases.empty();
        const std::string& mention = use_alias ? journal.aliases[0] : journal.canonical;

        // authors mentioned: the lead plus 1-3 coauthors, in list order
        int n_mention = std::min<int>(rng.range(2, 4), static_cast<int>(gold.authors.size()));
        std::vector<size_t> author_idx(gold.authors.size() - 1);
        for (size_t i = 0; i < author_idx.size(); ++i) author_idx[i] = i + 1;
        rng.shuffle(author_idx);
        author_idx.resize(n_mention - 1);
        author_idx.push_back(0);
        std::sort(author_idx.begin(), author_idx.end());

        std::string body;
        body += "A new report describes " + synth::sample_words(rng, extra.theme, 3) + " and " +
                synth::sample_words(rng, extra.theme, 2) + ". ";
        switch (rng.below(3)) {
            case 0: body += "The findings were published in " + mention + ". "; break;
            case 1: body += "The study appears in " + mention + ". "; break;
            default: body += "Researchers report the results in " + mention + ". "; break;
        }
        body += "Dr. " + gold.authors[author_idx[0]] + " of " + gold.affiliations[0] +
                " led the work. ";
        for (int m = 1; m < n_mention; ++m) {
            const std::string& name = gold.authors[author_idx[m]];
            if (rng.chance(0.5)) {
                body += "\"We saw " + synth::sample_words(rng, extra.theme, 2) +
                        " improve,\" said " + name + ", a coauthor of the study. ";
            } else {
                body += name + " and colleagues analyzed the " +
                        synth::sample_words(rng, extra.theme, 1) + " data. ";
            }
        }
        // abstract-flavored content for the body
        TokenStream abstract_tokens = tokenize(gold.abstract);
        for (int s = 0; s < 3; ++s) {
            std::string words;
            for (int w = 0; w < 8; ++w) {
                if (w) words += " ";
                words += rng.chance(0.75) ? abstract_tokens[rng.below(abstract_tokens.size())]
                                          : rng.pick(topics);
            }
            body += "The team found that " + words + ". ";
        }
        if (!editor_of[gold_pool[a]].empty()) {
            body += "An accompanying editorial was written by " + editor_of[gold_pool[a]] +
                    ", an editor at the journal. ";
        }
        if (rng.chance(cfg.expert_quote_rate)) {
            body += "Dr. " + noise_name() + " of the " + rng.pick(affiliations) +
                    ", who was not involved in the study, called the findings notable. ";
        }
        art.body = normalize_text(body);
        data.articles.push_back(std::move(art));
    }
    return data;
}

}  // namespace litlink
