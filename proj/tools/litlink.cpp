// litlink: news-to-literature linking over a PubMed-style corpus.
//
// Subcommands: index, link, serve, evaluate, gridsearch, generate.
// Exit codes: 0 success, 1 input error, 2 internal error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "litlink/config.hpp"
#include "litlink/eval.hpp"
#include "litlink/linker.hpp"
#include "litlink/service.hpp"
#include "litlink/synthetic.hpp"

namespace {

using namespace litlink;

SearchConfig load_config_or_default(const std::string& path) {
    if (path.empty()) return SearchConfig{};
    return load_search_config(path);
}

std::set<Kind> parse_kinds_csv(const std::string& csv) {
    if (csv.empty()) return all_kinds();
    std::set<Kind> kinds;
    size_t start = 0;
    while (start <= csv.size()) {
        size_t comma = csv.find(',', start);
        std::string token = csv.substr(start, comma == std::string::npos ? std::string::npos
                                                                         : comma - start);
        if (!token.empty()) {
            auto kind = kind_from_name(token);
            if (!kind) throw InputError("unknown subquery kind '" + token + "' in --kinds");
            kinds.insert(*kind);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (kinds.empty()) throw InputError("--kinds selected no subqueries");
    return kinds;
}

Backend parse_backend(const std::string& name) {
    auto backend = backend_from_name(name);
    if (!backend) throw InputError("unknown backend '" + name + "' (expected main or crossref-like)");
    return *backend;
}

void print_hits_text(std::ostream& out, const Index& index, const std::vector<RankedHit>& hits) {
    if (hits.empty()) {
        out << "no results (no candidate met the minimum score)\n";
        return;
    }
    for (const auto& h : hits) {
        auto doc = index.find(h.paper_id);
        out << h.rank << ". " << h.paper_id;
        if (doc && !index.doc(*doc).doi.empty()) out << " doi:" << index.doc(*doc).doi;
        char scores[160];
        std::snprintf(scores, sizeof(scores), "  final=%.6f date=%.6f weighted=%.6f",
                      h.final_score, h.date_score, h.weighted_score);
        out << scores << "\n";
        if (doc) {
            out << "   journal: " << index.doc(*doc).journal_name << "\n";
            out << "   title:   " << index.doc(*doc).title << "\n";
        }
        char fields[200];
        std::snprintf(fields, sizeof(fields),
                      "   fields:  au=%.4f jo=%.4f af=%.4f ti=%.4f co=%.4f\n",
                      h.field_scores[0], h.field_scores[1], h.field_scores[2], h.field_scores[3],
                      h.field_scores[4]);
        out << fields;
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

struct IndexArgs {
    std::string papers, aliases, snapshot;
};

int cmd_index(const IndexArgs& args) {
    auto papers = load_paper_records(args.papers);
    JournalAliasTable aliases;
    if (!args.aliases.empty()) {
        if (!std::filesystem::exists(args.aliases)) {
            std::cerr << "warning: alias file '" << args.aliases
                      << "' not found; indexing without alias expansion\n";
        } else {
            aliases = load_alias_table(args.aliases);
        }
    }
    auto expanded = expand_journal_aliases(papers, aliases);
    Index index = build_index(expanded);
    save_snapshot(args.snapshot, papers, aliases);

    std::cout << "indexed " << index.doc_count() << " papers, " << aliases.entries.size()
              << " alias-table journals -> " << args.snapshot << "\n";
    std::cout << "field          N       avgdl\n";
    for (Field f : kAllFields) {
        auto stats = index.field_stats(f);
        char line[96];
        std::snprintf(line, sizeof(line), "%-12s %5llu  %10.3f\n", std::string(field_name(f)).c_str(),
                      static_cast<unsigned long long>(stats.doc_count), stats.avgdl);
        std::cout << line;
    }
    return 0;
}

struct LinkArgs {
    std::string snapshot, config, gazetteer, article_file, title, body, date;
    std::string kinds_csv, backend = "main", format = "text";
    int top_k = 3;
    double threshold = -1.0;
    int window_days = 45;
};

int cmd_link(const LinkArgs& args) {
    Engine engine = Engine::from_snapshot(args.snapshot, load_config_or_default(args.config),
                                           args.gazetteer);

    LinkRequest base;
    base.kinds = parse_kinds_csv(args.kinds_csv);
    base.top_k = args.top_k;
    if (args.threshold >= 0.0) base.threshold = args.threshold;
    base.backend = parse_backend(args.backend);
    base.window_days = args.window_days;
    bool machine = args.format == "machine";

    auto emit = [&](const std::vector<RankedHit>& hits) {
        if (machine) {
            std::cout << link_response_json(engine.index(), hits).dump() << "\n";
        } else {
            print_hits_text(std::cout, engine.index(), hits);
        }
    };

    if (!args.article_file.empty()) {
        auto articles = load_news_articles(args.article_file);
        if (articles.empty()) throw InputError("article file contains no articles");
        for (const auto& art : articles) {
            LinkRequest req = base;
            req.title = art.title;
            req.body = art.body;
            req.release_date = art.release_date;
            if (!machine) std::cout << "== " << art.news_id << "\n";
            emit(engine.link(req));
        }
        return 0;
    }
    if (args.body.empty() || args.date.empty()) {
        throw InputError("link needs either --article or --body and --date");
    }
    LinkRequest req = base;
    req.title = args.title;
    req.body = args.body;
    req.release_date = parse_date(args.date);
    emit(engine.link(req));
    return 0;
}

struct ServeArgs {
    std::string snapshot, config, gazetteer;
    int port = 8080;
};

int cmd_serve(const ServeArgs& args) {
    Engine engine = Engine::from_snapshot(args.snapshot, load_config_or_default(args.config),
                                           args.gazetteer);
    auto server = make_server(engine);
    std::cout << "serving POST /link on port " << args.port << " (" << engine.index().doc_count()
              << " papers)\n";
    if (!server->listen("0.0.0.0", args.port)) {
        throw InputError("cannot listen on port " + std::to_string(args.port));
    }
    return 0;
}

struct EvaluateArgs {
    std::string snapshot, news, spec, preset = "metadata", config, out;
    int repeats = 1;
};

int cmd_evaluate(const EvaluateArgs& args) {
    Snapshot snap = load_snapshot(args.snapshot);
    auto articles = load_news_articles(args.news);

    std::vector<AblationRow> rows;
    if (!args.spec.empty()) {
        std::ifstream in(args.spec);
        if (!in) throw Error("cannot open ablation spec: " + args.spec);
        rows = parse_ablation_spec(in);
    } else if (args.preset == "metadata") {
        rows = metadata_ablation_rows();
    } else if (args.preset == "features") {
        rows = feature_ablation_rows();
    } else if (args.preset == "backends") {
        rows = backend_ablation_rows();
    } else {
        throw InputError("unknown preset '" + args.preset +
                         "' (expected metadata, features, or backends)");
    }

    EvalOptions opts;
    opts.base = load_config_or_default(args.config);
    opts.latency_repeats = args.repeats;
    auto results = run_ablation(snap.papers, snap.aliases, articles, rows, opts);

    for (const auto& [row, result] : results) {
        for (const auto& news_id : result.excluded) {
            std::cerr << "warning: [" << row.label << "] gold paper for article '" << news_id
                      << "' is not in the corpus; article excluded\n";
        }
    }
    std::cout << render_eval_table(results);
    if (!args.out.empty()) {
        write_text_file(args.out, eval_report_json(results).dump(2) + "\n");
        std::cout << "report written to " << args.out << "\n";
    }
    return 0;
}

struct GridArgs {
    std::string snapshot, news, grid, config, out;
};

int cmd_gridsearch(const GridArgs& args) {
    Snapshot snap = load_snapshot(args.snapshot);
    auto articles = load_news_articles(args.news);
    WeightGrid grid = WeightGrid::default_grid();
    if (!args.grid.empty()) {
        std::ifstream in(args.grid);
        if (!in) throw Error("cannot open grid file: " + args.grid);
        grid = parse_weight_grid(in);
    }
    EvalOptions opts;
    opts.base = load_config_or_default(args.config);

    auto result = grid_search_weights(snap.papers, snap.aliases, articles, grid, opts);
    std::cout << "evaluated " << result.table.size() << " weight combinations over " << result.n
              << " articles\n";
    std::cout << "best top-1: " << result.best_top1 << " with weights";
    for (Kind k : kAllKinds) {
        std::cout << " " << kind_name(k) << "=" << result.best_weights[static_cast<size_t>(k)];
    }
    std::cout << "\n";
    if (!args.out.empty()) {
        write_text_file(args.out, grid_report_json(result).dump(2) + "\n");
        std::cout << "report written to " << args.out << "\n";
    }
    return 0;
}

struct GenerateArgs {
    std::string papers_out = "papers.jsonl";
    std::string aliases_out = "aliases.tsv";
    std::string news_out = "news.jsonl";
    uint64_t seed = 42;
    size_t num_papers = 500;
    size_t num_articles = 200;
};

int cmd_generate(const GenerateArgs& args) {
    SyntheticConfig cfg;
    cfg.seed = args.seed;
    cfg.num_papers = args.num_papers;
    cfg.num_articles = args.num_articles;
    SyntheticDataset data = generate_synthetic(cfg);

    std::string papers;
    for (const auto& p : data.papers) papers += serialize_paper_record(p) + "\n";
    write_text_file(args.papers_out, papers);
    write_text_file(args.aliases_out, serialize_alias_table(data.alias_table));
    std::string news;
    for (const auto& a : data.articles) news += serialize_news_article(a) + "\n";
    write_text_file(args.news_out, news);

    std::cout << "seed " << args.seed << ": wrote " << data.papers.size() << " papers, "
              << data.alias_table.entries.size() << " journals, " << data.articles.size()
              << " articles\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"litlink: link news articles to research papers in an indexed corpus"};
    app.require_subcommand(1);

    IndexArgs index_args;
    auto* index_cmd = app.add_subcommand("index", "build a corpus snapshot from record files");
    index_cmd->add_option("--papers", index_args.papers, "paper record file (JSON lines)")
        ->required()
        ->envname("LITLINK_PAPERS");
    index_cmd->add_option("--aliases", index_args.aliases, "journal alias table (TSV)")
        ->envname("LITLINK_ALIASES");
    index_cmd->add_option("--snapshot", index_args.snapshot, "output snapshot path")
        ->required()
        ->envname("LITLINK_SNAPSHOT");

    LinkArgs link_args;
    auto* link_cmd = app.add_subcommand("link", "link one article (or a file of articles)");
    link_cmd->add_option("--snapshot", link_args.snapshot, "corpus snapshot")
        ->required()
        ->envname("LITLINK_SNAPSHOT");
    link_cmd->add_option("--config", link_args.config, "search config JSON")
        ->envname("LITLINK_CONFIG");
    link_cmd->add_option("--gazetteer", link_args.gazetteer,
                         "supplemental gazetteer file (alias-table format, ISSN may be empty)")
        ->envname("LITLINK_GAZETTEER");
    link_cmd->add_option("--article", link_args.article_file, "news article file (JSON lines)");
    link_cmd->add_option("--title", link_args.title, "article title");
    link_cmd->add_option("--body", link_args.body, "article body text");
    link_cmd->add_option("--date", link_args.date, "release date (YYYY-MM-DD)");
    link_cmd->add_option("--kinds", link_args.kinds_csv, "subquery kinds, e.g. au,jo,co");
    link_cmd->add_option("--top-k", link_args.top_k, "number of hits to return")
        ->envname("LITLINK_TOP_K");
    link_cmd->add_option("--threshold", link_args.threshold, "minimum final score")
        ->envname("LITLINK_THRESHOLD");
    link_cmd->add_option("--backend", link_args.backend, "main or crossref-like")
        ->envname("LITLINK_BACKEND");
    link_cmd->add_option("--window-days", link_args.window_days,
                         "crossref-like date window (days)");
    link_cmd->add_option("--format", link_args.format, "text or machine")
        ->envname("LITLINK_FORMAT");

    ServeArgs serve_args;
    auto* serve_cmd = app.add_subcommand("serve", "run the JSON linking service");
    serve_cmd->add_option("--snapshot", serve_args.snapshot, "corpus snapshot")
        ->required()
        ->envname("LITLINK_SNAPSHOT");
    serve_cmd->add_option("--config", serve_args.config, "search config JSON")
        ->envname("LITLINK_CONFIG");
    serve_cmd->add_option("--gazetteer", serve_args.gazetteer,
                         "supplemental gazetteer file (alias-table format, ISSN may be empty)")
        ->envname("LITLINK_GAZETTEER");
    serve_cmd->add_option("--port", serve_args.port, "TCP port")->envname("LITLINK_PORT");

    EvaluateArgs eval_args;
    auto* eval_cmd = app.add_subcommand("evaluate", "run ablation evaluations over a paired dataset");
    eval_cmd->add_option("--snapshot", eval_args.snapshot, "corpus snapshot")
        ->required()
        ->envname("LITLINK_SNAPSHOT");
    eval_cmd->add_option("--news", eval_args.news, "news article file with gold_paper_id")
        ->required()
        ->envname("LITLINK_NEWS");
    eval_cmd->add_option("--spec", eval_args.spec, "ablation spec (JSON lines)");
    eval_cmd->add_option("--preset", eval_args.preset, "metadata, features, or backends");
    eval_cmd->add_option("--config", eval_args.config, "search config JSON")
        ->envname("LITLINK_CONFIG");
    eval_cmd->add_option("--out", eval_args.out, "machine-readable report path");
    eval_cmd->add_option("--repeats", eval_args.repeats, "latency measurement repeats");

    GridArgs grid_args;
    auto* grid_cmd = app.add_subcommand("gridsearch", "grid search over subquery weights");
    grid_cmd->add_option("--snapshot", grid_args.snapshot, "corpus snapshot")
        ->required()
        ->envname("LITLINK_SNAPSHOT");
    grid_cmd->add_option("--news", grid_args.news, "news article file with gold_paper_id")
        ->required()
        ->envname("LITLINK_NEWS");
    grid_cmd->add_option("--grid", grid_args.grid, "weight grid JSON (default: built-in grid)");
    grid_cmd->add_option("--config", grid_args.config, "search config JSON")
        ->envname("LITLINK_CONFIG");
    grid_cmd->add_option("--out", grid_args.out, "machine-readable report path");

    GenerateArgs gen_args;
    auto* gen_cmd = app.add_subcommand("generate", "write a seeded synthetic benchmark dataset");
    gen_cmd->add_option("--seed", gen_args.seed, "generator seed")->envname("LITLINK_SEED");
    gen_cmd->add_option("--num-papers", gen_args.num_papers, "number of papers");
    gen_cmd->add_option("--num-articles", gen_args.num_articles, "number of news articles");
    gen_cmd->add_option("--papers-out", gen_args.papers_out, "paper record output path");
    gen_cmd->add_option("--aliases-out", gen_args.aliases_out, "alias table output path");
    gen_cmd->add_option("--news-out", gen_args.news_out, "news article output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(index_cmd)) return cmd_index(index_args);
        if (app.got_subcommand(link_cmd)) return cmd_link(link_args);
        if (app.got_subcommand(serve_cmd)) return cmd_serve(serve_args);
        if (app.got_subcommand(eval_cmd)) return cmd_evaluate(eval_args);
        if (app.got_subcommand(grid_cmd)) return cmd_gridsearch(grid_args);
        if (app.got_subcommand(gen_cmd)) return cmd_generate(gen_args);
    } catch (const litlink::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
