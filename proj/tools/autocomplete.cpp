// Command-line front end: serve | query | bench | gen.

#include <csignal>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "httplib.h"

#include "autocomplete/bench.hpp"
#include "autocomplete/corpus_gen.hpp"
#include "autocomplete/index.hpp"
#include "autocomplete/ingest.hpp"
#include "autocomplete/service.hpp"

namespace ac = autocomplete;

namespace {

httplib::Server* g_server = nullptr;

void stop_server(int) {
    if (g_server) g_server->stop();
}

ac::DuplicatePolicy parse_policy(const std::string& name) {
    return name == "sum" ? ac::DuplicatePolicy::sum : ac::DuplicatePolicy::keep_max;
}

void log_stats(const ac::CorpusStats& s) {
    std::cerr << "corpus: lines=" << s.lines_read << " kept=" << s.entries_kept
              << " merged=" << s.duplicates_merged << " malformed=" << s.malformed_skipped
              << " bytes=" << s.bytes_read << '\n';
}

int cmd_serve(ac::ServiceConfig config) {
    config.validate();
    auto snapshot = ac::load_snapshot(config);
    log_stats(snapshot->stats);

    ac::SuggestService service(config);
    httplib::Server server;
    service.mount(server);
    if (!server.bind_to_port(config.host, config.port)) {
        std::cerr << "error: cannot listen on " << config.host << ':' << config.port << '\n';
        return 1;
    }
    service.publish(std::move(snapshot));
    g_server = &server;
    std::signal(SIGINT, stop_server);
    std::signal(SIGTERM, stop_server);
    std::cerr << "listening on " << config.host << ':' << config.port << '\n';
    server.listen_after_bind();
    return 0;
}

int cmd_query(const ac::ServiceConfig& config, const std::string& q, std::size_t k) {
    auto snapshot = ac::load_snapshot(config);
    for (const auto& s : ac::lookup(*snapshot, q, k, config.fuzzy)) {
        std::cout << s.weight << '\t' << s.text << '\n';
    }
    return 0;
}

int cmd_bench(const ac::ServiceConfig& config, std::size_t k, std::size_t queries,
              std::uint64_t seed, int threads) {
    if (queries < 1) {
        std::cerr << "error: --queries must be at least 1\n";
        return 2;
    }
    auto corpus = ac::load_tsv_file(config.corpus, config.duplicates);
    log_stats(corpus.stats);
    const ac::Index index = ac::build_index(std::move(corpus.entries));
    const auto workload = ac::make_workload(index, queries, seed);
    const auto report = ac::run_bench(index, workload, k, threads);
    std::cout << ac::to_json(report) << '\n';
    return 0;
}

int cmd_gen(std::size_t n, std::uint64_t seed, const std::string& out_path) {
    const auto entries = ac::generate_corpus(n, seed);
    if (out_path.empty() || out_path == "-") {
        ac::write_tsv(std::cout, entries);
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << '\n';
        return 1;
    }
    ac::write_tsv(out, entries);
    return out ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ranked prefix autocomplete: top-k heaviest phrases for a prefix"};
    app.require_subcommand(1);

    ac::ServiceConfig config;
    std::string corpus_path;
    std::string stopwords_path;
    std::string policy = "max";
    std::size_t query_k = 16;
    std::size_t bench_k = 32;
    std::size_t queries = 100'000;
    std::uint64_t seed = 42;
    int threads = 1;
    std::size_t n = 0;
    std::string query;
    std::string out_path;

    const auto add_corpus = [&](CLI::App* cmd) {
        cmd->add_option("--corpus", corpus_path, "TSV corpus: <weight>\\t<phrase> per line")
            ->required();
        cmd->add_option("--duplicates", policy, "Duplicate phrase policy")
            ->check(CLI::IsMember({"max", "sum"}));
    };

    auto* serve = app.add_subcommand("serve", "Run the HTTP suggestion service");
    add_corpus(serve);
    serve->add_option("--host", config.host, "Listen address");
    serve->add_option("--port", config.port, "Listen port");
    serve->add_option("--k", config.default_k, "Default result count");
    serve->add_option("--max-k", config.max_k, "Upper bound on n per request");
    serve->add_flag("--fuzzy", config.fuzzy, "Approximate matching via transformed keys");
    serve->add_option("--stopwords", stopwords_path, "Stop-word file for --fuzzy");

    auto* query_cmd = app.add_subcommand("query", "Print suggestions for one prefix");
    add_corpus(query_cmd);
    query_cmd->add_option("q,--q", query, "Query prefix")->required();
    query_cmd->add_option("--k", query_k, "Result count");
    query_cmd->add_flag("--fuzzy", config.fuzzy, "Approximate matching via transformed keys");
    query_cmd->add_option("--stopwords", stopwords_path, "Stop-word file for --fuzzy");

    auto* bench = app.add_subcommand("bench", "Time top-k over a sampled prefix workload");
    add_corpus(bench);
    bench->add_option("--k", bench_k, "Result count");
    bench->add_option("--queries", queries, "Number of queries");
    bench->add_option("--seed", seed, "Workload seed");
    bench->add_option("--threads", threads, "Reader threads");

    auto* gen = app.add_subcommand("gen", "Write a synthetic TSV corpus");
    gen->add_option("--n", n, "Number of phrases")->required();
    gen->add_option("--seed", seed, "Generator seed");
    gen->add_option("--out", out_path, "Output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    config.corpus = corpus_path;
    config.duplicates = parse_policy(policy);
    if (!stopwords_path.empty()) config.stopwords = stopwords_path;

    try {
        if (*serve) return cmd_serve(config);
        if (*query_cmd) return cmd_query(config, query, query_k);
        if (*bench) return cmd_bench(config, bench_k, queries, seed, threads);
        if (*gen) return cmd_gen(n, seed, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
