#include "autocomplete/service.hpp"

#include <charconv>
#include <cmath>
#include <chrono>
#include <stdexcept>
#include <utility>

#include "httplib.h"
#include "json.hpp"

namespace autocomplete {

namespace {

using json = nlohmann::ordered_json;

Response json_response(int status, const json& body) {
    return Response{status, body.dump()};
}

json corpus_json(const CorpusStats& s) {
    return json{{"lines_read", s.lines_read},
                {"entries_kept", s.entries_kept},
                {"duplicates_merged", s.duplicates_merged},
                {"malformed_skipped", s.malformed_skipped},
                {"bytes_read", s.bytes_read}};
}

std::optional<std::size_t> parse_count(const std::string& s) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

}  // namespace

void ServiceConfig::validate() const {
    if (default_k < 1 || default_k > max_k || max_k > kMaxResultCap) {
        throw std::invalid_argument("invalid result counts: need 1 <= default k (" +
                                    std::to_string(default_k) + ") <= max k (" +
                                    std::to_string(max_k) + ") <= " +
                                    std::to_string(kMaxResultCap));
    }
}

std::shared_ptr<const Snapshot> make_snapshot(Corpus corpus, const ServiceConfig& config) {
    auto snap = std::make_shared<Snapshot>();
    snap->stats = corpus.stats;
    if (config.fuzzy) {
        TransformConfig base = TransformConfig::full(config.soundex);
        if (config.stopwords) base.stopwords = load_stopwords(*config.stopwords);
        snap->stages = build_stage_indexes(corpus.entries, base);
    }
    snap->index = build_index(std::move(corpus.entries));
    return snap;
}

std::shared_ptr<const Snapshot> load_snapshot(const ServiceConfig& config) {
    return make_snapshot(load_tsv_file(config.corpus, config.duplicates), config);
}

std::vector<Suggestion> lookup(const Snapshot& snapshot, std::string_view q, std::size_t k,
                               bool fuzzy) {
    const std::string query = normalize_text(q);
    if (fuzzy) return multi_stage_top_k(snapshot.stages, query, k);
    return top_k(snapshot.index, query, k);
}

LatencyHistogram::LatencyHistogram()
    : buckets_(std::make_unique<std::atomic<std::uint64_t>[]>(kBuckets + 1)) {}

void LatencyHistogram::record(std::uint64_t micros) {
    const std::size_t bucket = micros < kBuckets ? micros : kBuckets;
    buckets_[bucket].fetch_add(1, std::memory_order_relaxed);
    count_.fetch_add(1, std::memory_order_relaxed);
    total_.fetch_add(micros, std::memory_order_relaxed);
}

std::uint64_t LatencyHistogram::percentile(double p) const {
    const std::uint64_t n = count();
    if (n == 0) return 0;
    auto target = static_cast<std::uint64_t>(std::ceil(p / 100.0 * static_cast<double>(n)));
    if (target == 0) target = 1;
    std::uint64_t seen = 0;
    for (std::size_t b = 0; b <= kBuckets; ++b) {
        seen += buckets_[b].load(std::memory_order_relaxed);
        if (seen >= target) return b;
    }
    return kBuckets;
}

SuggestService::SuggestService(ServiceConfig config) : config_(std::move(config)) {
    config_.validate();
}

void SuggestService::publish(std::shared_ptr<const Snapshot> snapshot) {
    std::lock_guard lock(snapshot_mutex_);
    snapshot_ = std::move(snapshot);
}

std::shared_ptr<const Snapshot> SuggestService::snapshot() const {
    std::lock_guard lock(snapshot_mutex_);
    return snapshot_;
}

Response SuggestService::handle_suggest(const std::optional<std::string>& q,
                                        const std::optional<std::string>& n) {
    total_requests_.fetch_add(1, std::memory_order_relaxed);
    if (!q) return json_response(400, {{"error", "missing parameter q"}});
    std::size_t k = config_.default_k;
    if (n) {
        const auto parsed = parse_count(*n);
        if (!parsed) return json_response(400, {{"error", "invalid parameter n"}});
        k = std::min(*parsed, config_.max_k);
    }
    const auto snap = snapshot();
    if (!snap) return json_response(503, {{"status", "loading"}});

    suggest_requests_.fetch_add(1, std::memory_order_relaxed);
    const auto start = std::chrono::steady_clock::now();
    const auto results = lookup(*snap, *q, k, config_.fuzzy);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    suggest_latency_.record(static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count()));

    json suggestions = json::array();
    for (const auto& s : results) {
        suggestions.push_back(json{{"phrase", s.text}, {"weight", s.weight}});
    }
    return json_response(200, json{{"query", *q},
                                   {"count", results.size()},
                                   {"suggestions", std::move(suggestions)}});
}

Response SuggestService::handle_health() {
    total_requests_.fetch_add(1, std::memory_order_relaxed);
    const auto snap = snapshot();
    if (!snap) return json_response(503, {{"status", "loading"}});
    return json_response(200, {{"status", "ok"}, {"entries", snap->index.size()}});
}

Response SuggestService::handle_stats() {
    total_requests_.fetch_add(1, std::memory_order_relaxed);
    const auto snap = snapshot();
    json body{
        {"requests_total", total_requests_.load(std::memory_order_relaxed)},
        {"suggest_requests", suggest_requests_.load(std::memory_order_relaxed)},
        {"suggest_latency_us",
         {{"cumulative", suggest_latency_.total_micros()},
          {"p50", suggest_latency_.percentile(50.0)},
          {"p99", suggest_latency_.percentile(99.0)}}},
        {"entries", snap ? snap->index.size() : 0},
        {"corpus", corpus_json(snap ? snap->stats : CorpusStats{})},
    };
    return json_response(200, body);
}

Response SuggestService::handle_reload() {
    total_requests_.fetch_add(1, std::memory_order_relaxed);
    try {
        auto fresh = load_snapshot(config_);
        const std::size_t entries = fresh->index.size();
        publish(std::move(fresh));
        return json_response(200, {{"status", "ok"}, {"entries", entries}});
    } catch (const std::exception& e) {
        return json_response(500, {{"error", e.what()}});
    }
}

void SuggestService::mount(httplib::Server& server) {
    // No SO_REUSEPORT: a second instance on a busy port must fail to bind.
    server.set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    const auto send = [](httplib::Response& res, const Response& r) {
        res.status = r.status;
        res.set_content(r.body, "application/json");
    };
    server.Get("/suggest", [this, send](const httplib::Request& req, httplib::Response& res) {
        std::optional<std::string> q, n;
        if (req.has_param("q")) q = req.get_param_value("q");
        if (req.has_param("n")) n = req.get_param_value("n");
        send(res, handle_suggest(q, n));
    });
    server.Get("/healthz", [this, send](const httplib::Request&, httplib::Response& res) {
        send(res, handle_health());
    });
    server.Get("/stats", [this, send](const httplib::Request&, httplib::Response& res) {
        send(res, handle_stats());
    });
    server.Post("/admin/reload", [this, send](const httplib::Request&, httplib::Response& res) {
        send(res, handle_reload());
    });
    server.Options(".*", [](const httplib::Request&, httplib::Response& res) {
        res.status = 204;
    });
}

}  // namespace autocomplete
