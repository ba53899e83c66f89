#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "autocomplete/index.hpp"
#include "autocomplete/ingest.hpp"
#include "autocomplete/transform.hpp"

namespace httplib {
class Server;
}

namespace autocomplete {

struct ServiceConfig {
    std::string host = "0.0.0.0";
    int port = 8080;
    std::filesystem::path corpus;
    std::size_t default_k = 16;
    std::size_t max_k = 256;
    bool fuzzy = false;
    bool soundex = true;
    std::optional<std::filesystem::path> stopwords;
    DuplicatePolicy duplicates = DuplicatePolicy::keep_max;

    /// Throws std::invalid_argument unless 1 <= default_k <= max_k <= 256.
    void validate() const;
};

inline constexpr std::size_t kMaxResultCap = 256;

/// Everything a request reads. Published whole and never mutated.
struct Snapshot {
    Index index;
    std::vector<FuzzyIndex> stages;
    CorpusStats stats;
};

/// Builds the exact index, plus the cumulative stage indexes in fuzzy mode.
std::shared_ptr<const Snapshot> make_snapshot(Corpus corpus, const ServiceConfig& config);
std::shared_ptr<const Snapshot> load_snapshot(const ServiceConfig& config);

struct Response {
    int status = 200;
    std::string body;
};

/// Fixed-bucket latency histogram with 1 us resolution up to 100 ms.
class LatencyHistogram {
public:
    static constexpr std::size_t kBuckets = 100'000;

    LatencyHistogram();
    void record(std::uint64_t micros);
    std::uint64_t count() const { return count_.load(std::memory_order_relaxed); }
    std::uint64_t total_micros() const { return total_.load(std::memory_order_relaxed); }
    /// Smallest bucket value covering p percent of samples.
    std::uint64_t percentile(double p) const;

private:
    std::unique_ptr<std::atomic<std::uint64_t>[]> buckets_;
    std::atomic<std::uint64_t> count_{0};
    std::atomic<std::uint64_t> total_{0};
};

/// Request handlers for the suggestion service. Handlers are safe to call
/// from many threads; each request reads one snapshot for its whole duration.
class SuggestService {
public:
    explicit SuggestService(ServiceConfig config);

    void publish(std::shared_ptr<const Snapshot> snapshot);
    std::shared_ptr<const Snapshot> snapshot() const;

    Response handle_suggest(const std::optional<std::string>& q,
                            const std::optional<std::string>& n);
    Response handle_health();
    Response handle_stats();
    /// Rebuilds from the configured corpus path and swaps it in.
    Response handle_reload();

    /// Registers GET /suggest, /healthz, /stats and POST /admin/reload.
    void mount(httplib::Server& server);

    const ServiceConfig& config() const { return config_; }

private:
    ServiceConfig config_;
    mutable std::mutex snapshot_mutex_;
    std::shared_ptr<const Snapshot> snapshot_;

    std::atomic<std::uint64_t> total_requests_{0};
    std::atomic<std::uint64_t> suggest_requests_{0};
    LatencyHistogram suggest_latency_;
};

/// Runs the same lookup as /suggest: exact top-k, or the stage union in fuzzy
/// mode. The query is normalized like corpus text.
std::vector<Suggestion> lookup(const Snapshot& snapshot, std::string_view q, std::size_t k,
                               bool fuzzy);

}  // namespace autocomplete
