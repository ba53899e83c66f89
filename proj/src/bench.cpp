#include "autocomplete/bench.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "json.hpp"

namespace autocomplete {

std::vector<std::string> make_workload(const Index& index, std::size_t count,
                                       std::uint64_t seed) {
    std::vector<std::string> queries;
    if (index.empty()) return queries;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, index.size() - 1);
    std::uniform_int_distribution<std::size_t> prefix_len(1, 6);
    queries.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::string& text = index.entry(pick(rng)).text;
        queries.push_back(text.substr(0, std::min(text.size(), prefix_len(rng))));
    }
    return queries;
}

double percentile(std::vector<double> samples, double p) {
    if (samples.empty()) return 0.0;
    const auto rank = static_cast<std::size_t>(
        std::ceil(p / 100.0 * static_cast<double>(samples.size())));
    const std::size_t pos = rank == 0 ? 0 : rank - 1;
    std::nth_element(samples.begin(), samples.begin() + pos, samples.end());
    return samples[pos];
}

std::size_t peak_rss_bytes() {
    rusage usage{};
    if (getrusage(RUSAGE_SELF, &usage) != 0) return 0;
    return static_cast<std::size_t>(usage.ru_maxrss) * 1024;
}

BenchReport run_bench(const Index& index, std::span<const std::string> workload,
                      std::size_t k, int threads) {
    using clock = std::chrono::steady_clock;
    BenchReport report;
    report.corpus_size = index.size();
    report.k = k;
    report.query_count = workload.size();
    report.threads = std::max(threads, 1);

    std::vector<double> latency_us(workload.size());
    std::size_t total_results = 0;
    const auto count = static_cast<std::ptrdiff_t>(workload.size());
    const auto start = clock::now();
#pragma omp parallel for schedule(dynamic, 256) num_threads(report.threads) \
    reduction(+ : total_results) if (report.threads > 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto t0 = clock::now();
        total_results += top_k(index, workload[i], k).size();
        const auto t1 = clock::now();
        latency_us[i] = std::chrono::duration<double, std::micro>(t1 - t0).count();
    }
    const auto stop = clock::now();

    report.wall_seconds = std::chrono::duration<double>(stop - start).count();
    report.qps = report.wall_seconds > 0.0
                     ? static_cast<double>(workload.size()) / report.wall_seconds
                     : 0.0;
    report.p50_us = percentile(latency_us, 50.0);
    report.p95_us = percentile(latency_us, 95.0);
    report.p99_us = percentile(latency_us, 99.0);
    report.peak_rss_bytes = peak_rss_bytes();
    report.total_results = total_results;
    return report;
}

std::string to_json(const BenchReport& report) {
    nlohmann::ordered_json j;
    j["n"] = report.corpus_size;
    j["k"] = report.k;
    j["queries"] = report.query_count;
    j["threads"] = report.threads;
    j["wall_seconds"] = report.wall_seconds;
    j["qps"] = report.qps;
    j["p50_us"] = report.p50_us;
    j["p95_us"] = report.p95_us;
    j["p99_us"] = report.p99_us;
    j["peak_rss_bytes"] = report.peak_rss_bytes;
    j["total_results"] = report.total_results;
    return j.dump();
}

}  // namespace autocomplete
