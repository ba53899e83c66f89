#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "autocomplete/index.hpp"

namespace autocomplete {

struct BenchReport {
    std::size_t corpus_size = 0;
    std::size_t k = 0;
    std::size_t query_count = 0;
    int threads = 1;
    double wall_seconds = 0.0;
    double qps = 0.0;
    double p50_us = 0.0;
    double p95_us = 0.0;
    double p99_us = 0.0;
    std::size_t peak_rss_bytes = 0;
    std::size_t total_results = 0;
};

/// Samples `count` phrases from the index with replacement and truncates each
/// to a random prefix of 1-6 bytes. Depends only on (index contents, count, seed).
std::vector<std::string> make_workload(const Index& index, std::size_t count,
                                       std::uint64_t seed);

/// Runs every query through top_k and times each one. threads > 1 spreads the
/// queries over OpenMP threads sharing the index.
BenchReport run_bench(const Index& index, std::span<const std::string> workload,
                      std::size_t k, int threads = 1);

/// Nearest-rank percentile of an unsorted sample, p in [0, 100].
double percentile(std::vector<double> samples, double p);

std::size_t peak_rss_bytes();

std::string to_json(const BenchReport& report);

}  // namespace autocomplete
