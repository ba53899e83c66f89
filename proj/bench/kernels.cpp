// Serial vs OpenMP kernels: tree build and batched top-k queries.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"

#include "autocomplete/bench.hpp"
#include "autocomplete/corpus_gen.hpp"
#include "autocomplete/index.hpp"

namespace ac = autocomplete;

namespace {

template <class F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compare serial and parallel index kernels"};
    std::size_t n = 1'000'000;
    std::size_t queries = 200'000;
    std::size_t k = 32;
    int threads = 0;
    int reps = 3;
    app.add_option("--n", n, "Corpus size");
    app.add_option("--queries", queries, "Batch size");
    app.add_option("--k", k, "Result count");
    app.add_option("--threads", threads, "OpenMP threads (0 = runtime default)");
    app.add_option("--reps", reps, "Repetitions; best time is reported");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
    const int used = omp_get_max_threads();
#else
    const int used = 1;
#endif

    const auto entries = ac::generate_corpus(n, 1);
    ac::Index index;
    const double build_serial = best_of(reps, [&] { index = ac::build_index_serial(entries); });
    const double build_parallel = best_of(reps, [&] { index = ac::build_index(entries); });

    const auto workload = ac::make_workload(index, queries, 2);
    std::size_t check_serial = 0, check_parallel = 0;
    const double query_serial = best_of(reps, [&] {
        check_serial = ac::top_k_batch_serial(index, workload, k).size();
    });
    const double query_parallel = best_of(reps, [&] {
        check_parallel = ac::top_k_batch(index, workload, k, threads).size();
    });
    if (check_serial != check_parallel) {
        std::fprintf(stderr, "batch result counts differ\n");
        return 1;
    }

    std::printf("n=%zu queries=%zu k=%zu threads=%d\n", n, queries, k, used);
    std::printf("%-14s %12s %12s %8s\n", "kernel", "serial_s", "parallel_s", "speedup");
    std::printf("%-14s %12.4f %12.4f %8.2f\n", "build_index", build_serial, build_parallel,
                build_serial / build_parallel);
    std::printf("%-14s %12.4f %12.4f %8.2f\n", "top_k_batch", query_serial, query_parallel,
                query_serial / query_parallel);
    return 0;
}
