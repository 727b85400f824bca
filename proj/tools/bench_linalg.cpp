/* Benchmark comparing the OpenMP elimination kernels against the serial
   reference implementation, plus an end-to-end resolution timing.
   Run: build/bench_linalg [--seed S] */

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "nilcoh/fp_matrix.hpp"
#include "nilcoh/lie_algebra.hpp"
#include "nilcoh/resolution.hpp"
#include "nilcoh/restricted_env.hpp"

using namespace nilcoh;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

FpMatrix random_matrix(std::size_t rows, std::size_t cols, double density,
                       std::uint32_t p, std::mt19937_64& rng) {
    FpMatrix m(rows, cols, PrimeField(p));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<std::uint32_t> val(1, p - 1);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (coin(rng) < density) m.set(r, c, val(rng));
    return m;
}

void bench_rref(std::size_t n, double density, std::uint32_t p,
                std::mt19937_64& rng) {
    FpMatrix m = random_matrix(n, n, density, p, rng);
    auto t0 = Clock::now();
    auto serial = rref_serial(m);
    double ts = seconds_since(t0);
    t0 = Clock::now();
    auto parallel = rref(m);
    double tp = seconds_since(t0);
    if (!(serial.matrix == parallel.matrix) || serial.pivots != parallel.pivots) {
        std::printf("MISMATCH at n=%zu density=%.2f\n", n, density);
        std::exit(1);
    }
    std::printf("rref      n=%5zu density=%.2f p=%u  serial %8.3fs  parallel %8.3fs  speedup %5.2fx  rank %zu\n",
                n, density, p, ts, tp, tp > 0 ? ts / tp : 0.0, serial.pivots.size());
}

void bench_resolution(const std::string& name, std::uint32_t p, std::size_t degree) {
    LieAlgebra a = catalogue(name, p);
    ResolutionOptions opts;
    opts.max_degree = degree;
    auto t0 = Clock::now();
    auto r = minimal_resolution(UAlgebra(a), opts);
    double t = seconds_since(t0);
    std::printf("resolve   %s p=%u to degree %zu: %8.3fs, betti", name.c_str(), p, degree, t);
    for (auto b : r.betti()) std::printf(" %zu", b);
    std::printf("\n");
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t seed = 20240817;
    for (int i = 1; i + 1 < argc; i += 2)
        if (std::string(argv[i]) == "--seed") seed = std::stoull(argv[i + 1]);
    std::mt19937_64 rng(seed);

    std::printf("elimination kernels, serial reference vs OpenMP\n");
    bench_rref(200, 0.50, 5, rng);
    bench_rref(400, 0.20, 5, rng);
    bench_rref(800, 0.05, 3, rng);
    bench_rref(1200, 0.02, 3, rng);

    std::printf("\nminimal resolutions over the restricted envelope\n");
    bench_resolution("L3_2", 3, 5);
    bench_resolution("L4_3", 5, 4);
    bench_resolution("L5_9", 3, 3);
    return 0;
}
