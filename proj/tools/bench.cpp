// Timing harness for the two diagonalizers on random patterns. Not part of
// the test suite; run manually to see how the greedy passes scale.

#include <chrono>
#include <cstdio>

#include <fqrank/diagonalize.hpp>
#include <fqrank/rng.hpp>

using namespace fqrank;

namespace {

SupportPattern random_pattern(int n, int k, double density, std::uint64_t seed) {
    SplitMix64 gen(seed);
    for (;;) {
        SupportPattern p(n, k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < k; ++j)
                p.set_bit(i, j, gen.below(1000) < static_cast<std::uint32_t>(density * 1000));
        if (has_full_rank_realization(p)) return p;
    }
}

template <typename F>
double time_ms(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
    const Field f2(2);
    std::printf("%6s %10s %16s %18s\n", "n=k", "density", "single_ms", "parallel_ms");
    for (int n : {4, 8, 12, 16, 24, 32}) {
        const auto p = random_pattern(n, n, 0.4, 42 + n);
        const double ts = time_ms([&] { greedy_single(p, f2); });
        double tp = -1.0;
        if (n <= 16) tp = time_ms([&] { greedy_parallel(p, f2); });
        if (tp >= 0)
            std::printf("%6d %10.2f %16.3f %18.3f\n", n, 0.4, ts, tp);
        else
            std::printf("%6d %10.2f %16.3f %18s\n", n, 0.4, ts, "(skipped)");
    }
    return 0;
}
