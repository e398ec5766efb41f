// Serial vs OpenMP timing for the data-parallel kernels.

#include <chrono>
#include <cstdio>

#include "rbc/charops.hpp"
#include "rbc/gl3.hpp"
#include "rbc/parallel.hpp"
#include "rbc/verify.hpp"

using namespace rbc;
using clk = std::chrono::steady_clock;

namespace {

template <class F>
double time_ms(F&& fn) {
    auto t0 = clk::now();
    fn();
    auto t1 = clk::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-40s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

// The fixed-point scan kernel (the O(2,1) membership filter), hand-rolled
// here through both loop drivers.
uint64_t o21_scan(bool parallel) {
    const Fq& F = base_field(5);
    Mat phi{};
    phi[2] = 1;
    phi[4] = uint8_t(F.neg(1));
    phi[6] = 1;
    std::vector<uint64_t> counts(par::max_threads(), 0);
    auto body = [&](int64_t idx) {
        Mat m{};
        int64_t t = idx;
        for (int i = 0; i < 9; ++i) { m[i] = uint8_t(t % 5); t /= 5; }
        Mat a = mat_mul(F, m, phi);
        if (mat_mul(F, a, mat_transpose(m)) == phi) ++counts[par::thread_id()];
    };
    if (parallel)
        par::for_n(1953125, body);
    else
        par::for_n_serial(1953125, body);
    uint64_t total = 0;
    for (uint64_t c : counts) total += c;
    return total;
}

uint64_t centralizer_count(bool parallel) {
    const auto& gl3 = gl3_classes(5);
    const Fq& F = base_field(5);
    const Mat rep = gl3.classes()[40].rep;
    std::vector<uint64_t> counts(par::max_threads(), 0);
    auto body = [&](int64_t idx) {
        Mat x{};
        int64_t t = idx;
        for (int i = 0; i < 9; ++i) { x[i] = uint8_t(t % 5); t /= 5; }
        if (mat_mul(F, x, rep) != mat_mul(F, rep, x)) return;
        if (mat_det(F, x) == 0) return;
        ++counts[par::thread_id()];
    };
    if (parallel)
        par::for_n(1953125, body);
    else
        par::for_n_serial(1953125, body);
    uint64_t total = 0;
    for (uint64_t c : counts) total += c;
    return total;
}

} // namespace

int main() {
    std::printf("%-40s %13s %13s %9s\n", "kernel", "serial", "OpenMP", "speedup");

    uint64_t n1 = 0, n2 = 0;
    double s1 = time_ms([&] { n1 = o21_scan(false); });
    double p1 = time_ms([&] { n2 = o21_scan(true); });
    row("O(2,1)(5) fixed-point scan", s1, p1);
    if (n1 != n2 || n1 != 240) {
        std::printf("mismatch: %llu vs %llu\n", (unsigned long long)n1, (unsigned long long)n2);
        return 1;
    }

    double s2 = time_ms([&] { n1 = centralizer_count(false); });
    double p2 = time_ms([&] { n2 = centralizer_count(true); });
    row("GL(3,5) centralizer count", s2, p2);
    if (n1 != n2) return 1;

    // Dixon table of the semidirect product (class-constant kernel inside).
    {
        auto g = build_group("GL2", 5);
        auto sd = build_semidirect(*g);
        sd->classes();
        par::set_threads(1);
        double s3 = time_ms([&] { char_table(*sd); });
        par::set_threads(par::max_threads());
        double p3 = time_ms([&] { char_table(*sd); });
        row("Dixon table of GL(2,5)><eps", s3, p3);
    }

    // Orthogonality verification (pairwise inner products).
    {
        par::set_threads(1);
        double s4 = time_ms([&] { verify_orthogonality(7); });
        par::set_threads(par::max_threads());
        double p4 = time_ms([&] { verify_orthogonality(7); });
        row("orthogonality suite, q = 7", s4, p4);
    }

    return 0;
}
