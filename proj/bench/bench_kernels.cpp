// Serial vs OpenMP timings for the hot kernels on tensor products of quaternion algebras.
#include "azulift/kernels.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

using namespace azulift;

namespace {

template <class F>
double seconds(F&& f, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

StructAlgebra quaternion_power(const TowerPtr& t, int factors) {
    const Vec a = t->add(t->from_int(-1), t->eps_power(1));
    const Vec b = t->from_int(3);
    StructAlgebra q = quaternion_algebra(t, a, b);
    StructAlgebra acc = q;
    for (int i = 1; i < factors; ++i) acc = tensor(acc, q);
    return acc;
}

void row(const char* name, double serial, double parallel, bool agree) {
    std::printf("%-22s %10.4f %10.4f %8.2fx  %s\n", name, serial, parallel, serial / parallel, agree ? "agree" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    const int trunc = argc > 1 ? std::atoi(argv[1]) : 3;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
    TowerPtr t = Tower::truncated(Field::rationals(), trunc);
    const StructAlgebra a = quaternion_power(t, 2);
    const StructAlgebra b = quaternion_power(t, 3);
    std::printf("threads %d, N = %d, dims %zu and %zu\n", omp_get_max_threads(), trunc, a.dim(), b.dim());
    std::printf("%-22s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");

    bool s1 = false, p1 = false;
    const double ts1 = seconds([&] { s1 = kernels::associative_full_serial(a); }, reps);
    const double tp1 = seconds([&] { p1 = kernels::associative_full_parallel(a); }, reps);
    row("associative_full", ts1, tp1, s1 == p1 && s1);

    const std::vector<Vec> gens = generating_set(b);
    bool s2 = false, p2 = false;
    const double ts2 = seconds([&] { s2 = kernels::left_nucleus_serial(b, gens); }, reps);
    const double tp2 = seconds([&] { p2 = kernels::left_nucleus_parallel(b, gens); }, reps);
    row("left_nucleus", ts2, tp2, s2 == p2 && s2);

    ProductTable st, pt;
    const double ts3 = seconds([&] { st = kernels::tensor_table_serial(a, a); }, reps);
    const double tp3 = seconds([&] { pt = kernels::tensor_table_parallel(a, a); }, reps);
    row("tensor_table", ts3, tp3, st == pt);
    return (s1 == p1 && s2 == p2 && st == pt) ? 0 : 1;
}
