// Timing comparison of the OpenMP kernels against the serial reference
// implementations: Pauli application on a dense state and RBM full-state
// enumeration (gray-code parallel vs naive).
#include <chrono>
#include <cstdio>
#include <random>

#include "stabrbm/dense.hpp"
#include "stabrbm/lattice.hpp"
#include "stabrbm/rbm.hpp"

using namespace stabrbm;
using clk = std::chrono::steady_clock;

namespace {

double secs(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

template <typename F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = clk::now();
        f();
        best = std::min(best, secs(t0));
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 20;
    std::mt19937_64 rng(1);
    std::normal_distribution<double> nd(0.0, 1.0);

    DenseState s{n, 2};
    for (auto& a : s.amp) a = {nd(rng), nd(rng)};
    PauliString p(n, 2);
    for (int i = 0; i < n; ++i) {
        p.x[i] = rng() & 1;
        p.z[i] = rng() & 1;
    }
    double tp = best_of(5, [&] { s = apply_pauli(p, s); });
    double ts = best_of(5, [&] { s = apply_pauli_serial(p, s); });
    std::printf("apply_pauli       n=%d  parallel %8.4f s  serial %8.4f s  speedup %.2fx\n",
                n, tp, ts, ts / tp);

    RbmState rbm(n, n, 2);
    for (auto& v : rbm.a) v = {nd(rng) * 0.1, nd(rng) * 0.1};
    for (auto& v : rbm.b) v = {nd(rng) * 0.1, nd(rng) * 0.1};
    for (auto& v : rbm.W) v = {nd(rng) * 0.1, nd(rng) * 0.1};
    DenseState out;
    double tg = best_of(3, [&] { out = full_state(rbm); });
    double tn = best_of(3, [&] { out = full_state_naive(rbm); });
    std::printf("full_state        n=%d  gray     %8.4f s  naive  %8.4f s  speedup %.2fx\n",
                n, tg, tn, tn / tg);

    auto code = build_toric(3, 3);
    double tc = best_of(3, [&] { out = code_state(code.group); });
    std::printf("code_state 3x3 torus (n=18)        %8.4f s\n", tc);
    return 0;
}
