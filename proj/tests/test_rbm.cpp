#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "stabrbm/analytic.hpp"
#include "stabrbm/dense.hpp"
#include "stabrbm/lattice.hpp"
#include "stabrbm/pauli.hpp"
#include "stabrbm/rbm.hpp"

using namespace stabrbm;
using cplx = std::complex<double>;

namespace {

const double pi = 3.14159265358979323846;

RbmState random_rbm(int n, int m, unsigned seed, int d = 2) {
    RbmState s(n, m, d);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 0.4);
    for (auto& v : s.a) v = {nd(rng), nd(rng)};
    for (auto& v : s.b) v = {nd(rng), nd(rng)};
    for (auto& v : s.W) v = {nd(rng), nd(rng)};
    return s;
}

// largest amplitude difference relative to the largest amplitude
double max_diff(const DenseState& a, const DenseState& b) {
    REQUIRE(a.dim() == b.dim());
    double worst = 0, scale = 0;
    for (std::size_t k = 0; k < a.dim(); ++k) {
        worst = std::max(worst, std::abs(a.amp[k] - b.amp[k]));
        scale = std::max(scale, std::abs(a.amp[k]));
    }
    return scale > 0 ? worst / scale : worst;
}

}  // namespace

TEST_CASE("amplitudes with no hidden units are visible-bias exponentials") {
    RbmState s(1, 0, 2);
    CHECK(std::abs(amplitude(s, {0}) - 1.0) < 1e-15);
    CHECK(std::abs(amplitude(s, {1}) - 1.0) < 1e-15);
    s.a[0] = cplx(0, pi / 4);
    CHECK(std::abs(amplitude(s, {0}) - std::exp(cplx(0, pi / 4))) < 1e-15);
    CHECK(std::abs(amplitude(s, {1}) - std::exp(cplx(0, -pi / 4))) < 1e-15);
}

TEST_CASE("a single hidden unit contributes 2cosh") {
    RbmState s(1, 1, 2);
    s.b[0] = cplx(0, -pi / 2);
    s.W[0] = cplx(0, pi / 2);
    // digit 0 -> spin +1: theta = 0 -> 2; digit 1 -> theta = -i pi -> -2
    CHECK(std::abs(amplitude(s, {0}) - 2.0) < 1e-12);
    CHECK(std::abs(amplitude(s, {1}) + 2.0) < 1e-12);
}

TEST_CASE("plaquette hidden unit kills odd parities") {
    // b = -i pi, W = i pi/4 on 4 spins: amplitude 0 unless the product of
    // spins is +1
    RbmState s(4, 0, 2);
    s.add_hidden({cplx(0, pi / 4), cplx(0, pi / 4), cplx(0, pi / 4), cplx(0, pi / 4)},
                 cplx(0, -pi), "B");
    CHECK(s.m() == 1);
    CHECK(s.hidden_labels == std::vector<std::string>{"B"});
    for (std::size_t k = 0; k < 16; ++k) {
        auto v = index_to_config(k, 4, 2);
        int par = (v[0] + v[1] + v[2] + v[3]) % 2;
        double mag = std::abs(amplitude(s, v));
        if (par)
            CHECK(mag < 1e-12);
        else
            CHECK(mag > 1.0);
    }
}

TEST_CASE("trivial hidden unit doubles every amplitude") {
    RbmState s = random_rbm(3, 2, 5);
    DenseState before = full_state(s);
    s.add_hidden({0, 0, 0}, 0.0);
    DenseState after = full_state(s);
    for (std::size_t k = 0; k < before.dim(); ++k)
        CHECK(std::abs(after.amp[k] - 2.0 * before.amp[k]) < 1e-12);
}

TEST_CASE("gray-code enumeration matches the naive kernel") {
    for (unsigned seed : {1u, 2u, 3u}) {
        RbmState s = random_rbm(10, 7, seed);
        DenseState a = full_state(s);
        DenseState b = full_state_naive(s);
        CHECK(max_diff(a, b) < 1e-12);
    }
    // qudit amplitudes use the same code path pair
    RbmState q = random_rbm(5, 4, 7, 3);
    CHECK(max_diff(full_state(q), full_state_naive(q)) < 1e-12);
}

TEST_CASE("visible values map digits to couplings") {
    CHECK(visible_value(0, 2) == 1.0);
    CHECK(visible_value(1, 2) == -1.0);
    CHECK(visible_value(2, 3) == 2.0);
}

TEST_CASE("compose embeds parts and sums shared visible biases") {
    RbmState p1 = random_rbm(2, 1, 21);
    RbmState p2 = random_rbm(2, 2, 22);
    RbmState c = compose({{p1, {0, 1}}, {p2, {1, 2}}}, 3);
    CHECK(c.n == 3);
    CHECK(c.m() == 3);
    for (std::size_t k = 0; k < 8; ++k) {
        auto v = index_to_config(k, 3, 2);
        cplx want = amplitude(p1, {v[0], v[1]}) * amplitude(p2, {v[1], v[2]});
        CHECK(std::abs(amplitude(c, v) - want) < 1e-12);
    }
}

TEST_CASE("identity embedding leaves the state unchanged") {
    RbmState s = random_rbm(4, 3, 31);
    RbmState c = compose({{s, {0, 1, 2, 3}}}, 4);
    CHECK(max_diff(full_state(s), full_state(c)) < 1e-12);
}

TEST_CASE("z-string equals the Pauli string on the dense state") {
    LatticeCode code = build_toric(2, 2);
    RbmState base = construct(code.group);
    for (std::vector<int> path : {std::vector<int>{0}, std::vector<int>{1, 2, 5}}) {
        RbmState excited = apply_string_z(base, path);
        PauliString p(code.group.n, 2);
        for (int i : path) p.z[i] = 1;
        DenseState want = apply_pauli(p, rbm_to_dense(base));
        CHECK(std::abs(fidelity(rbm_to_dense(excited), want) - 1.0) < 1e-10);
    }
}

TEST_CASE("x-string equals the Pauli string on the dense state") {
    LatticeCode code = build_toric(2, 2);
    RbmState base = construct(code.group);
    std::vector<int> path = {0, 3};
    RbmState excited = apply_string_x(base, path);
    PauliString p(code.group.n, 2);
    for (int i : path) p.x[i] = 1;
    DenseState want = apply_pauli(p, rbm_to_dense(base));
    CHECK(std::abs(fidelity(rbm_to_dense(excited), want) - 1.0) < 1e-10);
}

TEST_CASE("x-string is an involution on the parameters") {
    RbmState s = random_rbm(5, 3, 41);
    RbmState twice = apply_string_x(apply_string_x(s, {1, 3}), {1, 3});
    for (int i = 0; i < s.n; ++i) CHECK(twice.a[i] == s.a[i]);
    for (int j = 0; j < s.m(); ++j) CHECK(twice.b[j] == s.b[j]);
    for (std::size_t w = 0; w < s.W.size(); ++w) CHECK(twice.W[w] == s.W[w]);
}

TEST_CASE("empty paths change nothing") {
    RbmState s = random_rbm(3, 2, 51);
    CHECK(max_diff(full_state(apply_string_z(s, {})), full_state(s)) < 1e-15);
    CHECK(max_diff(full_state(apply_string_x(s, {})), full_state(s)) < 1e-15);
}
