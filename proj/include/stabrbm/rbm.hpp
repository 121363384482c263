#pragma once

#include <complex>
#include <string>
#include <vector>

#include "stabrbm/dense.hpp"

namespace stabrbm {

// Complex-parameter RBM wavefunction
//   Psi(v) = exp(sum_i a_i s_i) * prod_j 2 cosh(b_j + sum_i W_ji s_i),
// s_i = +-1 for d = 2 (digit 0 -> +1), s_i = v_i in {0..d-1} for d > 2;
// hidden units are always two-valued. Amplitudes are unnormalized.
struct RbmState {
    int n = 0;
    int d = 2;
    std::vector<std::complex<double>> a;  // n visible biases
    std::vector<std::complex<double>> b;  // m hidden biases
    std::vector<std::complex<double>> W;  // m x n row-major
    std::vector<std::string> hidden_labels;
    bool y_basis = false;  // amplitudes live in the per-qubit sigma_y basis

    RbmState() = default;
    RbmState(int n_, int m_, int d_ = 2)
        : n(n_), d(d_), a(n_, 0.0), b(m_, 0.0), W(std::size_t(m_) * n_, 0.0) {}

    int m() const { return int(b.size()); }
    void add_hidden(const std::vector<std::complex<double>>& row,
                    std::complex<double> bias, const std::string& label = "");
};

// Digits (0..d-1) -> coupling values s_i.
double visible_value(int digit, int d);

std::complex<double> log_amplitude(const RbmState& s, const std::vector<int>& v);
std::complex<double> amplitude(const RbmState& s, const std::vector<int>& v);

// Full enumeration; gray-code incremental kernel (OpenMP over segments)
// for d = 2, naive parallel loop otherwise. Raw RBM-basis amplitudes.
DenseState full_state(const RbmState& s);
DenseState full_state_naive(const RbmState& s);

// full_state followed by the y-basis transform when s.y_basis is set.
DenseState rbm_to_dense(const RbmState& s);

// Embed a part over `sites` into an n_total-visible RBM (a adds on shared
// sites; hidden units concatenate with embedded weight rows).
struct RbmPart {
    RbmState part;
    std::vector<int> sites;
};
RbmState compose(const std::vector<RbmPart>& parts, int n_total);

// Excitation string operators (d = 2).
RbmState apply_string_z(const RbmState& s, const std::vector<int>& path);
RbmState apply_string_x(const RbmState& s, const std::vector<int>& path);

}  // namespace stabrbm
