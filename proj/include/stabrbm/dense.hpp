#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "stabrbm/pauli.hpp"

namespace stabrbm {

// Dense state vector over d^n basis configurations.
// Index = sum_i v_i * d^(n-1-i): qudit 0 is the most significant digit.
struct DenseState {
    int n = 0;
    int d = 2;
    std::vector<std::complex<double>> amp;

    DenseState() = default;
    DenseState(int n_, int d_);

    std::size_t dim() const { return amp.size(); }
};

// Enumeration cap in amplitudes; default 2^24, overridable via STABRBM_CAP.
std::size_t amplitude_cap();
struct CapExceeded : std::runtime_error {
    std::size_t required;
    explicit CapExceeded(std::size_t req);
};
void check_cap(int n, int d);

std::vector<int> index_to_config(std::size_t idx, int n, int d);
std::size_t config_to_index(const std::vector<int>& v, int d);

DenseState apply_pauli(const PauliString& p, const DenseState& s);
DenseState apply_pauli_serial(const PauliString& p, const DenseState& s);

// Joint +1 eigenstate: P_C|r> normalized, sweeping P_j = (1/d) sum_h T_j^h
// generator by generator, |r> the first basis state with nonzero projection.
DenseState code_state(const StabilizerGroup& g);

// <s|P_C|s> / <s|s>
double code_projector_overlap(const StabilizerGroup& g, const DenseState& s);

std::complex<double> expectation(const PauliString& p, const DenseState& s);
std::complex<double> inner(const DenseState& a, const DenseState& b);
double norm2(const DenseState& s);
double fidelity(const DenseState& a, const DenseState& b);
double distance(const DenseState& a, const DenseState& b);

// Code state of the restriction of `stabs` (indices into g.generators;
// empty = all generators intersecting `spins`) to the given spin subset.
// Throws if restrictions fail to commute pairwise ("subsystem not closed").
struct SubsystemState {
    DenseState state;
    int restricted_rank = 0;
    bool unique = false;  // dimension-1 subsystem
};
SubsystemState subsystem_state(const StabilizerGroup& g,
                               const std::vector<int>& spins,
                               const std::vector<int>& stabs = {});

// Apply a single-qudit gate (d x d, row-major) to qudit q.
DenseState apply_single_qudit(const DenseState& s, int q,
                              const std::vector<std::complex<double>>& u);

// Map amplitudes expressed in the per-qubit sigma_y eigenbasis
// (|+y>,(|0>+i|1>)/sqrt2 first) back to the computational basis.
DenseState y_basis_to_computational(const DenseState& s);

void dump_state(const DenseState& s, const std::string& path);
DenseState load_state(const std::string& path);

}  // namespace stabrbm
