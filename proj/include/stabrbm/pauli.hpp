#pragma once

#include <complex>
#include <string>
#include <vector>

namespace stabrbm {

// Generalized Pauli string in symplectic form.
// Operator = tau^phase * prod_i X_i^{x[i]} Z_i^{z[i]},
// tau = exp(i*pi/d) (tau = i for qubits), phase stored mod 2d.
struct PauliString {
    int n = 0;
    int d = 2;
    std::vector<int> x;  // exponents mod d
    std::vector<int> z;  // exponents mod d
    int phase = 0;       // exponent of tau, mod 2d

    PauliString() = default;
    PauliString(int n_, int d_ = 2)
        : n(n_), d(d_), x(n_, 0), z(n_, 0), phase(0) {}

    bool identity() const;
    int weight() const;  // number of nontrivially acted qudits
    std::vector<int> support() const;

    // Restriction to a site subset (truncates x,z; phase = Hermitian
    // convention: sum_i x_i*z_i over the kept sites, mod 2d).
    PauliString restrict_to(const std::vector<int>& sites) const;
};

std::complex<double> tau_power(int d, int e);

// Build a qubit (d=2) Pauli string from characters I,X,Y,Z.
// Y carries the Hermitian phase convention i*X*Z (tau exponent +1 per Y).
PauliString pauli_from_string(const std::string& s);
std::string pauli_to_string(const PauliString& p);

PauliString pauli_mul(const PauliString& a, const PauliString& b);

// omega-exponent of the commutation phase: a*b = omega^e * b*a,
// e = <a.x, b.z> - <a.z, b.x> mod d.
int commute_exponent(const PauliString& a, const PauliString& b);
bool commutes(const PauliString& a, const PauliString& b);

// Action on a computational basis configuration (digits 0..d-1):
// P|v> = lambda |v'>.  For d=2 digit 0 is spin +1, digit 1 is spin -1.
struct BasisAction {
    std::vector<int> v;
    std::complex<double> lambda;
};
BasisAction apply_to_basis(const PauliString& p, const std::vector<int>& v);

enum class GroupClass { SX, SY, SZ, XZ, YZ, XY, MIXED };
std::string group_class_name(GroupClass c);

struct StabilizerGroup {
    int n = 0;
    int d = 2;
    std::vector<PauliString> generators;
    std::vector<std::string> labels;

    std::size_t size() const { return generators.size(); }
};

// Per-generator type used by classify(): pure X (z = 0), pure Z (x = 0),
// pure Y (d = 2 and x == z on the support), otherwise mixed.
enum class GenType { X, Y, Z, OTHER };
GenType generator_type(const PauliString& p);

GroupClass classify(const StabilizerGroup& g);

// Symplectic rank over Z_d (prime d only).
int independent_rank(const StabilizerGroup& g);
int symplectic_rank(const std::vector<PauliString>& gens, int n, int d);

// Entry i = number of generators of the given type acting on qudit i.
std::vector<int> count_incidence(const StabilizerGroup& g, GenType type);

// Throws std::invalid_argument naming the offending pair/generator.
void check_group(const StabilizerGroup& g);

}  // namespace stabrbm
