#include "stabrbm/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stabrbm {

namespace {

int mod(int a, int m) {
    int r = a % m;
    return r < 0 ? r + m : r;
}

bool is_prime(int d) {
    if (d < 2) return false;
    for (int f = 2; f * f <= d; ++f)
        if (d % f == 0) return false;
    return true;
}

// Inverse of a mod prime p.
int inv_mod(int a, int p) {
    int r = 1, e = p - 2, base = mod(a, p);
    while (e) {
        if (e & 1) r = int(std::int64_t(r) * base % p);
        base = int(std::int64_t(base) * base % p);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool PauliString::identity() const {
    for (int i = 0; i < n; ++i)
        if (x[i] || z[i]) return false;
    return true;
}

int PauliString::weight() const {
    int w = 0;
    for (int i = 0; i < n; ++i)
        if (x[i] || z[i]) ++w;
    return w;
}

std::vector<int> PauliString::support() const {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
        if (x[i] || z[i]) s.push_back(i);
    return s;
}

PauliString PauliString::restrict_to(const std::vector<int>& sites) const {
    PauliString r(int(sites.size()), d);
    int ph = 0;
    for (std::size_t k = 0; k < sites.size(); ++k) {
        int i = sites[k];
        if (i < 0 || i >= n) throw std::out_of_range("restrict_to: site out of range");
        r.x[k] = x[i];
        r.z[k] = z[i];
        ph += x[i] * z[i];
    }
    r.phase = mod(ph, 2 * d);
    return r;
}

std::complex<double> tau_power(int d, int e) {
    double arg = std::numbers::pi * double(mod(e, 2 * d)) / double(d);
    return {std::cos(arg), std::sin(arg)};
}

PauliString pauli_from_string(const std::string& s) {
    PauliString p(int(s.size()), 2);
    for (std::size_t i = 0; i < s.size(); ++i) {
        switch (s[i]) {
            case 'I': break;
            case 'X': p.x[i] = 1; break;
            case 'Z': p.z[i] = 1; break;
            case 'Y':
                p.x[i] = 1;
                p.z[i] = 1;
                p.phase = mod(p.phase + 1, 4);
                break;
            default:
                throw std::invalid_argument("pauli_from_string: bad character");
        }
    }
    return p;
}

std::string pauli_to_string(const PauliString& p) {
    if (p.d != 2) throw std::invalid_argument("pauli_to_string: d=2 only");
    std::string s(p.n, 'I');
    for (int i = 0; i < p.n; ++i) {
        if (p.x[i] && p.z[i]) s[i] = 'Y';
        else if (p.x[i]) s[i] = 'X';
        else if (p.z[i]) s[i] = 'Z';
    }
    return s;
}

PauliString pauli_mul(const PauliString& a, const PauliString& b) {
    if (a.n != b.n || a.d != b.d)
        throw std::invalid_argument("pauli_mul: dimension mismatch");
    PauliString r(a.n, a.d);
    int cross = 0;  // from moving b's X part across a's Z part: Z^z X^x = w^{zx} X^x Z^z
    for (int i = 0; i < a.n; ++i) {
        r.x[i] = mod(a.x[i] + b.x[i], a.d);
        r.z[i] = mod(a.z[i] + b.z[i], a.d);
        cross += a.z[i] * b.x[i];
    }
    r.phase = mod(a.phase + b.phase + 2 * cross, 2 * a.d);
    return r;
}

int commute_exponent(const PauliString& a, const PauliString& b) {
    if (a.n != b.n || a.d != b.d)
        throw std::invalid_argument("commute_exponent: dimension mismatch");
    int e = 0;
    for (int i = 0; i < a.n; ++i) e += a.x[i] * b.z[i] - a.z[i] * b.x[i];
    return mod(e, a.d);
}

bool commutes(const PauliString& a, const PauliString& b) {
    return commute_exponent(a, b) == 0;
}

BasisAction apply_to_basis(const PauliString& p, const std::vector<int>& v) {
    if (int(v.size()) != p.n)
        throw std::invalid_argument("apply_to_basis: configuration length mismatch");
    BasisAction out;
    out.v.resize(p.n);
    int zdot = 0;
    for (int i = 0; i < p.n; ++i) {
        zdot += p.z[i] * v[i];
        out.v[i] = mod(v[i] + p.x[i], p.d);
    }
    out.lambda = tau_power(p.d, mod(p.phase + 2 * zdot, 2 * p.d));
    return out;
}

std::string group_class_name(GroupClass c) {
    switch (c) {
        case GroupClass::SX: return "S_X";
        case GroupClass::SY: return "S_Y";
        case GroupClass::SZ: return "S_Z";
        case GroupClass::XZ: return "X|Z";
        case GroupClass::YZ: return "Y|Z";
        case GroupClass::XY: return "X|Y";
        case GroupClass::MIXED: return "MIXED";
    }
    return "?";
}

GenType generator_type(const PauliString& p) {
    bool anyx = false, anyz = false, anyy = false;
    for (int i = 0; i < p.n; ++i) {
        if (p.x[i] && p.z[i]) anyy = true;
        else if (p.x[i]) anyx = true;
        else if (p.z[i]) anyz = true;
    }
    if (anyy && p.d == 2 && !anyx && !anyz) return GenType::Y;
    if (anyy) return GenType::OTHER;
    if (anyx && anyz) return GenType::OTHER;
    if (anyx) return GenType::X;
    return GenType::Z;  // pure Z (or identity)
}

GroupClass classify(const StabilizerGroup& g) {
    bool hx = false, hy = false, hz = false;
    for (const auto& p : g.generators) {
        switch (generator_type(p)) {
            case GenType::X: hx = true; break;
            case GenType::Y: hy = true; break;
            case GenType::Z: hz = true; break;
            case GenType::OTHER: return GroupClass::MIXED;
        }
    }
    if (hx && hy && hz) return GroupClass::MIXED;
    if (hx && hz) return GroupClass::XZ;
    if (hy && hz) return GroupClass::YZ;
    if (hx && hy) return GroupClass::XY;
    if (hy) return GroupClass::SY;
    if (hz) return GroupClass::SZ;
    return GroupClass::SX;  // also the all-identity / empty case
}

int symplectic_rank(const std::vector<PauliString>& gens, int n, int d) {
    if (!is_prime(d))
        throw std::domain_error("rank undefined over Z_d, d composite");
    std::vector<std::vector<int>> rows;
    rows.reserve(gens.size());
    for (const auto& p : gens) {
        std::vector<int> r(2 * n);
        for (int i = 0; i < n; ++i) {
            r[i] = mod(p.x[i], d);
            r[n + i] = mod(p.z[i], d);
        }
        rows.push_back(std::move(r));
    }
    int rank = 0;
    for (int c = 0; c < 2 * n && rank < int(rows.size()); ++c) {
        int piv = -1;
        for (int r = rank; r < int(rows.size()); ++r)
            if (rows[r][c]) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        int iv = inv_mod(rows[rank][c], d);
        for (int j = c; j < 2 * n; ++j)
            rows[rank][j] = mod(rows[rank][j] * iv, d);
        for (int r = 0; r < int(rows.size()); ++r) {
            if (r == rank || !rows[r][c]) continue;
            int f = rows[r][c];
            for (int j = c; j < 2 * n; ++j)
                rows[r][j] = mod(rows[r][j] - f * rows[rank][j], d);
        }
        ++rank;
    }
    return rank;
}

int independent_rank(const StabilizerGroup& g) {
    return symplectic_rank(g.generators, g.n, g.d);
}

std::vector<int> count_incidence(const StabilizerGroup& g, GenType type) {
    std::vector<int> c(g.n, 0);
    for (const auto& p : g.generators) {
        if (generator_type(p) != type) continue;
        for (int i = 0; i < g.n; ++i)
            if (p.x[i] || p.z[i]) ++c[i];
    }
    return c;
}

void check_group(const StabilizerGroup& g) {
    for (std::size_t i = 0; i < g.generators.size(); ++i) {
        if (g.generators[i].n != g.n || g.generators[i].d != g.d)
            throw std::invalid_argument("group: generator shape mismatch");
        for (std::size_t j = i + 1; j < g.generators.size(); ++j) {
            if (!commutes(g.generators[i], g.generators[j])) {
                std::string a = i < g.labels.size() ? g.labels[i] : std::to_string(i);
                std::string b = j < g.labels.size() ? g.labels[j] : std::to_string(j);
                throw std::invalid_argument("group: generators do not commute: " + a + ", " + b);
            }
        }
    }
    if (independent_rank(g) != int(g.generators.size()))
        throw std::invalid_argument("group: generators not independent");
}

}  // namespace stabrbm
