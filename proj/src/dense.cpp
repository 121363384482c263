#include "stabrbm/dense.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace stabrbm {

namespace {

constexpr double kNormTol = 1e-12;

std::size_t pow_sz(int d, int n) {
    std::size_t r = 1;
    for (int i = 0; i < n; ++i) r *= std::size_t(d);
    return r;
}

}  // namespace

DenseState::DenseState(int n_, int d_) : n(n_), d(d_) {
    check_cap(n_, d_);
    amp.assign(pow_sz(d_, n_), {0.0, 0.0});
}

std::size_t amplitude_cap() {
    static std::size_t cap = [] {
        if (const char* env = std::getenv("STABRBM_CAP")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && v > 0) return std::size_t(v);
        }
        return std::size_t(1) << 24;
    }();
    return cap;
}

CapExceeded::CapExceeded(std::size_t req)
    : std::runtime_error("enumeration cap exceeded; required " + std::to_string(req) +
                         " amplitudes (set STABRBM_CAP to override)"),
      required(req) {}

void check_cap(int n, int d) {
    std::size_t dim = 1;
    for (int i = 0; i < n; ++i) {
        if (dim > amplitude_cap() / std::size_t(d)) throw CapExceeded(pow_sz(d, n));
        dim *= std::size_t(d);
    }
    if (dim > amplitude_cap()) throw CapExceeded(dim);
}

std::vector<int> index_to_config(std::size_t idx, int n, int d) {
    std::vector<int> v(n);
    for (int i = n - 1; i >= 0; --i) {
        v[i] = int(idx % std::size_t(d));
        idx /= std::size_t(d);
    }
    return v;
}

std::size_t config_to_index(const std::vector<int>& v, int d) {
    std::size_t idx = 0;
    for (int digit : v) idx = idx * std::size_t(d) + std::size_t(digit);
    return idx;
}

namespace {

// out[v + x] += tau^phase * omega^(z.v) * in[v], vectorized over indices.
template <bool Parallel>
void apply_pauli_kernel(const PauliString& p, const DenseState& s, DenseState& out) {
    const int n = s.n, d = s.d;
    const std::size_t dim = s.dim();
    // Precompute stride and the index shift contributed by the X part.
    std::vector<std::size_t> stride(n);
    {
        std::size_t st = 1;
        for (int i = n - 1; i >= 0; --i) {
            stride[i] = st;
            st *= std::size_t(d);
        }
    }
    // All 2d phase values.
    std::vector<std::complex<double>> tau(2 * d);
    for (int e = 0; e < 2 * d; ++e) tau[e] = tau_power(d, e);

#pragma omp parallel for schedule(static) if (Parallel)
    for (std::int64_t idx = 0; idx < std::int64_t(dim); ++idx) {
        std::size_t rem = std::size_t(idx);
        std::size_t target = 0;
        int zdot = 0;
        for (int i = 0; i < n; ++i) {
            int vi = int(rem / stride[i]);
            rem %= stride[i];
            zdot += p.z[i] * vi;
            target += std::size_t((vi + p.x[i]) % d) * stride[i];
        }
        out.amp[target] = tau[(p.phase + 2 * zdot) % (2 * d)] * s.amp[idx];
    }
}

}  // namespace

DenseState apply_pauli(const PauliString& p, const DenseState& s) {
    if (p.n != s.n || p.d != s.d) throw std::invalid_argument("apply_pauli: shape mismatch");
    DenseState out(s.n, s.d);
    apply_pauli_kernel<true>(p, s, out);
    return out;
}

DenseState apply_pauli_serial(const PauliString& p, const DenseState& s) {
    if (p.n != s.n || p.d != s.d) throw std::invalid_argument("apply_pauli: shape mismatch");
    DenseState out(s.n, s.d);
    apply_pauli_kernel<false>(p, s, out);
    return out;
}

std::complex<double> inner(const DenseState& a, const DenseState& b) {
    if (a.n != b.n || a.d != b.d) throw std::invalid_argument("inner: shape mismatch");
    const std::size_t dim = a.dim();
    double re = 0.0, im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : re, im)
    for (std::int64_t i = 0; i < std::int64_t(dim); ++i) {
        std::complex<double> t = std::conj(a.amp[i]) * b.amp[i];
        re += t.real();
        im += t.imag();
    }
    return {re, im};
}

double norm2(const DenseState& s) {
    double r = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : r)
    for (std::int64_t i = 0; i < std::int64_t(s.dim()); ++i) r += std::norm(s.amp[i]);
    return r;
}

namespace {

// s <- (1/d) sum_h T^h s
void project(const StabilizerGroup& g, std::size_t j, DenseState& s) {
    DenseState acc = s;
    DenseState cur = s;
    for (int h = 1; h < g.d; ++h) {
        cur = apply_pauli(g.generators[j], cur);
        for (std::size_t i = 0; i < acc.dim(); ++i) acc.amp[i] += cur.amp[i];
    }
    double inv = 1.0 / double(g.d);
    for (auto& a : acc.amp) a *= inv;
    s = std::move(acc);
}

}  // namespace

DenseState code_state(const StabilizerGroup& g) {
    check_cap(g.n, g.d);
    const std::size_t dim = pow_sz(g.d, g.n);
    for (std::size_t ref = 0; ref < dim; ++ref) {
        DenseState s(g.n, g.d);
        s.amp[ref] = 1.0;
        bool dead = false;
        for (std::size_t j = 0; j < g.generators.size(); ++j) {
            project(g, j, s);
            double nn = norm2(s);
            if (nn < kNormTol) {
                dead = true;
                break;
            }
        }
        if (dead) continue;
        double nn = std::sqrt(norm2(s));
        for (auto& a : s.amp) a /= nn;
        return s;
    }
    throw std::runtime_error("code_state: all basis states project to zero (inconsistent group)");
}

double code_projector_overlap(const StabilizerGroup& g, const DenseState& s) {
    double nn = norm2(s);
    if (nn < kNormTol) throw std::invalid_argument("code_projector_overlap: zero-norm state");
    DenseState proj = s;
    for (std::size_t j = 0; j < g.generators.size(); ++j) project(g, j, proj);
    return inner(s, proj).real() / nn;
}

std::complex<double> expectation(const PauliString& p, const DenseState& s) {
    double nn = norm2(s);
    if (nn < kNormTol) throw std::invalid_argument("expectation: zero-norm state");
    DenseState ps = apply_pauli(p, s);
    return inner(s, ps) / nn;
}

double fidelity(const DenseState& a, const DenseState& b) {
    double na = norm2(a), nb = norm2(b);
    if (na < kNormTol || nb < kNormTol) throw std::invalid_argument("fidelity: zero-norm state");
    return std::norm(inner(a, b)) / (na * nb);
}

double distance(const DenseState& a, const DenseState& b) {
    double f = fidelity(a, b);
    f = std::min(1.0, std::max(0.0, f));
    return std::acos(std::sqrt(f));
}

SubsystemState subsystem_state(const StabilizerGroup& g, const std::vector<int>& spins,
                               const std::vector<int>& stabs) {
    std::vector<bool> in(g.n, false);
    for (int sp : spins) {
        if (sp < 0 || sp >= g.n) throw std::out_of_range("subsystem_state: spin out of range");
        in[sp] = true;
    }
    std::vector<int> chosen = stabs;
    if (chosen.empty()) {
        for (std::size_t j = 0; j < g.generators.size(); ++j) {
            for (int i : g.generators[j].support())
                if (in[i]) {
                    chosen.push_back(int(j));
                    break;
                }
        }
    }
    StabilizerGroup sub;
    sub.n = int(spins.size());
    sub.d = g.d;
    for (int j : chosen) {
        if (j < 0 || j >= int(g.generators.size()))
            throw std::out_of_range("subsystem_state: generator index out of range");
        PauliString r = g.generators[j].restrict_to(spins);
        if (r.identity()) continue;
        sub.generators.push_back(std::move(r));
        sub.labels.push_back(j < int(g.labels.size()) ? g.labels[j] : std::to_string(j));
    }
    for (std::size_t i = 0; i < sub.generators.size(); ++i)
        for (std::size_t j = i + 1; j < sub.generators.size(); ++j)
            if (!commutes(sub.generators[i], sub.generators[j]))
                throw std::invalid_argument("subsystem not closed: restrictions of " +
                                            sub.labels[i] + " and " + sub.labels[j] +
                                            " do not commute");
    SubsystemState out;
    out.restricted_rank = symplectic_rank(sub.generators, sub.n, sub.d);
    out.unique = (out.restricted_rank == sub.n);
    out.state = code_state(sub);
    return out;
}

DenseState apply_single_qudit(const DenseState& s, int q,
                              const std::vector<std::complex<double>>& u) {
    if (q < 0 || q >= s.n) throw std::out_of_range("apply_single_qudit: bad qudit");
    if (u.size() != std::size_t(s.d) * std::size_t(s.d))
        throw std::invalid_argument("apply_single_qudit: bad matrix size");
    DenseState out(s.n, s.d);
    std::size_t stride = pow_sz(s.d, s.n - 1 - q);
    const std::size_t dim = s.dim();
#pragma omp parallel for schedule(static)
    for (std::int64_t idx = 0; idx < std::int64_t(dim); ++idx) {
        int vq = int((std::size_t(idx) / stride) % std::size_t(s.d));
        std::size_t base = std::size_t(idx) - std::size_t(vq) * stride;
        std::complex<double> acc = 0.0;
        for (int w = 0; w < s.d; ++w)
            acc += u[std::size_t(vq) * s.d + w] * s.amp[base + std::size_t(w) * stride];
        out.amp[idx] = acc;
    }
    return out;
}

DenseState y_basis_to_computational(const DenseState& s) {
    if (s.d != 2) throw std::invalid_argument("y_basis_to_computational: d=2 only");
    const double r = 1.0 / std::sqrt(2.0);
    // Columns are |+y> = (1, i)/sqrt2 and |-y> = (1, -i)/sqrt2.
    std::vector<std::complex<double>> u = {{r, 0}, {r, 0}, {0, r}, {0, -r}};
    DenseState out = s;
    for (int q = 0; q < s.n; ++q) out = apply_single_qudit(out, q, u);
    return out;
}

void dump_state(const DenseState& s, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("dump_state: cannot open " + path);
    char header[16] = {};
    std::memcpy(header, "STRB", 4);
    std::uint32_t n = std::uint32_t(s.n), d = std::uint32_t(s.d);
    std::memcpy(header + 4, &n, 4);
    std::memcpy(header + 8, &d, 4);
    f.write(header, 16);
    for (const auto& a : s.amp) {
        double re = a.real(), im = a.imag();
        f.write(reinterpret_cast<const char*>(&re), 8);
        f.write(reinterpret_cast<const char*>(&im), 8);
    }
}

DenseState load_state(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("load_state: cannot open " + path);
    char header[16];
    f.read(header, 16);
    if (!f || std::memcmp(header, "STRB", 4) != 0)
        throw std::runtime_error("load_state: bad header in " + path);
    std::uint32_t n, d;
    std::memcpy(&n, header + 4, 4);
    std::memcpy(&d, header + 8, 4);
    DenseState s{int(n), int(d)};
    for (auto& a : s.amp) {
        double re, im;
        f.read(reinterpret_cast<char*>(&re), 8);
        f.read(reinterpret_cast<char*>(&im), 8);
        a = {re, im};
    }
    if (!f) throw std::runtime_error("load_state: truncated file " + path);
    return s;
}

}  // namespace stabrbm
