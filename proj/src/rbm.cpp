#include "stabrbm/rbm.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stabrbm {

void RbmState::add_hidden(const std::vector<std::complex<double>>& row,
                          std::complex<double> bias, const std::string& label) {
    if (int(row.size()) != n) throw std::invalid_argument("add_hidden: bad row length");
    b.push_back(bias);
    W.insert(W.end(), row.begin(), row.end());
    hidden_labels.push_back(label);
}

double visible_value(int digit, int d) {
    return d == 2 ? (digit == 0 ? 1.0 : -1.0) : double(digit);
}

std::complex<double> log_amplitude(const RbmState& s, const std::vector<int>& v) {
    if (int(v.size()) != s.n) throw std::invalid_argument("amplitude: configuration length mismatch");
    std::complex<double> acc = 0.0;
    for (int i = 0; i < s.n; ++i) acc += s.a[i] * visible_value(v[i], s.d);
    const int m = s.m();
    std::complex<double> lg = acc;
    for (int j = 0; j < m; ++j) {
        std::complex<double> theta = s.b[j];
        for (int i = 0; i < s.n; ++i)
            theta += s.W[std::size_t(j) * s.n + i] * visible_value(v[i], s.d);
        lg += std::log(2.0 * std::cosh(theta));
    }
    return lg;
}

std::complex<double> amplitude(const RbmState& s, const std::vector<int>& v) {
    if (int(v.size()) != s.n) throw std::invalid_argument("amplitude: configuration length mismatch");
    std::complex<double> acc = 0.0;
    for (int i = 0; i < s.n; ++i) acc += s.a[i] * visible_value(v[i], s.d);
    std::complex<double> psi = std::exp(acc);
    const int m = s.m();
    for (int j = 0; j < m; ++j) {
        std::complex<double> theta = s.b[j];
        for (int i = 0; i < s.n; ++i)
            theta += s.W[std::size_t(j) * s.n + i] * visible_value(v[i], s.d);
        psi *= 2.0 * std::cosh(theta);
    }
    return psi;
}

DenseState full_state_naive(const RbmState& s) {
    DenseState out(s.n, s.d);
    const std::size_t dim = out.dim();
    for (std::size_t idx = 0; idx < dim; ++idx)
        out.amp[idx] = amplitude(s, index_to_config(idx, s.n, s.d));
    return out;
}

namespace {

// Gray-code segment: amplitudes for k in [k0, k1), writing amp[g(k)] with
// g(k) = k ^ (k >> 1); bit t of g is the digit of qubit n-1-t.
void gray_segment(const RbmState& s, std::size_t k0, std::size_t k1, DenseState& out) {
    const int n = s.n, m = s.m();
    std::size_t g = k0 ^ (k0 >> 1);
    std::vector<double> spin(n);
    for (int i = 0; i < n; ++i) spin[i] = ((g >> (n - 1 - i)) & 1) ? -1.0 : 1.0;
    std::complex<double> av = 0.0;
    for (int i = 0; i < n; ++i) av += s.a[i] * spin[i];
    std::vector<std::complex<double>> theta(m);
    for (int j = 0; j < m; ++j) {
        theta[j] = s.b[j];
        for (int i = 0; i < n; ++i) theta[j] += s.W[std::size_t(j) * n + i] * spin[i];
    }
    for (std::size_t k = k0;;) {
        std::complex<double> psi = std::exp(av);
        for (int j = 0; j < m; ++j) psi *= 2.0 * std::cosh(theta[j]);
        out.amp[g] = psi;
        if (++k >= k1) break;
        int bit = std::countr_zero(k);
        int q = n - 1 - bit;
        double delta = -2.0 * spin[q];
        spin[q] = -spin[q];
        g ^= std::size_t(1) << bit;
        av += s.a[q] * delta;
        for (int j = 0; j < m; ++j) theta[j] += s.W[std::size_t(j) * n + q] * delta;
    }
}

}  // namespace

DenseState full_state(const RbmState& s) {
    DenseState out(s.n, s.d);
    const std::size_t dim = out.dim();
    if (s.d != 2) {
#pragma omp parallel for schedule(static)
        for (std::int64_t idx = 0; idx < std::int64_t(dim); ++idx)
            out.amp[idx] = amplitude(s, index_to_config(std::size_t(idx), s.n, s.d));
        return out;
    }
#ifdef _OPENMP
    int workers = omp_get_max_threads();
#else
    int workers = 1;
#endif
    std::size_t nseg = std::min<std::size_t>(std::size_t(workers) * 4, dim);
    std::size_t chunk = (dim + nseg - 1) / nseg;
#pragma omp parallel for schedule(static, 1)
    for (std::int64_t seg = 0; seg < std::int64_t(nseg); ++seg) {
        std::size_t k0 = std::size_t(seg) * chunk;
        std::size_t k1 = std::min(dim, k0 + chunk);
        if (k0 < k1) gray_segment(s, k0, k1, out);
    }
    return out;
}

DenseState rbm_to_dense(const RbmState& s) {
    DenseState raw = full_state(s);
    return s.y_basis ? y_basis_to_computational(raw) : raw;
}

RbmState compose(const std::vector<RbmPart>& parts, int n_total) {
    int d = parts.empty() ? 2 : parts.front().part.d;
    bool yb = parts.empty() ? false : parts.front().part.y_basis;
    RbmState out(n_total, 0, d);
    out.y_basis = yb;
    for (const auto& [part, sites] : parts) {
        if (part.d != d || part.y_basis != yb)
            throw std::invalid_argument("compose: incompatible parts");
        if (int(sites.size()) != part.n)
            throw std::invalid_argument("compose: embedding size mismatch");
        for (int i : sites)
            if (i < 0 || i >= n_total) throw std::out_of_range("compose: index out of range");
        for (int i = 0; i < part.n; ++i) out.a[sites[i]] += part.a[i];
        for (int j = 0; j < part.m(); ++j) {
            std::vector<std::complex<double>> row(n_total, 0.0);
            for (int i = 0; i < part.n; ++i) row[sites[i]] = part.W[std::size_t(j) * part.n + i];
            out.add_hidden(row, part.b[j],
                           j < int(part.hidden_labels.size()) ? part.hidden_labels[j] : "");
        }
    }
    return out;
}

RbmState apply_string_z(const RbmState& s, const std::vector<int>& path) {
    if (s.d != 2) throw std::invalid_argument("apply_string_z: d=2 only");
    using namespace std::complex_literals;
    const double pi = std::numbers::pi;
    RbmState out = s;
    for (int j : path) {
        if (j < 0 || j >= s.n) throw std::out_of_range("apply_string_z: index out of range");
        std::vector<std::complex<double>> row(s.n, 0.0);
        row[j] = 0.5i * pi;
        out.add_hidden(row, -0.5i * pi, "S^z");
    }
    return out;
}

RbmState apply_string_x(const RbmState& s, const std::vector<int>& path) {
    if (s.d != 2) throw std::invalid_argument("apply_string_x: d=2 only");
    RbmState out = s;
    for (int j : path) {
        if (j < 0 || j >= s.n) throw std::out_of_range("apply_string_x: index out of range");
        out.a[j] = -out.a[j];
        for (int r = 0; r < out.m(); ++r)
            out.W[std::size_t(r) * out.n + j] = -out.W[std::size_t(r) * out.n + j];
    }
    return out;
}

}  // namespace stabrbm
