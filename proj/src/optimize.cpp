#include "stabrbm/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <random>

#include "stabrbm/analytic.hpp"

namespace stabrbm {

namespace {

using cplx = std::complex<double>;

struct Unpacked {
    std::vector<cplx> a, b, W;
};

Unpacked unpack(const std::vector<double>& p, int n, int m) {
    Unpacked u;
    u.a.resize(n);
    u.b.resize(m);
    u.W.resize(std::size_t(m) * n);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i, k += 2) u.a[i] = {p[k], p[k + 1]};
    for (int j = 0; j < m; ++j, k += 2) u.b[j] = {p[k], p[k + 1]};
    for (std::size_t w = 0; w < u.W.size(); ++w, k += 2) u.W[w] = {p[k], p[k + 1]};
    return u;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

double to_distance(double loss) {
    double f = std::clamp(1.0 - loss, 0.0, 1.0);
    return std::acos(std::sqrt(f));
}

constexpr int kBlocks = 64;  // fixed reduction blocks, independent of threads

// log(2 cosh t) and tanh t without intermediate overflow at large |Re t|.
cplx log2cosh(cplx t) {
    if (t.real() < 0) t = -t;
    return t + std::log(1.0 + std::exp(-2.0 * t));  // |exp(-2t)| <= 1
}

cplx stable_tanh(cplx t) {
    double sgn = 1.0;
    if (t.real() < 0) {
        t = -t;
        sgn = -1.0;
    }
    cplx e = std::exp(-2.0 * t);
    return sgn * (1.0 - e) / (1.0 + e);
}

}  // namespace

double loss_and_gradient(const std::vector<double>& params, const DenseState& target,
                         int m, std::vector<double>& grad) {
    if (target.d != 2) throw std::invalid_argument("variational fit supports d=2 only");
    const int n = target.n;
    const std::size_t P = std::size_t(n) + m + std::size_t(m) * n;
    if (params.size() != 2 * P) throw std::invalid_argument("parameter vector size mismatch");
    const std::size_t dim = target.dim();
    Unpacked u = unpack(params, n, m);

    // Pass 1: log-amplitudes and the exact shift keeping exp() in range.
    std::vector<cplx> logs(dim);
    const std::size_t bsz = (dim + kBlocks - 1) / kBlocks;
    std::vector<double> blockMax(kBlocks, -std::numeric_limits<double>::infinity());

#pragma omp parallel for schedule(dynamic, 1)
    for (int blk = 0; blk < kBlocks; ++blk) {
        std::size_t lo = blk * bsz, hi = std::min(dim, lo + bsz);
        std::vector<double> s(n);
        for (std::size_t k = lo; k < hi; ++k) {
            cplx lp = 0.0;
            for (int i = 0; i < n; ++i) {
                s[i] = ((k >> (n - 1 - i)) & 1) ? -1.0 : 1.0;
                lp += u.a[i] * s[i];
            }
            for (int j = 0; j < m; ++j) {
                cplx t = u.b[j];
                const cplx* w = &u.W[std::size_t(j) * n];
                for (int i = 0; i < n; ++i) t += w[i] * s[i];
                lp += log2cosh(t);
            }
            logs[k] = lp;
            blockMax[blk] = std::max(blockMax[blk], lp.real());
        }
    }
    double shift = *std::max_element(blockMax.begin(), blockMax.end());
    if (!std::isfinite(shift))
        throw std::runtime_error(
            "non-finite loss (cosh overflow): re-initialize with smaller init_scale");

    std::vector<cplx> blockO(kBlocks, 0.0);
    std::vector<double> blockN(kBlocks, 0.0);
    std::vector<std::vector<cplx>> blockU(kBlocks), blockV(kBlocks);

#pragma omp parallel for schedule(dynamic, 1)
    for (int blk = 0; blk < kBlocks; ++blk) {
        std::size_t lo = blk * bsz, hi = std::min(dim, lo + bsz);
        if (lo >= hi) continue;
        std::vector<cplx> U(P, 0.0), V(P, 0.0);
        std::vector<double> s(n);
        std::vector<cplx> th(m);
        cplx O = 0.0;
        double N = 0.0;
        for (std::size_t k = lo; k < hi; ++k) {
            for (int i = 0; i < n; ++i) s[i] = ((k >> (n - 1 - i)) & 1) ? -1.0 : 1.0;
            for (int j = 0; j < m; ++j) {
                cplx t = u.b[j];
                const cplx* w = &u.W[std::size_t(j) * n];
                for (int i = 0; i < n; ++i) t += w[i] * s[i];
                th[j] = t;
            }
            cplx psi = std::exp(logs[k] - shift);
            if (psi == 0.0) continue;  // underflowed: contributes nothing
            cplx tp = std::conj(target.amp[k]) * psi;
            double p2 = std::norm(psi);
            O += tp;
            N += p2;
            for (int i = 0; i < n; ++i) {
                U[i] += tp * s[i];
                V[i] += p2 * s[i];
            }
            for (int j = 0; j < m; ++j) {
                cplx t = stable_tanh(th[j]);
                U[n + j] += tp * t;
                V[n + j] += p2 * t;
                std::size_t off = std::size_t(n) + m + std::size_t(j) * n;
                for (int i = 0; i < n; ++i) {
                    U[off + i] += (tp * t) * s[i];
                    V[off + i] += (p2 * t) * s[i];
                }
            }
        }
        blockO[blk] = O;
        blockN[blk] = N;
        blockU[blk] = std::move(U);
        blockV[blk] = std::move(V);
    }

    cplx O = 0.0;
    double N = 0.0;
    std::vector<cplx> U(P, 0.0), V(P, 0.0);
    for (int blk = 0; blk < kBlocks; ++blk) {
        O += blockO[blk];
        N += blockN[blk];
        if (blockU[blk].empty()) continue;
        for (std::size_t p = 0; p < P; ++p) {
            U[p] += blockU[blk][p];
            V[p] += blockV[blk][p];
        }
    }

    double T = norm2(target);
    if (T <= 0.0) throw std::invalid_argument("target has zero norm");
    double F = std::norm(O) / (T * N);
    double loss = 1.0 - F;
    if (!std::isfinite(loss))
        throw std::runtime_error(
            "non-finite loss (cosh overflow): re-initialize with smaller init_scale");

    grad.assign(2 * P, 0.0);
    cplx Ob = std::conj(O);
    double c = 2.0 / (T * N * N);
    for (std::size_t p = 0; p < P; ++p) {
        cplx OU = Ob * U[p];
        double dFdx = c * (OU.real() * N - std::norm(O) * V[p].real());
        double dFdy = c * (-OU.imag() * N + std::norm(O) * V[p].imag());
        grad[2 * p] = -dFdx;
        grad[2 * p + 1] = -dFdy;
    }
    return loss;
}

namespace {

// Strong-Wolfe line search (Nocedal & Wright alg. 3.5/3.6).
// Returns alpha > 0 and leaves f/g evaluated at x + alpha*d, or 0 on failure.
template <typename Eval>
double wolfe_search(Eval&& eval, const std::vector<double>& x, const std::vector<double>& d,
                    double f0, double g0, std::vector<double>& xnew, double& fnew,
                    std::vector<double>& gnew) {
    const double c1 = 1e-4, c2 = 0.9, amax = 1e3;
    auto phi = [&](double alpha) {
        for (std::size_t i = 0; i < x.size(); ++i) xnew[i] = x[i] + alpha * d[i];
        fnew = eval(xnew, gnew);
        return dot(gnew, d);
    };
    auto zoom = [&](double lo, double flo, double hi) {
        for (int it = 0; it < 30; ++it) {
            double a = 0.5 * (lo + hi);
            double ga = phi(a);
            if (fnew > f0 + c1 * a * g0 || fnew >= flo) {
                hi = a;
            } else {
                if (std::abs(ga) <= -c2 * g0) return a;
                if (ga * (hi - lo) >= 0) hi = lo;
                lo = a;
                flo = fnew;
            }
            if (std::abs(hi - lo) < 1e-16) break;
        }
        phi(lo);
        return lo > 0 && fnew < f0 ? lo : 0.0;
    };
    double aprev = 0.0, fprev = f0, a = 1.0;
    for (int it = 0; it < 25; ++it) {
        double ga = phi(a);
        if (fnew > f0 + c1 * a * g0 || (it > 0 && fnew >= fprev)) return zoom(aprev, fprev, a);
        if (std::abs(ga) <= -c2 * g0) return a;
        if (ga >= 0) return zoom(a, fnew, aprev);
        aprev = a;
        fprev = fnew;
        a = std::min(2.0 * a, amax);
        if (a >= amax) return 0.0;
    }
    return 0.0;
}

struct RestartResult {
    std::vector<double> x;
    double loss = 1.0;
    double gnorm = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<std::pair<int, double>> trace;
};

template <typename Eval>
RestartResult run_lbfgs(Eval&& eval, std::vector<double> x, const OptimizerConfig& cfg) {
    const std::size_t P2 = x.size();
    std::vector<double> g(P2), gnew(P2), xnew(P2), dir(P2);
    double f = eval(x, g);
    std::deque<std::array<std::vector<double>, 2>> hist;  // {s, y}
    std::deque<double> rho;

    RestartResult res;
    double best = f;
    res.trace.emplace_back(0, to_distance(best));
    for (int it = 1; it <= cfg.max_iterations; ++it) {
        double gn = norm(g);
        if (to_distance(f) < cfg.convergence_tol || gn < cfg.gradient_tol) {
            res.converged = true;
            break;
        }
        // two-loop recursion
        dir = g;
        std::vector<double> alpha(hist.size());
        for (int h = int(hist.size()) - 1; h >= 0; --h) {
            alpha[h] = rho[h] * dot(hist[h][0], dir);
            for (std::size_t i = 0; i < P2; ++i) dir[i] -= alpha[h] * hist[h][1][i];
        }
        if (!hist.empty()) {
            double gamma = dot(hist.back()[0], hist.back()[1]) / dot(hist.back()[1], hist.back()[1]);
            for (auto& v : dir) v *= gamma;
        }
        for (std::size_t h = 0; h < hist.size(); ++h) {
            double beta = rho[h] * dot(hist[h][1], dir);
            for (std::size_t i = 0; i < P2; ++i) dir[i] += (alpha[h] - beta) * hist[h][0][i];
        }
        for (auto& v : dir) v = -v;
        double g0 = dot(g, dir);
        if (g0 >= 0) {  // not a descent direction: restart from steepest descent
            hist.clear();
            rho.clear();
            for (std::size_t i = 0; i < P2; ++i) dir[i] = -g[i];
            g0 = -dot(g, g);
        }
        double fnew = f;
        double a = wolfe_search(eval, x, dir, f, g0, xnew, fnew, gnew);
        if (a <= 0.0) {
            if (hist.empty()) break;  // stuck even along steepest descent
            hist.clear();
            rho.clear();
            continue;
        }
        std::vector<double> s(P2), y(P2);
        for (std::size_t i = 0; i < P2; ++i) {
            s[i] = xnew[i] - x[i];
            y[i] = gnew[i] - g[i];
        }
        double sy = dot(s, y);
        if (sy > 1e-14) {
            hist.push_back({std::move(s), std::move(y)});
            rho.push_back(1.0 / sy);
            if (hist.size() > 10) {
                hist.pop_front();
                rho.pop_front();
            }
        }
        x.swap(xnew);
        f = fnew;
        g.swap(gnew);
        res.iterations = it;
        best = std::min(best, f);
        res.trace.emplace_back(it, to_distance(best));
    }
    res.x = std::move(x);
    res.loss = f;
    res.gnorm = norm(g);
    return res;
}

double gradient_fd_check(const std::vector<double>& x, const DenseState& target, int m) {
    std::vector<double> g, gdummy;
    loss_and_gradient(x, target, m, g);
    const double h = 1e-5;
    double worst = 0.0;
    std::vector<double> xp = x;
    for (std::size_t p = 0; p < x.size(); ++p) {
        xp[p] = x[p] + h;
        double fp = loss_and_gradient(xp, target, m, gdummy);
        xp[p] = x[p] - h;
        double fm = loss_and_gradient(xp, target, m, gdummy);
        xp[p] = x[p];
        double fd = (fp - fm) / (2 * h);
        double rel = std::abs(g[p] - fd) / std::max({std::abs(g[p]), std::abs(fd), 1e-6});
        worst = std::max(worst, rel);
    }
    return worst;
}

}  // namespace

std::pair<RbmState, FitReport> fit_subsystem(const DenseState& target,
                                             const OptimizerConfig& cfg) {
    if (target.d != 2) throw std::invalid_argument("variational fit supports d=2 only");
    if (target.n > 20) throw std::invalid_argument("target too large for full enumeration fit");
    if (norm2(target) <= 0.0) throw std::invalid_argument("target has zero norm");
    if (cfg.restarts < 1 || cfg.max_iterations < 1 || cfg.init_scale <= 0 ||
        cfg.convergence_tol <= 0)
        throw std::invalid_argument("invalid optimizer configuration");
    const int n = target.n;
    const int m = cfg.hidden_count > 0 ? cfg.hidden_count : n;
    const std::size_t P2 = 2 * (std::size_t(n) + m + std::size_t(m) * n);

    auto eval = [&](const std::vector<double>& x, std::vector<double>& g) {
        return loss_and_gradient(x, target, m, g);
    };

    FitReport rep;
    std::vector<RestartResult> results(cfg.restarts);
    std::exception_ptr err;
    // Restarts are independent; run them in parallel. Each result depends only
    // on its seed, so the outcome is identical for any thread count.
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r < cfg.restarts; ++r) {
        try {
            std::mt19937_64 rng(cfg.rng_seed + std::uint64_t(r));
            std::normal_distribution<double> dist(0.0, cfg.init_scale);
            std::vector<double> x0(P2);
            for (auto& v : x0) v = dist(rng);
            if (r == 0 && cfg.gradient_check)
                rep.gradient_check_max_rel_err = gradient_fd_check(x0, target, m);
            results[r] = run_lbfgs(eval, std::move(x0), cfg);
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    rep.restarts_run = cfg.restarts;
    RestartResult best = std::move(results[0]);
    rep.restart_index = 0;
    for (int r = 1; r < cfg.restarts; ++r) {
        if (results[r].loss < best.loss) {
            best = std::move(results[r]);
            rep.restart_index = r;
        }
    }

    rep.final_distance = to_distance(best.loss);
    double cd = std::cos(rep.final_distance);
    rep.final_fidelity = cd * cd;
    rep.gradient_norm = best.gnorm;
    rep.iterations_used = best.iterations;
    rep.converged = best.converged;
    rep.trace = best.trace;

    Unpacked u = unpack(best.x, n, m);
    RbmState rbm(n, m, 2);
    rbm.a = u.a;
    rbm.b = u.b;
    rbm.W = u.W;
    double na = 0, nb = 0, nw = 0;
    for (auto& v : rbm.a) na += std::norm(v);
    for (auto& v : rbm.b) nb += std::norm(v);
    for (auto& v : rbm.W) nw += std::norm(v);
    rep.parameter_norms = {std::sqrt(na), std::sqrt(nb), std::sqrt(nw)};

    if (rep.final_distance >= M_PI / 2 - 0.01) throw OptimizationStalled(rep);
    return {std::move(rbm), std::move(rep)};
}

RbmState fit_twist_lattice(const LatticeCode& code, const OptimizerConfig& cfg,
                           FitReport* report) {
    if (!code.spec.wall) throw std::invalid_argument("fit_twist_lattice: code has no wall");
    const int n = code.group.n;
    std::vector<int> spins = wall_subsystem_spins(code);
    std::vector<int> stabs = wall_subsystem_stabilizers(code, spins);
    SubsystemState sub = subsystem_state(code.group, spins, stabs);
    if (!sub.unique)
        throw std::runtime_error("subsystem dimension > 1: restricted rank " +
                                 std::to_string(sub.restricted_rank) + " on " +
                                 std::to_string(spins.size()) + " spins");
    auto [rbm_sub, rep] = fit_subsystem(sub.state, cfg);
    if (report) *report = rep;

    // Residual generators (those untouched by the wall) are pure X/Z and get
    // their parameters from the analytic route; the fitted part supplies the
    // subsystem factor.
    StabilizerGroup residual;
    residual.n = n;
    residual.d = code.group.d;
    for (std::size_t g = 0; g < code.group.generators.size(); ++g) {
        if (code.tags[g] == "wall" || code.tags[g] == "twist") continue;
        residual.generators.push_back(code.group.generators[g]);
        residual.labels.push_back(code.group.labels[g]);
    }
    RbmState res_rbm = construct(residual);
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    return compose({{res_rbm, all}, {rbm_sub, spins}}, n);
}

}  // namespace stabrbm
