// Acceptance gate: one pass/fail line per criterion, exit code = failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "stabrbm/analytic.hpp"
#include "stabrbm/dense.hpp"
#include "stabrbm/lattice.hpp"
#include "stabrbm/optimize.hpp"
#include "stabrbm/pauli.hpp"
#include "stabrbm/rbm.hpp"

using namespace stabrbm;
using cplx = std::complex<double>;

namespace {

const double pi = 3.14159265358979323846;
const cplx iq(0, pi / 4);

int failures = 0;

struct Criterion {
    std::string name;
    bool ok = true;
    std::string detail;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    explicit Criterion(std::string n) : name(std::move(n)) {}
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    ~Criterion() {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), secs,
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// worst |<T> - 1| over all generators of the independent group
double worst_expectation_error(const StabilizerGroup& g, const DenseState& s) {
    double worst = 0;
    for (const auto& p : g.generators) worst = std::max(worst, std::abs(expectation(p, s) - 1.0));
    return worst;
}

// the paper's parameterization: one hidden unit per geometric plaquette
// (b = -l i pi/4, W = i pi/4), visible biases summed per incidence
RbmState plaquette_parameterization(const LatticeCode& code) {
    const int n = code.full_group.n;
    RbmState rbm(n, 0, 2);
    for (std::size_t g = 0; g < code.full_group.size(); ++g) {
        const PauliString& p = code.full_group.generators[g];
        if (generator_type(p) != GenType::Z || p.identity()) continue;
        std::vector<cplx> row(n, 0.0);
        for (int i : p.support()) {
            row[i] = iq;
            rbm.a[i] += iq;
        }
        rbm.add_hidden(row, -iq * double(p.weight()), code.full_group.labels[g]);
    }
    return rbm;
}

LatticeSpec planar_spec(int rows, int cols, const std::string& top = "smooth",
                        const std::string& bottom = "smooth",
                        const std::string& left = "smooth",
                        const std::string& right = "smooth") {
    LatticeSpec sp;
    sp.kind = "planar";
    sp.rows = rows;
    sp.cols = cols;
    sp.top = top;
    sp.bottom = bottom;
    sp.left = left;
    sp.right = right;
    return sp;
}

// Entry-for-entry comparison of construct() on the full geometric group
// against a closed-form table a(i,j), with b = -weight*i pi/4 and W = i pi/4
// per Z-type operator.
template <typename TableA>
void check_parameter_table(Criterion& c, const LatticeCode& code, const std::string& which,
                           TableA&& expected_a) {
    RbmState rbm = construct(code.full_group);
    for (int e = 0; e < rbm.n; ++e) {
        auto [i, j] = code.edges[e];
        if (std::abs(rbm.a[e] - expected_a(i, j)) > 1e-12)
            c.expect(false, which + ": a mismatch at edge (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
    }
    std::size_t h = 0;
    for (std::size_t g = 0; g < code.full_group.size(); ++g) {
        const PauliString& p = code.full_group.generators[g];
        if (generator_type(p) != GenType::Z || p.identity()) continue;
        c.expect(h < std::size_t(rbm.m()), which + ": missing hidden unit");
        if (h >= std::size_t(rbm.m())) return;
        c.expect(rbm.hidden_labels[h] == code.full_group.labels[g],
                 which + ": hidden order mismatch at " + code.full_group.labels[g]);
        c.expect(std::abs(rbm.b[h] + iq * double(p.weight())) < 1e-12,
                 which + ": b mismatch at " + code.full_group.labels[g]);
        for (int i = 0; i < rbm.n; ++i) {
            cplx want = p.z[i] ? iq : cplx(0, 0);
            c.expect(std::abs(rbm.W[h * rbm.n + i] - want) < 1e-12,
                     which + ": W mismatch at " + code.full_group.labels[g]);
        }
        ++h;
    }
    c.expect(h == std::size_t(rbm.m()), which + ": extra hidden units");
}

void check_overlap(Criterion& c, const LatticeCode& code, const std::string& which) {
    RbmState rbm = construct(code.full_group);
    double overlap = code_projector_overlap(code.group, rbm_to_dense(rbm));
    c.expect(std::abs(overlap - 1.0) < 1e-10,
             which + ": overlap " + std::to_string(overlap));
}

void criterion1() {
    Criterion c("1 (Shor-code exactness)");
    auto t0 = std::chrono::steady_clock::now();
    StabilizerGroup g = build_shor();
    RbmState s = construct(g);
    c.expect(s.n == 9 && s.m() == 6, "shape");
    for (int k : {0, 2, 3, 5, 6, 8}) c.expect(s.a[k] == iq, "a edge entries");
    for (int k : {1, 4, 7}) c.expect(s.a[k] == cplx(0, pi / 2), "a center entries");
    std::vector<std::vector<int>> sup = {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {6, 7}, {7, 8}};
    for (int j = 0; j < 6; ++j) {
        c.expect(s.b[j] == cplx(0, -pi / 2), "b entries");
        for (int i = 0; i < 9; ++i) {
            bool on = i == sup[j][0] || i == sup[j][1];
            c.expect(s.W[std::size_t(j) * 9 + i] == (on ? iq : cplx(0, 0)), "W entries");
        }
    }
    double overlap = code_projector_overlap(g, rbm_to_dense(s));
    c.expect(std::abs(overlap - 1.0) < 1e-10, "overlap " + std::to_string(overlap));
    c.expect(seconds_since(t0) < 1.0, "runtime >= 1s");
}

void criterion2() {
    Criterion c("2 (toric-code exactness)");
    auto t0 = std::chrono::steady_clock::now();
    for (auto [r, cl] : {std::pair{2, 2}, std::pair{3, 3}}) {
        LatticeCode code = build_toric(r, cl);
        std::string which = std::to_string(r) + "x" + std::to_string(cl);
        double e1 = worst_expectation_error(code.group, rbm_to_dense(construct(code.group)));
        c.expect(e1 < 1e-10, which + " incidence parameters: error " + std::to_string(e1));
        double e2 =
            worst_expectation_error(code.group, rbm_to_dense(plaquette_parameterization(code)));
        c.expect(e2 < 1e-10, which + " plaquette parameters: error " + std::to_string(e2));
    }
    c.expect(seconds_since(t0) < 10.0, "runtime >= 10s");
}

void criterion3() {
    Criterion c("3 (planar and defect tables)");
    auto in = [](int v, int lo, int hi) { return v >= lo && v <= hi; };

    // 4x4 parameter tables
    LatticeCode smooth = build_planar(planar_spec(4, 4));
    check_parameter_table(c, smooth, "smooth 4x4", [&](int i, int j) {
        return in(i, 1, 7) && in(j, 1, 7) ? cplx(0, pi / 2) : iq;
    });
    LatticeCode rough = build_planar(planar_spec(4, 4, "rough", "rough", "rough", "rough"));
    check_parameter_table(c, rough, "rough 4x4", [](int, int) { return cplx(0, pi / 2); });
    LatticeCode mixed = build_planar(planar_spec(4, 4, "smooth", "rough", "smooth", "rough"));
    check_parameter_table(c, mixed, "mixed 4x4", [](int i, int j) {
        return i == 0 || j == 0 ? iq : cplx(0, pi / 2);
    });

    LatticeSpec sd = planar_spec(4, 4);
    sd.defects = {{"smooth", {2, 2, 6, 6}}};
    check_parameter_table(c, build_defect(sd), "smooth defect 4x4", [&](int i, int j) {
        bool outer = i == 0 || i == 8 || j == 0 || j == 8;
        bool hole = in(i, 2, 6) && in(j, 2, 6);
        return outer || hole ? iq : cplx(0, pi / 2);
    });
    LatticeSpec rd = planar_spec(4, 4);
    rd.defects = {{"rough", {2, 2, 6, 6}}};
    check_parameter_table(c, build_defect(rd), "rough defect 4x4", [&](int i, int j) {
        bool outer = i == 0 || i == 8 || j == 0 || j == 8;
        return outer ? iq : cplx(0, pi / 2);
    });

    // oracle overlap on the largest sub-geometries under the enumeration cap
    check_overlap(c, build_planar(planar_spec(2, 3)), "smooth 2x3");
    check_overlap(c, build_planar(planar_spec(3, 3, "rough", "rough", "rough", "rough")),
                  "rough 3x3");
    check_overlap(c, build_planar(planar_spec(3, 3, "smooth", "rough", "smooth", "rough")),
                  "mixed 3x3");
    LatticeSpec sd3 = planar_spec(3, 3);
    sd3.defects = {{"smooth", {2, 2, 4, 4}}};
    check_overlap(c, build_defect(sd3), "smooth defect 3x3");
    LatticeSpec rd3 = planar_spec(3, 3);
    rd3.defects = {{"rough", {2, 2, 4, 4}}};
    check_overlap(c, build_defect(rd3), "rough defect 3x3");
}

void criterion4() {
    Criterion c("4 (twist optimization)");
    LatticeCode code = build_twist();
    FitReport rep;
    try {
        RbmState rbm = fit_twist_lattice(code, OptimizerConfig{}, &rep);
        c.expect(rep.final_distance <= 0.01,
                 "distance " + std::to_string(rep.final_distance));
        c.expect(rep.final_fidelity >= 0.9999, "fidelity " + std::to_string(rep.final_fidelity));
        double overlap = code_projector_overlap(code.group, rbm_to_dense(rbm));
        c.expect(overlap >= 0.9999, "global overlap " + std::to_string(overlap));
    } catch (const OptimizationStalled& e) {
        rep = e.report;
        c.expect(false, "stalled at distance " + std::to_string(rep.final_distance));
    }
    c.expect(rep.restarts_run == 8, "restarts run");
    c.expect(!rep.trace.empty(), "empty trace");
    for (std::size_t i = 1; i < rep.trace.size(); ++i)
        if (rep.trace[i].second > rep.trace[i - 1].second)
            c.expect(false, "trace not monotone");
}

void criterion5() {
    Criterion c("5 (qudit toric code, d=3)");
    auto t0 = std::chrono::steady_clock::now();
    LatticeCode code = build_zd(2, 2, 3);
    DenseState s = rbm_to_dense(construct(code.group));
    double err = worst_expectation_error(code.group, s);
    c.expect(err < 1e-9, "expectation error " + std::to_string(err));

    // amplitudes must vanish wherever any plaquette sum is nonzero mod 3
    double peak = 0;
    for (const auto& a : s.amp) peak = std::max(peak, std::abs(a));
    for (std::size_t k = 0; k < s.dim(); ++k) {
        std::vector<int> v = index_to_config(k, s.n, 3);
        bool valid = true;
        for (const auto& p : code.full_group.generators) {
            if (generator_type(p) != GenType::Z) continue;
            int sum = 0;
            for (int i = 0; i < p.n; ++i) {
                if (!p.z[i]) continue;
                sum += (p.z[i] == 1 ? v[i] : -v[i]);
            }
            if ((sum % 3 + 3) % 3 != 0) valid = false;
        }
        if (!valid && std::abs(s.amp[k]) / peak >= 1e-10) {
            c.expect(false, "nonzero amplitude on invalid configuration");
            break;
        }
    }
    c.expect(seconds_since(t0) < 60.0, "runtime >= 60s");
}

// count generators whose expectation flipped to -1; everything else must stay +1
int count_flips(Criterion& c, const StabilizerGroup& g, const DenseState& s) {
    int flips = 0;
    for (const auto& p : g.generators) {
        cplx e = expectation(p, s);
        if (std::abs(e + 1.0) < 1e-10) ++flips;
        else if (std::abs(e - 1.0) >= 1e-10)
            c.expect(false, "expectation neither +1 nor -1");
    }
    return flips;
}

void criterion6() {
    Criterion c("6 (excitations)");
    // bulk strings on the torus: two excitations
    LatticeCode torus = build_toric(3, 3);
    RbmState base = construct(torus.group);
    DenseState oracle = rbm_to_dense(base);
    auto edge = [&](const LatticeCode& code, int i, int j) {
        return code.edge_index.at({i, j});
    };

    std::vector<int> zpath = {edge(torus, 0, 1), edge(torus, 0, 3)};
    DenseState zex = rbm_to_dense(apply_string_z(base, zpath));
    PauliString zop(torus.group.n, 2);
    for (int i : zpath) zop.z[i] = 1;
    double f = fidelity(zex, apply_pauli(zop, oracle));
    c.expect(std::abs(f - 1.0) < 1e-10, "z-string fidelity " + std::to_string(f));
    c.expect(count_flips(c, torus.group, zex) == 2, "bulk z-string flips != 2");

    std::vector<int> xpath = {edge(torus, 1, 2)};
    DenseState xex = rbm_to_dense(apply_string_x(base, xpath));
    PauliString xop(torus.group.n, 2);
    for (int i : xpath) xop.x[i] = 1;
    f = fidelity(xex, apply_pauli(xop, oracle));
    c.expect(std::abs(f - 1.0) < 1e-10, "x-string fidelity " + std::to_string(f));
    c.expect(count_flips(c, torus.group, xex) == 2, "bulk x-string flips != 2");

    // boundary-terminated strings on a mixed-boundary planar lattice: one each
    LatticeCode mixed = build_planar(planar_spec(3, 3, "smooth", "rough", "smooth", "rough"));
    RbmState pbase = construct(mixed.group);
    DenseState pz = rbm_to_dense(apply_string_z(pbase, {edge(mixed, 5, 2)}));
    c.expect(count_flips(c, mixed.group, pz) == 1, "boundary z-string flips != 1");
    DenseState px = rbm_to_dense(apply_string_x(pbase, {edge(mixed, 0, 1)}));
    c.expect(count_flips(c, mixed.group, px) == 1, "boundary x-string flips != 1");
}

void criterion7() {
    Criterion c("7 (property suites)");
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> nd(0.0, 0.4);

    // gray-code vs naive enumeration, relative
    RbmState r(10, 7, 2);
    for (auto& v : r.a) v = {nd(rng), nd(rng)};
    for (auto& v : r.b) v = {nd(rng), nd(rng)};
    for (auto& v : r.W) v = {nd(rng), nd(rng)};
    DenseState ga = full_state(r), gn = full_state_naive(r);
    double worst = 0, scale = 0;
    for (std::size_t k = 0; k < ga.dim(); ++k) {
        worst = std::max(worst, std::abs(ga.amp[k] - gn.amp[k]));
        scale = std::max(scale, std::abs(ga.amp[k]));
    }
    c.expect(worst / scale < 1e-12, "gray vs naive " + std::to_string(worst / scale));

    // analytic gradient vs finite differences
    DenseState target(6, 2);
    for (auto& a : target.amp) a = {nd(rng), nd(rng)};
    OptimizerConfig gc;
    gc.gradient_check = true;
    gc.restarts = 1;
    gc.max_iterations = 2;
    double gerr = -1;
    try {
        gerr = fit_subsystem(target, gc).second.gradient_check_max_rel_err;
    } catch (const OptimizationStalled& e) {
        gerr = e.report.gradient_check_max_rel_err;
    }
    c.expect(gerr >= 0 && gerr < 1e-5, "gradient check " + std::to_string(gerr));

    // projector idempotence on a code state
    StabilizerGroup tg = build_toric(2, 2).group;
    DenseState cs = code_state(tg);
    DenseState acc = cs;
    for (const auto& p : tg.generators) {
        DenseState t = apply_pauli(p, acc);
        for (std::size_t k = 0; k < acc.dim(); ++k) acc.amp[k] = 0.5 * (acc.amp[k] + t.amp[k]);
    }
    double pw = 0;
    for (std::size_t k = 0; k < cs.dim(); ++k) pw = std::max(pw, std::abs(acc.amp[k] - cs.amp[k]));
    c.expect(pw < 1e-12, "projector idempotence " + std::to_string(pw));

    // commutation and independence on every preset
    std::vector<std::pair<std::string, StabilizerGroup>> presets;
    presets.emplace_back("shor", build_shor());
    presets.emplace_back("toric-2x2", build_toric(2, 2).group);
    presets.emplace_back("toric-3x3", build_toric(3, 3).group);
    presets.emplace_back("planar-smooth", build_planar(planar_spec(4, 4)).group);
    presets.emplace_back("planar-rough",
                         build_planar(planar_spec(4, 4, "rough", "rough", "rough", "rough")).group);
    presets.emplace_back("planar-mixed",
                         build_planar(planar_spec(4, 4, "smooth", "rough", "smooth", "rough")).group);
    LatticeSpec sd = planar_spec(4, 4);
    sd.defects = {{"smooth", {2, 2, 6, 6}}};
    presets.emplace_back("defect-smooth", build_defect(sd).group);
    sd.defects = {{"rough", {2, 2, 6, 6}}};
    presets.emplace_back("defect-rough", build_defect(sd).group);
    presets.emplace_back("twist", build_twist().group);
    presets.emplace_back("zd-3", build_zd(2, 2, 3).group);
    for (const auto& [name, g] : presets) {
        try {
            check_group(g);
        } catch (const std::exception& e) {
            c.expect(false, name + ": " + e.what());
            continue;
        }
        c.expect(independent_rank(g) == int(g.size()), name + ": dependent generators");
    }

    // seed determinism: byte-identical results across thread counts
    DenseState dt(6, 2);
    std::mt19937_64 rng2(7);
    for (auto& a : dt.amp) a = {nd(rng2), nd(rng2)};
    OptimizerConfig dc;
    dc.restarts = 3;
    dc.max_iterations = 60;
    auto run = [&]() {
        try {
            return fit_subsystem(dt, dc);
        } catch (const OptimizationStalled& e) {
            return std::pair<RbmState, FitReport>(RbmState(), e.report);
        }
    };
#ifdef _OPENMP
    int saved = omp_get_max_threads();
    omp_set_num_threads(1);
#endif
    auto [r1, rep1] = run();
#ifdef _OPENMP
    omp_set_num_threads(saved > 1 ? saved : 4);
#endif
    auto [r2, rep2] = run();
#ifdef _OPENMP
    omp_set_num_threads(saved);
#endif
    bool same = rep1.final_distance == rep2.final_distance &&
                rep1.restart_index == rep2.restart_index && r1.a == r2.a && r1.b == r2.b &&
                r1.W == r2.W;
    c.expect(same, "optimizer output differs across thread counts");
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion5();
    criterion6();
    criterion7();
    criterion4();  // the slow one last
    std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED");
    return failures;
}
