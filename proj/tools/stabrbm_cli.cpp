#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "stabrbm/analytic.hpp"
#include "stabrbm/dense.hpp"
#include "stabrbm/json_io.hpp"
#include "stabrbm/lattice.hpp"
#include "stabrbm/optimize.hpp"
#include "stabrbm/rbm.hpp"

using namespace stabrbm;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "stabrbm 1.0.0";

// exit codes
constexpr int kOk = 0, kVerifyFail = 1, kUsage = 2, kNeedsVariational = 3, kCap = 4;

struct Manifest {
    std::string command;
    std::vector<std::string> inputs;
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void write() const {
        if (outputs.empty()) return;
        json in = json::object();
        for (const auto& p : inputs) in[p] = fnv1a_file(p);
        json out = json::array();
        for (const auto& p : outputs) out.push_back(p);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_json({{"command", command},
                    {"inputs", in},
                    {"seed", seed},
                    {"tool_version", kVersion},
                    {"wall_clock_seconds", secs},
                    {"outputs", out}},
                   outputs.front() + ".manifest.json");
    }
};

LatticeCode preset_code(const std::string& name, int rows, int cols, int d) {
    LatticeSpec spec;
    spec.kind = "planar";
    spec.rows = rows;
    spec.cols = cols;
    spec.d = 2;
    if (name == "toric") return build_toric(rows, cols);
    if (name == "zd") return build_zd(rows, cols, d);
    if (name == "twist") return build_twist();
    if (name == "planar-smooth") return build_planar(spec);
    if (name == "planar-rough") {
        spec.top = spec.bottom = spec.left = spec.right = "rough";
        return build_planar(spec);
    }
    if (name == "planar-mixed") {
        spec.bottom = spec.right = "rough";
        return build_planar(spec);
    }
    if (name == "defect-smooth" || name == "defect-rough") {
        spec.defects.push_back({name.substr(7), Rect{2, 2, 6, 6}});
        return build_defect(spec);
    }
    throw CLI::ValidationError("--preset", "unknown preset: " + name);
}

std::vector<int> parse_indices(const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(std::stoi(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

void write_trace_csv(const FitReport& rep, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << "iteration,best_distance\n";
    char buf[64];
    for (const auto& [it, d] : rep.trace) {
        std::snprintf(buf, sizeof buf, "%d,%.17g\n", it, d);
        f << buf;
    }
}

json verify_report(const StabilizerGroup& g, const RbmState& rbm) {
    check_cap(g.n, g.d);
    DenseState psi = rbm_to_dense(rbm);
    double overlap = code_projector_overlap(g, psi);
    DenseState oracle = code_state(g);
    json exps = json::array();
    double nrm = norm2(psi);
    for (std::size_t k = 0; k < g.generators.size(); ++k) {
        auto e = expectation(g.generators[k], psi) / nrm;
        exps.push_back({{"label", g.labels[k]}, {"re", e.real()}, {"im", e.imag()}});
    }
    return {{"overlap", overlap},
            {"distance_to_oracle_state", distance(psi, oracle)},
            {"generator_expectations", exps}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RBM representations of stabilizer code states"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "cap worker threads");

    std::string preset, lattice_file, group_file, rbm_file, out_file, geometry_file;
    std::string recipe_file, report_file, trace_file, spins_arg, string_kind, path_arg;
    int rows = 2, cols = 2, dloc = 3;
    OptimizerConfig cfg;
    bool twist_lattice = false;

    auto* build = app.add_subcommand("build", "emit a stabilizer group from a preset or spec");
    auto* opt_preset = build->add_option("--preset", preset,
                                         "toric|shor|planar-smooth|planar-rough|planar-mixed|"
                                         "defect-smooth|defect-rough|twist|zd");
    auto* opt_lattice = build->add_option("--lattice", lattice_file, "lattice spec JSON");
    opt_preset->excludes(opt_lattice);
    build->add_option("--rows", rows);
    build->add_option("--cols", cols);
    build->add_option("--d", dloc, "local dimension for zd");
    build->add_option("--out", out_file, "group JSON")->required();
    build->add_option("--geometry", geometry_file, "geometry JSON");

    auto* construct_cmd = app.add_subcommand("construct", "analytic RBM parameters");
    construct_cmd->add_option("--group", group_file)->required();
    construct_cmd->add_option("--out", out_file)->required();
    construct_cmd->add_option("--emit-recipe", recipe_file);

    auto* verify = app.add_subcommand("verify", "check an RBM against the exact oracle");
    verify->add_option("--group", group_file)->required();
    verify->add_option("--rbm", rbm_file)->required();
    verify->add_option("--out", report_file);

    auto* optimize = app.add_subcommand("optimize", "variational fit");
    auto* og = optimize->add_option("--group", group_file);
    optimize->add_option("--spins", spins_arg, "comma-separated subsystem spin indices");
    optimize->add_flag("--twist-lattice", twist_lattice,
                       "fit the twist preset subsystem and compose the global RBM");
    optimize->add_option("--seed", cfg.rng_seed);
    optimize->add_option("--restarts", cfg.restarts);
    optimize->add_option("--max-iter", cfg.max_iterations);
    optimize->add_option("--init-scale", cfg.init_scale);
    optimize->add_option("--hidden", cfg.hidden_count);
    optimize->add_option("--tol", cfg.convergence_tol);
    optimize->add_option("--trace", trace_file, "per-iteration distance CSV");
    optimize->add_option("--report", report_file, "fit report JSON");
    optimize->add_option("--out", out_file)->required();

    auto* excite = app.add_subcommand("excite", "apply a string operator to an RBM");
    excite->add_option("--rbm", rbm_file)->required();
    excite->add_option("--string", string_kind, "z|x")->required();
    excite->add_option("--path", path_arg, "comma-separated qubit indices")->required();
    excite->add_option("--out", out_file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kUsage;
    }

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    Manifest manifest;
    for (int i = 0; i < argc; ++i) manifest.command += std::string(i ? " " : "") + argv[i];
    manifest.seed = cfg.rng_seed;

    try {
        if (build->parsed()) {
            manifest.outputs.push_back(out_file);
            if (preset == "shor") {
                write_json(group_to_json(build_shor()), out_file);
            } else {
                LatticeCode code;
                if (!preset.empty()) {
                    code = preset_code(preset, rows, cols, dloc);
                } else if (!lattice_file.empty()) {
                    manifest.inputs.push_back(lattice_file);
                    code = build_from_spec(spec_from_json(read_json(lattice_file)));
                } else {
                    std::cerr << "build: need --preset or --lattice\n";
                    return kUsage;
                }
                write_json(group_to_json(code.group), out_file);
                if (!geometry_file.empty()) {
                    write_json(geometry_to_json(code), geometry_file);
                    manifest.outputs.push_back(geometry_file);
                }
            }
        } else if (construct_cmd->parsed()) {
            manifest.inputs.push_back(group_file);
            manifest.outputs.push_back(out_file);
            StabilizerGroup g = group_from_json(read_json(group_file));
            check_group(g);
            AnalyticRecipe recipe;
            RbmState rbm;
            try {
                rbm = construct(g, recipe);
            } catch (const RequiresVariational& e) {
                std::cerr << e.what() << " (class " << group_class_name(classify(g)) << ")\n";
                return kNeedsVariational;
            }
            write_json(rbm_to_json(rbm), out_file);
            if (!recipe_file.empty()) {
                write_json(recipe_to_json(recipe), recipe_file);
                manifest.outputs.push_back(recipe_file);
            }
        } else if (verify->parsed()) {
            manifest.inputs = {group_file, rbm_file};
            StabilizerGroup g = group_from_json(read_json(group_file));
            RbmState rbm = rbm_from_json(read_json(rbm_file));
            json rep = verify_report(g, rbm);
            if (!report_file.empty()) {
                manifest.outputs.push_back(report_file);
                write_json(rep, report_file);
            } else {
                std::cout << rep.dump(2) << '\n';
            }
            manifest.write();
            return rep["overlap"].get<double>() >= 1.0 - 1e-9 ? kOk : kVerifyFail;
        } else if (optimize->parsed()) {
            manifest.outputs.push_back(out_file);
            RbmState rbm;
            FitReport rep;
            if (twist_lattice) {
                rbm = fit_twist_lattice(build_twist(), cfg, &rep);
            } else if (*og) {
                manifest.inputs.push_back(group_file);
                StabilizerGroup g = group_from_json(read_json(group_file));
                if (spins_arg.empty()) {
                    std::cerr << "optimize: need --spins with --group\n";
                    return kUsage;
                }
                SubsystemState sub = subsystem_state(g, parse_indices(spins_arg));
                if (!sub.unique) {
                    std::cerr << "subsystem dimension > 1: restricted rank "
                              << sub.restricted_rank << '\n';
                    return kVerifyFail;
                }
                std::tie(rbm, rep) = fit_subsystem(sub.state, cfg);
            } else {
                std::cerr << "optimize: need --group or --twist-lattice\n";
                return kUsage;
            }
            write_json(rbm_to_json(rbm), out_file);
            if (!report_file.empty()) {
                write_json(report_to_json(rep), report_file);
                manifest.outputs.push_back(report_file);
            }
            if (!trace_file.empty()) {
                write_trace_csv(rep, trace_file);
                manifest.outputs.push_back(trace_file);
            }
            std::cout << "final distance " << rep.final_distance << " (fidelity "
                      << rep.final_fidelity << ")\n";
        } else if (excite->parsed()) {
            manifest.inputs.push_back(rbm_file);
            manifest.outputs.push_back(out_file);
            RbmState rbm = rbm_from_json(read_json(rbm_file));
            std::vector<int> path = parse_indices(path_arg);
            for (int q : path)
                if (q < 0 || q >= rbm.n) {
                    std::cerr << "excite: path index " << q << " out of range\n";
                    return kUsage;
                }
            if (string_kind == "z") {
                rbm = apply_string_z(rbm, path);
            } else if (string_kind == "x") {
                rbm = apply_string_x(rbm, path);
            } else {
                std::cerr << "excite: --string must be z or x\n";
                return kUsage;
            }
            write_json(rbm_to_json(rbm), out_file);
        }
        manifest.write();
    } catch (const CapExceeded& e) {
        std::cerr << e.what() << '\n';
        return kCap;
    } catch (const OptimizationStalled& e) {
        std::cerr << e.what() << " (best distance " << e.report.final_distance << ")\n";
        return kVerifyFail;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return kUsage;
    }
    return kOk;
}
