#include "stabrbm/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace stabrbm {

namespace {

using nlohmann::json;

json cplx_to_json(const std::complex<double>& c) { return json::array({c.real(), c.imag()}); }

std::complex<double> cplx_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

template <typename T>
json vec_to_json(const std::vector<T>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(x);
    return out;
}

}  // namespace

json group_to_json(const StabilizerGroup& g) {
    json gens = json::array();
    for (std::size_t k = 0; k < g.generators.size(); ++k) {
        const PauliString& p = g.generators[k];
        gens.push_back({{"x", p.x},
                        {"z", p.z},
                        {"phase", p.phase},
                        {"label", k < g.labels.size() ? g.labels[k] : ""}});
    }
    return {{"n", g.n}, {"d", g.d}, {"generators", gens}};
}

StabilizerGroup group_from_json(const json& j) {
    StabilizerGroup g;
    g.n = j.at("n").get<int>();
    g.d = j.value("d", 2);
    for (const auto& e : j.at("generators")) {
        PauliString p(g.n, g.d);
        p.x = e.at("x").get<std::vector<int>>();
        p.z = e.at("z").get<std::vector<int>>();
        p.phase = e.value("phase", 0);
        if (int(p.x.size()) != g.n || int(p.z.size()) != g.n)
            throw std::invalid_argument("generator length mismatch");
        g.generators.push_back(std::move(p));
        g.labels.push_back(e.value("label", ""));
    }
    return g;
}

json geometry_to_json(const LatticeCode& code) {
    json edges = json::array();
    for (const auto& [i, jj] : code.edges) edges.push_back(json::array({i, jj}));
    return {{"spec", spec_to_json(code.spec)},
            {"edges", edges},
            {"labels", vec_to_json(code.group.labels)},
            {"tags", vec_to_json(code.tags)}};
}

json rbm_to_json(const RbmState& s) {
    json a = json::array(), b = json::array(), W = json::array();
    for (const auto& c : s.a) a.push_back(cplx_to_json(c));
    for (const auto& c : s.b) b.push_back(cplx_to_json(c));
    for (int j = 0; j < s.m(); ++j) {
        json row = json::array();
        for (int i = 0; i < s.n; ++i) row.push_back(cplx_to_json(s.W[std::size_t(j) * s.n + i]));
        W.push_back(row);
    }
    return {{"format", "stabrbm-rbm-v1"},
            {"n", s.n},
            {"d", s.d},
            {"y_basis", s.y_basis},
            {"a", a},
            {"b", b},
            {"W", W},
            {"hidden_labels", vec_to_json(s.hidden_labels)}};
}

RbmState rbm_from_json(const json& j) {
    if (j.value("format", "") != "stabrbm-rbm-v1")
        throw std::invalid_argument("unrecognized RBM file format");
    int n = j.at("n").get<int>();
    int m = int(j.at("b").size());
    RbmState s(n, m, j.value("d", 2));
    s.y_basis = j.value("y_basis", false);
    if (int(j.at("a").size()) != n) throw std::invalid_argument("a length mismatch");
    for (int i = 0; i < n; ++i) s.a[i] = cplx_from_json(j["a"][i]);
    for (int k = 0; k < m; ++k) s.b[k] = cplx_from_json(j["b"][k]);
    if (int(j.at("W").size()) != m) throw std::invalid_argument("W row count mismatch");
    for (int k = 0; k < m; ++k) {
        const auto& row = j["W"][k];
        if (int(row.size()) != n) throw std::invalid_argument("W row length mismatch");
        for (int i = 0; i < n; ++i) s.W[std::size_t(k) * n + i] = cplx_from_json(row[i]);
    }
    if (j.contains("hidden_labels"))
        s.hidden_labels = j["hidden_labels"].get<std::vector<std::string>>();
    return s;
}

json spec_to_json(const LatticeSpec& spec) {
    json out = {{"kind", spec.kind},
                {"rows", spec.rows},
                {"cols", spec.cols},
                {"d", spec.d},
                {"boundary",
                 {{"top", spec.top},
                  {"bottom", spec.bottom},
                  {"left", spec.left},
                  {"right", spec.right}}}};
    json defects = json::array();
    for (const auto& df : spec.defects)
        defects.push_back({{"type", df.type},
                           {"region", {df.region.i0, df.region.j0, df.region.i1, df.region.j1}}});
    out["defects"] = defects;
    if (spec.wall) {
        json path = json::array();
        for (const auto& [i, jj] : spec.wall->path) path.push_back(json::array({i, jj}));
        out["wall"] = {{"path", path},
                       {"twist_endpoint",
                        {spec.wall->twist_endpoint.first, spec.wall->twist_endpoint.second}}};
    }
    return out;
}

LatticeSpec spec_from_json(const json& j) {
    LatticeSpec spec;
    spec.kind = j.value("kind", "planar");
    spec.rows = j.at("rows").get<int>();
    spec.cols = j.at("cols").get<int>();
    spec.d = j.value("d", 2);
    if (j.contains("boundary")) {
        const auto& b = j["boundary"];
        spec.top = b.value("top", "smooth");
        spec.bottom = b.value("bottom", "smooth");
        spec.left = b.value("left", "smooth");
        spec.right = b.value("right", "smooth");
    }
    for (const auto& e : j.value("defects", json::array())) {
        Defect df;
        df.type = e.at("type").get<std::string>();
        const auto& r = e.at("region");
        if (r.size() != 4) throw std::invalid_argument("defect region must be [i0,j0,i1,j1]");
        df.region = {r[0].get<int>(), r[1].get<int>(), r[2].get<int>(), r[3].get<int>()};
        spec.defects.push_back(df);
    }
    if (j.contains("wall") && !j["wall"].is_null()) {
        Wall w;
        for (const auto& c : j["wall"].at("path"))
            w.path.emplace_back(c[0].get<int>(), c[1].get<int>());
        const auto& t = j["wall"].at("twist_endpoint");
        w.twist_endpoint = {t[0].get<int>(), t[1].get<int>()};
        spec.wall = w;
    }
    return spec;
}

json report_to_json(const FitReport& r) {
    json trace = json::array();
    for (const auto& [it, d] : r.trace) trace.push_back(json::array({it, d}));
    json out = {{"final_distance", r.final_distance},
                {"final_fidelity", r.final_fidelity},
                {"gradient_norm", r.gradient_norm},
                {"iterations_used", r.iterations_used},
                {"restart_index", r.restart_index},
                {"restarts_run", r.restarts_run},
                {"converged", r.converged},
                {"parameter_norms", vec_to_json(r.parameter_norms)},
                {"trace", trace}};
    if (r.gradient_check_max_rel_err >= 0)
        out["gradient_check_max_rel_err"] = r.gradient_check_max_rel_err;
    return out;
}

json recipe_to_json(const AnalyticRecipe& r) {
    json contribs = json::array();
    for (const auto& c : r.contributions)
        contribs.push_back({{"label", c.label},
                            {"hidden_unit", c.hidden_unit},
                            {"a_increments", vec_to_json(c.a_increments)},
                            {"a_decrements", vec_to_json(c.a_decrements)}});
    return {{"class", group_class_name(r.cls)},
            {"y_basis", r.y_basis},
            {"contributions", contribs}};
}

std::string fnv1a_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::uint64_t h = 14695981039346656037ull;
    char buf[4096];
    while (f.read(buf, sizeof buf) || f.gcount() > 0) {
        for (std::streamsize i = 0; i < f.gcount(); ++i) {
            h ^= std::uint8_t(buf[i]);
            h *= 1099511628211ull;
        }
        if (f.eof()) break;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

void write_json(const json& j, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << j.dump(2) << '\n';
}

json read_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return json::parse(f);
}

}  // namespace stabrbm
