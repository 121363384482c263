#include "stabrbm/lattice.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace stabrbm {

namespace {

int wrap(int a, int m) {
    int r = a % m;
    return r < 0 ? r + m : r;
}

std::string coord_label(const std::string& prefix, int i, int j) {
    return prefix + "_{" + std::to_string(i) + std::to_string(j) + "}";
}

// Keep generators (in order) whose symplectic rank keeps growing; with a
// single product dependency this drops exactly the last-indexed operator.
void select_independent(LatticeCode& code) {
    std::vector<PauliString> kept;
    code.group.n = code.full_group.n;
    code.group.d = code.full_group.d;
    for (std::size_t j = 0; j < code.full_group.generators.size(); ++j) {
        kept.push_back(code.full_group.generators[j]);
        if (symplectic_rank(kept, code.full_group.n, code.full_group.d) != int(kept.size())) {
            kept.pop_back();
            continue;
        }
        code.group.generators.push_back(code.full_group.generators[j]);
        code.group.labels.push_back(code.full_group.labels[j]);
        code.tags.push_back(code.full_tags[j]);
    }
}

// Last-indexed drop for composite d, where rank is unavailable: remove the
// final star and final plaquette (the two product dependencies of a torus).
void select_drop_last(LatticeCode& code, std::size_t last_a, std::size_t last_b) {
    for (std::size_t j = 0; j < code.full_group.generators.size(); ++j) {
        if (j == last_a || j == last_b) continue;
        code.group.generators.push_back(code.full_group.generators[j]);
        code.group.labels.push_back(code.full_group.labels[j]);
        code.tags.push_back(code.full_tags[j]);
    }
    code.group.n = code.full_group.n;
    code.group.d = code.full_group.d;
}

bool is_prime(int d) {
    if (d < 2) return false;
    for (int f = 2; f * f <= d; ++f)
        if (d % f == 0) return false;
    return true;
}

void push_op(LatticeCode& code, PauliString op, const std::string& label,
             const std::string& tag) {
    code.full_group.generators.push_back(std::move(op));
    code.full_group.labels.push_back(label);
    code.full_tags.push_back(tag);
}

}  // namespace

LatticeCode build_zd(int rows, int cols, int d) {
    if (rows < 2 || cols < 2) throw std::invalid_argument("torus needs rows, cols >= 2");
    if (d < 2) throw std::invalid_argument("local dimension must be >= 2");
    LatticeCode code;
    code.spec.kind = "torus";
    code.spec.rows = rows;
    code.spec.cols = cols;
    code.spec.d = d;
    const int IM = 2 * rows, JM = 2 * cols;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            code.edges.emplace_back(2 * r, 2 * c + 1);  // horizontal
            code.edges.emplace_back(2 * r + 1, 2 * c);  // vertical
        }
    std::sort(code.edges.begin(), code.edges.end());
    for (std::size_t k = 0; k < code.edges.size(); ++k) code.edge_index[code.edges[k]] = int(k);
    const int n = int(code.edges.size());
    code.full_group.n = n;
    code.full_group.d = d;

    auto eidx = [&](int i, int j) { return code.edge_index.at({wrap(i, IM), wrap(j, JM)}); };

    // Orientation: vertical edges point up (toward smaller i), horizontal
    // edges point right. A_s takes X on edges pointing at s, X^(d-1) on
    // edges pointing away; B_p signs follow the same orientation.
    std::size_t last_a = 0, last_b = 0;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            int i = 2 * r, j = 2 * c;
            PauliString op(n, d);
            op.x[eidx(i + 1, j)] = 1;      // below, points up at s
            op.x[eidx(i, j - 1)] = 1;      // left, points right at s
            op.x[eidx(i - 1, j)] = d - 1;  // above, points away
            op.x[eidx(i, j + 1)] = d - 1;  // right, points away
            last_a = code.full_group.generators.size();
            push_op(code, std::move(op), coord_label("A", i, j), "bulk");
        }
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            int i = 2 * r + 1, j = 2 * c + 1;
            PauliString op(n, d);
            op.z[eidx(i + 1, j)] = 1;      // bottom horizontal
            op.z[eidx(i, j + 1)] = 1;      // right vertical
            op.z[eidx(i - 1, j)] = d - 1;  // top horizontal
            op.z[eidx(i, j - 1)] = d - 1;  // left vertical
            last_b = code.full_group.generators.size();
            push_op(code, std::move(op), coord_label("B", i, j), "bulk");
        }
    if (is_prime(d)) select_independent(code);
    else select_drop_last(code, last_a, last_b);
    return code;
}

LatticeCode build_toric(int rows, int cols) { return build_zd(rows, cols, 2); }

LatticeCode build_planar(const LatticeSpec& spec) {
    if (spec.kind != "planar") throw std::invalid_argument("build_planar: spec.kind must be planar");
    if (spec.rows < 1 || spec.cols < 1) throw std::invalid_argument("planar needs rows, cols >= 1");
    if (spec.d != 2) throw std::invalid_argument("planar lattice supports d=2 only");
    for (const auto& side : {spec.top, spec.bottom, spec.left, spec.right})
        if (side != "smooth" && side != "rough")
            throw std::invalid_argument("boundary tag must be smooth or rough");

    LatticeCode code;
    code.spec = spec;
    const int IM = 2 * spec.rows, JM = 2 * spec.cols;
    auto in_range = [&](int i, int j) { return i >= 0 && i <= IM && j >= 0 && j <= JM; };

    std::set<Coord> removed_rough, removed_smooth, star_dead, plaq_dead;
    if (spec.top == "rough")
        for (int j = 1; j < JM; j += 2) removed_rough.insert({0, j});
    if (spec.bottom == "rough")
        for (int j = 1; j < JM; j += 2) removed_rough.insert({IM, j});
    if (spec.left == "rough")
        for (int i = 1; i < IM; i += 2) removed_rough.insert({i, 0});
    if (spec.right == "rough")
        for (int i = 1; i < IM; i += 2) removed_rough.insert({i, JM});

    for (std::size_t k = 0; k < spec.defects.size(); ++k) {
        const auto& df = spec.defects[k];
        const Rect& r = df.region;
        if (df.type != "smooth" && df.type != "rough")
            throw std::invalid_argument("defect type must be smooth or rough");
        if (r.i0 % 2 || r.j0 % 2 || r.i1 % 2 || r.j1 % 2 || r.i0 >= r.i1 || r.j0 >= r.j1)
            throw std::invalid_argument("defect region must be a rectangle with even corners");
        if (r.i0 <= 0 || r.j0 <= 0 || r.i1 >= IM || r.j1 >= JM)
            throw std::invalid_argument("defect region must lie strictly inside the lattice");
        for (std::size_t l = 0; l < k; ++l) {
            const Rect& o = spec.defects[l].region;
            if (r.i0 <= o.i1 && o.i0 <= r.i1 && r.j0 <= o.j1 && o.j0 <= r.j1)
                throw std::invalid_argument("overlapping defects");
        }
        if (df.type == "smooth") {
            for (int i = r.i0 + 1; i < r.i1; ++i)
                for (int j = r.j0 + 1; j < r.j1; ++j) {
                    if ((i + j) % 2 == 1) removed_smooth.insert({i, j});
                    else if (i % 2 == 0) star_dead.insert({i, j});
                    else plaq_dead.insert({i, j});
                }
            // The paper defines no operators on the hole's corner vertices.
            star_dead.insert({r.i0, r.j0});
            star_dead.insert({r.i0, r.j1});
            star_dead.insert({r.i1, r.j0});
            star_dead.insert({r.i1, r.j1});
        } else {
            for (int i = r.i0; i <= r.i1; ++i)
                for (int j = r.j0; j <= r.j1; ++j) {
                    if ((i + j) % 2 == 1) removed_rough.insert({i, j});
                    else if (i % 2 == 0 && j % 2 == 0) star_dead.insert({i, j});
                    else if (i % 2 == 1 && j % 2 == 1) plaq_dead.insert({i, j});
                }
        }
    }

    for (int i = 0; i <= IM; ++i)
        for (int j = 0; j <= JM; ++j) {
            if ((i + j) % 2 == 0) continue;
            Coord e{i, j};
            if (!removed_rough.count(e) && !removed_smooth.count(e)) code.edges.push_back(e);
        }
    std::sort(code.edges.begin(), code.edges.end());
    for (std::size_t k = 0; k < code.edges.size(); ++k) code.edge_index[code.edges[k]] = int(k);
    const int n = int(code.edges.size());
    code.full_group.n = n;
    code.full_group.d = 2;

    const Coord dirs[4] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    for (int i = 0; i <= IM; i += 2)
        for (int j = 0; j <= JM; j += 2) {
            if (star_dead.count({i, j})) continue;
            std::vector<int> sup;
            bool next_to_rough = false;
            for (const auto& [di, dj] : dirs) {
                int ei = i + di, ej = j + dj;
                if (!in_range(ei, ej)) continue;
                if (removed_rough.count({ei, ej})) next_to_rough = true;
                auto it = code.edge_index.find({ei, ej});
                if (it != code.edge_index.end()) sup.push_back(it->second);
            }
            if (next_to_rough || sup.size() < 2) continue;
            PauliString op(n, 2);
            for (int e : sup) op.x[e] = 1;
            std::string prefix = sup.size() == 4 ? "A" : sup.size() == 3 ? "D" : "C";
            std::string tag = sup.size() == 4 ? "bulk" : sup.size() == 3 ? "boundary" : "corner";
            push_op(code, std::move(op), coord_label(prefix, i, j), tag);
        }
    for (int i = 1; i < IM; i += 2)
        for (int j = 1; j < JM; j += 2) {
            if (plaq_dead.count({i, j})) continue;
            std::vector<int> sup;
            for (const auto& [di, dj] : dirs) {
                auto it = code.edge_index.find({i + di, j + dj});
                if (it != code.edge_index.end()) sup.push_back(it->second);
            }
            if (sup.size() < 2) continue;
            PauliString op(n, 2);
            for (int e : sup) op.z[e] = 1;
            std::string prefix = sup.size() == 4 ? "B" : sup.size() == 3 ? "F" : "E";
            std::string tag = sup.size() == 4 ? "bulk" : sup.size() == 3 ? "boundary" : "corner";
            push_op(code, std::move(op), coord_label(prefix, i, j), tag);
        }
    select_independent(code);
    return code;
}

LatticeCode build_defect(const LatticeSpec& spec) {
    if (spec.defects.empty()) throw std::invalid_argument("build_defect: spec has no defects");
    return build_planar(spec);
}

namespace {

const Wall kCanonicalWall{{{3, 5}, {3, 7}}, {3, 3}};

}  // namespace

LatticeCode build_twist() {
    LatticeSpec spec;
    spec.kind = "planar";
    spec.rows = 2;
    spec.cols = 4;
    spec.wall = kCanonicalWall;
    return build_twist(spec);
}

LatticeCode build_twist(const LatticeSpec& spec) {
    if (!spec.wall) throw std::invalid_argument("build_twist: spec has no wall");
    const int IM = 2 * spec.rows, JM = 2 * spec.cols;
    auto interior = [&](const Coord& c) {
        return c.first > 0 && c.first < IM && c.second > 0 && c.second < JM;
    };
    if (!interior(spec.wall->twist_endpoint))
        throw std::invalid_argument("wall touching boundary");
    for (const auto& c : spec.wall->path)
        if (!interior(c)) throw std::invalid_argument("wall touching boundary");
    if (!spec.defects.empty())
        throw std::invalid_argument("wall and defects cannot be combined");
    if (spec.rows != 2 || spec.cols != 4 || spec.wall->path != kCanonicalWall.path ||
        spec.wall->twist_endpoint != kCanonicalWall.twist_endpoint)
        throw std::invalid_argument(
            "unsupported wall topology (single horizontal wall at plaquettes "
            "(3,5),(3,7) with twist at (3,3) on a 2x4 planar lattice)");

    LatticeSpec base = spec;
    base.wall.reset();
    LatticeCode planar = build_planar(base);

    LatticeCode code;
    code.spec = spec;
    code.edges = planar.edges;
    code.edge_index = planar.edge_index;
    const int n = int(code.edges.size());
    code.full_group.n = n;
    code.full_group.d = 2;

    // Hadamard-conjugated region: edges at rows >= 2, columns >= 5.
    std::vector<bool> conj(n, false);
    for (int e = 0; e < n; ++e)
        conj[e] = code.edges[e].first >= 2 && code.edges[e].second >= 5;

    // The seam replaces the operators at vertices (2,4), (4,4) and plaquettes
    // (3,5), (3,3); all other geometric operators survive conjugation,
    // including the one star that is dependent in the plain planar code.
    const std::set<std::string> dropped = {"A_{24}", "D_{44}", "B_{35}", "B_{33}"};
    for (std::size_t g = 0; g < planar.full_group.generators.size(); ++g) {
        if (dropped.count(planar.full_group.labels[g])) continue;
        PauliString op = planar.full_group.generators[g];
        for (int e = 0; e < n; ++e)
            if (conj[e]) std::swap(op.x[e], op.z[e]);
        std::string label = planar.full_group.labels[g];
        std::string tag = planar.full_tags[g];
        if (generator_type(op) == GenType::OTHER) {
            // Mixed star/plaquette operator along the domain wall.
            label[0] = 'W';
            tag = "wall";
        }
        push_op(code, std::move(op), label, tag);
    }

    // Twist operators closing the dislocation at its endpoint.
    auto mkop = [&](const std::vector<std::pair<char, Coord>>& terms) {
        PauliString op(n, 2);
        for (const auto& [pc, c] : terms) {
            int e = code.edge_index.at(c);
            if (pc == 'X' || pc == 'Y') op.x[e] = 1;
            if (pc == 'Z' || pc == 'Y') op.z[e] = 1;
            if (pc == 'Y') op.phase = (op.phase + 1) % 4;
        }
        return op;
    };
    push_op(code,
            mkop({{'X', {1, 4}}, {'Y', {2, 3}}, {'Z', {2, 5}}, {'Z', {3, 2}}, {'Z', {4, 3}}}),
            "Q", "twist");
    push_op(code, mkop({{'X', {3, 4}}}), "Q1", "twist");
    push_op(code, mkop({{'Z', {2, 3}}, {'Z', {3, 2}}, {'X', {3, 4}}, {'Y', {4, 3}}}), "Q2",
            "twist");

    code.group = code.full_group;
    code.tags = code.full_tags;
    return code;
}

StabilizerGroup build_shor() {
    StabilizerGroup g;
    g.n = 9;
    g.d = 2;
    const char* gens[] = {"ZZIIIIIII", "IZZIIIIII", "XXXXXXIII", "IIIZZIIII",
                          "IIIIZZIII", "IIIXXXXXX", "IIIIIIZZI", "IIIIIIIZZ"};
    for (int k = 0; k < 8; ++k) {
        g.generators.push_back(pauli_from_string(gens[k]));
        g.labels.push_back("T" + std::to_string(k + 1));
    }
    return g;
}

LatticeCode build_from_spec(const LatticeSpec& spec) {
    if (spec.kind == "torus") {
        if (spec.wall || !spec.defects.empty())
            throw std::invalid_argument("walls/defects are only supported on planar lattices");
        return build_zd(spec.rows, spec.cols, spec.d);
    }
    if (spec.kind != "planar") throw std::invalid_argument("unknown lattice kind: " + spec.kind);
    if (spec.wall) return build_twist(spec);
    return build_planar(spec);
}

std::vector<int> wall_subsystem_spins(const LatticeCode& code) {
    std::set<int> spins;
    for (std::size_t g = 0; g < code.group.generators.size(); ++g) {
        if (code.tags[g] != "wall" && code.tags[g] != "twist") continue;
        for (int e : code.group.generators[g].support()) spins.insert(e);
    }
    return {spins.begin(), spins.end()};
}

std::vector<int> wall_subsystem_stabilizers(const LatticeCode& code,
                                            const std::vector<int>& spins) {
    // Mixed generators are the subsystem's major stabilizers; the only
    // non-major constraints the subsystem factor must respect are the
    // restrictions of spin-flipping (pure X-type) generators. Diagonal
    // (pure Z-type) generators are enforced by their own global factor.
    std::vector<int> chosen;
    std::vector<PauliString> restr;
    auto try_add = [&](int g) {
        PauliString r = code.group.generators[g].restrict_to(spins);
        if (r.identity()) return;
        for (const auto& c : restr)
            if (!commutes(c, r)) return;
        restr.push_back(r);
        if (symplectic_rank(restr, int(spins.size()), code.group.d) != int(restr.size())) {
            restr.pop_back();
            return;
        }
        chosen.push_back(g);
    };
    for (std::size_t g = 0; g < code.group.generators.size(); ++g)
        if (generator_type(code.group.generators[g]) == GenType::OTHER) try_add(int(g));
    for (std::size_t g = 0; g < code.group.generators.size(); ++g)
        if (generator_type(code.group.generators[g]) == GenType::X) try_add(int(g));
    return chosen;
}

}  // namespace stabrbm
