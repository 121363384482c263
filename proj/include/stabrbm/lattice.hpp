#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stabrbm/pauli.hpp"

namespace stabrbm {

using Coord = std::pair<int, int>;  // (row, col) lattice coordinates

// Axis-aligned rectangle in lattice coordinates, corners inclusive.
struct Rect {
    int i0 = 0, j0 = 0, i1 = 0, j1 = 0;
};

struct Defect {
    std::string type;  // "smooth" | "rough"
    Rect region;
};

struct Wall {
    std::vector<Coord> path;
    Coord twist_endpoint{};
};

// Geometry description. Vertices at (even,even), plaquettes at (odd,odd),
// edges where the parities differ; rows/cols count plaquettes.
struct LatticeSpec {
    std::string kind = "planar";  // "torus" | "planar"
    int rows = 0, cols = 0;
    std::string top = "smooth", bottom = "smooth", left = "smooth", right = "smooth";
    std::vector<Defect> defects;
    std::optional<Wall> wall;
    int d = 2;
};

struct LatticeCode {
    LatticeSpec spec;
    std::vector<Coord> edges;        // sorted; index = qudit
    std::map<Coord, int> edge_index;
    StabilizerGroup group;           // independent generators
    std::vector<std::string> tags;   // per generator: bulk/corner/boundary/wall/twist
    StabilizerGroup full_group;      // all geometric operators, before the
    std::vector<std::string> full_tags;  // dependent ones are dropped
};

LatticeCode build_toric(int rows, int cols);
LatticeCode build_planar(const LatticeSpec& spec);
LatticeCode build_defect(const LatticeSpec& spec);  // spec.defects non-empty
LatticeCode build_twist(const LatticeSpec& spec);
LatticeCode build_twist();  // canonical wall geometry
StabilizerGroup build_shor();
LatticeCode build_zd(int rows, int cols, int d);

LatticeCode build_from_spec(const LatticeSpec& spec);

// Union of supports of wall/twist-tagged generators, sorted.
std::vector<int> wall_subsystem_spins(const LatticeCode& code);

// Indices (into code.group) of the subsystem stabilizers used for the twist
// fit: mixed generators first, then pure generators whose restriction to the
// subsystem commutes with everything chosen and raises the symplectic rank.
std::vector<int> wall_subsystem_stabilizers(const LatticeCode& code,
                                            const std::vector<int>& spins);

}  // namespace stabrbm
