#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "stabrbm/pauli.hpp"
#include "stabrbm/rbm.hpp"

namespace stabrbm {

struct RequiresVariational : std::runtime_error {
    RequiresVariational() : std::runtime_error("requires variational route") {}
};

// Audit trail of the closed-form construction.
struct AnalyticRecipe {
    GroupClass cls = GroupClass::SX;
    bool y_basis = false;
    // Per generator: index of the hidden unit it produced (-1 for none)
    // and the visible sites whose bias it incremented/decremented.
    struct Contribution {
        std::string label;
        int hidden_unit = -1;
        std::vector<int> a_increments;  // +i*pi/4 sites (Z route)
        std::vector<int> a_decrements;  // -i*pi/4 sites (Y route)
    };
    std::vector<Contribution> contributions;
};

// Closed-form RBM for S_X/S_Y/S_Z-composable groups (and the qudit
// plaquette construction when d > 2); throws RequiresVariational on MIXED.
RbmState construct(const StabilizerGroup& g);
RbmState construct(const StabilizerGroup& g, AnalyticRecipe& recipe);

}  // namespace stabrbm
