#include "stabrbm/analytic.hpp"

#include <cmath>
#include <numbers>

namespace stabrbm {

namespace {

using namespace std::complex_literals;
const double pi = std::numbers::pi;

std::string gen_label(const StabilizerGroup& g, std::size_t j) {
    return j < g.labels.size() && !g.labels[j].empty() ? g.labels[j] : "T" + std::to_string(j + 1);
}

// Qubit route: Algorithm 1 with per-incidence bias accumulation.
RbmState construct_qubit(const StabilizerGroup& g, AnalyticRecipe& recipe) {
    StabilizerGroup work = g;
    recipe.cls = classify(g);
    recipe.y_basis = false;
    if (recipe.cls == GroupClass::MIXED) throw RequiresVariational();
    if (recipe.cls == GroupClass::XY) {
        // sigma_y basis: X -> Y, Y -> Z turns X|Y into Y|Z.
        recipe.y_basis = true;
        for (auto& p : work.generators) {
            for (int i = 0; i < p.n; ++i) {
                if (p.x[i] && !p.z[i]) p.z[i] = 1;      // X -> Y
                else if (p.x[i] && p.z[i]) p.x[i] = 0;  // Y -> Z
            }
        }
    }

    RbmState rbm(g.n, 0, 2);
    rbm.y_basis = recipe.y_basis;
    for (std::size_t j = 0; j < work.generators.size(); ++j) {
        const PauliString& p = work.generators[j];
        AnalyticRecipe::Contribution c;
        c.label = gen_label(g, j);
        switch (generator_type(p)) {
            case GenType::Z: {
                std::vector<int> sup = p.support();
                std::vector<std::complex<double>> row(g.n, 0.0);
                for (int i : sup) {
                    rbm.a[i] += 0.25i * pi;
                    row[i] = 0.25i * pi;
                    c.a_increments.push_back(i);
                }
                c.hidden_unit = rbm.m();
                rbm.add_hidden(row, -0.25i * pi * double(sup.size()), c.label);
                break;
            }
            case GenType::Y: {
                // exp(-i pi/4 sum over support), then treat as X (nothing more).
                for (int i : p.support()) {
                    rbm.a[i] -= 0.25i * pi;
                    c.a_decrements.push_back(i);
                }
                break;
            }
            case GenType::X:
                break;
            case GenType::OTHER:
                throw RequiresVariational();
        }
        recipe.contributions.push_back(std::move(c));
    }
    return rbm;
}

// Qudit route (d > 2): d-1 hidden units per Z-type (plaquette) generator,
// signs taken from the +-1 exponents of the clock operators.
RbmState construct_qudit(const StabilizerGroup& g, AnalyticRecipe& recipe) {
    recipe.cls = classify(g);
    recipe.y_basis = false;
    if (recipe.cls != GroupClass::XZ && recipe.cls != GroupClass::SZ &&
        recipe.cls != GroupClass::SX)
        throw RequiresVariational();
    const int d = g.d;
    RbmState rbm(g.n, 0, d);
    for (std::size_t j = 0; j < g.generators.size(); ++j) {
        const PauliString& p = g.generators[j];
        AnalyticRecipe::Contribution c;
        c.label = gen_label(g, j);
        if (generator_type(p) == GenType::Z && !p.identity()) {
            std::vector<int> sign(g.n, 0);
            for (int i = 0; i < g.n; ++i) {
                if (!p.z[i]) continue;
                if (p.z[i] == 1) sign[i] = 1;
                else if (p.z[i] == d - 1) sign[i] = -1;
                else throw std::invalid_argument(
                        "construct: qudit Z exponent must be +-1 (generator " + c.label + ")");
            }
            // Hidden unit l contributes 2sin(pi(l + S)/d), S the signed plaquette
            // sum; the product over l = 1..d-1 vanishes unless S = 0 mod d and is
            // a positive constant otherwise (d odd), so no visible bias is needed.
            std::vector<std::complex<double>> row(g.n, 0.0);
            for (int i = 0; i < g.n; ++i)
                if (sign[i]) row[i] = double(sign[i]) * (1.0i * pi / double(d));
            c.hidden_unit = rbm.m();
            for (int l = 1; l < d; ++l)
                rbm.add_hidden(row, 1.0i * pi * double(l) / double(d) - 0.5i * pi,
                               c.label + ":l=" + std::to_string(l));
        }
        recipe.contributions.push_back(std::move(c));
    }
    return rbm;
}

}  // namespace

RbmState construct(const StabilizerGroup& g, AnalyticRecipe& recipe) {
    recipe = AnalyticRecipe{};
    return g.d == 2 ? construct_qubit(g, recipe) : construct_qudit(g, recipe);
}

RbmState construct(const StabilizerGroup& g) {
    AnalyticRecipe recipe;
    return construct(g, recipe);
}

}  // namespace stabrbm
