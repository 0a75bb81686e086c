#include "hetbound/physical.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hetbound/bounds.hpp"
#include "hetbound/errors.hpp"

namespace hetbound {

std::string_view to_string(Units units) { return units == Units::SI ? "SI" : "natural"; }

PhysicalConstants constants_for(Units units) {
    if (units == Units::SI) return {6.67430e-11, 299792458.0};
    return {1.0, 1.0};
}

PhysicalProfile to_physical(const SystemModel& model, const Trajectory& traj, double r_ref,
                            Units units) {
    if (model.family() == Family::Nonrelativistic) {
        throw HypothesisError(
            "the nonrelativistic model has no TOV interpretation; use a relativistic family");
    }
    if (!(r_ref > 0.0)) throw std::invalid_argument("r_ref must be positive");
    if (traj.samples.empty()) throw std::invalid_argument("empty trajectory");

    const auto [G, c] = constants_for(units);
    const double var_scale =
        model.family() == Family::ScaledRelativistic ? model.spec().scale : 1.0;
    PhysicalProfile prof;
    prof.units = units;
    prof.r_ref = r_ref;
    prof.eos_ratio = model.family() == Family::KappaFamily ? model.spec().kappa : 1.0;

    const double t_end = traj.samples.back().t;
    prof.samples.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        const double r = r_ref * std::exp(s.t - t_end);
        const double x = var_scale * s.x;
        const double y = var_scale * s.y;
        const double m = r * c * c * x / (2.0 * G);
        const double rho = c * c * y / (8.0 * std::numbers::pi * G * r * r);
        prof.samples.push_back({r, m, rho, prof.eos_ratio * c * c * rho, x});
    }
    return prof;
}

MassRadiusTable mass_radius_table() {
    MassRadiusTable table;
    table.rows.push_back({"Buchdahl / TOV / Schwarzschild", "8/9", 8.0 / 9.0, "literature",
                          "0.97"});
    table.rows.push_back({"Bondi, rho >= 0", "12*sqrt(2)-16", 12.0 * std::sqrt(2.0) - 16.0,
                          "literature", "0.95"});

    const auto stiff = make_model({Family::StiffRelativistic});
    const auto stiff_bound = bound_X(stiff);
    table.rows.push_back({"stiff EOS c^2 rho = p, bound X", "1 + W0(-2^(1/3) e^(-4/3))/2",
                          *stiff_bound.X_closed, "computed", "< 0.7 (3/4 = 0.75 earlier)"});

    const auto radiation = make_model({Family::KappaFamily, 1.0 / 3.0});
    const auto radiation_bound = bound_X(radiation);
    table.rows.push_back({"border case c^2 rho = 3p, bound X",
                          "H^-1(E), kappa = 1/3 (1 + W0(...)/alpha)", *radiation_bound.X_closed,
                          "computed", "0.622"});

    const auto orbit = shoot_heteroclinic(stiff);
    if (!orbit.converged) throw ConvergenceError("stiff heteroclinic: " + orbit.message);
    table.rows.push_back({"stiff EOS, heteroclinic max x", "numeric shooting", orbit.max_x,
                          "computed", "0.55"});
    return table;
}

}  // namespace hetbound
