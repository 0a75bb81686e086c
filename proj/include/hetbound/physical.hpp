#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hetbound/model.hpp"
#include "hetbound/trajectory.hpp"

namespace hetbound {

enum class Units { Natural, SI };
std::string_view to_string(Units units);

struct PhysicalConstants {
    double G;
    double c;
};

/// G = c = 1 for Natural; CODATA 2018 values for SI.
PhysicalConstants constants_for(Units units);

struct ProfileSample {
    double r;
    double m;
    double rho;
    double p;
    double compactness;  ///< 2 G m / (r c^2)
};

struct PhysicalProfile {
    std::vector<ProfileSample> samples;
    Units units = Units::Natural;
    double r_ref = 1.0;
    double eos_ratio = 1.0;  ///< p = eos_ratio * c^2 rho
};

/// Maps an orbit of a relativistic family to a mass/density profile via
/// r c^2 x(log r) = 2 G m(r), c^2 y(log r) = 8 pi G r^2 rho(r), anchored so the
/// final sample sits at r = r_ref. The scaled family is first mapped to
/// the stiff variables (x -> scale x, y -> scale y). Throws HypothesisError for
/// the nonrelativistic family, which has no TOV interpretation.
PhysicalProfile to_physical(const SystemModel& model, const Trajectory& traj, double r_ref = 1.0,
                            Units units = Units::Natural);

struct MassRadiusRow {
    std::string label;
    std::string expression;
    double value;
    std::string provenance;   ///< "literature" or "computed"
    std::string quoted_value;  ///< as printed alongside the row, for reference only
};

struct MassRadiusTable {
    std::vector<MassRadiusRow> rows;
};

/// Literature compactness bounds next to the bounds computed here.
MassRadiusTable mass_radius_table();

}  // namespace hetbound
