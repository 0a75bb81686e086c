#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hetbound/model.hpp"

namespace hetbound {

struct IntegratorConfig {
    double eps_start = 1e-6;        ///< launch offset along the unstable eigenvector
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double converge_radius = 1e-8;  ///< arrival ball around (z, z)
    double v_threshold = 1e-14;     ///< arrival by Lyapunov level
    double max_time = 200.0;
    std::size_t max_steps = 1'000'000;
    double output_dt = 0.0;         ///< 0 records every accepted step

    /// Throws std::invalid_argument on non-positive settings or eps_start >= z.
    void validate(const SystemModel& model) const;
};

struct TrajectorySample {
    double t;
    double x;
    double y;
    double v;
};

enum class ShootStatus { Converged, DomainExit, TimeLimit, StepLimit };
std::string_view to_string(ShootStatus status);

struct Trajectory {
    std::vector<TrajectorySample> samples;
    double max_x = 0.0;
    double t_at_max_x = 0.0;
    bool converged = false;
    ShootStatus status = ShootStatus::TimeLimit;
    std::size_t steps = 0;
    std::string message;
};

/// Integrates from (eps, (a0+1) eps) until the orbit reaches (z, z), leaves
/// the domain, or exhausts max_time / max_steps. Failures are reported in
/// status and message, with the last valid state as the final sample.
Trajectory shoot_heteroclinic(const SystemModel& model, const IntegratorConfig& cfg = {});

/// Integrates the field from (x, y) for `duration` (negative runs backward).
/// Stops early when the state leaves the domain or comes within `stop_radius`
/// of the origin. Samples follow cfg.output_dt.
std::vector<TrajectorySample> integrate_orbit(const SystemModel& model, double x, double y,
                                              double duration, const IntegratorConfig& cfg,
                                              double stop_radius = 0.0);

/// Largest increase of V between consecutive samples, clamped below at 0.
/// Throws std::invalid_argument on an empty trajectory or non-increasing t.
double verify_lyapunov_monotone(const Trajectory& traj);

struct TrapPoint {
    double x;
    double y;
};

struct TrapRegionReport {
    std::size_t samples = 0;
    /// min over the tangent line of (a0+1) - dy/dx, x in (0, w]
    double line_margin = 0.0;
    TrapPoint line_worst{};
    /// min of y' on the diagonal, x in (0, z]
    double diagonal_min_dy = 0.0;
    /// max |x'| on the diagonal
    double diagonal_max_dx = 0.0;
    TrapPoint diagonal_worst{};
    bool isocline_checked = false;
    bool isocline_monotone = true;
    double isocline_max_rise = 0.0;
    TrapPoint isocline_worst{};
    bool passed = false;
    std::string failure;
};

inline constexpr double kTrapTolerance = 1e-12;

/// Samples the three boundary pieces of the trap region.
TrapRegionReport check_trap_region(const SystemModel& model, std::size_t n);

/// x(y) solving a(x) = y b(x) on [w, x0]. Requires b not identically zero and
/// y in [0, (a0+1) w].
double isocline_x(const SystemModel& model, double y);

/// CSV with header t,x,y,V.
void write_csv(const Trajectory& traj, std::ostream& out);

}  // namespace hetbound
