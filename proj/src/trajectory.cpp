#include "hetbound/trajectory.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hetbound/errors.hpp"
#include "hetbound/format.hpp"
#include "hetbound/lyapunov.hpp"
#include "hetbound/roots.hpp"

namespace hetbound {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 2>;

struct Field {
    RationalCoefficients k;
    void operator()(const State& s, State& ds, double /*t*/) const {
        const double d = 1.0 - k.c * s[0];
        ds[0] = s[1] - s[0];
        ds[1] = (k.a0 + k.a1 * s[0]) / d * s[1] - k.b0 / d * s[1] * s[1];
    }
};

bool valid_state(const SystemModel& model, const State& s) {
    return std::isfinite(s[0]) && std::isfinite(s[1]) && model.in_domain(s[0]) && s[1] > 0.0;
}

struct DriveOutcome {
    ShootStatus status = ShootStatus::TimeLimit;
    std::size_t steps = 0;
    std::string message;
    double max_x = -std::numeric_limits<double>::infinity();
    double t_at_max_x = 0.0;
};

// Steps the dense-output DOPRI5 stepper from s0 toward t_end, recording
// samples and tracking the maximum of x (refined at y = x crossings).
DriveOutcome drive(const SystemModel& model, State s0, double t_end, const IntegratorConfig& cfg,
                   const std::function<bool(const State&, double v)>& arrived,
                   std::vector<TrajectorySample>& samples) {
    const Field field{model.coefficients()};
    const double direction = t_end >= 0.0 ? 1.0 : -1.0;
    auto stepper = odeint::make_dense_output(cfg.abs_tol, cfg.rel_tol,
                                             odeint::runge_kutta_dopri5<State>());
    stepper.initialize(s0, 0.0, direction * 1e-3);

    DriveOutcome out;
    auto push = [&](double t, const State& s) {
        samples.push_back({t, s[0], s[1], lyapunov_value(model, s[0], s[1])});
    };
    push(0.0, s0);
    out.max_x = s0[0];

    const bool uniform = cfg.output_dt > 0.0;
    double next_out = direction * cfg.output_dt;
    State prev = s0;
    State tmp{};

    while (true) {
        if (out.steps >= cfg.max_steps) {
            out.status = ShootStatus::StepLimit;
            out.message = "step cap reached";
            break;
        }
        const auto [ta, t_step] = stepper.do_step(field);
        ++out.steps;
        State cur = stepper.current_state();
        const bool past_end = direction * (t_step - t_end) >= 0.0;
        double tb = t_step;
        if (past_end) {
            tb = t_end;
            stepper.calc_state(t_end, cur);
        }
        if (!valid_state(model, cur)) {
            std::ostringstream os;
            os << "orbit left the domain after t=" << ta << " (last valid state x=" << prev[0]
               << ", y=" << prev[1] << ")";
            out.status = ShootStatus::DomainExit;
            out.message = os.str();
            if (samples.back().t != ta) push(ta, prev);
            break;
        }

        // x attains a local maximum where x' = y - x changes sign from + to -.
        const double g_prev = prev[1] - prev[0];
        const double g_cur = cur[1] - cur[0];
        if (g_prev > 0.0 && g_cur <= 0.0) {
            auto g = [&](double t) {
                stepper.calc_state(t, tmp);
                return tmp[1] - tmp[0];
            };
            const double lo = std::min(ta, tb);
            const double hi = std::max(ta, tb);
            const double tm = roots::solve_bracketed(g, {lo, hi}, 1e-14);
            stepper.calc_state(tm, tmp);
            if (tmp[0] > out.max_x) {
                out.max_x = tmp[0];
                out.t_at_max_x = tm;
            }
        }
        if (cur[0] > out.max_x) {
            out.max_x = cur[0];
            out.t_at_max_x = tb;
        }

        const double v = lyapunov_value(model, cur[0], cur[1]);
        const bool done = arrived(cur, v);
        if (uniform) {
            while (direction * (next_out - tb) <= 0.0 && direction * (next_out - t_end) <= 0.0) {
                stepper.calc_state(next_out, tmp);
                push(next_out, tmp);
                next_out += direction * cfg.output_dt;
            }
            if ((done || past_end) && samples.back().t != tb) push(tb, cur);
        } else {
            push(tb, cur);
        }
        prev = cur;
        if (done) {
            out.status = ShootStatus::Converged;
            break;
        }
        if (past_end) {
            out.status = ShootStatus::TimeLimit;
            out.message = "time limit reached before arrival";
            break;
        }
    }
    return out;
}

}  // namespace

std::string_view to_string(ShootStatus status) {
    switch (status) {
        case ShootStatus::Converged: return "converged";
        case ShootStatus::DomainExit: return "domain_exit";
        case ShootStatus::TimeLimit: return "time_limit";
        case ShootStatus::StepLimit: return "step_limit";
    }
    return "unknown";
}

void IntegratorConfig::validate(const SystemModel& model) const {
    const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(eps_start) || !positive(rel_tol) || !positive(abs_tol) ||
        !positive(converge_radius) || !positive(v_threshold) || !positive(max_time) ||
        max_steps == 0 || !(output_dt >= 0.0)) {
        throw std::invalid_argument("integrator settings must be positive");
    }
    if (eps_start >= 0.01 * model.z()) {
        throw std::invalid_argument("eps_start must be much smaller than z");
    }
}

Trajectory shoot_heteroclinic(const SystemModel& model, const IntegratorConfig& cfg) {
    cfg.validate(model);
    const double z = model.z();
    const State start{cfg.eps_start, (model.a0() + 1.0) * cfg.eps_start};
    auto arrived = [&](const State& s, double v) {
        return std::hypot(s[0] - z, s[1] - z) <= cfg.converge_radius || v <= cfg.v_threshold;
    };
    Trajectory traj;
    const DriveOutcome outcome = drive(model, start, cfg.max_time, cfg, arrived, traj.samples);
    traj.status = outcome.status;
    traj.converged = outcome.status == ShootStatus::Converged;
    traj.steps = outcome.steps;
    traj.message = outcome.message;
    traj.max_x = outcome.max_x;
    traj.t_at_max_x = outcome.t_at_max_x;
    return traj;
}

std::vector<TrajectorySample> integrate_orbit(const SystemModel& model, double x, double y,
                                              double duration, const IntegratorConfig& cfg,
                                              double stop_radius) {
    if (!valid_state(model, {x, y})) throw DomainError("start point outside the domain");
    auto arrived = [&](const State& s, double) { return std::hypot(s[0], s[1]) < stop_radius; };
    std::vector<TrajectorySample> samples;
    drive(model, {x, y}, duration, cfg, arrived, samples);
    return samples;
}

double verify_lyapunov_monotone(const Trajectory& traj) {
    const auto& s = traj.samples;
    if (s.empty()) throw std::invalid_argument("trajectory has no samples");
    double worst = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (!(s[i].t > s[i - 1].t)) {
            throw std::invalid_argument("trajectory samples are not strictly increasing in t");
        }
        worst = std::max(worst, s[i].v - s[i - 1].v);
    }
    return worst;
}

double isocline_x(const SystemModel& model, double y) {
    if (model.b_vanishes()) {
        throw HypothesisError("isocline a(x) = y b(x) degenerates when b vanishes");
    }
    const double top = (model.a0() + 1.0) * model.w();
    if (!(y >= 0.0 && y <= top)) {
        throw DomainError("isocline parameter y=" + std::to_string(y) + " outside [0, " +
                          std::to_string(top) + "]");
    }
    const auto& eq = model.equilibrium();
    auto g = [&](double x) { return model.a(x) - y * model.b(x); };
    // The endpoint roots (y = top, y = 0) can miss the exact bracket by round-off.
    const double pad = 1e-9 * (eq.x0 - eq.w + eq.z);
    const double lo = std::max(0.0, eq.w - pad);
    const double hi = std::min(eq.x0 + pad, 0.5 * (eq.x0 + model.x_max()));
    return std::clamp(roots::solve_bracketed(g, {lo, hi}, 1e-15), eq.w, eq.x0);
}

TrapRegionReport check_trap_region(const SystemModel& model, std::size_t n) {
    if (n == 0) throw std::invalid_argument("need at least one sample");
    TrapRegionReport rep;
    rep.samples = n;
    const double slope = model.a0() + 1.0;
    const double z = model.z();
    const double w = model.w();
    auto fail = [&rep](const std::string& what) {
        if (rep.failure.empty()) rep.failure = what;
    };

    rep.line_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i <= n; ++i) {
        const double x = w * static_cast<double>(i) / static_cast<double>(n);
        const double y = slope * x;
        const auto f = eval_field(model, x, y);
        const double margin = slope - f.dy / f.dx;
        if (margin < rep.line_margin) {
            rep.line_margin = margin;
            rep.line_worst = {x, y};
        }
    }
    if (rep.line_margin < -kTrapTolerance * slope) {
        std::ostringstream os;
        os << "field crosses above y=(a0+1)x at x=" << rep.line_worst.x;
        fail(os.str());
    }

    rep.diagonal_min_dy = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i <= n; ++i) {
        const double x = z * static_cast<double>(i) / static_cast<double>(n);
        const auto f = eval_field(model, x, x);
        rep.diagonal_max_dx = std::max(rep.diagonal_max_dx, std::abs(f.dx));
        if (f.dy < rep.diagonal_min_dy) {
            rep.diagonal_min_dy = f.dy;
            rep.diagonal_worst = {x, x};
        }
    }
    if (rep.diagonal_min_dy < -kTrapTolerance || rep.diagonal_max_dx != 0.0) {
        std::ostringstream os;
        os << "field points downward on the diagonal at x=" << rep.diagonal_worst.x;
        fail(os.str());
    }

    if (!model.b_vanishes()) {
        rep.isocline_checked = true;
        const double top = slope * w;
        double prev = isocline_x(model, z);
        for (std::size_t i = 1; i <= n; ++i) {
            const double y = z + (top - z) * static_cast<double>(i) / static_cast<double>(n);
            const double x = isocline_x(model, y);
            const double rise = x - prev;
            if (rise > rep.isocline_max_rise) {
                rep.isocline_max_rise = rise;
                rep.isocline_worst = {x, y};
            }
            prev = x;
        }
        rep.isocline_monotone = rep.isocline_max_rise <= kTrapTolerance;
        if (!rep.isocline_monotone) {
            std::ostringstream os;
            os << "isocline x(y) increases near y=" << rep.isocline_worst.y;
            fail(os.str());
        }
    }
    rep.passed = rep.failure.empty();
    return rep;
}

void write_csv(const Trajectory& traj, std::ostream& out) {
    out << "t,x,y,V\n";
    for (const auto& s : traj.samples) {
        out << format_double(s.t) << ',' << format_double(s.x) << ',' << format_double(s.y) << ','
            << format_double(s.v) << '\n';
    }
}

}  // namespace hetbound
