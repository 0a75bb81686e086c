#include "hetbound/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "hetbound/format.hpp"

namespace hetbound::io {

namespace {

Json complex_json(std::complex<double> v) { return Json{{"re", v.real()}, {"im", v.imag()}}; }

template <class T>
Json optional_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const ModelSpec& spec) {
    Json j{{"family", to_string(spec.family)}};
    if (spec.family == Family::KappaFamily) j["kappa"] = spec.kappa;
    if (spec.family == Family::ScaledRelativistic) j["scale"] = spec.scale;
    return j;
}

Json to_json(const EquilibriumData& eq) {
    return Json{{"z", eq.z}, {"w", eq.w}, {"x0", eq.x0}, {"r_at_z", eq.r_at_z}};
}

Json to_json(const StabilityReport& report) {
    Json origin_pairs = Json::array();
    for (const auto& p : report.origin.pairs) {
        origin_pairs.push_back(Json{{"eigenvalue", p.value}, {"eigenvector", p.vector}});
    }
    const auto& in = report.interior;
    return Json{
        {"origin_eigen", origin_pairs},
        {"unstable_slope", report.origin.unstable_slope},
        {"origin_classification", to_string(report.origin.classification)},
        {"interior_jacobian", in.jacobian},
        {"interior_eigen", Json::array({complex_json(in.eigenvalues[0]),
                                        complex_json(in.eigenvalues[1])})},
        {"a_at_z", in.a_at_z},
        {"four_z_r", in.four_z_r},
        {"one_minus_a_squared", in.one_minus_a_sq},
        {"discriminant", in.discriminant},
        {"classification", to_string(in.classification)},
        {"asymptotically_stable", in.asymptotically_stable},
    };
}

Json to_json(const BoundReport& report) {
    return Json{
        {"schema", kSchemaVersion},
        {"model", report.model},
        {"z", report.z},
        {"w", report.w},
        {"E", report.E},
        {"X_numeric", report.X_numeric},
        {"X_closed", optional_json(report.X_closed)},
        {"agreement", optional_json(report.agreement)},
        {"closed_form", report.closed_form},
        {"X_closed_printed", optional_json(report.X_closed_printed)},
        {"printed_discrepancy", optional_json(report.printed_discrepancy)},
    };
}

Json to_json(const KappaConstants& c) {
    return Json{
        {"schema", kSchemaVersion}, {"kappa", c.kappa},
        {"z", c.z},                 {"w", c.w},
        {"alpha", c.alpha},         {"D", c.D},
        {"E", c.E},                 {"delta", c.delta},
        {"C", c.C},                 {"log_coeff", c.log_coeff},
        {"alpha_exact", c.alpha_exact}, {"D_exact", c.D_exact},
        {"log_coeff_exact", c.log_coeff_exact}, {"E_explicit", c.E_explicit},
    };
}

Json to_json(const Trajectory& traj, bool include_samples) {
    Json j{
        {"schema", kSchemaVersion},
        {"status", to_string(traj.status)},
        {"converged", traj.converged},
        {"max_x", traj.max_x},
        {"t_at_max_x", traj.t_at_max_x},
        {"steps", traj.steps},
        {"message", traj.message},
    };
    if (!traj.samples.empty()) {
        const auto& last = traj.samples.back();
        j["final"] = Json{{"t", last.t}, {"x", last.x}, {"y", last.y}, {"V", last.v}};
    }
    if (include_samples) {
        Json samples = Json::array();
        for (const auto& s : traj.samples) samples.push_back(Json::array({s.t, s.x, s.y, s.v}));
        j["samples"] = std::move(samples);
    }
    return j;
}

Json to_json(const MassRadiusTable& table) {
    Json rows = Json::array();
    for (const auto& r : table.rows) {
        rows.push_back(Json{{"label", r.label},
                            {"expression", r.expression},
                            {"value", r.value},
                            {"provenance", r.provenance},
                            {"quoted_value", r.quoted_value}});
    }
    return Json{{"schema", kSchemaVersion}, {"rows", rows}};
}

Json analysis_document(const SystemModel& model) {
    return Json{
        {"schema", kSchemaVersion},
        {"model", to_json(model.spec())},
        {"a0", model.a0()},
        {"x_max", std::isfinite(model.x_max()) ? Json(model.x_max()) : Json(nullptr)},
        {"equilibrium", to_json(model.equilibrium())},
        {"stationary_points", Json::array({Json::array({0.0, 0.0}),
                                           Json::array({model.z(), model.z()})})},
        {"stability", to_json(analyze_stability(model))},
    };
}

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out) {
    out << "kappa,z,w,alpha,D,E,X_closed,X_numeric\n";
    for (const auto& r : rows) {
        out << format_double(r.kappa) << ',' << format_double(r.z) << ',' << format_double(r.w)
            << ',' << format_double(r.alpha) << ',' << format_double(r.D) << ','
            << format_double(r.E) << ',' << format_double(r.X_closed) << ','
            << format_double(r.X_numeric) << '\n';
    }
}

void write_profile_csv(const PhysicalProfile& profile, std::ostream& out) {
    out << "r,m,rho,p,compactness\n";
    for (const auto& s : profile.samples) {
        out << format_double(s.r) << ',' << format_double(s.m) << ',' << format_double(s.rho)
            << ',' << format_double(s.p) << ',' << format_double(s.compactness) << '\n';
    }
}

void write_markdown(const MassRadiusTable& table, std::ostream& out) {
    out << "| bound | expression | 2GM/(Rc^2) | provenance | quoted |\n";
    out << "|---|---|---|---|---|\n";
    for (const auto& r : table.rows) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", r.value);
        out << "| " << r.label << " | " << r.expression << " | " << buf << " | " << r.provenance
            << " | " << r.quoted_value << " |\n";
    }
}

}  // namespace hetbound::io
