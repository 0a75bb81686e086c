#include "hetbound/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hetbound/bounds.hpp"
#include "hetbound/errors.hpp"
#include "hetbound/io.hpp"
#include "hetbound/physical.hpp"
#include "hetbound/portrait.hpp"
#include "hetbound/trajectory.hpp"

namespace hetbound {

namespace {

struct ModelOptions {
    std::string name = "stiff";
    double kappa = 1.0;
    double scale = kDefaultScale;

    CLI::Option* attach(CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("--model", name, "nonrel | stiff | scaled | kappa");
        if (required) opt->required();
        cmd->add_option("--kappa", kappa, "kappa in (0, 1] for --model kappa");
        cmd->add_option("--scale", scale, "scale factor for --model scaled (default 8 pi)");
        return opt;
    }

    SystemModel build() const { return make_model({parse_family(name), kappa, scale}); }
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

void write_to(const std::string& path, const std::string& text, std::ostream& fallback) {
    if (path.empty() || path == "-") {
        fallback << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open " + path + " for writing");
    file << text;
}

struct SweepSpec {
    double lo;
    double hi;
    std::size_t n;
};

SweepSpec parse_sweep(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw UsageError("--sweep-kappa expects A:B:N");
    try {
        const long n = std::stol(parts[2]);
        if (n <= 0) throw UsageError("--sweep-kappa N must be positive");
        return {std::stod(parts[0]), std::stod(parts[1]), static_cast<std::size_t>(n)};
    } catch (const std::logic_error&) {
        throw UsageError("--sweep-kappa expects numbers A:B:N, got " + text);
    }
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError("--grid expects NX,NY");
    try {
        const long nx = std::stol(text.substr(0, comma));
        const long ny = std::stol(text.substr(comma + 1));
        if (nx < 2 || ny < 2) throw UsageError("--grid sizes must be at least 2");
        return {static_cast<std::size_t>(nx), static_cast<std::size_t>(ny)};
    } catch (const std::logic_error&) {
        throw UsageError("--grid expects integers NX,NY, got " + text);
    }
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lyapunov functions, stability and heteroclinic bounds for x'=y-x, "
                 "y'=a(x)y-b(x)y^2",
                 "hetbound"};
    app.require_subcommand(1);

    ModelOptions analyze_model;
    std::string analyze_json;
    auto* analyze = app.add_subcommand("analyze", "stationary points, constants and stability");
    analyze_model.attach(analyze);
    analyze->add_option("--json", analyze_json, "write the report to PATH instead of stdout");

    ModelOptions traj_model;
    IntegratorConfig traj_cfg;
    std::string traj_out;
    std::string traj_json;
    std::string traj_profile;
    double traj_rref = 1.0;
    bool traj_si = false;
    auto* trajectory = app.add_subcommand("trajectory", "shoot the heteroclinic orbit");
    traj_model.attach(trajectory);
    trajectory->add_option("--eps", traj_cfg.eps_start, "launch offset along the unstable eigenvector");
    trajectory->add_option("--rtol", traj_cfg.rel_tol, "relative tolerance");
    trajectory->add_option("--atol", traj_cfg.abs_tol, "absolute tolerance");
    trajectory->add_option("--max-time", traj_cfg.max_time, "integration time cap");
    trajectory->add_option("--dt", traj_cfg.output_dt, "uniform output spacing (0: every step)");
    trajectory->add_option("--out", traj_out, "CSV path (t,x,y,V); '-' for stdout");
    trajectory->add_option("--json", traj_json, "JSON path for the full trajectory");
    trajectory->add_option("--profile", traj_profile, "CSV path for the physical profile");
    trajectory->add_option("--r-ref", traj_rref, "radius assigned to the final sample");
    trajectory->add_flag("--si", traj_si, "SI units for --profile (default G=c=1)");

    ModelOptions bound_model;
    std::string sweep;
    std::string bound_out;
    auto* bound = app.add_subcommand("bound", "upper bound X on the orbit's x-extent");
    auto* bound_model_opt = bound_model.attach(bound, false);
    bound->add_option("--sweep-kappa", sweep, "A:B:N sweep over the kappa family (CSV)")
        ->excludes(bound_model_opt);
    bound->callback([&] {
        if (sweep.empty() && bound_model_opt->count() == 0) {
            throw CLI::RequiredError("--model or --sweep-kappa");
        }
    });
    bound->add_option("--out", bound_out, "output path (default stdout)");

    ModelOptions portrait_model;
    std::string grid = "80,80";
    std::string portrait_out;
    auto* portrait = app.add_subcommand("portrait", "field samples and Lyapunov levels");
    portrait_model.attach(portrait);
    portrait->add_option("--grid", grid, "NX,NY");
    portrait->add_option("--out", portrait_out, "output path; .svg renders, otherwise CSV")
        ->required();

    bool md = false;
    bool js = false;
    auto* masstable = app.add_subcommand("masstable", "compactness bounds 2GM/(Rc^2)");
    auto* md_flag = masstable->add_flag("--markdown", md, "Markdown table (default)");
    masstable->add_flag("--json", js, "JSON table")->excludes(md_flag);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*analyze) {
            const auto model = analyze_model.build();
            write_to(analyze_json, io::analysis_document(model).dump(2) + "\n", out);
        } else if (*trajectory) {
            const auto model = traj_model.build();
            const auto traj = shoot_heteroclinic(model, traj_cfg);
            if (!traj_out.empty()) {
                std::ostringstream csv;
                write_csv(traj, csv);
                write_to(traj_out, csv.str(), out);
            }
            if (!traj_json.empty()) write_to(traj_json, io::to_json(traj).dump() + "\n", out);
            if (!traj_profile.empty() && traj.converged) {
                std::ostringstream csv;
                io::write_profile_csv(
                    to_physical(model, traj, traj_rref, traj_si ? Units::SI : Units::Natural), csv);
                write_to(traj_profile, csv.str(), out);
            }
            if (traj_out != "-") {
                auto summary = io::to_json(traj, false);
                summary["model"] = model.label();
                out << summary.dump(2) << "\n";
            }
            if (traj.status == ShootStatus::DomainExit) {
                err << "error: " << traj.message << "\n";
                return kExitHypothesis;
            }
            if (!traj.converged) {
                err << "error: " << traj.message << "\n";
                return kExitNonConvergence;
            }
        } else if (*bound) {
            if (!sweep.empty()) {
                const auto s = parse_sweep(sweep);
                std::ostringstream csv;
                io::write_sweep_csv(kappa_sweep(s.lo, s.hi, s.n), csv);
                write_to(bound_out, csv.str(), out);
            } else {
                const auto model = bound_model.build();
                auto doc = io::to_json(bound_X(model));
                if (model.family() == Family::KappaFamily) {
                    doc["kappa_constants"] = io::to_json(kappa_constants(model.spec().kappa));
                }
                write_to(bound_out, doc.dump(2) + "\n", out);
            }
        } else if (*portrait) {
            const auto model = portrait_model.build();
            const auto [nx, ny] = parse_grid(grid);
            const auto p = make_portrait(model, nx, ny);
            std::ostringstream text;
            if (ends_with(portrait_out, ".svg")) {
                write_portrait_svg(model, p, text);
            } else {
                write_portrait_csv(p, text);
            }
            write_to(portrait_out, text.str(), out);
        } else if (*masstable) {
            const auto table = mass_radius_table();
            if (js) {
                out << io::to_json(table).dump(2) << "\n";
            } else {
                io::write_markdown(table, out);
            }
        }
    } catch (const HypothesisError& e) {
        err << "error: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

}  // namespace hetbound
