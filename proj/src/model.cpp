#include "hetbound/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hetbound/errors.hpp"
#include "hetbound/roots.hpp"

namespace hetbound {

namespace {

constexpr double kRootStart = 1e-9;
constexpr double kClosedFormMismatch = 1e-9;

RationalCoefficients coefficients_for(const ModelSpec& spec) {
    switch (spec.family) {
        case Family::Nonrelativistic:
            return {2.0, -1.0, 0.0, 0.0};
        case Family::StiffRelativistic:
            return {2.0, -3.0, 1.0, 1.0};
        case Family::ScaledRelativistic:
            return {2.0, -3.0 * spec.scale, spec.scale, spec.scale};
        case Family::KappaFamily: {
            const double k = spec.kappa;
            return {2.0, -(1.0 + 5.0 * k) / (2.0 * k), (1.0 + k) / 2.0, 1.0};
        }
    }
    throw std::invalid_argument("unknown family");
}

// Unchecked evaluations used while the model is being built.
double eval_a(const RationalCoefficients& k, double x) { return (k.a0 + k.a1 * x) / (1.0 - k.c * x); }
double eval_b(const RationalCoefficients& k, double x) { return k.b0 / (1.0 - k.c * x); }

double pole_of(const RationalCoefficients& k) {
    return k.c > 0.0 ? 1.0 / k.c : std::numeric_limits<double>::infinity();
}

double numeric_z(const RationalCoefficients& k) {
    return roots::find_root([&](double x) { return eval_a(k, x) - x * eval_b(k, x); }, kRootStart,
                            pole_of(k));
}

double numeric_w(const RationalCoefficients& k, double z) {
    if (k.b0 == 0.0) return z;
    const double slope = k.a0 + 1.0;
    return roots::find_root([&](double x) { return eval_a(k, x) - slope * x * eval_b(k, x); },
                            kRootStart, pole_of(k));
}

double numeric_x0(const RationalCoefficients& k) {
    return roots::find_root([&](double x) { return eval_a(k, x); }, kRootStart, pole_of(k));
}

void check_ordering(double a0, double z, double w) {
    const double slope = a0 + 1.0;
    if (!(slope * w > z && z >= w && w > 0.0)) {
        std::ostringstream os;
        os << "ordering (a0+1)w > z >= w > 0 violated: a0=" << a0 << " z=" << z << " w=" << w;
        throw HypothesisError(os.str());
    }
}

}  // namespace

std::string_view to_string(Family family) {
    switch (family) {
        case Family::Nonrelativistic: return "nonrel";
        case Family::StiffRelativistic: return "stiff";
        case Family::ScaledRelativistic: return "scaled";
        case Family::KappaFamily: return "kappa";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    if (name == "nonrel" || name == "Nonrelativistic") return Family::Nonrelativistic;
    if (name == "stiff" || name == "StiffRelativistic") return Family::StiffRelativistic;
    if (name == "scaled" || name == "ScaledRelativistic") return Family::ScaledRelativistic;
    if (name == "kappa" || name == "KappaFamily") return Family::KappaFamily;
    throw std::invalid_argument("unknown model '" + std::string(name) +
                                "' (expected nonrel, stiff, scaled or kappa)");
}

void ModelSpec::validate() const {
    if (family == Family::KappaFamily && !(kappa > 0.0 && kappa <= 1.0)) {
        throw std::invalid_argument("kappa must lie in (0, 1], got " + std::to_string(kappa));
    }
    if (family == Family::ScaledRelativistic && !(scale > 0.0 && std::isfinite(scale))) {
        throw std::invalid_argument("scale must be positive, got " + std::to_string(scale));
    }
}

ClosedFormConstants closed_form_constants(const ModelSpec& spec) {
    switch (spec.family) {
        case Family::Nonrelativistic:
            return {2.0, 2.0, 2.0};
        case Family::StiffRelativistic:
            return {0.5, 1.0 / 3.0, 2.0 / 3.0};
        case Family::ScaledRelativistic:
            return {1.0 / (2.0 * spec.scale), 1.0 / (3.0 * spec.scale), 2.0 / (3.0 * spec.scale)};
        case Family::KappaFamily: {
            const double k = spec.kappa;
            return {4.0 * k / ((k + 1.0) * (k + 1.0) + 4.0 * k),
                    4.0 * k / (3.0 * k * k + 8.0 * k + 1.0), 4.0 * k / (1.0 + 5.0 * k)};
        }
    }
    throw std::invalid_argument("unknown family");
}

SystemModel::SystemModel(ModelSpec spec, RationalCoefficients coeffs)
    : spec_(spec), coeffs_(coeffs), x_max_(pole_of(coeffs)) {
    if (!(coeffs_.a0 > 0.0)) throw HypothesisError("a(0) must be positive");
    if (coeffs_.b0 < 0.0) throw HypothesisError("b must be nonnegative");

    const double z_num = numeric_z(coeffs_);
    const double w_num = numeric_w(coeffs_, z_num);
    const double x0_num = numeric_x0(coeffs_);

    const auto closed = closed_form_constants(spec_);
    auto agree = [](double lhs, double rhs) {
        return std::abs(lhs - rhs) <= kClosedFormMismatch * std::max(1.0, std::abs(rhs));
    };
    if (!agree(z_num, closed.z) || !agree(w_num, closed.w) || !agree(x0_num, closed.x0)) {
        std::ostringstream os;
        os << "closed-form constants disagree with bracketed roots: z " << closed.z << " vs "
           << z_num << ", w " << closed.w << " vs " << w_num << ", x0 " << closed.x0 << " vs "
           << x0_num;
        throw std::logic_error(os.str());
    }
    eq_.z = closed.z;
    eq_.w = closed.w;
    eq_.x0 = closed.x0;
    check_ordering(coeffs_.a0, eq_.z, eq_.w);

    shift_A_ = raw_A(eq_.z);
    shift_B_ = raw_B(eq_.z);
    eq_.r_at_z = eq_.z * db(eq_.z) - da(eq_.z);

    const double z = eq_.z;
    const auto& k = coeffs_;
    if (k.c == 0.0) {
        potential_ = {z * k.b0 - k.a0, -0.5 * k.a1, 0.0, 0.0};
    } else {
        potential_ = {k.a1 / k.c, 0.0, -z * k.b0 / k.c + (k.a0 + k.a1 / k.c) / k.c, 0.0};
    }
    potential_.offset = -(z * shift_B_ - shift_A_);
}

std::string SystemModel::label() const {
    std::ostringstream os;
    os << to_string(spec_.family);
    if (spec_.family == Family::KappaFamily) os << "(kappa=" << spec_.kappa << ")";
    if (spec_.family == Family::ScaledRelativistic) os << "(scale=" << spec_.scale << ")";
    return os.str();
}

bool SystemModel::in_domain(double x) const noexcept {
    return x >= 0.0 && x < x_max_ - kDomainGuard;
}

void SystemModel::check_x(double x) const {
    if (!in_domain(x)) {
        std::ostringstream os;
        os << "x=" << x << " outside [0, " << x_max_ << ") for model " << label();
        throw DomainError(os.str());
    }
}

double SystemModel::a(double x) const { check_x(x); return eval_a(coeffs_, x); }
double SystemModel::b(double x) const { check_x(x); return eval_b(coeffs_, x); }

double SystemModel::da(double x) const {
    check_x(x);
    const double d = 1.0 - coeffs_.c * x;
    return (coeffs_.a1 + coeffs_.c * coeffs_.a0) / (d * d);
}

double SystemModel::db(double x) const {
    check_x(x);
    const double d = 1.0 - coeffs_.c * x;
    return coeffs_.b0 * coeffs_.c / (d * d);
}

double SystemModel::raw_A(double x) const noexcept {
    const auto& k = coeffs_;
    if (k.c == 0.0) return k.a0 * x + 0.5 * k.a1 * x * x;
    return -(k.a1 / k.c) * x - (k.a0 + k.a1 / k.c) / k.c * std::log1p(-k.c * x);
}

double SystemModel::raw_B(double x) const noexcept {
    const auto& k = coeffs_;
    if (k.c == 0.0) return k.b0 * x;
    return -(k.b0 / k.c) * std::log1p(-k.c * x);
}

double SystemModel::A(double x) const { check_x(x); return raw_A(x) - shift_A_; }
double SystemModel::B(double x) const { check_x(x); return raw_B(x) - shift_B_; }

SystemModel make_model(const ModelSpec& spec) {
    spec.validate();
    return SystemModel(spec, coefficients_for(spec));
}

FieldValue eval_field(const SystemModel& model, double x, double y) {
    model.check_x(x);
    if (!(y >= 0.0)) throw DomainError("y must be nonnegative, got " + std::to_string(y));
    return {y - x, model.a(x) * y - model.b(x) * y * y};
}

double find_z(const SystemModel& model) { return numeric_z(model.coefficients()); }

double find_w(const SystemModel& model) {
    const double w = numeric_w(model.coefficients(), model.z());
    check_ordering(model.a0(), model.z(), w);
    return w;
}

double find_x0(const SystemModel& model) { return numeric_x0(model.coefficients()); }

double r_factor(const SystemModel& model, double x) {
    model.check_x(x);
    const double z = model.z();
    if (std::abs(x - z) < kSingularityGuard) return model.equilibrium().r_at_z;
    return (z * model.b(x) - model.a(x)) / (x - z);
}

double r_closed_form(const SystemModel& model, double x) {
    model.check_x(x);
    const auto& k = model.coefficients();
    return -k.a1 / (1.0 - k.c * x);
}

}  // namespace hetbound
