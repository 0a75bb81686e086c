#pragma once

#include <limits>
#include <string>
#include <string_view>

namespace hetbound {

enum class Family { Nonrelativistic, StiffRelativistic, ScaledRelativistic, KappaFamily };

std::string_view to_string(Family family);
/// Accepts the CLI spellings: nonrel, stiff, scaled, kappa (and the enum names).
Family parse_family(std::string_view name);

inline constexpr double kDefaultScale = 8.0 * 3.14159265358979323846;

struct ModelSpec {
    Family family = Family::StiffRelativistic;
    double kappa = 1.0;          // KappaFamily only, in (0, 1]
    double scale = kDefaultScale;  // ScaledRelativistic only, > 0

    /// Throws std::invalid_argument on kappa outside (0, 1] or scale <= 0.
    void validate() const;
};

/// a(x) = (a0 + a1 x) / (1 - c x),  b(x) = b0 / (1 - c x).
///
/// Every family in the toolkit has this shape; c = 0 gives the polynomial
/// nonrelativistic case.
struct RationalCoefficients {
    double a0 = 0.0;
    double a1 = 0.0;
    double b0 = 0.0;
    double c = 0.0;
};

/// Structural constants shared by the Lyapunov function, the stability
/// analysis and the bound.
struct EquilibriumData {
    double z = 0.0;       ///< interior stationary point (z, z)
    double w = 0.0;       ///< unstable tangent y=(a0+1)x meets the isocline y'=0
    double x0 = 0.0;      ///< zero of a
    double r_at_z = 0.0;  ///< z b'(z) - a'(z)
};

/// Immutable model of x' = y - x, y' = a(x) y - b(x) y^2 for one family.
///
/// Primitives are shifted so that A(z) = B(z) = 0.
class SystemModel {
public:
    SystemModel(ModelSpec spec, RationalCoefficients coeffs);

    const ModelSpec& spec() const noexcept { return spec_; }
    Family family() const noexcept { return spec_.family; }
    const RationalCoefficients& coefficients() const noexcept { return coeffs_; }
    const EquilibriumData& equilibrium() const noexcept { return eq_; }
    std::string label() const;

    double z() const noexcept { return eq_.z; }
    double w() const noexcept { return eq_.w; }
    double a0() const noexcept { return coeffs_.a0; }
    /// +inf for the polynomial family, otherwise the pole 1/c.
    double x_max() const noexcept { return x_max_; }
    bool b_vanishes() const noexcept { return coeffs_.b0 == 0.0; }

    /// Throws DomainError unless 0 <= x < x_max - 1e-12.
    void check_x(double x) const;
    bool in_domain(double x) const noexcept;

    double a(double x) const;
    double b(double x) const;
    double da(double x) const;
    double db(double x) const;
    double A(double x) const;
    double B(double x) const;

    /// zB(x) - A(x) decomposed as lin*x + quad*x^2 + log_coeff*log(1 - c x) + offset.
    struct PotentialTerms {
        double lin;
        double quad;
        double log_coeff;
        double offset;
    };
    PotentialTerms potential_terms() const noexcept { return potential_; }

private:
    double raw_A(double x) const noexcept;
    double raw_B(double x) const noexcept;

    ModelSpec spec_;
    RationalCoefficients coeffs_;
    double x_max_;
    EquilibriumData eq_;
    double shift_A_ = 0.0;
    double shift_B_ = 0.0;
    PotentialTerms potential_{};
};

inline constexpr double kDomainGuard = 1e-12;
inline constexpr double kSingularityGuard = 1e-7;

SystemModel make_model(const ModelSpec& spec);

struct FieldValue {
    double dx;
    double dy;
};

/// Requires 0 <= x < x_max and y >= 0.
FieldValue eval_field(const SystemModel& model, double x, double y);

/// Positive root of a(z) = z b(z) on (0, x_max), bracketed numerically.
double find_z(const SystemModel& model);
/// Root of (a0+1) w b(w) = a(w); returns z when b vanishes identically.
double find_w(const SystemModel& model);
/// Positive root of a.
double find_x0(const SystemModel& model);

/// r(x) = (z b(x) - a(x)) / (x - z), with the limit z b'(z) - a'(z) for
/// |x - z| < kSingularityGuard.
double r_factor(const SystemModel& model, double x);

/// r(x) from the rational form: -a1 / (1 - c x). Independent of the quotient route.
double r_closed_form(const SystemModel& model, double x);

/// Closed forms of z, w, x0 where the family provides them.
struct ClosedFormConstants {
    double z;
    double w;
    double x0;
};
ClosedFormConstants closed_form_constants(const ModelSpec& spec);

}  // namespace hetbound
