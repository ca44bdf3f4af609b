// Initial-data profiles (u0, v0): closed-form analytic families with exact
// derivatives and decay metadata.
//
// The scattering ODE needs u0, u0' and v0 at arbitrary quadrature nodes, so
// only analytic families are supported; v0 can also be built as the
// antiderivative of a zero-mean u1 (the construction checks the zero-mean
// condition, which is what makes the antiderivative decay at +infinity).
#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace bsq {

enum class Family {
    zero,
    gaussian,            ///< a exp(-((x-c)/w)^2)
    sech_squared,        ///< a sech^2((x-c)/w)
    gaussian_derivative, ///< d/dx of gaussian(a, w, c)
    gauss_cdf,           ///< antiderivative of gaussian (internal, via v0_from_u1)
    tanh_step,           ///< antiderivative of sech_squared (internal)
};

enum class DecayClass { super_exponential, exponential };

struct Member {
    Family family = Family::zero;
    double amplitude = 0.0;
    double width = 1.0;
    double center = 0.0;

    double eval(double x) const;
    double eval_dx(double x) const;
    /// Integral over the whole line, in closed form.
    double mean() const;
};

struct Profile {
    std::vector<Member> u0_members;
    std::vector<Member> v0_members;
    DecayClass decay_class = DecayClass::super_exponential;
    double decay_rate = 0.0; ///< slowest e^{-rate |x|} bound when exponential

    double u0(double x) const;
    double u0x(double x) const;
    double v0(double x) const;

    /// Shorthand for the workhorse datum: u0 = gaussian(amp, width, center),
    /// v0 identically zero.
    static Profile gaussian_u0(double amp, double width = 1.0, double center = 0.0);
    static Profile zero();
};

/// Build a Profile from its JSON description:
///   {"u0": [{"family": "...", "amplitude": a, "width": w, "center": c}, ...],
///    "v0": [...] | {"from_u1": [...]}}
/// Throws ValidationError naming the offending field on any invalid input.
Profile make_profile(const nlohmann::json& spec);

/// v0(x) = integral of u1 from -infinity to x, available in closed form per
/// family. Verifies the zero-mean condition |integral of u1| <= 1e-10 first
/// and throws ValidationError reporting the integral value otherwise.
std::vector<Member> v0_from_u1(const std::vector<Member>& u1);

/// Smallest radius on the geometric ladder r_n = 0.25 * 1.05^n such that
/// |u0| + |u0'| + |v0| < eps on a fine probe grid covering [r, ~5r] on both
/// sides. Throws ValidationError when the ladder is exhausted.
double effective_support(const Profile& p, double eps);

} // namespace bsq
