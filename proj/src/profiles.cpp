#include "bsq/profiles.hpp"

#include <cmath>
#include <sstream>

#include "bsq/errors.hpp"

namespace bsq {

namespace {

constexpr double kSqrtPi = 1.7724538509055160272981674833411452;

Family family_from_string(const std::string& s) {
    if (s == "zero") return Family::zero;
    if (s == "gaussian") return Family::gaussian;
    if (s == "sech_squared") return Family::sech_squared;
    if (s == "gaussian_derivative") return Family::gaussian_derivative;
    throw ValidationError("make_profile: unknown family \"" + s + "\"");
}

bool is_super_exponential(Family f) {
    return f == Family::zero || f == Family::gaussian ||
           f == Family::gaussian_derivative || f == Family::gauss_cdf;
}

/// e^{-rate |x|} decay rate of an exponential-class member.
double member_rate(const Member& m) {
    if (m.family == Family::sech_squared || m.family == Family::tanh_step)
        return 2.0 / m.width;
    return 0.0; // super-exponential members have no finite rate
}

} // namespace

double Member::eval(double x) const {
    const double xi = (x - center) / width;
    switch (family) {
        case Family::zero:
            return 0.0;
        case Family::gaussian:
            return amplitude * std::exp(-xi * xi);
        case Family::sech_squared: {
            const double s = 1.0 / std::cosh(xi);
            return amplitude * s * s;
        }
        case Family::gaussian_derivative:
            return -2.0 * amplitude * xi / width * std::exp(-xi * xi);
        case Family::gauss_cdf:
            return amplitude * width * kSqrtPi / 2.0 * (1.0 + std::erf(xi));
        case Family::tanh_step:
            return amplitude * width * (std::tanh(xi) + 1.0);
    }
    return 0.0;
}

double Member::eval_dx(double x) const {
    const double xi = (x - center) / width;
    switch (family) {
        case Family::zero:
            return 0.0;
        case Family::gaussian:
            return -2.0 * amplitude * xi / width * std::exp(-xi * xi);
        case Family::sech_squared: {
            const double s = 1.0 / std::cosh(xi);
            return -2.0 * amplitude / width * s * s * std::tanh(xi);
        }
        case Family::gaussian_derivative:
            return amplitude * (4.0 * xi * xi - 2.0) / (width * width) * std::exp(-xi * xi);
        case Family::gauss_cdf:
            return amplitude * std::exp(-xi * xi);
        case Family::tanh_step: {
            const double s = 1.0 / std::cosh(xi);
            return amplitude * s * s;
        }
    }
    return 0.0;
}

double Member::mean() const {
    switch (family) {
        case Family::zero:
            return 0.0;
        case Family::gaussian:
            return amplitude * width * kSqrtPi;
        case Family::sech_squared:
            return 2.0 * amplitude * width;
        case Family::gaussian_derivative:
            return 0.0; // derivative of a decaying function
        case Family::gauss_cdf:
        case Family::tanh_step:
            throw ValidationError("Member::mean: antiderivative members have no finite mean");
    }
    return 0.0;
}

double Profile::u0(double x) const {
    double s = 0.0;
    for (const auto& m : u0_members) s += m.eval(x);
    return s;
}

double Profile::u0x(double x) const {
    double s = 0.0;
    for (const auto& m : u0_members) s += m.eval_dx(x);
    return s;
}

double Profile::v0(double x) const {
    double s = 0.0;
    for (const auto& m : v0_members) s += m.eval(x);
    return s;
}

Profile Profile::gaussian_u0(double amp, double width, double center) {
    Profile p;
    p.u0_members.push_back({Family::gaussian, amp, width, center});
    p.decay_class = DecayClass::super_exponential;
    return p;
}

Profile Profile::zero() { return Profile{}; }

std::vector<Member> v0_from_u1(const std::vector<Member>& u1) {
    double total_mean = 0.0;
    for (const auto& m : u1) total_mean += m.mean();
    if (std::abs(total_mean) > 1e-10) {
        std::ostringstream os;
        os << "v0_from_u1: zero-mean condition violated, integral of u1 = " << total_mean;
        throw ValidationError(os.str());
    }
    std::vector<Member> v0;
    v0.reserve(u1.size());
    for (const auto& m : u1) {
        Member a = m;
        switch (m.family) {
            case Family::zero:
                a.family = Family::zero;
                break;
            case Family::gaussian:
                a.family = Family::gauss_cdf;
                break;
            case Family::gaussian_derivative:
                a.family = Family::gaussian;
                break;
            case Family::sech_squared:
                a.family = Family::tanh_step;
                break;
            default:
                throw ValidationError("v0_from_u1: unsupported member family for u1");
        }
        v0.push_back(a);
    }
    return v0;
}

namespace {

std::vector<Member> parse_members(const nlohmann::json& arr, const std::string& field) {
    if (!arr.is_array())
        throw ValidationError("make_profile: field \"" + field + "\" must be an array");
    std::vector<Member> out;
    for (const auto& j : arr) {
        if (!j.is_object())
            throw ValidationError("make_profile: entries of \"" + field + "\" must be objects");
        if (!j.contains("family"))
            throw ValidationError("make_profile: member in \"" + field + "\" missing \"family\"");
        Member m;
        m.family = family_from_string(j.at("family").get<std::string>());
        if (m.family != Family::zero) {
            for (const char* key : {"amplitude", "width", "center"}) {
                if (!j.contains(key))
                    throw ValidationError("make_profile: member in \"" + field +
                                          "\" missing \"" + key + "\"");
                const auto& v = j.at(key);
                if (!v.is_number())
                    throw ValidationError("make_profile: field \"" + std::string(key) +
                                          "\" must be a number");
            }
            m.amplitude = j.at("amplitude").get<double>();
            m.width = j.at("width").get<double>();
            m.center = j.at("center").get<double>();
            if (!std::isfinite(m.amplitude) || !std::isfinite(m.width) || !std::isfinite(m.center))
                throw ValidationError("make_profile: non-finite parameter in \"" + field + "\"");
            if (!(m.width > 0.0))
                throw ValidationError("make_profile: field \"width\" must be > 0 in \"" + field +
                                      "\"");
        }
        out.push_back(m);
    }
    return out;
}

} // namespace

Profile make_profile(const nlohmann::json& spec) {
    if (!spec.is_object()) throw ValidationError("make_profile: spec must be a JSON object");
    Profile p;
    if (spec.contains("u0")) p.u0_members = parse_members(spec.at("u0"), "u0");
    if (spec.contains("v0")) {
        const auto& v0 = spec.at("v0");
        if (v0.is_object() && v0.contains("from_u1")) {
            p.v0_members = v0_from_u1(parse_members(v0.at("from_u1"), "v0.from_u1"));
        } else {
            p.v0_members = parse_members(v0, "v0");
        }
    }

    p.decay_class = DecayClass::super_exponential;
    p.decay_rate = 0.0;
    for (const auto* members : {&p.u0_members, &p.v0_members}) {
        for (const auto& m : *members) {
            if (!is_super_exponential(m.family)) {
                p.decay_class = DecayClass::exponential;
                const double r = member_rate(m);
                p.decay_rate = (p.decay_rate == 0.0) ? r : std::min(p.decay_rate, r);
            }
        }
    }
    return p;
}

double effective_support(const Profile& p, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw ValidationError("effective_support: eps must lie in (0, 1)");

    constexpr int kMaxRung = 400;
    constexpr int kProbes = 2000;
    for (int n = 0; n < kMaxRung; ++n) {
        const double r = 0.25 * std::pow(1.05, n);
        bool ok = true;
        for (int j = 0; j < kProbes && ok; ++j) {
            const double x = r * (1.0 + 0.002 * j);
            for (const double xx : {x, -x}) {
                if (std::abs(p.u0(xx)) + std::abs(p.u0x(xx)) + std::abs(p.v0(xx)) >= eps) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return r;
    }
    throw ValidationError("effective_support: radius ladder exhausted (profile decays too slowly "
                          "for the requested eps)");
}

} // namespace bsq
