#pragma once

#include <stdexcept>
#include <string>

namespace qhd {

// Base class for everything thrown by the library. The what() string starts
// with the error tag (e.g. "NotStarShaped: ...") so CLI output can stay
// message-driven.
struct qhd_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : qhd_error {
    explicit parse_error(const std::string& m) : qhd_error("ParseError: " + m) {}
};

struct invalid_fraction : qhd_error {
    explicit invalid_fraction(const std::string& m) : qhd_error("InvalidFraction: " + m) {}
};

struct not_star_shaped : qhd_error {
    explicit not_star_shaped(const std::string& m) : qhd_error("NotStarShaped: " + m) {}
};

struct invalid_leg : qhd_error {
    explicit invalid_leg(const std::string& m) : qhd_error("InvalidLeg: " + m) {}
};

struct invalid_target : qhd_error {
    explicit invalid_target(const std::string& m) : qhd_error("InvalidTarget: " + m) {}
};

struct not_blowable_down : qhd_error {
    explicit not_blowable_down(const std::string& m) : qhd_error("NotBlowableDown: " + m) {}
};

struct unknown_family : qhd_error {
    explicit unknown_family(const std::string& m) : qhd_error("UnknownFamily: " + m) {}
};

struct bad_parameters : qhd_error {
    explicit bad_parameters(const std::string& m) : qhd_error("BadParameters: " + m) {}
};

struct not_minus_one : qhd_error {
    explicit not_minus_one(const std::string& m) : qhd_error("NotMinusOne: " + m) {}
};

struct meets_l : qhd_error {
    explicit meets_l(const std::string& m) : qhd_error("MeetsL: " + m) {}
};

struct non_rational : qhd_error {
    explicit non_rational(const std::string& m) : qhd_error("NonRational: " + m) {}
};

struct unknown_proposition : qhd_error {
    explicit unknown_proposition(const std::string& m) : qhd_error("UnknownProposition: " + m) {}
};

struct bounds_too_loose : qhd_error {
    explicit bounds_too_loose(const std::string& m) : qhd_error("BoundsTooLoose: " + m) {}
};

struct common_component : qhd_error {
    explicit common_component(const std::string& m) : qhd_error("CommonComponent: " + m) {}
};

struct not_on_curve : qhd_error {
    explicit not_on_curve(const std::string& m) : qhd_error("NotOnCurve: " + m) {}
};

struct not_on_both : qhd_error {
    explicit not_on_both(const std::string& m) : qhd_error("NotOnBoth: " + m) {}
};

} // namespace qhd
