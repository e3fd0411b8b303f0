#pragma once

#include <string>
#include <string_view>

namespace lipcurve {

enum class Kind { nearest, farthest };
enum class ErrorMode { absolute, relative };

std::string_view to_string(Kind k);
std::string_view to_string(ErrorMode m);
/// Accepts "nearest"/"farthest" and "abs"/"absolute"/"rel"/"relative".
Kind parse_kind(std::string_view s);
ErrorMode parse_error_mode(std::string_view s);

struct Query {
    Kind kind = Kind::nearest;
    ErrorMode error = ErrorMode::absolute;
    double epsilon = 0.1;

    /// Absolute mode needs 0 < eps < 1/2, relative mode eps > 0. Throws
    /// std::invalid_argument otherwise.
    void validate() const;
    std::string describe() const;
};

inline Query nearest_abs(double eps) { return {Kind::nearest, ErrorMode::absolute, eps}; }
inline Query farthest_abs(double eps) { return {Kind::farthest, ErrorMode::absolute, eps}; }
inline Query nearest_rel(double eps) { return {Kind::nearest, ErrorMode::relative, eps}; }
inline Query farthest_rel(double eps) { return {Kind::farthest, ErrorMode::relative, eps}; }

}  // namespace lipcurve
