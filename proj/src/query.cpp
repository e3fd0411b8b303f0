#include "lipcurve/query.hpp"

#include <cmath>
#include <stdexcept>

#include "lipcurve/text.hpp"

namespace lipcurve {

std::string_view to_string(Kind k) { return k == Kind::nearest ? "nearest" : "farthest"; }
std::string_view to_string(ErrorMode m) { return m == ErrorMode::absolute ? "abs" : "rel"; }

Kind parse_kind(std::string_view s) {
    if (s == "nearest") return Kind::nearest;
    if (s == "farthest") return Kind::farthest;
    throw std::invalid_argument("unknown query kind '" + std::string(s) + "'");
}

ErrorMode parse_error_mode(std::string_view s) {
    if (s == "abs" || s == "absolute") return ErrorMode::absolute;
    if (s == "rel" || s == "relative") return ErrorMode::relative;
    throw std::invalid_argument("unknown error mode '" + std::string(s) + "'");
}

void Query::validate() const {
    if (!std::isfinite(epsilon) || epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
    if (error == ErrorMode::absolute && !(epsilon < 0.5))
        throw std::invalid_argument("absolute-error queries need epsilon < 1/2");
}

std::string Query::describe() const {
    return "kind=" + std::string(to_string(kind)) + " error=" + std::string(to_string(error)) +
           " epsilon=" + text::format_number(epsilon);
}

}  // namespace lipcurve
