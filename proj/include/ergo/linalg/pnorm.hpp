#pragma once

#include <limits>
#include <string>
#include <string_view>

#include "ergo/error.hpp"

namespace ergo {

/// The exponents for which induced matrix norms are computed exactly.
enum class PNorm { One, Two, Inf };

constexpr PNorm conjugate(PNorm p) noexcept {
    switch (p) {
        case PNorm::One: return PNorm::Inf;
        case PNorm::Inf: return PNorm::One;
        case PNorm::Two: return PNorm::Two;
    }
    return PNorm::Two;
}

constexpr double exponent(PNorm p) noexcept {
    switch (p) {
        case PNorm::One: return 1.0;
        case PNorm::Two: return 2.0;
        case PNorm::Inf: return std::numeric_limits<double>::infinity();
    }
    return 2.0;
}

inline std::string to_string(PNorm p) {
    switch (p) {
        case PNorm::One: return "1";
        case PNorm::Two: return "2";
        case PNorm::Inf: return "inf";
    }
    return "?";
}

/// Accepts "1", "2", "inf" (also "infinity", "Inf"). Anything else is refused:
/// other exponents have no exact induced norm here.
inline PNorm parse_pnorm(std::string_view s) {
    if (s == "1") return PNorm::One;
    if (s == "2") return PNorm::Two;
    if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity") return PNorm::Inf;
    throw InputError("unsupported norm exponent '" + std::string(s) + "' (expected 1, 2 or inf)");
}

inline constexpr PNorm kAllNorms[] = {PNorm::One, PNorm::Two, PNorm::Inf};

}  // namespace ergo
