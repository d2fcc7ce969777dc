#pragma once

#include <string>

#include "potsig/errors.hpp"

namespace potsig {

/// Closed-form threshold for K4 - e: 3n - 1 (n odd), 3n - 2 (n even), and 20 at n = 6.
inline long theorem_formula(int n) {
    if (n < 4)
        throw DomainError("K4-e threshold formula needs n >= 4, got " + std::to_string(n));
    if (n == 6)
        return 20;
    return n % 2 == 1 ? 3L * n - 1 : 3L * n - 2;
}

/// 2 * floor((3n - 1) / 2): the sigma from which the constructive argument
/// applies at every n >= 4 (16 at n = 6, where only (3^6) escapes).
inline long induction_threshold(int n) {
    if (n < 4)
        throw DomainError("K4-e threshold needs n >= 4, got " + std::to_string(n));
    return 2L * ((3L * n - 1) / 2);
}

}  // namespace potsig
