#pragma once

#include <doctest.h>

// doctest::Approx adds a unit scale to its epsilon, which turns it into an
// absolute tolerance for small values; these comparisons are purely relative.
inline doctest::Approx rel(double value, double epsilon = 1e-12) {
    return doctest::Approx(value).epsilon(epsilon).scale(0.0);
}
