#pragma once

#include <string>

#include "fields.hpp"

namespace ainfty {

/// Grading group for all degree bookkeeping: Z or Z/2.
/// Degrees are stored as plain integers in both modes; Z/2 reduces mod 2
/// in sign computation and block lookup so one code path serves both.
enum class Grading { Z, Z2 };

inline int reduce_degree(Grading g, int d)
{
    if (g == Grading::Z2) return ((d % 2) + 2) % 2;
    return d;
}

inline bool degrees_equal(Grading g, int a, int b)
{
    return reduce_degree(g, a) == reduce_degree(g, b);
}

/// (-1)^d as a field element; parity only, works for negative d.
template <class K> inline K sign_pow(int d) { return (d % 2) ? K(-1) : K(1); }

inline std::string grading_name(Grading g) { return g == Grading::Z ? "z" : "z2"; }

inline Grading grading_from_name(const std::string& s)
{
    if (s == "z" || s == "Z") return Grading::Z;
    if (s == "z2" || s == "Z2") return Grading::Z2;
    throw ArgumentError("unknown grading: " + s);
}

} // namespace ainfty
