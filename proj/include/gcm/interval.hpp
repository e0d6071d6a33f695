#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcm/numeric.hpp"

namespace gcm {

namespace detail {
// std::pow and friends are faithfully rounded but not correctly rounded;
// four ulps of outward slack covers every libm we target.
inline double step_down(double v, int ulps = 4) {
    for (int i = 0; i < ulps; ++i)
        v = std::nextafter(v, -std::numeric_limits<double>::infinity());
    return v;
}
inline double step_up(double v, int ulps = 4) {
    for (int i = 0; i < ulps; ++i)
        v = std::nextafter(v, std::numeric_limits<double>::infinity());
    return v;
}
}  // namespace detail

/// Closed interval with outward-rounded endpoints. Only what the condition
/// margins of the reduction engine need: field ops on finite intervals plus
/// monotone pow/sqrt on nonnegative arguments.
struct Interval {
    double lo = 0;
    double hi = 0;

    Interval() = default;
    Interval(double v) : lo(v), hi(v) {}
    Interval(double l, double h) : lo(l), hi(h) {}

    static Interval exact(double v) { return {v, v}; }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double v) const { return lo <= v && v <= hi; }
};

inline Interval operator+(Interval a, Interval b) {
    return {detail::step_down(a.lo + b.lo), detail::step_up(a.hi + b.hi)};
}
inline Interval operator-(Interval a, Interval b) {
    return {detail::step_down(a.lo - b.hi), detail::step_up(a.hi - b.lo)};
}
inline Interval operator-(Interval a) { return {-a.hi, -a.lo}; }

inline Interval operator*(Interval a, Interval b) {
    double c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {detail::step_down(*std::min_element(c, c + 4)),
            detail::step_up(*std::max_element(c, c + 4))};
}

inline Interval operator/(Interval a, Interval b) {
    if (b.lo <= 0 && b.hi >= 0) throw domain_error("interval division by zero");
    double c[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
    return {detail::step_down(*std::min_element(c, c + 4)),
            detail::step_up(*std::max_element(c, c + 4))};
}

/// x^e for x >= 0, real e; monotone in x for e >= 0.
inline Interval pow(Interval a, double e) {
    if (a.lo < 0) throw domain_error("interval pow of negative base");
    if (e == 0) return Interval::exact(1.0);  // 0^0 = 1 convention
    double plo = std::pow(a.lo, e), phi = std::pow(a.hi, e);
    if (e < 0) std::swap(plo, phi);
    return {std::max(0.0, detail::step_down(plo)), detail::step_up(phi)};
}

inline Interval sqrt(Interval a) {
    if (a.lo < 0) throw domain_error("interval sqrt of negative base");
    return {detail::step_down(std::sqrt(a.lo), 1),
            detail::step_up(std::sqrt(a.hi), 1)};
}

inline Interval max(Interval a, Interval b) {
    return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline Interval hull(Interval a, Interval b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

}  // namespace gcm
