#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gcm/interval.hpp"
#include "gcm/numeric.hpp"

namespace gcm {

/// Closed-form nonnegative non-decreasing function on [0,2]; the g and rho
/// of the reduction problem. fisher_k3 is the three-branch triangle
/// supersaturation floor (zero below edge density 1/2, the Fisher curve up
/// to 2/3, the Bollobas line above).
class BoundFunction {
public:
    enum class Kind { power, fisher_k3, bollobas_linear, piecewise_max, zero };

    static BoundFunction power(double m);
    static BoundFunction fisher_k3();
    static BoundFunction bollobas_linear();
    static BoundFunction piecewise_max(std::vector<BoundFunction> parts);
    static BoundFunction zero();

    Kind kind() const { return kind_; }
    double power_exponent() const;  // valid for Kind::power only

    /// Value at z in [0,2].
    double eval(double z) const;
    /// Enclosure of the image of [z.lo, z.hi] (uses monotonicity).
    Interval eval(Interval z) const;

    std::string to_json() const;
    static BoundFunction from_json(const std::string& text);

private:
    BoundFunction(Kind k) : kind_(k) {}
    Kind kind_;
    double exponent_ = 0;
    std::vector<BoundFunction> parts_;
};

/// The Cor-3.5 floor for rho_{K3}(1+x), x in [-1,1]. Branch points at
/// x = 0 and x = 1/3; continuous across both.
double rho_k3(double x);

}  // namespace gcm
