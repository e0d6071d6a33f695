#include "gcm/bounds.hpp"

#include <cmath>

#include <json.hpp>

namespace gcm {

using nlohmann::json;

BoundFunction BoundFunction::power(double m) {
    if (m < 0) throw domain_error("bound: power exponent must be >= 0");
    BoundFunction b(Kind::power);
    b.exponent_ = m;
    return b;
}

BoundFunction BoundFunction::fisher_k3() { return BoundFunction(Kind::fisher_k3); }

BoundFunction BoundFunction::bollobas_linear() {
    return BoundFunction(Kind::bollobas_linear);
}

BoundFunction BoundFunction::piecewise_max(std::vector<BoundFunction> parts) {
    if (parts.empty()) throw domain_error("bound: empty piecewise_max");
    BoundFunction b(Kind::piecewise_max);
    b.parts_ = std::move(parts);
    return b;
}

BoundFunction BoundFunction::zero() { return BoundFunction(Kind::zero); }

double BoundFunction::power_exponent() const {
    if (kind_ != Kind::power) throw domain_error("bound: not a power function");
    return exponent_;
}

double rho_k3(double x) {
    if (x < -1 || x > 1) throw domain_error("rho_k3: x outside [-1,1]");
    if (x < 0) return 0;
    if (x <= 1.0 / 3.0) {
        double s = std::sqrt(1 - 3 * x);
        return 4.0 / 9.0 * (1 - s + 3 * x * (3 + s));
    }
    return 16.0 * x / 3.0;
}

double BoundFunction::eval(double z) const {
    if (z < 0 || z > 2) throw domain_error("bound: argument outside [0,2]");
    switch (kind_) {
        case Kind::power:
            return std::pow(z, exponent_);
        case Kind::fisher_k3:
            return rho_k3(z - 1);
        case Kind::bollobas_linear:
            return std::max(0.0, 16.0 * (z - 1) / 3.0);
        case Kind::piecewise_max: {
            double best = 0;
            for (const auto& p : parts_) best = std::max(best, p.eval(z));
            return best;
        }
        case Kind::zero:
            return 0;
    }
    return 0;
}

Interval BoundFunction::eval(Interval z) const {
    // every shipped kind is non-decreasing on [0,2]
    double lo = eval(std::max(0.0, z.lo));
    double hi = eval(std::min(2.0, z.hi));
    return {detail::step_down(lo), detail::step_up(hi)};
}

std::string BoundFunction::to_json() const {
    json j;
    switch (kind_) {
        case Kind::power:
            j["kind"] = "power";
            j["m"] = exponent_;
            break;
        case Kind::fisher_k3:
            j["kind"] = "fisher_k3";
            break;
        case Kind::bollobas_linear:
            j["kind"] = "bollobas_linear";
            break;
        case Kind::piecewise_max: {
            j["kind"] = "piecewise_max";
            j["parts"] = json::array();
            for (const auto& p : parts_) j["parts"].push_back(json::parse(p.to_json()));
            break;
        }
        case Kind::zero:
            j["kind"] = "zero";
            break;
    }
    return j.dump();
}

BoundFunction BoundFunction::from_json(const std::string& text) {
    json j = json::parse(text);
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "power") return power(j.at("m").get<double>());
    if (kind == "fisher_k3") return fisher_k3();
    if (kind == "bollobas_linear") return bollobas_linear();
    if (kind == "zero") return zero();
    if (kind == "piecewise_max") {
        std::vector<BoundFunction> parts;
        for (const auto& p : j.at("parts")) parts.push_back(from_json(p.dump()));
        return piecewise_max(std::move(parts));
    }
    throw domain_error("bound: unknown kind " + kind);
}

}  // namespace gcm
