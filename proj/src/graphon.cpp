#include "gcm/graphon.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace gcm {

using nlohmann::json;

namespace {

template <typename T>
void validate_data(const StepData<T>& d, bool exact) {
    std::size_t n = d.weights.size();
    if (n == 0) throw domain_error("graphon: empty weight vector");
    if (d.values.size() != n) throw domain_error("graphon: matrix size mismatch");
    T sum = 0;
    for (const auto& w : d.weights) {
        if (w < 0) throw domain_error("graphon: negative weight");
        sum += w;
    }
    if (exact) {
        if (sum != 1) throw domain_error("graphon: weights must sum to 1");
    } else {
        if (abs(sum - 1) > T("1e-9"))
            throw domain_error("graphon: weights must sum to 1");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (d.values[i].size() != n)
            throw domain_error("graphon: matrix size mismatch");
        for (std::size_t j = 0; j < n; ++j) {
            if (d.values[i][j] < 0 || d.values[i][j] > 1)
                throw domain_error("graphon: matrix entry outside [0,1]");
            if (d.values[i][j] != d.values[j][i])
                throw domain_error("graphon: matrix not symmetric");
        }
    }
}

}  // namespace

StepGraphon StepGraphon::rational(StepData<Rational> data) {
    validate_data(data, true);
    StepGraphon w;
    w.data_ = std::move(data);
    return w;
}

StepGraphon StepGraphon::floating(StepData<Float> data) {
    validate_data(data, false);
    StepGraphon w;
    w.data_ = std::move(data);
    return w;
}

std::size_t StepGraphon::block_count() const {
    return std::visit([](const auto& d) { return d.weights.size(); }, data_);
}

std::string StepGraphon::to_json() const {
    json j;
    if (mode() == NumericMode::rational) {
        const auto& d = rational_data();
        for (const auto& w : d.weights) j["weights"].push_back(to_fraction_string(w));
        for (const auto& row : d.values) {
            json r = json::array();
            for (const auto& v : row) r.push_back(to_fraction_string(v));
            j["matrix"].push_back(r);
        }
    } else {
        const auto& d = float_data();
        for (const auto& w : d.weights) j["weights"].push_back(static_cast<double>(w));
        for (const auto& row : d.values) {
            json r = json::array();
            for (const auto& v : row) r.push_back(static_cast<double>(v));
            j["matrix"].push_back(r);
        }
    }
    return j.dump();
}

StepGraphon StepGraphon::from_json(const std::string& text) {
    json j = json::parse(text);
    const json& jw = j.at("weights");
    const json& jm = j.at("matrix");
    // rational mode iff every entry is a string fraction or an integer
    bool exact = true;
    auto entry_exact = [](const json& v) { return v.is_string() || v.is_number_integer(); };
    for (const auto& v : jw) exact = exact && entry_exact(v);
    for (const auto& row : jm)
        for (const auto& v : row) exact = exact && entry_exact(v);

    if (exact) {
        auto parse = [](const json& v) {
            auto q = v.is_string() ? parse_fraction(v.get<std::string>())
                                   : std::optional<Rational>(Rational(v.get<long>()));
            if (!q) throw domain_error("graphon: bad fraction");
            return *q;
        };
        StepData<Rational> d;
        for (const auto& v : jw) d.weights.push_back(parse(v));
        for (const auto& row : jm) {
            d.values.emplace_back();
            for (const auto& v : row) d.values.back().push_back(parse(v));
        }
        return rational(std::move(d));
    }
    StepData<Float> d;
    auto parse = [](const json& v) {
        if (v.is_string()) {
            auto q = parse_fraction(v.get<std::string>());
            if (!q) throw domain_error("graphon: bad fraction");
            return Float(*q);
        }
        return Float(v.get<double>());
    };
    for (const auto& v : jw) d.weights.push_back(parse(v));
    for (const auto& row : jm) {
        d.values.emplace_back();
        for (const auto& v : row) d.values.back().push_back(parse(v));
    }
    return floating(std::move(d));
}

std::string Density::to_string() const {
    if (is_rational()) return to_fraction_string(rat());
    std::ostringstream os;
    os.precision(17);
    os << static_cast<double>(flt());
    return os.str();
}

std::string Density::to_json() const {
    json j;
    if (is_rational()) {
        j["mode"] = "rational";
        j["value"] = to_fraction_string(rat());
    } else {
        j["mode"] = "float";
        j["value"] = as_double();
        j["error_bound"] = static_cast<double>(error_bound);
    }
    return j.dump();
}

StepGraphon complement(const StepGraphon& w) {
    if (w.mode() == NumericMode::rational) {
        StepData<Rational> d = w.rational_data();
        for (auto& row : d.values)
            for (auto& v : row) v = 1 - v;
        return StepGraphon::rational(std::move(d));
    }
    StepData<Float> d = w.float_data();
    for (auto& row : d.values)
        for (auto& v : row) v = 1 - v;
    return StepGraphon::floating(std::move(d));
}

namespace {

// Partition-function sum for one connected piece: odometer over all
// assignments V(comp) -> blocks.
template <typename T>
T component_sum(const Graph& comp, const StepData<T>& d) {
    std::size_t n = d.weights.size();
    std::size_t v = comp.vertex_count();
    std::vector<std::size_t> assign(v, 0);
    T total = 0;
    while (true) {
        T term = 1;
        for (std::size_t i = 0; i < v; ++i) term *= d.weights[assign[i]];
        for (auto [a, b] : comp.edges()) term *= d.values[assign[a]][assign[b]];
        total += term;
        std::size_t pos = 0;
        while (pos < v && ++assign[pos] == n) assign[pos++] = 0;
        if (pos == v) break;
    }
    return total;
}

template <typename T>
T density_impl(const Graph& h, const StepData<T>& d, std::uint64_t budget) {
    std::size_t n = d.weights.size();
    T total = 1;  // empty product; isolated vertices contribute factor 1
    for (const Graph& comp : components(h)) {
        double cost = std::pow(static_cast<double>(n),
                               static_cast<double>(comp.vertex_count()));
        if (cost > static_cast<double>(budget))
            throw budget_error("density: enumeration budget exceeded");
        total *= component_sum(comp, d);
    }
    return total;
}

template <typename T>
std::vector<std::vector<T>> matmul(const std::vector<std::vector<T>>& a,
                                   const std::vector<std::vector<T>>& b) {
    std::size_t n = a.size();
    std::vector<std::vector<T>> c(n, std::vector<T>(n, T(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

template <typename T>
T cycle_trace(int len, const StepData<T>& d) {
    std::size_t n = d.weights.size();
    // M = diag(z) * A; t(C_len, W) = tr(M^len)
    std::vector<std::vector<T>> m(n, std::vector<T>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = d.weights[i] * d.values[i][j];
    auto acc = m;
    for (int s = 1; s < len; ++s) acc = matmul(acc, m);
    T tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += acc[i][i];
    return tr;
}

Float float_error_bound(const Graph& h, std::size_t blocks, Float value) {
    // crude forward bound: ops * eps * |value|, ops ~ terms * (v + e)
    double terms = 0;
    for (const Graph& comp : components(h))
        terms += std::pow(static_cast<double>(blocks),
                          static_cast<double>(comp.vertex_count())) *
                 static_cast<double>(comp.vertex_count() + comp.edge_count() + 1);
    Float eps = std::numeric_limits<Float>::epsilon();
    return Float(terms) * eps * abs(value);
}

}  // namespace

Density density(const Graph& h, const StepGraphon& w, std::uint64_t budget) {
    if (w.mode() == NumericMode::rational)
        return Density{density_impl(h, w.rational_data(), budget), 0};
    Float v = density_impl(h, w.float_data(), budget);
    return Density{v, float_error_bound(h, w.block_count(), v)};
}

Density cycle_density(int n, const StepGraphon& w) {
    if (n < 3) throw domain_error("cycle_density: n >= 3 required");
    if (w.mode() == NumericMode::rational)
        return Density{cycle_trace(n, w.rational_data()), 0};
    Float v = cycle_trace(n, w.float_data());
    return Density{v, Float(n) * Float(w.block_count() * w.block_count()) *
                          std::numeric_limits<Float>::epsilon() * abs(v)};
}

Density add(const Density& a, const Density& b) {
    if (a.is_rational() && b.is_rational())
        return Density{a.rat() + b.rat(), 0};
    return Density{a.flt() + b.flt(), a.error_bound + b.error_bound};
}

Density mul(const Density& a, const Density& b) {
    if (a.is_rational() && b.is_rational())
        return Density{a.rat() * b.rat(), 0};
    return Density{a.flt() * b.flt(),
                   a.error_bound * abs(b.flt()) + b.error_bound * abs(a.flt())};
}

Density mono_density(const Graph& h, const StepGraphon& w, std::uint64_t budget) {
    return add(density(h, w, budget), density(h, complement(w), budget));
}

}  // namespace gcm
