#include "gcm/commonality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <random>

#include <json.hpp>

#include "gcm/parallel.hpp"

namespace gcm {

using nlohmann::json;

namespace {

Rational rat_pow(const Rational& b, std::size_t e) {
    Rational r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= b;
    return r;
}

Float flt_pow_int(const Float& b, std::size_t e) {
    Float r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

ConstructionFamily::Box ConstructionFamily::parameter_box() const {
    switch (kind) {
        case Kind::three_block_zy:
            return {{"z", "y"}, {0, 0}, {0.5, 1}};
        case Kind::two_block_diag_p:
            return {{"p"}, {0}, {1}};
        default:
            return {};
    }
}

StepGraphon ConstructionFamily::build(const std::vector<double>& params) const {
    switch (kind) {
        case Kind::three_block_zy: {
            if (params.size() != 2)
                throw domain_error("three_block_zy takes (z, y)");
            Float z(params[0]), y(params[1]);
            if (z < 0 || z > Float(1) / 2 || y < 0 || y > 1)
                throw domain_error("three_block_zy: parameters outside box");
            StepData<Float> d;
            d.weights = {1 - 2 * z, z, z};
            d.values = {{0, 1, 1}, {1, 0, y}, {1, y, 0}};
            return StepGraphon::floating(std::move(d));
        }
        case Kind::two_block_diag_p: {
            if (params.size() != 1) throw domain_error("two_block_diag_p takes (p)");
            Float p(params[0]);
            if (p < 0 || p > 1) throw domain_error("two_block_diag_p: p outside [0,1]");
            StepData<Float> d;
            d.weights = {Float(1) / 2, Float(1) / 2};
            d.values = {{p, 1}, {1, p}};
            return StepGraphon::floating(std::move(d));
        }
        case Kind::turan: {
            if (turan_k < 3) throw domain_error("turan: k >= 3 required");
            std::size_t n = static_cast<std::size_t>(turan_k) - 1;
            StepData<Float> d;
            d.weights.assign(n, Float(1) / static_cast<int>(n));
            d.values.assign(n, std::vector<Float>(n, 1));
            for (std::size_t i = 0; i < n; ++i) d.values[i][i] = 0;
            return StepGraphon::floating(std::move(d));
        }
        case Kind::custom:
            return custom_graphon;
    }
    throw domain_error("unknown family");
}

StepGraphon ConstructionFamily::build_exact(const std::vector<Rational>& params) const {
    switch (kind) {
        case Kind::three_block_zy: {
            if (params.size() != 2)
                throw domain_error("three_block_zy takes (z, y)");
            const Rational& z = params[0];
            const Rational& y = params[1];
            StepData<Rational> d;
            d.weights = {1 - 2 * z, z, z};
            d.values = {{0, 1, 1}, {1, 0, y}, {1, y, 0}};
            return StepGraphon::rational(std::move(d));
        }
        case Kind::two_block_diag_p: {
            if (params.size() != 1) throw domain_error("two_block_diag_p takes (p)");
            const Rational& p = params[0];
            StepData<Rational> d;
            d.weights = {Rational(1, 2), Rational(1, 2)};
            d.values = {{p, 1}, {1, p}};
            return StepGraphon::rational(std::move(d));
        }
        case Kind::turan: {
            if (turan_k < 3) throw domain_error("turan: k >= 3 required");
            std::size_t n = static_cast<std::size_t>(turan_k) - 1;
            StepData<Rational> d;
            d.weights.assign(n, Rational(1, static_cast<int>(n)));
            d.values.assign(n, std::vector<Rational>(n, 1));
            for (std::size_t i = 0; i < n; ++i) d.values[i][i] = 0;
            return StepGraphon::rational(std::move(d));
        }
        case Kind::custom:
            return custom_graphon;
    }
    throw domain_error("unknown family");
}

ConstructionFamily ConstructionFamily::from_name(const std::string& name, int turan_k) {
    ConstructionFamily f;
    if (name == "three_block_zy") {
        f.kind = Kind::three_block_zy;
    } else if (name == "two_block_diag_p") {
        f.kind = Kind::two_block_diag_p;
    } else if (name == "turan") {
        f.kind = Kind::turan;
        f.turan_k = turan_k;
    } else {
        throw domain_error("unknown family name: " + name);
    }
    return f;
}

std::string ConstructionFamily::name() const {
    switch (kind) {
        case Kind::three_block_zy: return "three_block_zy";
        case Kind::two_block_diag_p: return "two_block_diag_p";
        case Kind::turan: return "turan";
        case Kind::custom: return "custom";
    }
    return "?";
}

std::string WitnessReport::to_json() const {
    json j;
    j["graph"] = json::parse(graph.to_json());
    j["graphon"] = json::parse(graphon.to_json());
    j["mono"] = json::parse(mono_value.to_json());
    j["threshold"] = json::parse(threshold.to_json());
    j["margin"] = margin;
    j["verdict"] = verdict == WitnessVerdict::uncommon_witness ? "uncommon_witness"
                   : verdict == WitnessVerdict::not_strongly_common_witness
                       ? "not_strongly_common_witness"
                       : "no_conclusion";
    if (!family_name.empty()) {
        j["family"] = family_name;
        j["params"] = params;
    }
    return j.dump();
}

namespace {

WitnessReport make_report(const Graph& h, const StepGraphon& w, Density mono,
                          Density thr, WitnessVerdict yes, double tol) {
    WitnessReport rep;
    rep.graph = h;
    rep.graphon = w;
    rep.mono_value = mono;
    rep.threshold = thr;
    if (mono.is_rational() && thr.is_rational()) {
        rep.margin = static_cast<double>(Float(thr.rat() - mono.rat()));
        rep.verdict = mono.rat() < thr.rat() ? yes : WitnessVerdict::no_conclusion;
    } else {
        Float m = (thr.is_rational() ? Float(thr.rat()) : thr.flt()) -
                  (mono.is_rational() ? Float(mono.rat()) : mono.flt());
        rep.margin = static_cast<double>(m);
        Float slack = mono.error_bound + thr.error_bound + Float(tol);
        rep.verdict = m > slack ? yes : WitnessVerdict::no_conclusion;
    }
    return rep;
}

}  // namespace

WitnessReport check_uncommon(const Graph& h, const StepGraphon& w, double tol) {
    Density mono = mono_density(h, w);
    Density thr;
    if (w.mode() == NumericMode::rational)
        thr = Density{2 * rat_pow(Rational(1, 2), h.edge_count()), 0};
    else
        thr = Density{2 * flt_pow_int(Float(1) / 2, h.edge_count()), 0};
    return make_report(h, w, mono, thr, WitnessVerdict::uncommon_witness, tol);
}

WitnessReport check_not_strongly_common(const Graph& h, const StepGraphon& w) {
    Graph k2 = complete_graph(2);
    Density mono = mono_density(h, w);
    Density e1 = density(k2, w);
    Density e2 = density(k2, complement(w));
    Density thr;
    std::size_t e = h.edge_count();
    if (e1.is_rational()) {
        thr = Density{rat_pow(e1.rat(), e) + rat_pow(e2.rat(), e), 0};
    } else {
        Float v = flt_pow_int(e1.flt(), e) + flt_pow_int(e2.flt(), e);
        Float err = Float(e) * (e1.error_bound + e2.error_bound) * 4;
        thr = Density{v, err};
    }
    return make_report(h, w, mono, thr,
                       WitnessVerdict::not_strongly_common_witness, 1e-12);
}

WitnessReport chromatic_strongly_common_test(const Graph& h) {
    int chi = chromatic_number(h);
    if (chi < 3)
        throw domain_error("chromatic test needs chromatic number >= 3");
    ConstructionFamily turan;
    turan.kind = ConstructionFamily::Kind::turan;
    turan.turan_k = chi;
    StepGraphon w = turan.build_exact({});

    std::size_t v = h.vertex_count(), e = h.edge_count();
    std::size_t m = components(h).size();
    Rational inv(1, chi - 1);
    Rational expected_comp = rat_pow(inv, v - m);

    // enumerative cross-check of the closed forms
    Density tw = density(h, w);
    Density tcomp = density(h, complement(w));
    if (tw.rat() != 0 || tcomp.rat() != expected_comp)
        throw domain_error("chromatic test: closed form mismatch");

    Density mono{tw.rat() + tcomp.rat(), 0};
    Density thr{rat_pow(Rational(chi - 2, chi - 1), e) + rat_pow(inv, e), 0};
    WitnessReport rep = make_report(h, w, mono, thr,
                                    WitnessVerdict::not_strongly_common_witness, 0);
    rep.family_name = "turan";
    return rep;
}

namespace {

int ceil_scaled(int k, long num, long den) {  // ceil(k * num/den)
    long long t = static_cast<long long>(k) * num;
    return static_cast<int>((t + den - 1) / den);
}

// eigenvalues of diag(1/2,1/2) * [[p,1],[1,p]]
std::pair<Float, Float> two_block_eigen(const Float& p) {
    return {(p + 1) / 2, (p - 1) / 2};
}

}  // namespace

std::string FamilyBoundCertificate::to_json() const {
    json j;
    j["k"] = k;
    j["l"] = l;
    j["p"] = static_cast<double>(p);
    j["bracket_w"] = static_cast<double>(bracket_w);
    j["bracket_comp_minus_one"] = static_cast<double>(bracket_comp - 1);
    j["mono_over_threshold"] = static_cast<double>(mono_over_threshold);
    j["pass"] = pass;
    return j.dump();
}

FamilyBoundCertificate uncommon_family_bound(int k) {
    if (k < 1) throw domain_error("uncommon_family_bound: k >= 1 required");
    FamilyBoundCertificate cert;
    cert.k = k;
    cert.l = ceil_scaled(k, 19665, 10000);
    Float alpha = Float(cert.l) / k;
    cert.p = 1 - pow(Float(2), -1 / (3 + alpha));

    auto [l1, l2] = two_block_eigen(cert.p);
    Float t_k3 = flt_pow_int(l1, 3) + flt_pow_int(l2, 3);
    Float t_k2 = (cert.p + 1) / 2;

    // cross-check the closed forms by direct enumeration
    ConstructionFamily fam;
    fam.kind = ConstructionFamily::Kind::two_block_diag_p;
    StepData<Float> d;
    d.weights = {Float(1) / 2, Float(1) / 2};
    d.values = {{cert.p, 1}, {1, cert.p}};
    StepGraphon w = StepGraphon::floating(std::move(d));
    Density t3 = density(complete_graph(3), w);
    Density t2 = density(complete_graph(2), w);
    if (abs(t3.flt() - t_k3) > t3.error_bound + Float("1e-40") ||
        abs(t2.flt() - t_k2) > t2.error_bound + Float("1e-40"))
        throw domain_error("uncommon_family_bound: density cross-check failed");

    // per-triangle brackets of mono(H,W) * 2^{e(H)-1}
    cert.bracket_w = 8 * t_k3 * pow(2 * t_k2, alpha);
    cert.bracket_comp = 2 * pow(1 - cert.p, 3 + alpha);
    cert.mono_over_threshold =
        (pow(cert.bracket_w, Float(k)) + pow(cert.bracket_comp, Float(k))) / 2;

    cert.pass = abs(cert.bracket_comp - 1) < Float("1e-40") &&
                cert.bracket_w < Float("0.9999994") &&
                cert.mono_over_threshold < 1;
    return cert;
}

std::string OddCycleCertificate::to_json() const {
    json j;
    j["k"] = k;
    j["r"] = r;
    j["p"] = static_cast<double>(p);
    j["direct_margin"] = static_cast<double>(direct_margin);
    if (r >= 7) {
        j["amgm_margin"] = static_cast<double>(amgm_margin);
        j["final_margin"] = static_cast<double>(final_margin);
    }
    j["bracket_comp_minus_one"] = static_cast<double>(bracket_comp - 1);
    j["pass"] = pass;
    return j.dump();
}

OddCycleCertificate uncommon_odd_cycle_family(int k, int r) {
    if (k < 1 || r < 1) throw domain_error("odd cycle family: k, r >= 1 required");
    OddCycleCertificate cert;
    cert.k = k;
    cert.r = r;
    int n = 2 * r + 1;
    cert.p = 1 - pow(Float(2), Float(-1) / (4 * r + 1));

    auto [l1, l2] = two_block_eigen(cert.p);
    Float t_cyc = flt_pow_int(l1, n) + flt_pow_int(l2, n);

    StepData<Float> d;
    d.weights = {Float(1) / 2, Float(1) / 2};
    d.values = {{cert.p, 1}, {1, cert.p}};
    StepGraphon w = StepGraphon::floating(std::move(d));
    Density tc = cycle_density(n, w);
    if (abs(tc.flt() - t_cyc) > tc.error_bound + Float("1e-40"))
        throw domain_error("odd cycle family: cycle density cross-check failed");

    // bracket of t(H,W) * 2^{e(H)} per copy: must fall below 1
    Float q = 2 - pow(Float(2), Float(-1) / (4 * r + 1));  // = 1 + p
    Float lhs = pow(q, Float(4 * r + 1)) -
                pow(Float(2), Float(-(2 * r + 1)) / (4 * r + 1)) * pow(q, Float(2 * r));
    cert.direct_margin = 1 - lhs;
    cert.bracket_comp = 2 * pow(1 - cert.p, Float(4 * r + 1));

    bool chain_ok = true;
    if (r >= 7) {
        cert.amgm_margin =
            pow(Float(2), Float(6 * r + 1) / (8 * r + 2)) - pow(q, Float(3 * r + 1));
        Float a(3 * r + 1), b(4 * r + 1);
        cert.final_margin =
            1 / b - (1 / (2 * a * b) + sqrt(1 / (log(Float(4)) * a * b)));
        chain_ok = cert.amgm_margin > 0 && cert.final_margin > 0;
    }

    // direct bracket for the enumerated densities as well
    Float bracket_w = pow(Float(2), Float(n)) * t_cyc * pow(q, Float(2 * r));
    cert.pass = cert.direct_margin > 0 && chain_ok &&
                abs(cert.bracket_comp - 1) < Float("1e-40") && bracket_w < 1;
    return cert;
}

namespace {

double mono_as_double(const Graph& h, const StepGraphon& w) {
    Density m = mono_density(h, w);
    return m.as_double();
}

// Nelder-Mead on [lo,hi]^d with reflection/expansion/contraction/shrink.
// Returns the best point and its value; never evaluates past the budget
// (points beyond it score +inf and are discarded by the sort).
std::pair<std::vector<double>, double> nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> start, const ConstructionFamily::Box& box, int iters,
    long& evals, long budget) {
    std::size_t d = start.size();
    auto clamp = [&](std::vector<double> p) {
        for (std::size_t i = 0; i < d; ++i)
            p[i] = std::clamp(p[i], box.lo[i], box.hi[i]);
        return p;
    };
    struct Pt {
        std::vector<double> x;
        double v;
    };
    std::vector<Pt> simplex;
    auto eval = [&](std::vector<double> x) {
        if (evals >= budget) return std::numeric_limits<double>::infinity();
        ++evals;
        return f(clamp(std::move(x)));
    };
    simplex.push_back({start, eval(start)});
    for (std::size_t i = 0; i < d; ++i) {
        auto x = start;
        x[i] += 0.05 * (box.hi[i] - box.lo[i]);
        x = clamp(x);
        simplex.push_back({x, eval(x)});
    }
    for (int it = 0; it < iters && evals < budget; ++it) {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Pt& a, const Pt& b) { return a.v < b.v; });
        std::vector<double> centroid(d, 0);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t s = 0; s < d; ++s) centroid[i] += simplex[s].x[i];
            centroid[i] /= static_cast<double>(d);
        }
        Pt& worst = simplex.back();
        std::vector<double> refl(d);
        for (std::size_t i = 0; i < d; ++i) refl[i] = 2 * centroid[i] - worst.x[i];
        refl = clamp(refl);
        double fr = eval(refl);
        if (fr < simplex.front().v) {
            std::vector<double> exp(d);
            for (std::size_t i = 0; i < d; ++i) exp[i] = 3 * centroid[i] - 2 * worst.x[i];
            exp = clamp(exp);
            double fe = eval(exp);
            worst = fe < fr ? Pt{exp, fe} : Pt{refl, fr};
        } else if (fr < simplex[simplex.size() - 2].v) {
            worst = {refl, fr};
        } else {
            std::vector<double> con(d);
            for (std::size_t i = 0; i < d; ++i)
                con[i] = 0.5 * (centroid[i] + worst.x[i]);
            double fc = eval(con);
            if (fc < worst.v) {
                worst = {con, fc};
            } else {
                for (std::size_t s = 1; s < simplex.size(); ++s) {
                    for (std::size_t i = 0; i < d; ++i)
                        simplex[s].x[i] =
                            0.5 * (simplex[0].x[i] + simplex[s].x[i]);
                    simplex[s].v = eval(simplex[s].x);
                }
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(),
              [](const Pt& a, const Pt& b) { return a.v < b.v; });
    return {simplex.front().x, simplex.front().v};
}

}  // namespace

SearchResult search_witness(const Graph& h, const ConstructionFamily& family,
                            long budget, unsigned seed) {
    if (budget < 16) throw budget_error("search: budget too small");
    ConstructionFamily::Box box = family.parameter_box();
    std::size_t d = box.names.size();

    SearchResult out;
    auto objective = [&](const std::vector<double>& p) {
        return mono_as_double(h, family.build(p));
    };

    if (d == 0) {
        out.best_params = {};
        out.best_value = objective({});
        out.evaluations = 1;
    } else {
        long per_dim = d == 1 ? std::min<long>(256, budget / 2)
                              : std::min<long>(64, static_cast<long>(
                                                       std::sqrt(budget / 2.0)));
        per_dim = std::max<long>(per_dim, 4);
        std::size_t cells = 1;
        for (std::size_t i = 0; i < d; ++i) cells *= static_cast<std::size_t>(per_dim);
        std::vector<double> values(cells);
        std::vector<std::vector<double>> points(cells);
        parallel_for(cells, [&](std::size_t idx) {
            std::vector<double> p(d);
            std::size_t rem = idx;
            for (std::size_t i = 0; i < d; ++i) {
                auto step = rem % static_cast<std::size_t>(per_dim);
                rem /= static_cast<std::size_t>(per_dim);
                p[i] = box.lo[i] + (box.hi[i] - box.lo[i]) *
                                       (static_cast<double>(step) + 0.5) /
                                       static_cast<double>(per_dim);
            }
            points[idx] = p;
            values[idx] = objective(p);
        });
        out.evaluations = static_cast<long>(cells);
        std::size_t best = static_cast<std::size_t>(
            std::min_element(values.begin(), values.end()) - values.begin());
        out.best_params = points[best];
        out.best_value = values[best];

        // local refinement from the grid optimum plus a few seeded restarts
        std::mt19937 rng(seed);
        std::vector<std::vector<double>> starts{out.best_params};
        for (int s = 0; s < 3; ++s) {
            std::vector<double> p(d);
            for (std::size_t i = 0; i < d; ++i) {
                std::uniform_real_distribution<double> dist(box.lo[i], box.hi[i]);
                p[i] = dist(rng);
            }
            starts.push_back(p);
        }
        for (const auto& s : starts) {
            if (out.evaluations >= budget) break;
            auto [x, v] =
                nelder_mead(objective, s, box, 200, out.evaluations, budget);
            if (v < out.best_value) {
                out.best_value = v;
                out.best_params = x;
            }
        }
    }

    out.report = check_uncommon(h, family.build(out.best_params));
    out.report.family_name = family.name();
    out.report.params = out.best_params;
    return out;
}

}  // namespace gcm
