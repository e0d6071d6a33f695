#pragma once

#include <map>
#include <string>
#include <vector>

#include "gcm/graph.hpp"
#include "gcm/graphon.hpp"

namespace gcm {

/// The witness construction families used for upper bounds: the
/// three-block W_{z,y}, the two-block diagonal-p graphon and the Turan
/// block graphon W_{K_{k-1}}.
struct ConstructionFamily {
    enum class Kind { three_block_zy, two_block_diag_p, turan, custom };

    Kind kind = Kind::three_block_zy;
    int turan_k = 3;          // turan only
    StepGraphon custom_graphon = StepGraphon::rational(
        {{Rational(1)}, {{Rational(1, 2)}}});  // custom only

    struct Box {
        std::vector<std::string> names;
        std::vector<double> lo, hi;
    };
    Box parameter_box() const;

    StepGraphon build(const std::vector<double>& params) const;
    /// Exact build for rational parameters (three_block_zy, turan, custom).
    StepGraphon build_exact(const std::vector<Rational>& params) const;

    static ConstructionFamily from_name(const std::string& name, int turan_k = 3);
    std::string name() const;
};

enum class WitnessVerdict { uncommon_witness, not_strongly_common_witness, no_conclusion };

struct WitnessReport {
    Graph graph;
    StepGraphon graphon = StepGraphon::rational({{Rational(1)}, {{Rational(1, 2)}}});
    Density mono_value;
    Density threshold;  // 2*(1/2)^{e(H)} or the strong-commonness RHS
    double margin = 0;  // threshold - mono, as double
    WitnessVerdict verdict = WitnessVerdict::no_conclusion;
    std::string family_name;
    std::vector<double> params;

    std::string to_json() const;
};

/// mono(H,W) against the commonality threshold 2*(1/2)^{e(H)}.
WitnessReport check_uncommon(const Graph& h, const StepGraphon& w, double tol = 1e-9);

/// mono(H,W) against t(K2,W)^{e} + t(K2,1-W)^{e}.
WitnessReport check_not_strongly_common(const Graph& h, const StepGraphon& w);

/// The chromatic-number test: with k = chi(H) and m components, H is not
/// strongly common when (1/(k-1))^{v-m} < ((k-2)/(k-1))^e + (1/(k-1))^e,
/// witnessed by the Turan graphon W_{K_{k-1}}. Exact rational arithmetic;
/// cross-checks t(H,W) = 0 and t(H,1-W) = (1/(k-1))^{v-m} by enumeration.
WitnessReport chromatic_strongly_common_test(const Graph& h);

/// Witness certificate that (k*K3) u (l*K2), l = ceil(1.9665 k), is
/// uncommon via the two-block graphon at p = 1 - 2^{-1/(3+alpha)}.
struct FamilyBoundCertificate {
    int k = 1;
    int l = 2;
    Float p;
    Float bracket_w;           // must be < 0.9999994
    Float bracket_comp;        // must equal 1
    Float mono_over_threshold;  // (t(H,W)+t(H,1-W)) * 2^{e(H)-1}, < 1
    bool pass = false;
    std::string to_json() const;
};
FamilyBoundCertificate uncommon_family_bound(int k);

/// Same construction for (k*C_{2r+1}) u (2rk*K2) with p = 1 - 2^{-1/(4r+1)}.
/// Verifies the direct inequality for the given r, the AM-GM sufficient
/// chain when r >= 7, and the complement bracket. Densities are
/// cross-checked against cycle_density.
struct OddCycleCertificate {
    int k = 1, r = 1;
    Float p;
    Float direct_margin;       // RHS - LHS of the bracket-below-one check
    Float amgm_margin = 0;     // set when r >= 7
    Float final_margin = 0;    // set when r >= 7
    Float bracket_comp;        // must equal 1
    bool pass = false;
    std::string to_json() const;
};
OddCycleCertificate uncommon_odd_cycle_family(int k, int r);

struct SearchResult {
    WitnessReport report;
    std::vector<double> best_params;
    double best_value = 0;
    long evaluations = 0;
};

/// Coarse grid scan then Nelder-Mead refinement of mono(H, family(params))
/// over the family's parameter box. Deterministic for a fixed seed.
SearchResult search_witness(const Graph& h, const ConstructionFamily& family,
                            long budget = 100000, unsigned seed = 0);

}  // namespace gcm
