#pragma once

#include <string>

#include "gcm/graph.hpp"
#include "gcm/numeric.hpp"

namespace gcm {

/// Exponent bookkeeping for lifting the k = 3 base case to k >= 4 via
/// Holder's inequality. All identities are kept exact in rationals.
struct HolderReduction {
    int k = 4;
    Rational l = 0;
    Rational p, q;      // k/3 and k/(k-3)
    Rational alpha;     // (ceil(9l/k) - 9l/k)/3
    int r = 0;          // ceil(9l/k), the base-case exponent

    std::string to_json() const;
};

/// k >= 4 and 0 <= l <= 5k/3. Checks 3l/k + alpha = r/3, r <= 15 and
/// alpha*q <= 1 exactly.
HolderReduction holder_reduce(int k, const Rational& l);

enum class CommonStatus { common, uncommon, unknown };

struct Verdict {
    Graph graph;
    CommonStatus status = CommonStatus::unknown;
    std::string rule;             // theorem tag justifying the status
    std::string certificate_ref;  // replayable certificate id, when any

    std::string to_json() const;
};

/// Classification of (k*K3) u (l*K2) by the shipped rules, with honest
/// "unknown" between 5k/3 and ceil(1.9665 k).
Verdict classify_k3_k2_union(int k, int l);

/// The known-common / known-uncommon gap for l at a given k, i.e. the
/// interval of l values the shipped rules leave open (empty when none).
std::pair<int, int> de_gap_k3_union(int k);

/// Commonality of a (K3,k,l)-correlated graph: k = 2 with l <= 2, or
/// k >= 3 with l <= 5k/3 (Holder arithmetic for k >= 4).
Verdict check_correlated_common(const CorrelationRecord& rec);

/// Rule for H(T,phi) disjoint-union a Sidorenko graph F:
/// common when e(F) <= (v3 == 2 ? 2 : 5*v3/3) + e2 - v2. Sidorenko-ness
/// of F is caller-asserted, never decided here.
Verdict check_union_with_sidorenko(const K3Tree& t, int sidorenko_edge_count);

/// Triangle-vertex trees (e2 = 0): uncommon when v2 >= 1.9665 * v3, with
/// the two-block witness re-verified numerically.
Verdict triangle_vertex_tree_uncommon(const K3Tree& t);

}  // namespace gcm
