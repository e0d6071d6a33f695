#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gcm/commonality.hpp"
#include "gcm/correlation.hpp"
#include "gcm/graph.hpp"
#include "gcm/graphon.hpp"
#include "gcm/reduction.hpp"
#include "gcm/repro.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitClaimFails = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInconclusive = 4;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw gcm::domain_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

gcm::StepGraphon to_float_mode(const gcm::StepGraphon& w) {
    if (w.mode() == gcm::NumericMode::floating) return w;
    gcm::StepData<gcm::Float> d;
    for (const auto& x : w.rational_data().weights) d.weights.emplace_back(x);
    for (const auto& row : w.rational_data().values) {
        d.values.emplace_back();
        for (const auto& x : row) d.values.back().emplace_back(x);
    }
    return gcm::StepGraphon::floating(std::move(d));
}

int cmd_density(const std::string& graph_file, const std::string& graphon_file,
                const std::string& mode, bool as_json) {
    gcm::Graph h = gcm::Graph::from_json(slurp(graph_file));
    gcm::StepGraphon w = gcm::StepGraphon::from_json(slurp(graphon_file));
    if (mode == "rational" && w.mode() != gcm::NumericMode::rational)
        throw gcm::domain_error("graphon has non-rational entries");
    if (mode == "float") w = to_float_mode(w);

    gcm::Density t = gcm::density(h, w);
    gcm::Density tc = gcm::density(h, gcm::complement(w));
    gcm::Density mono = gcm::add(t, tc);
    gcm::Density thr;
    if (w.mode() == gcm::NumericMode::rational) {
        gcm::Rational r = 2;
        for (std::size_t i = 0; i < h.edge_count(); ++i) r /= 2;
        thr = gcm::Density{r, 0};
    } else {
        gcm::Float r = 2;
        for (std::size_t i = 0; i < h.edge_count(); ++i) r /= 2;
        thr = gcm::Density{r, 0};
    }
    if (as_json) {
        nlohmann::json j;
        j["t"] = nlohmann::json::parse(t.to_json());
        j["t_complement"] = nlohmann::json::parse(tc.to_json());
        j["mono"] = nlohmann::json::parse(mono.to_json());
        j["threshold"] = nlohmann::json::parse(thr.to_json());
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "t(H,W)      = " << t.to_string() << "\n"
                  << "t(H,1-W)    = " << tc.to_string() << "\n"
                  << "mono        = " << mono.to_string() << "\n"
                  << "2*(1/2)^e   = " << thr.to_string() << "\n";
    }
    return kExitOk;
}

int cmd_verify(const std::string& file, const std::string& strategy,
               double resolution, const std::string& csv, bool as_json) {
    std::string text = slurp(file);
    nlohmann::json j = nlohmann::json::parse(text);
    gcm::VerifyStrategy strat = strategy == "interval"
                                    ? gcm::VerifyStrategy::certified_interval
                                    : gcm::VerifyStrategy::grid_with_margin;
    gcm::Certificate cert;
    if (j.contains("verdict")) {
        gcm::Certificate stored = gcm::Certificate::from_json(text);
        bool ok = gcm::replay_certificate(stored);
        if (!ok) {
            std::cerr << "certificate replay mismatch\n";
            return kExitClaimFails;
        }
        cert = stored;
    } else {
        gcm::ReductionProblem p = gcm::ReductionProblem::from_json(text);
        cert = gcm::verify_reduction(p, strat, resolution);
    }
    if (!csv.empty()) {
        std::ofstream out(csv);
        out << "x_lo,x_hi,condition,margin\n";
        for (const auto& r : cert.intervals)
            out << r.x_lo << "," << r.x_hi << "," << r.condition << ","
                << r.margin << "\n";
    }
    if (as_json) {
        std::cout << nlohmann::json::parse(cert.to_json()).dump(2) << "\n";
    } else {
        std::cout << nlohmann::json::parse(cert.to_json())["verdict"]
                         .get<std::string>()
                  << " (" << cert.intervals.size() << " certified intervals, "
                  << "x0 crossover " << cert.x0_crossover << ")\n";
        if (cert.verdict == gcm::CertVerdict::fails_at)
            std::cout << "violation at x=" << cert.fail_x << " y=" << cert.fail_y
                      << " f=" << cert.fail_value << "\n";
    }
    switch (cert.verdict) {
        case gcm::CertVerdict::holds: return kExitOk;
        case gcm::CertVerdict::fails_at: return kExitClaimFails;
        case gcm::CertVerdict::inconclusive: return kExitInconclusive;
    }
    return kExitInconclusive;
}

int cmd_reproduce(const std::string& id, bool as_json) {
    std::vector<std::string> ids =
        id.empty() ? gcm::repro_ids() : std::vector<std::string>{id};
    bool all_pass = true;
    nlohmann::json out = nlohmann::json::array();
    for (const auto& rid : ids) {
        gcm::ReproResult r = gcm::run_repro(rid);
        all_pass = all_pass && r.pass;
        if (as_json) {
            out.push_back({{"id", r.id},
                           {"description", r.description},
                           {"computed", r.computed},
                           {"expected", r.expected},
                           {"pass", r.pass},
                           {"elapsed_ms", r.elapsed_ms}});
        } else {
            std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "\n"
                      << "      computed: " << r.computed << "\n"
                      << "      expected: " << r.expected << "\n";
        }
    }
    if (as_json) std::cout << out.dump(2) << "\n";
    return all_pass ? kExitOk : kExitClaimFails;
}

int cmd_search(const std::string& graph_file, const std::string& family,
               int turan_k, long budget, unsigned seed, bool as_json) {
    gcm::Graph h = gcm::Graph::from_json(slurp(graph_file));
    gcm::ConstructionFamily fam = gcm::ConstructionFamily::from_name(family, turan_k);
    gcm::SearchResult res = gcm::search_witness(h, fam, budget, seed);
    gcm::WitnessReport report = res.report;
    if (report.verdict == gcm::WitnessVerdict::no_conclusion) {
        // the weaker claim may still be refutable at the best point found
        gcm::WitnessReport strong =
            gcm::check_not_strongly_common(h, fam.build(res.best_params));
        if (strong.verdict == gcm::WitnessVerdict::not_strongly_common_witness) {
            strong.family_name = report.family_name;
            strong.params = res.best_params;
            report = strong;
        }
    }
    if (as_json) {
        nlohmann::json j = nlohmann::json::parse(report.to_json());
        j["best_value"] = res.best_value;
        j["evaluations"] = res.evaluations;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "best mono " << res.best_value << " after "
                  << res.evaluations << " evaluations at (";
        for (std::size_t i = 0; i < res.best_params.size(); ++i)
            std::cout << (i ? ", " : "") << res.best_params[i];
        std::cout << ")\n"
                  << "margin " << report.margin << " -> "
                  << (report.verdict == gcm::WitnessVerdict::uncommon_witness
                          ? "uncommon witness"
                      : report.verdict ==
                              gcm::WitnessVerdict::not_strongly_common_witness
                          ? "not strongly common witness"
                          : "no conclusion")
                  << "\n";
    }
    return report.verdict != gcm::WitnessVerdict::no_conclusion ? kExitOk
                                                                : kExitClaimFails;
}

int cmd_classify(int k, int l, bool as_json) {
    gcm::Verdict v = gcm::classify_k3_k2_union(k, l);
    if (as_json) {
        std::cout << nlohmann::json::parse(v.to_json()).dump(2) << "\n";
    } else {
        std::string s = v.status == gcm::CommonStatus::common      ? "common"
                        : v.status == gcm::CommonStatus::uncommon  ? "uncommon"
                                                                   : "unknown";
        std::cout << "(" << k << "*K3) u (" << l << "*K2): " << s << " — "
                  << v.rule << "\n";
        auto gap = gcm::de_gap_k3_union(k);
        if (gap.first <= gap.second)
            std::cout << "open l-range at this k: [" << gap.first << ", "
                      << gap.second << "]\n";
    }
    return kExitOk;
}

int cmd_tree(const std::string& tree_file, bool as_json) {
    gcm::K3Tree t = gcm::K3Tree::from_json(slurp(tree_file));
    gcm::Graph h = gcm::realize_k3_tree(t);
    gcm::CorrelationRecord rec = gcm::k3_tree_correlation(t);
    nlohmann::json j;
    j["graph"] = nlohmann::json::parse(h.to_json());
    j["v3"] = t.v_count(3);
    j["v2"] = t.v_count(2);
    j["e2"] = t.e_count(2);
    j["correlation"] = {{"base", "K3"},
                        {"k", rec.power},
                        {"l", rec.edge_exponent}};
    j["common_check"] =
        nlohmann::json::parse(gcm::check_correlated_common(rec).to_json());
    if (t.e_count(2) == 0 && t.v_count(2) > 0)
        j["uncommon_check"] = nlohmann::json::parse(
            gcm::triangle_vertex_tree_uncommon(t).to_json());
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "H(T,phi): " << h.vertex_count() << " vertices, "
                  << h.edge_count() << " edges\n"
                  << "v3=" << t.v_count(3) << " v2=" << t.v_count(2)
                  << " e2=" << t.e_count(2) << "; record (K3, " << rec.power
                  << ", " << rec.edge_exponent << ")\n"
                  << j["common_check"]["status"].get<std::string>() << " — "
                  << j["common_check"]["rule"].get<std::string>() << "\n";
        if (j.contains("uncommon_check"))
            std::cout << j["uncommon_check"]["status"].get<std::string>()
                      << " — " << j["uncommon_check"]["rule"].get<std::string>()
                      << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graphon-commons: commonality verification toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // allow the global flags after a subcommand name

    std::string mode = "auto";
    double tol = 1e-9;
    (void)tol;
    unsigned seed = 0;
    bool as_json = false;
    app.add_option("--mode", mode, "numeric mode: rational|float|auto");
    app.add_option("--tol", tol, "margin tolerance");
    app.add_option("--seed", seed, "random seed");
    app.add_flag("--json", as_json, "emit JSON reports");

    std::string graph_file, graphon_file;
    auto* density = app.add_subcommand("density", "densities of H on a graphon");
    density->add_option("graph", graph_file)->required();
    density->add_option("graphon", graphon_file)->required();

    std::string verify_file, strategy = "grid", csv;
    double resolution = 1e-4;
    auto* verify = app.add_subcommand(
        "verify", "check a reduction problem or replay a certificate");
    verify->add_option("file", verify_file)->required();
    verify->add_option("--strategy", strategy, "grid|interval");
    verify->add_option("--resolution", resolution);
    verify->add_option("--csv", csv, "write certified intervals as CSV");

    std::string repro_id;
    auto* reproduce = app.add_subcommand("reproduce", "run reproduction targets");
    reproduce->add_flag("--all", "run the whole manifest (default)");
    reproduce->add_option("--id", repro_id, "single target id");

    std::string family = "three_block_zy";
    int turan_k = 3;
    long budget = 100000;
    auto* search = app.add_subcommand("search", "search a witness family");
    search->add_option("graph", graph_file)->required();
    search->add_option("--family", family);
    search->add_option("--turan-k", turan_k);
    search->add_option("--budget", budget);

    int ck = 1, cl = 0;
    auto* classify = app.add_subcommand("classify", "classify (k*K3) u (l*K2)");
    classify->add_option("--k", ck)->required();
    classify->add_option("--l", cl)->required();

    std::string tree_file;
    auto* tree = app.add_subcommand("tree", "analyze a K3-tree");
    tree->add_option("file", tree_file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help exits 0 through app.exit; anything else is an input error
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (app.got_subcommand(density))
            return cmd_density(graph_file, graphon_file, mode, as_json);
        if (app.got_subcommand(verify))
            return cmd_verify(verify_file, strategy, resolution, csv, as_json);
        if (app.got_subcommand(reproduce)) return cmd_reproduce(repro_id, as_json);
        if (app.got_subcommand(search))
            return cmd_search(graph_file, family, turan_k, budget, seed, as_json);
        if (app.got_subcommand(classify)) return cmd_classify(ck, cl, as_json);
        if (app.got_subcommand(tree)) return cmd_tree(tree_file, as_json);
    } catch (const gcm::budget_error& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
