// Acceptance suite: one criterion per section, one PASS/FAIL line each.
// Usage: acceptance <path-to-cli-binary> <scratch-dir>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "graphval/dataset_io.hpp"
#include "graphval/embedding.hpp"
#include "graphval/featural.hpp"
#include "graphval/matching.hpp"
#include "graphval/protocol.hpp"
#include "graphval/proxy.hpp"
#include "graphval/transport.hpp"
#include "graphval/valuation.hpp"
#include "graphval/wire.hpp"
#include "oracles.hpp"

using namespace graphval;
using nlohmann::json;

namespace {

std::string g_cli;
std::filesystem::path g_scratch;

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const auto out_path = g_scratch / "cli-stdout.txt";
    const std::string cmd = g_cli + " " + args + " > " + out_path.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    result.output = ss.str();
    return result;
}

double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double gaussian_draw(std::mt19937_64& rng) {
    const double u1 = std::max(unit_draw(rng), 1e-12);
    const double u2 = unit_draw(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

using CriterionFn = Outcome();

int g_failures = 0;

void run_criterion(int id, const std::string& name, CriterionFn* fn) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        outcome = fn();
    } catch (const std::exception& e) {
        outcome.pass = false;
        outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line << (outcome.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << name
         << "): " << outcome.detail << " [" << std::fixed << std::setprecision(1) << seconds
         << "s]";
    std::cout << line.str() << std::endl;
    if (!outcome.pass) ++g_failures;
}

// --- criterion 1: 1-D transport against the LP oracle ----------------------

Outcome transport_oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    int checked = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 600; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        const std::size_t m = 1 + rng() % 6;
        std::vector<double> a(n), b(m);
        const bool integral = trial % 3 == 0;
        for (auto& x : a) {
            x = integral ? static_cast<double>(rng() % 5) : unit_draw(rng) * 4.0;
        }
        for (auto& x : b) {
            x = integral ? static_cast<double>(rng() % 5) : unit_draw(rng) * 4.0;
        }
        const double fast = w1_1d(a, b);
        const double lp = oracles::w1_lp(a, b);
        worst = std::max(worst, std::abs(fast - lp));
        if (std::abs(fast - lp) > 1e-9) {
            return {false, "mismatch " + std::to_string(fast) + " vs LP " +
                               std::to_string(lp)};
        }
        ++checked;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds >= 10.0) {
        return {false, "runtime " + std::to_string(seconds) + "s exceeds 10s"};
    }
    return {true, std::to_string(checked) + " instances, max |diff| " +
                      std::to_string(worst)};
}

// --- criterion 2: assignment against brute force ----------------------------

Outcome assignment_oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(4048);
    int checked = 0;
    for (int trial = 0; trial < 240; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);  // up to 7
        Eigen::MatrixXd profit(n, n);
        const bool integral = trial % 4 == 0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                profit(i, j) = integral ? static_cast<double>(rng() % 4) : unit_draw(rng);
            }
        }
        const auto fast = solve_assignment(profit).mapping();
        const auto brute = oracles::best_assignment(profit);
        if (oracles::assignment_value(profit, fast) !=
            oracles::assignment_value(profit, brute)) {
            return {false, "objective mismatch on trial " + std::to_string(trial)};
        }
        if (fast != brute) {
            return {false, "tie-break mismatch on trial " + std::to_string(trial)};
        }
        ++checked;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds >= 10.0) {
        return {false, "runtime " + std::to_string(seconds) + "s exceeds 10s"};
    }
    return {true, std::to_string(checked) + " instances, exact objective equality"};
}

// --- criterion 3: transitivity bound ----------------------------------------

Outcome transitivity_inequality() {
    std::mt19937_64 rng(77);
    int checked = 0;
    double slack_min = 1e300;
    for (int trial = 0; trial < 1000; ++trial) {
        const Graph g1 = oracles::random_graph(3 + static_cast<int>(rng() % 18), 0.35, rng);
        const Graph g2 = oracles::random_graph(3 + static_cast<int>(rng() % 18), 0.35, rng);
        const Graph key = oracles::random_graph(3 + static_cast<int>(rng() % 18), 0.35, rng);
        const MatchResult m1 = spectral_match(key, g1);
        const MatchResult m2 = spectral_match(key, g2);
        const int n = std::max(m1.permutation.size(), m2.permutation.size());
        const double err = conformity_error(g1, g2, m1.permutation.extended(n),
                                            m2.permutation.extended(n));
        const double bound = transitivity_bound(m1, m2);
        slack_min = std::min(slack_min, bound - err);
        if (err > bound + 1e-9) {
            return {false, "violation at trial " + std::to_string(trial) + ": " +
                               std::to_string(err) + " > " + std::to_string(bound)};
        }
        ++checked;
    }
    return {true, std::to_string(checked) + " triples, min slack " +
                      std::to_string(slack_min)};
}

// --- criterion 4: isomorphism recovery --------------------------------------

Outcome isomorphism_recovery() {
    std::mt19937_64 rng(90210);
    SessionConfig config;
    config.alpha = 1.0;
    config.walk_steps = 8;
    config.eigenvector_count = 4;

    // The session's proxy must itself have a generic spectrum, or the two
    // parties' assignment tie-breaks can drift apart; condition the seed on
    // every size this criterion draws.
    for (std::uint64_t seed = 4242;; ++seed) {
        bool all_generic = true;
        for (int n = 6; n <= 12; ++n) {
            if (!oracles::has_generic_spectrum(generate_proxy(n, 0.5, seed))) {
                all_generic = false;
                break;
            }
        }
        if (all_generic) {
            config.seed = seed;
            break;
        }
    }

    int checked = 0;
    double worst_residual = 0.0, worst_gwd = 0.0, worst_s = 0.0;
    while (checked < 100) {
        const int n = 6 + static_cast<int>(rng() % 7);  // 6..12
        const Graph g = oracles::generic_graph(n, 0.5, rng);
        const Graph shuffled = g.relabeled(oracles::random_relabeling(g.node_count(), rng));

        const double residual = spectral_match(g, shuffled).residual;
        worst_residual = std::max(worst_residual, residual);
        if (residual > 1e-6) {
            return {false, "match residual " + std::to_string(residual) + " at size " +
                               std::to_string(n)};
        }

        const SessionOutcome outcome =
            run_session(GraphSet({g}), GraphSet({shuffled}), config);
        worst_gwd = std::max(worst_gwd, outcome.report.s.gwd);
        worst_s = std::max(worst_s, outcome.report.s.s);
        if (outcome.report.s.gwd > 1e-6 || outcome.report.s.s > 1e-6) {
            return {false, "set gwd " + std::to_string(outcome.report.s.gwd) + ", S " +
                               std::to_string(outcome.report.s.s)};
        }
        ++checked;
    }
    std::ostringstream detail;
    detail << checked << " graphs, worst residual " << worst_residual << ", worst gwd "
           << worst_gwd << ", worst |S-|a-1|| " << worst_s;
    return {true, detail.str()};
}

// --- criterion 5: featural bound ---------------------------------------------

Outcome featural_bound() {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 100000; ++trial) {
        const int r = 1 + static_cast<int>(rng() % 8);
        Eigen::VectorXd lam(r), hat(r);
        for (int i = 0; i < r; ++i) {
            lam[i] = rng() % 9 == 0 ? 0.0 : unit_draw(rng) * 10.0;
            hat[i] = rng() % 9 == 0 ? 0.0 : unit_draw(rng) * 10.0;
        }
        const FeaturalScores scores = diversity_relevance(lam, hat);
        if (!(scores.diversity >= 0.0 && scores.diversity <= 1.0 + 1e-12) ||
            !(scores.relevance >= 0.0 && scores.relevance <= 1.0 + 1e-12) ||
            scores.diversity + scores.relevance > 1.0 + 1e-9) {
            return {false, "violated at trial " + std::to_string(trial) + ": D=" +
                               std::to_string(scores.diversity) + " R=" +
                               std::to_string(scores.relevance)};
        }
    }
    return {true, "100000 spectra, zero violations"};
}

// --- criterion 6: featural trend ----------------------------------------------

GraphSet gaussian_class_set(const std::vector<int>& classes, int rows, double mean_scale,
                            double sigma, int feature_dim, std::mt19937_64& rng) {
    Eigen::MatrixXd feats(rows, feature_dim);
    for (int row = 0; row < rows; ++row) {
        const int cls = classes[static_cast<std::size_t>(row) % classes.size()];
        for (int col = 0; col < feature_dim; ++col) {
            const double mean = col == cls ? mean_scale : 0.0;
            feats(row, col) = mean + sigma * gaussian_draw(rng);
        }
    }
    std::vector<std::pair<int, int>> chain;
    for (int v = 1; v < rows; ++v) chain.emplace_back(v - 1, v);
    return GraphSet({Graph(rows, std::move(chain), std::move(feats))});
}

GraphSet gaussian_noise_set(int rows, double sigma, int feature_dim, std::mt19937_64& rng) {
    Eigen::MatrixXd feats(rows, feature_dim);
    for (Eigen::Index i = 0; i < feats.size(); ++i) {
        feats.data()[i] = sigma * gaussian_draw(rng);
    }
    std::vector<std::pair<int, int>> chain;
    for (int v = 1; v < rows; ++v) chain.emplace_back(v - 1, v);
    return GraphSet({Graph(rows, std::move(chain), std::move(feats))});
}

Outcome featural_trend() {
    const auto start = std::chrono::steady_clock::now();
    const int feature_dim = 10;
    const int rows = 200;
    const double mean_scale = 3.0, sigma = 0.5, noise_sigma = 10.0;
    const std::vector<std::vector<int>> seller_classes = {
        {0, 1, 2, 3, 4}, {1, 2, 3, 4, 5}, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9},
        {3, 4, 5, 6, 7, 8, 9}, {5, 6, 7, 8, 9}};

    int monotone_reps = 0;
    const int reps = 20;
    for (int rep = 0; rep < reps; ++rep) {
        std::mt19937_64 rng(9000 + static_cast<std::uint64_t>(rep));
        const GraphSet buyer =
            gaussian_class_set({0, 1, 2, 3, 4}, rows, mean_scale, sigma, feature_dim, rng);
        const FeatureSpectrum spectrum = buyer_spectrum(stack_and_center(buyer));

        std::vector<double> diversity, relevance;
        for (const auto& classes : seller_classes) {
            const GraphSet seller =
                gaussian_class_set(classes, rows, mean_scale, sigma, feature_dim, rng);
            const ProjectedVariances hat = seller_projected_variances(
                stack_and_center(seller), spectrum.eigenvectors);
            const FeaturalScores scores =
                diversity_relevance(spectrum.eigenvalues, hat.values);
            diversity.push_back(scores.diversity);
            relevance.push_back(scores.relevance);
        }

        bool monotone = true;
        for (std::size_t i = 0; i + 1 < diversity.size(); ++i) {
            if (!(diversity[i] < diversity[i + 1]) || !(relevance[i] > relevance[i + 1])) {
                monotone = false;
            }
        }
        if (monotone) ++monotone_reps;

        const GraphSet noise = gaussian_noise_set(rows, noise_sigma, feature_dim, rng);
        const ProjectedVariances noise_hat =
            seller_projected_variances(stack_and_center(noise), spectrum.eigenvectors);
        const FeaturalScores noise_scores =
            diversity_relevance(spectrum.eigenvalues, noise_hat.values);
        const double max_d = *std::max_element(diversity.begin(), diversity.end());
        const double min_r = *std::min_element(relevance.begin(), relevance.end());
        if (!(noise_scores.diversity > max_d) || !(noise_scores.relevance < min_r)) {
            return {false, "noise seller not extreme in rep " + std::to_string(rep) +
                               " (D " + std::to_string(noise_scores.diversity) + " vs " +
                               std::to_string(max_d) + ", R " +
                               std::to_string(noise_scores.relevance) + " vs " +
                               std::to_string(min_r) + ")"};
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (monotone_reps < 19) {
        return {false, "monotone in only " + std::to_string(monotone_reps) + "/20 reps"};
    }
    if (seconds >= 60.0) {
        return {false, "runtime " + std::to_string(seconds) + "s exceeds 60s"};
    }
    return {true, "monotone in " + std::to_string(monotone_reps) +
                      "/20 reps, noise seller extreme in all"};
}

// --- criterion 7: proxy vs direct rankings ------------------------------------

// Shuffled copies of one baseline subgraph: both routes provably see
// identical structure, so all distances vanish and the tied rank vectors
// coincide.
Outcome proxy_check_shuffled_copies() {
    std::mt19937_64 rng(314159);
    const Graph whole = oracles::random_graph(300, 0.12, rng);

    for (int candidates : {3, 5}) {
        const int part = 300 / (candidates + 1);
        std::vector<int> nodes(static_cast<std::size_t>(part));
        std::iota(nodes.begin(), nodes.end(), 0);
        Graph baseline = induced_subgraph(whole, nodes);
        if (!oracles::has_generic_spectrum(baseline)) {
            return {false, "fixture baseline is not generic; adjust seed"};
        }

        const int walk_steps = 8, eigenvector_count = 4;
        const Graph proxy = generate_proxy(baseline.node_count(), 0.5, 271828);
        if (!oracles::has_generic_spectrum(proxy)) {
            return {false, "fixture proxy is not generic; adjust seed"};
        }

        const MatchResult base_match = spectral_match(proxy, baseline);
        const Eigen::MatrixXd base_keyed =
            align_embedding(embed(baseline, walk_steps, eigenvector_count),
                            base_match.permutation, proxy.node_count())
                .transpose();

        std::vector<double> gwd_proxy, gwd_direct;
        for (int c = 0; c < candidates; ++c) {
            const Graph copy = baseline.relabeled(
                oracles::random_relabeling(baseline.node_count(), rng));
            const MatchResult copy_match = spectral_match(proxy, copy);
            const Eigen::MatrixXd copy_keyed =
                align_embedding(embed(copy, walk_steps, eigenvector_count),
                                copy_match.permutation, proxy.node_count())
                    .transpose();
            gwd_proxy.push_back(gwd_pair(base_keyed, copy_keyed));

            const MatchResult direct = spectral_match(baseline, copy);
            const Eigen::MatrixXd cand_direct =
                align_embedding(embed(copy, walk_steps, eigenvector_count),
                                direct.permutation, direct.permutation.size())
                    .transpose();
            const Eigen::MatrixXd base_direct =
                align_embedding(embed(baseline, walk_steps, eigenvector_count),
                                Permutation::identity(direct.permutation.size()),
                                direct.permutation.size())
                    .transpose();
            gwd_direct.push_back(gwd_pair(base_direct, cand_direct));
        }

        for (int c = 0; c < candidates; ++c) {
            if (gwd_proxy[static_cast<std::size_t>(c)] > 1e-6 ||
                gwd_direct[static_cast<std::size_t>(c)] > 1e-6) {
                return {false, "copy distance not zero: proxy " +
                                   std::to_string(gwd_proxy[static_cast<std::size_t>(c)]) +
                                   ", direct " +
                                   std::to_string(gwd_direct[static_cast<std::size_t>(c)])};
            }
        }
        const auto ranks_proxy = mean_ranks(gwd_proxy, false);
        const auto ranks_direct = mean_ranks(gwd_direct, false);
        if (ranks_proxy != ranks_direct || spearman(ranks_proxy, ranks_direct) != 1.0) {
            return {false, "tied rank vectors differ for " + std::to_string(candidates) +
                               " candidates"};
        }
    }
    return {true, "3- and 5-candidate shuffled copies: all distances <= 1e-6, Spearman 1.0"};
}

Outcome proxy_check_random_splits() {
    const auto start = std::chrono::steady_clock::now();

    // One synthetic 300-node graph, written once; the CLI does the splitting.
    std::mt19937_64 rng(1618);
    const Graph whole = oracles::random_graph(300, 0.12, rng);
    const auto edges_path = g_scratch / "pc.edges";
    write_edge_list(edges_path, whole);
    const auto manifest_path = g_scratch / "pc.manifest";
    {
        std::ofstream out(manifest_path);
        out << "{\"graphs\": [{\"edges\": \"pc.edges\", \"features\": null}]}";
    }

    std::ostringstream detail;
    for (int candidates : {3, 5}) {
        double total = 0.0;
        for (int seed = 0; seed < 10; ++seed) {
            const CliResult result = run_cli(
                "proxy-check " + manifest_path.string() + " --candidates " +
                std::to_string(candidates) + " --seed " + std::to_string(100 + seed) +
                " --k 8 --k-prime 4");
            if (result.exit_code != 0) {
                return {false, "proxy-check exited " + std::to_string(result.exit_code)};
            }
            total += json::parse(result.output)["spearman"].get<double>();
        }
        const double average = total / 10.0;
        detail << candidates << " candidates: mean Spearman " << average << "; ";
        if (average < 0.8) {
            return {false, detail.str() + "below 0.8"};
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds >= 120.0) {
        return {false, "runtime " + std::to_string(seconds) + "s exceeds 120s"};
    }
    return {true, detail.str() + "10 seeds each"};
}

Outcome proxy_vs_direct_ranks() {
    const Outcome copies = proxy_check_shuffled_copies();
    if (!copies.pass) return copies;
    const Outcome splits = proxy_check_random_splits();
    if (!splits.pass) return splits;
    return {true, copies.detail + " | " + splits.detail};
}

// --- criterion 8: blindness audit + tamper detection ---------------------------

GraphSet random_party(std::mt19937_64& rng, int graphs, int max_n, int feature_dim) {
    std::vector<Graph> members;
    for (int i = 0; i < graphs; ++i) {
        const int n = 3 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_n - 2));
        // Spanning fixtures survive the edge-list round trip intact.
        Graph g = oracles::random_spanning_graph(n, rng);
        if (feature_dim > 0) {
            Eigen::MatrixXd feats(n, feature_dim);
            for (Eigen::Index k = 0; k < feats.size(); ++k) {
                feats.data()[k] = unit_draw(rng) * 2.0 - 1.0;
            }
            g = g.with_features(feats);
        }
        members.push_back(std::move(g));
    }
    return GraphSet(std::move(members));
}

const std::map<std::string, std::set<std::string>> kPayloadSchemas = {
    {"SizeReport", {"max_nodes", "graph_count", "feature_dim"}},
    {"ProxyGraph", {"n", "edges"}},
    {"StructuralSummary", {"summary", "node_cap", "max_residual"}},
    {"BuyerEigenvectors", {"basis"}},
    {"BuyerEigenvalues", {"eigenvalues"}},
    {"SellerProjectedVariances", {"projected_variances"}},
    {"ValuationReport",
     {"s", "gwd", "alpha", "diversity", "relevance", "epsilon_hat_max", "config"}},
};

bool audit_blindness(const std::vector<Message>& log, std::string& why) {
    for (const Message& msg : log) {
        const json doc = message_to_json(msg);
        const std::string kind = doc["kind"].get<std::string>();
        std::set<std::string> keys;
        for (const auto& [key, value] : doc["payload"].items()) {
            (void)value;
            keys.insert(key);
        }
        const auto schema = kPayloadSchemas.find(kind);
        if (schema == kPayloadSchemas.end() || keys != schema->second) {
            why = "unexpected payload schema for " + kind;
            return false;
        }
        if (kind != "ProxyGraph" && (keys.count("edges") || keys.count("n"))) {
            why = "graph-shaped payload outside ProxyGraph";
            return false;
        }
        if (!is_allowed_route(msg.sender, msg.recipient, msg.kind)) {
            why = "illegal route in log";
            return false;
        }
    }
    return true;
}

// One JSON-level mutation of a single field; returns false if the trace has
// no such field (mutation skipped).
using Mutation = std::function<bool(std::vector<json>&)>;

Outcome blindness_and_tampering() {
    std::mt19937_64 rng(606);
    std::vector<std::filesystem::path> traces;

    // Property sessions: mixed featured and featureless.
    for (int s = 0; s < 10; ++s) {
        const bool featured = s % 2 == 0;
        const GraphSet buyer = random_party(rng, 2 + s % 3, 7, featured ? 3 : 0);
        const GraphSet seller = random_party(rng, 2 + (s + 1) % 3, 7, featured ? 3 : 0);
        SessionConfig config;
        config.seed = 7000 + static_cast<std::uint64_t>(s);
        const SessionOutcome outcome = run_session(buyer, seller, config);

        std::string why;
        if (!audit_blindness(outcome.log, why)) {
            return {false, "session " + std::to_string(s) + ": " + why};
        }
        const auto path = g_scratch / ("audit-" + std::to_string(s) + ".trace");
        write_trace(path, outcome.log);
        traces.push_back(path);

        const CliResult verify = run_cli("verify " + path.string());
        if (verify.exit_code != 0) {
            return {false, "untampered trace rejected: exit " +
                               std::to_string(verify.exit_code)};
        }
    }

    auto mutate_number = [](json& value, double bump) {
        value = value.get<double>() * 1.75 + bump;
    };
    std::vector<Mutation> mutations;
    auto add = [&mutations](Mutation m) { mutations.push_back(std::move(m)); };
    // Payload numerics the verifier recomputes from.
    add([&](std::vector<json>& t) {
        mutate_number(t[4]["payload"]["summary"][0][0], 0.37);
        return true;
    });
    add([&](std::vector<json>& t) {
        auto& rows = t[5]["payload"]["summary"];
        mutate_number(rows[rows.size() - 1][0], 0.21);
        return true;
    });
    add([&](std::vector<json>& t) {
        mutate_number(t[4]["payload"]["max_residual"], 1.0);
        return true;
    });
    add([&](std::vector<json>& t) {
        mutate_number(t[5]["payload"]["max_residual"], 0.5);
        return true;
    });
    add([&](std::vector<json>& t) {
        t[4]["payload"]["node_cap"] = t[4]["payload"]["node_cap"].get<int>() + 1;
        return true;
    });
    // Size reports cross-checked against summaries and the proxy.
    add([&](std::vector<json>& t) {
        t[0]["payload"]["graph_count"] = t[0]["payload"]["graph_count"].get<int>() + 1;
        return true;
    });
    add([&](std::vector<json>& t) {
        t[1]["payload"]["max_nodes"] = t[1]["payload"]["max_nodes"].get<int>() + 9;
        return true;
    });
    add([&](std::vector<json>& t) {
        if (t[0]["payload"]["feature_dim"].is_null()) return false;
        t[0]["payload"]["feature_dim"] = nullptr;
        return true;
    });
    add([&](std::vector<json>& t) {
        if (t[1]["payload"]["feature_dim"].is_null()) return false;
        t[1]["payload"]["feature_dim"] = t[1]["payload"]["feature_dim"].get<int>() + 1;
        return true;
    });
    // Proxy copies must stay identical.
    add([&](std::vector<json>& t) {
        t[2]["payload"]["n"] = t[2]["payload"]["n"].get<int>() + 1;
        return true;
    });
    add([&](std::vector<json>& t) {
        auto& edges = t[3]["payload"]["edges"];
        if (edges.empty()) return false;
        edges.erase(edges.begin());
        return true;
    });
    add([&](std::vector<json>& t) {
        auto& edges = t[2]["payload"]["edges"];
        if (edges.size() < 2) return false;
        edges[0][1] = edges[edges.size() - 1][1];
        return true;
    });
    // Featural payloads.
    add([&](std::vector<json>& t) {
        if (t.size() != 11) return false;
        mutate_number(t[6]["payload"]["basis"][0][0], 0.4);
        return true;
    });
    add([&](std::vector<json>& t) {
        if (t.size() != 11) return false;
        mutate_number(t[7]["payload"]["eigenvalues"][0], 0.9);
        return true;
    });
    add([&](std::vector<json>& t) {
        if (t.size() != 11) return false;
        auto& lam = t[7]["payload"]["eigenvalues"];
        lam[lam.size() - 1] = lam[0].get<double>() + 1.0;  // breaks descending order
        return true;
    });
    add([&](std::vector<json>& t) {
        if (t.size() != 11) return false;
        mutate_number(t[8]["payload"]["projected_variances"][0], 0.8);
        return true;
    });
    add([&](std::vector<json>& t) {
        if (t.size() != 11) return false;
        t[8]["payload"]["projected_variances"][0] = -0.25;
        return true;
    });
    // Report fields.
    add([&](std::vector<json>& t) {
        mutate_number(t[t.size() - 2]["payload"]["s"], 0.11);
        return true;
    });
    add([&](std::vector<json>& t) {
        mutate_number(t[t.size() - 1]["payload"]["gwd"], 0.13);
        return true;
    });
    add([&](std::vector<json>& t) {
        auto& alpha = t[t.size() - 2]["payload"]["alpha"];
        alpha = alpha.get<double>() + 0.31;
        return true;
    });
    add([&](std::vector<json>& t) {
        auto& alpha = t[t.size() - 1]["payload"]["config"]["alpha"];
        alpha = alpha.get<double>() + 0.27;
        return true;
    });
    add([&](std::vector<json>& t) {
        auto& d = t[t.size() - 2]["payload"]["diversity"];
        if (d.is_null()) return false;
        mutate_number(d, 0.05);
        return true;
    });
    add([&](std::vector<json>& t) {
        auto& r = t[t.size() - 1]["payload"]["relevance"];
        if (r.is_null()) return false;
        mutate_number(r, 0.07);
        return true;
    });
    add([&](std::vector<json>& t) {
        mutate_number(t[t.size() - 2]["payload"]["epsilon_hat_max"], 0.19);
        return true;
    });
    // Envelope fields.
    add([&](std::vector<json>& t) {
        t[0]["from"] = "seller";
        return true;
    });
    add([&](std::vector<json>& t) {
        t[4]["to"] = "buyer";
        return true;
    });
    add([&](std::vector<json>& t) {
        t[5]["kind"] = "BuyerEigenvalues";
        return true;
    });
    add([&](std::vector<json>& t) {
        t[3]["seq"] = 7;
        return true;
    });
    add([&](std::vector<json>& t) {
        t[5]["session_id"] = "sess-evil";
        return true;
    });
    add([&](std::vector<json>& t) {
        t[4]["payload"]["extra"] = 1;
        return true;
    });

    int applied = 0;
    std::size_t trace_index = 0;
    std::size_t mutation_index = 0;
    int attempts = 0;
    while (applied < 50 && attempts < 500) {
        ++attempts;
        const auto& base = traces[trace_index];
        trace_index = (trace_index + 1) % traces.size();
        const Mutation& mutation = mutations[mutation_index];
        mutation_index = (mutation_index + 1) % mutations.size();

        std::vector<json> lines;
        {
            std::ifstream in(base);
            std::string line;
            while (std::getline(in, line)) {
                if (!line.empty()) lines.push_back(json::parse(line));
            }
        }
        if (!mutation(lines)) continue;

        const auto mutant_path = g_scratch / ("mutant-" + std::to_string(applied) + ".trace");
        {
            std::ofstream out(mutant_path);
            for (const auto& doc : lines) out << doc.dump() << "\n";
        }
        const CliResult verify = run_cli("verify " + mutant_path.string());
        if (verify.exit_code != 3) {
            return {false, "mutation " + std::to_string(applied) + " (" +
                               std::to_string(mutation_index) + ") not caught: exit " +
                               std::to_string(verify.exit_code) + " on " +
                               mutant_path.string()};
        }
        ++applied;
    }
    if (applied < 50) {
        return {false, "only " + std::to_string(applied) + " mutations applied"};
    }
    return {true, "10 sessions audited, 10 traces verified clean, 50/50 tampers caught"};
}

// --- criterion 9: determinism ---------------------------------------------------

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome byte_determinism() {
    std::mt19937_64 rng(2718);
    const GraphSet buyer = random_party(rng, 3, 8, 2);
    const GraphSet seller = random_party(rng, 2, 8, 2);

    // Materialize both datasets as manifests for the CLI.
    auto write_party = [&](const GraphSet& party, const std::string& name) {
        json manifest{{"graphs", json::array()}};
        for (std::size_t i = 0; i < party.size(); ++i) {
            const Graph& g = party.graphs()[i];
            const std::string edges_name = name + "-" + std::to_string(i) + ".edges";
            write_edge_list(g_scratch / edges_name, g);
            std::string feats_name;
            if (g.features()) {
                feats_name = name + "-" + std::to_string(i) + ".csv";
                std::ofstream csv(g_scratch / feats_name);
                const auto& feats = *g.features();
                csv.precision(17);
                for (Eigen::Index row = 0; row < feats.rows(); ++row) {
                    for (Eigen::Index col = 0; col < feats.cols(); ++col) {
                        csv << (col ? "," : "") << feats(row, col);
                    }
                    csv << "\n";
                }
            }
            manifest["graphs"].push_back(
                {{"edges", edges_name},
                 {"features", feats_name.empty() ? json(nullptr) : json(feats_name)}});
        }
        const auto path = g_scratch / (name + ".manifest");
        std::ofstream out(path);
        out << manifest.dump();
        return path;
    };
    const auto buyer_path = write_party(buyer, "det-buyer");
    const auto seller_path = write_party(seller, "det-seller");

    std::string reports[2], traces[2];
    for (int round = 0; round < 2; ++round) {
        const auto report_path = g_scratch / ("det-report-" + std::to_string(round) + ".json");
        const auto trace_path = g_scratch / ("det-" + std::to_string(round) + ".trace");
        const CliResult result = run_cli("value " + buyer_path.string() + " " +
                                         seller_path.string() + " --seed 99 --trace " +
                                         trace_path.string() + " --out " +
                                         report_path.string());
        if (result.exit_code != 0) {
            return {false, "value exited " + std::to_string(result.exit_code)};
        }
        reports[round] = slurp(report_path);
        traces[round] = slurp(trace_path);
    }
    if (reports[0] != reports[1] || reports[0].empty()) {
        return {false, "report files differ between runs"};
    }
    if (traces[0] != traces[1] || traces[0].empty()) {
        return {false, "trace files differ between runs"};
    }
    return {true, "report and trace byte-identical across two runs"};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <cli-binary> <scratch-dir>\n";
        return 2;
    }
    g_cli = argv[1];
    g_scratch = argv[2];
    std::filesystem::create_directories(g_scratch);

    run_criterion(1, "transport oracle equivalence", transport_oracle_equivalence);
    run_criterion(2, "assignment oracle equivalence", assignment_oracle_equivalence);
    run_criterion(3, "transitivity inequality", transitivity_inequality);
    run_criterion(4, "isomorphism recovery", isomorphism_recovery);
    run_criterion(5, "featural bound", featural_bound);
    run_criterion(6, "featural trend", featural_trend);
    run_criterion(7, "proxy vs direct ranks", proxy_vs_direct_ranks);
    run_criterion(8, "blindness audit and tamper detection", blindness_and_tampering);
    run_criterion(9, "byte determinism", byte_determinism);

    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
