#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphval/dataset_io.hpp"
#include "graphval/embedding.hpp"
#include "graphval/errors.hpp"
#include "graphval/parallel.hpp"
#include "graphval/protocol.hpp"
#include "graphval/proxy.hpp"
#include "graphval/valuation.hpp"
#include "graphval/wire.hpp"

using namespace graphval;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;
constexpr int kExitVerification = 3;

struct CliOptions {
    SessionConfig session;
    std::string prefer = "d=high,r=high,s=low";
    std::string format = "json";
    std::string out_path;
    std::string trace_path;
    unsigned threads = 0;
    int proxy_nodes = 0;  // 0 = derive from data
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--alpha", opt.session.alpha, "Disparity preference in [0,1]")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--k", opt.session.walk_steps, "Random-walk embedding steps")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--k-prime", opt.session.eigenvector_count,
                    "Laplacian eigenvector embedding rows")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", opt.session.seed, "Proxy RNG seed")->capture_default_str();
    cmd->add_option("--proxy-nodes", opt.proxy_nodes,
                    "Proxy node count (default: max over datasets)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--proxy-p", opt.session.proxy_edge_probability,
                    "Proxy edge probability in (0,1)")
        ->capture_default_str();
    cmd->add_option("--prefer", opt.prefer,
                    "Ranking directions, e.g. d=high,r=high,s=low")
        ->capture_default_str();
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", opt.out_path, "Output path (default: stdout)");
    cmd->add_option("--threads", opt.threads, "Worker thread cap (0 = hardware)");
}

SessionConfig finalize_session(const CliOptions& opt) {
    SessionConfig config = opt.session;
    if (!(config.proxy_edge_probability > 0.0 && config.proxy_edge_probability < 1.0)) {
        throw ValidationError("--proxy-p must lie strictly inside (0, 1)");
    }
    if (opt.proxy_nodes > 0) config.proxy_nodes = opt.proxy_nodes;
    if (opt.threads > 0) set_max_threads(opt.threads);
    return config;
}

MetricPreference parse_preference(const std::string& text) {
    MetricPreference pref;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("--prefer entries look like d=high: '" + item + "'");
        }
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        bool high;
        if (value == "high") {
            high = true;
        } else if (value == "low") {
            high = false;
        } else {
            throw ValidationError("--prefer direction must be high or low: '" + item + "'");
        }
        if (key == "d") {
            pref.diversity_high_better = high;
        } else if (key == "r") {
            pref.relevance_high_better = high;
        } else if (key == "s") {
            pref.disparity_low_better = !high;
        } else {
            throw ValidationError("--prefer keys are d, r, s: '" + item + "'");
        }
    }
    return pref;
}

void emit(const CliOptions& opt, const std::string& text) {
    if (opt.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out_path);
    if (!out) {
        throw IoError("cannot write " + opt.out_path);
    }
    out << text;
    if (!out) {
        throw IoError("write failed: " + opt.out_path);
    }
}

json cli_report_json(const ValuationReport& report) {
    json out{{"S", report.s.s},
             {"gwd", report.s.gwd},
             {"epsilon_hat_max", report.epsilon_hat_max}};
    out["D"] = report.featural ? json(report.featural->diversity) : json(nullptr);
    out["R"] = report.featural ? json(report.featural->relevance) : json(nullptr);
    out["config"] = report_to_json(report)["config"];
    return out;
}

std::string dataset_label(const std::string& path, std::vector<std::string>& used) {
    std::string stem = std::filesystem::path(path).stem().string();
    if (stem.empty()) stem = path;
    std::string label = stem;
    int suffix = 2;
    while (std::find(used.begin(), used.end(), label) != used.end()) {
        label = stem + "#" + std::to_string(suffix++);
    }
    used.push_back(label);
    return label;
}

int cmd_value(const CliOptions& opt, const std::string& buyer_path,
              const std::string& seller_path) {
    const GraphSet buyer = load_manifest(buyer_path);
    const GraphSet seller = load_manifest(seller_path);
    const SessionOutcome outcome = run_session(buyer, seller, finalize_session(opt));
    if (!opt.trace_path.empty()) {
        write_trace(opt.trace_path, outcome.log);
    }
    emit(opt, cli_report_json(outcome.report).dump(2) + "\n");
    return kExitOk;
}

int cmd_rank(const CliOptions& opt, const std::string& buyer_path,
             const std::vector<std::string>& seller_paths) {
    if (seller_paths.size() < 2) {
        throw ValidationError("rank needs at least two sellers");
    }
    const MetricPreference pref = parse_preference(opt.prefer);
    const SessionConfig config = finalize_session(opt);
    const GraphSet buyer = load_manifest(buyer_path);
    std::vector<GraphSet> sellers;
    std::vector<std::string> labels;
    for (const auto& path : seller_paths) {
        sellers.push_back(load_manifest(path));
        dataset_label(path, labels);
    }
    const auto reports = score_candidates(buyer, sellers, config);

    std::vector<std::pair<std::string, ValuationReport>> named;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        named.emplace_back(labels[i], reports[i]);
    }
    const SellerRanking ranking = rank_sellers(named, pref);
    const bool featural = !ranking.rank_diversity.empty();

    if (opt.format == "csv") {
        std::ostringstream csv;
        csv << "seller,S,D,R,rank_S,rank_D,rank_R,average_rank\n";
        for (std::size_t i = 0; i < named.size(); ++i) {
            const auto& report = named[i].second;
            csv << labels[i] << "," << report.s.s << ",";
            if (featural) {
                csv << report.featural->diversity << "," << report.featural->relevance;
            } else {
                csv << ",";
            }
            csv << "," << ranking.rank_disparity[i] << ",";
            if (featural) {
                csv << ranking.rank_diversity[i] << "," << ranking.rank_relevance[i];
            } else {
                csv << ",";
            }
            csv << "," << ranking.average_rank[i] << "\n";
        }
        csv << "# order";
        for (const auto& id : ranking.final_order) csv << "," << id;
        csv << "\n";
        emit(opt, csv.str());
    } else {
        json rows = json::array();
        for (std::size_t i = 0; i < named.size(); ++i) {
            const auto& report = named[i].second;
            json row{{"seller", labels[i]},
                     {"S", report.s.s},
                     {"rank_S", ranking.rank_disparity[i]},
                     {"average_rank", ranking.average_rank[i]}};
            row["D"] = featural ? json(report.featural->diversity) : json(nullptr);
            row["R"] = featural ? json(report.featural->relevance) : json(nullptr);
            row["rank_D"] = featural ? json(ranking.rank_diversity[i]) : json(nullptr);
            row["rank_R"] = featural ? json(ranking.rank_relevance[i]) : json(nullptr);
            rows.push_back(std::move(row));
        }
        emit(opt, json{{"sellers", rows}, {"order", ranking.final_order}}.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_matrix(const CliOptions& opt, const std::vector<std::string>& paths) {
    if (paths.size() < 2) {
        throw ValidationError("matrix needs at least two datasets");
    }
    const SessionConfig config = finalize_session(opt);
    std::vector<GraphSet> sets;
    std::vector<std::string> labels;
    for (const auto& path : paths) {
        sets.push_back(load_manifest(path));
        dataset_label(path, labels);
    }
    int proxy_n = 0;
    for (const auto& set : sets) proxy_n = std::max(proxy_n, set.max_node_count());
    if (config.proxy_nodes) proxy_n = *config.proxy_nodes;
    const Graph proxy = generate_proxy(proxy_n, config.proxy_edge_probability, config.seed);

    std::vector<PooledSummary> summaries;
    for (const auto& set : sets) {
        summaries.push_back(
            party_structural_summary(set, proxy, config.walk_steps, config.eigenvector_count)
                .summary);
    }

    const std::size_t m = sets.size();
    Eigen::MatrixXd gwd = Eigen::MatrixXd::Zero(m, m);
    Eigen::MatrixXd disparity = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            const double d = gwd_sets(summaries[i], summaries[j]);
            gwd(i, j) = gwd(j, i) = d;
            const double s = structural_disparity(d, config.alpha).s;
            disparity(i, j) = disparity(j, i) = s;
        }
    }

    if (opt.format == "csv") {
        std::ostringstream csv;
        auto table = [&](const char* name, const Eigen::MatrixXd& mat) {
            csv << "# " << name << "\ndataset";
            for (const auto& label : labels) csv << "," << label;
            csv << "\n";
            for (std::size_t i = 0; i < m; ++i) {
                csv << labels[i];
                for (std::size_t j = 0; j < m; ++j) csv << "," << mat(i, j);
                csv << "\n";
            }
        };
        table("gwd", gwd);
        table("s", disparity);
        emit(opt, csv.str());
    } else {
        auto to_rows = [&](const Eigen::MatrixXd& mat) {
            json rows = json::array();
            for (std::size_t i = 0; i < m; ++i) {
                json row = json::array();
                for (std::size_t j = 0; j < m; ++j) row.push_back(mat(i, j));
                rows.push_back(std::move(row));
            }
            return rows;
        };
        emit(opt, json{{"names", labels}, {"gwd", to_rows(gwd)}, {"s", to_rows(disparity)}}
                      .dump(2) +
                  "\n");
    }
    return kExitOk;
}

// Shuffle the node ids and cut the order at random points: parts become
// induced subgraphs of varying size.
std::vector<Graph> split_into_shuffled_subgraphs(const Graph& g, int parts,
                                                 std::uint64_t seed) {
    if (parts < 2 || g.node_count() < 2 * parts) {
        throw ValidationError("graph too small to split into " + std::to_string(parts) +
                              " parts");
    }
    std::mt19937_64 rng(seed);
    std::vector<int> order(static_cast<std::size_t>(g.node_count()));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    const int min_size = std::max(2, g.node_count() / (4 * parts));
    std::vector<int> sizes(static_cast<std::size_t>(parts), min_size);
    int remaining = g.node_count() - min_size * parts;
    for (int i = 0; remaining > 0; ++i) {
        const int grant = static_cast<int>(rng() % static_cast<std::uint64_t>(remaining)) + 1;
        sizes[static_cast<std::size_t>(i % parts)] += grant;
        remaining -= grant;
    }

    std::vector<Graph> out;
    int at = 0;
    for (int part = 0; part < parts; ++part) {
        std::vector<int> nodes(order.begin() + at, order.begin() + at + sizes[part]);
        at += sizes[part];
        out.push_back(induced_subgraph(g, nodes));
    }
    return out;
}

// Key-frame embedding of one graph: matched against the key, gathered into
// key slots, columns indexed by node slot.
Eigen::MatrixXd key_frame_embedding(const Graph& g, const Graph& key, int walk_steps,
                                    int eigenvector_count, int cap) {
    const MatchResult match = spectral_match(key, g);
    return align_embedding(embed(g, walk_steps, eigenvector_count), match.permutation, cap)
        .transpose();
}

int cmd_proxy_check(const CliOptions& opt, const std::string& manifest_path,
                    int candidates) {
    const SessionConfig config = finalize_session(opt);
    const GraphSet dataset = load_manifest(manifest_path);
    if (dataset.size() != 1) {
        throw ValidationError("proxy-check expects a manifest with a single large graph");
    }
    const Graph& whole = dataset.graphs()[0];
    const std::vector<Graph> parts =
        split_into_shuffled_subgraphs(whole, candidates + 1, config.seed);
    const Graph& baseline = parts[0];

    int cap = 0;
    for (const auto& part : parts) cap = std::max(cap, part.node_count());
    const int proxy_n = config.proxy_nodes ? *config.proxy_nodes : cap;
    const Graph proxy = generate_proxy(proxy_n, config.proxy_edge_probability, config.seed);
    cap = std::max(cap, proxy_n);

    // Proxy route: everything lands in the key frame once.
    const Eigen::MatrixXd base_keyed =
        key_frame_embedding(baseline, proxy, config.walk_steps, config.eigenvector_count, cap);
    std::vector<double> gwd_proxy, gwd_direct;
    for (int c = 1; c <= candidates; ++c) {
        const Graph& cand = parts[static_cast<std::size_t>(c)];
        const Eigen::MatrixXd cand_keyed = key_frame_embedding(
            cand, proxy, config.walk_steps, config.eigenvector_count, cap);
        gwd_proxy.push_back(gwd_pair(base_keyed, cand_keyed));

        // Direct route: match the candidate straight onto the baseline.
        const MatchResult direct = spectral_match(baseline, cand);
        const int pair_n = direct.permutation.size();
        Eigen::MatrixXd base_direct =
            align_embedding(embed(baseline, config.walk_steps, config.eigenvector_count),
                            Permutation::identity(pair_n), pair_n)
                .transpose();
        Eigen::MatrixXd cand_direct =
            align_embedding(embed(cand, config.walk_steps, config.eigenvector_count),
                            direct.permutation, pair_n)
                .transpose();
        gwd_direct.push_back(gwd_pair(base_direct, cand_direct));
    }

    // Proximity ranking: ascending distance.
    const std::vector<double> ranks_proxy = mean_ranks(gwd_proxy, false);
    const std::vector<double> ranks_direct = mean_ranks(gwd_direct, false);
    const double rho = spearman(ranks_proxy, ranks_direct);

    if (opt.format == "csv") {
        std::ostringstream csv;
        csv << "candidate,gwd_proxy,gwd_direct,rank_proxy,rank_direct\n";
        for (int c = 0; c < candidates; ++c) {
            csv << (c + 1) << "," << gwd_proxy[c] << "," << gwd_direct[c] << ","
                << ranks_proxy[c] << "," << ranks_direct[c] << "\n";
        }
        csv << "# spearman," << rho << "\n";
        emit(opt, csv.str());
    } else {
        emit(opt, json{{"gwd_proxy", gwd_proxy},
                       {"gwd_direct", gwd_direct},
                       {"ranks_proxy", ranks_proxy},
                       {"ranks_direct", ranks_direct},
                       {"spearman", rho}}
                      .dump(2) +
                  "\n");
    }
    return kExitOk;
}

int cmd_verify(const std::string& trace_path) {
    const VerifyOutcome outcome = verify_trace_file(trace_path);
    if (outcome.ok) {
        std::cout << "trace verified\n";
        return kExitOk;
    }
    for (const auto& error : outcome.errors) {
        std::cerr << "verify: " << error << "\n";
    }
    return kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Blind three-party valuation of graph datasets"};
    app.require_subcommand(1);

    CliOptions opt;
    std::string buyer_path, seller_path, manifest_path, trace_path;
    std::vector<std::string> seller_paths, dataset_paths;
    int candidates = 3;

    auto* value = app.add_subcommand("value", "Score one seller dataset for a buyer");
    value->add_option("buyer", buyer_path, "Buyer manifest")->required();
    value->add_option("seller", seller_path, "Seller manifest")->required();
    value->add_option("--trace", opt.trace_path, "Write the message log as NDJSON");
    add_common_options(value, opt);

    auto* rank = app.add_subcommand("rank", "Rank several sellers for a buyer");
    rank->add_option("buyer", buyer_path, "Buyer manifest")->required();
    rank->add_option("sellers", seller_paths, "Seller manifests")->required();
    add_common_options(rank, opt);

    auto* matrix = app.add_subcommand("matrix", "Pairwise distances between datasets");
    matrix->add_option("datasets", dataset_paths, "Dataset manifests")->required();
    add_common_options(matrix, opt);

    auto* proxy_check =
        app.add_subcommand("proxy-check", "Compare proxy-based and direct rankings");
    proxy_check->add_option("dataset", manifest_path, "Manifest with one large graph")
        ->required();
    proxy_check->add_option("--candidates", candidates, "Number of candidate subgraphs")
        ->check(CLI::Range(2, 64))
        ->capture_default_str();
    add_common_options(proxy_check, opt);

    auto* verify = app.add_subcommand("verify", "Re-derive a trace's scores and audit it");
    verify->add_option("trace", trace_path, "NDJSON trace file")->required();
    add_common_options(verify, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    }

    try {
        if (value->parsed()) return cmd_value(opt, buyer_path, seller_path);
        if (rank->parsed()) return cmd_rank(opt, buyer_path, seller_paths);
        if (matrix->parsed()) return cmd_matrix(opt, dataset_paths);
        if (proxy_check->parsed()) return cmd_proxy_check(opt, manifest_path, candidates);
        if (verify->parsed()) return cmd_verify(trace_path);
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
