#include "graphval/wire.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "graphval/errors.hpp"

namespace graphval {

namespace {

using nlohmann::json;

void expect_keys(const json& obj, const std::set<std::string>& keys,
                 const std::string& where) {
    if (!obj.is_object()) {
        throw ValidationError(where + ": expected a JSON object");
    }
    std::set<std::string> seen;
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        seen.insert(key);
    }
    if (seen != keys) {
        throw ValidationError(where + ": unexpected key set");
    }
}

double get_finite(const json& j, const std::string& where) {
    if (!j.is_number()) {
        throw ValidationError(where + ": expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw ValidationError(where + ": non-finite number");
    }
    return v;
}

int get_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) {
        throw ValidationError(where + ": expected an integer");
    }
    return j.get<int>();
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty() || !j.front().is_array() || j.front().empty()) {
        throw ValidationError(where + ": expected a non-empty nested array");
    }
    const std::size_t cols = j.front().size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array() || j[i].size() != cols) {
            throw ValidationError(where + ": ragged matrix rows");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
                get_finite(j[i][c], where);
        }
    }
    return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        arr.push_back(v[i]);
    }
    return arr;
}

Eigen::VectorXd vector_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) {
        throw ValidationError(where + ": expected a non-empty array");
    }
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = get_finite(j[i], where);
    }
    return v;
}

json config_to_json(const SessionConfig& c) {
    json out{{"alpha", c.alpha},
             {"k", c.walk_steps},
             {"k_prime", c.eigenvector_count},
             {"seed", c.seed},
             {"proxy_p", c.proxy_edge_probability}};
    out["proxy_nodes"] = c.proxy_nodes ? json(*c.proxy_nodes) : json(nullptr);
    return out;
}

SessionConfig config_from_json(const json& j) {
    expect_keys(j, {"alpha", "k", "k_prime", "seed", "proxy_p", "proxy_nodes"}, "config");
    SessionConfig c;
    c.alpha = get_finite(j["alpha"], "config.alpha");
    c.walk_steps = get_int(j["k"], "config.k");
    c.eigenvector_count = get_int(j["k_prime"], "config.k_prime");
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
        throw ValidationError("config.seed: expected an integer");
    }
    c.seed = j["seed"].get<std::uint64_t>();
    c.proxy_edge_probability = get_finite(j["proxy_p"], "config.proxy_p");
    if (!j["proxy_nodes"].is_null()) {
        c.proxy_nodes = get_int(j["proxy_nodes"], "config.proxy_nodes");
    }
    return c;
}

json payload_to_json(const Message& msg) {
    switch (msg.kind) {
        case MessageKind::SizeReport: {
            const auto& p = std::get<SizeReportPayload>(msg.payload);
            json out{{"max_nodes", p.max_nodes}, {"graph_count", p.graph_count}};
            out["feature_dim"] = p.feature_dim ? json(*p.feature_dim) : json(nullptr);
            return out;
        }
        case MessageKind::ProxyGraph: {
            const auto& p = std::get<ProxyGraphPayload>(msg.payload);
            json edges = json::array();
            for (auto [u, v] : p.graph.edges()) {
                edges.push_back(json::array({u, v}));
            }
            return json{{"n", p.graph.node_count()}, {"edges", std::move(edges)}};
        }
        case MessageKind::StructuralSummary: {
            const auto& p = std::get<StructuralSummaryPayload>(msg.payload);
            return json{{"summary", matrix_to_json(p.summary.data)},
                        {"node_cap", p.summary.node_cap},
                        {"max_residual", p.max_residual}};
        }
        case MessageKind::BuyerEigenvectors: {
            const auto& p = std::get<BuyerEigenvectorsPayload>(msg.payload);
            return json{{"basis", matrix_to_json(p.basis)}};
        }
        case MessageKind::BuyerEigenvalues: {
            const auto& p = std::get<BuyerEigenvaluesPayload>(msg.payload);
            return json{{"eigenvalues", vector_to_json(p.eigenvalues)}};
        }
        case MessageKind::SellerProjectedVariances: {
            const auto& p = std::get<SellerProjectedVariancesPayload>(msg.payload);
            return json{{"projected_variances", vector_to_json(p.values)}};
        }
        case MessageKind::ValuationReport: {
            const auto& p = std::get<ReportPayload>(msg.payload);
            return report_to_json(p.report);
        }
    }
    throw ValidationError("unknown message kind");
}

MessagePayload payload_from_json(MessageKind kind, const json& j) {
    const std::string where = "payload(" + to_string(kind) + ")";
    switch (kind) {
        case MessageKind::SizeReport: {
            expect_keys(j, {"max_nodes", "graph_count", "feature_dim"}, where);
            SizeReportPayload p;
            p.max_nodes = get_int(j["max_nodes"], where);
            p.graph_count = get_int(j["graph_count"], where);
            if (!j["feature_dim"].is_null()) {
                p.feature_dim = get_int(j["feature_dim"], where);
            }
            return p;
        }
        case MessageKind::ProxyGraph: {
            expect_keys(j, {"n", "edges"}, where);
            const int n = get_int(j["n"], where);
            if (!j["edges"].is_array()) {
                throw ValidationError(where + ": edges must be an array");
            }
            std::vector<std::pair<int, int>> edges;
            for (const auto& e : j["edges"]) {
                if (!e.is_array() || e.size() != 2) {
                    throw ValidationError(where + ": each edge must be a pair");
                }
                edges.emplace_back(get_int(e[0], where), get_int(e[1], where));
            }
            return ProxyGraphPayload{Graph(n, std::move(edges))};
        }
        case MessageKind::StructuralSummary: {
            expect_keys(j, {"summary", "node_cap", "max_residual"}, where);
            StructuralSummaryPayload p{
                PooledSummary{matrix_from_json(j["summary"], where),
                              get_int(j["node_cap"], where)},
                get_finite(j["max_residual"], where)};
            return p;
        }
        case MessageKind::BuyerEigenvectors: {
            expect_keys(j, {"basis"}, where);
            return BuyerEigenvectorsPayload{matrix_from_json(j["basis"], where)};
        }
        case MessageKind::BuyerEigenvalues: {
            expect_keys(j, {"eigenvalues"}, where);
            return BuyerEigenvaluesPayload{vector_from_json(j["eigenvalues"], where)};
        }
        case MessageKind::SellerProjectedVariances: {
            expect_keys(j, {"projected_variances"}, where);
            return SellerProjectedVariancesPayload{
                vector_from_json(j["projected_variances"], where)};
        }
        case MessageKind::ValuationReport: {
            expect_keys(j,
                        {"s", "gwd", "alpha", "diversity", "relevance", "epsilon_hat_max",
                         "config"},
                        where);
            ValuationReport report;
            report.config = config_from_json(j["config"]);
            const double gwd = get_finite(j["gwd"], where);
            report.s = DisparityScore{gwd, get_finite(j["s"], where),
                                      get_finite(j["alpha"], where)};
            if (j["diversity"].is_null() != j["relevance"].is_null()) {
                throw ValidationError(where + ": diversity/relevance must be null together");
            }
            if (!j["diversity"].is_null()) {
                report.featural = FeaturalScores{get_finite(j["diversity"], where),
                                                 get_finite(j["relevance"], where)};
            }
            report.epsilon_hat_max = get_finite(j["epsilon_hat_max"], where);
            return ReportPayload{std::move(report)};
        }
    }
    throw ValidationError("unknown message kind");
}

}  // namespace

json report_to_json(const ValuationReport& report) {
    json out{{"s", report.s.s},
             {"gwd", report.s.gwd},
             {"alpha", report.s.alpha},
             {"epsilon_hat_max", report.epsilon_hat_max},
             {"config", config_to_json(report.config)}};
    out["diversity"] = report.featural ? json(report.featural->diversity) : json(nullptr);
    out["relevance"] = report.featural ? json(report.featural->relevance) : json(nullptr);
    return out;
}

json message_to_json(const Message& msg) {
    return json{{"session_id", msg.session_id}, {"seq", msg.sequence},
                {"from", to_string(msg.sender)}, {"to", to_string(msg.recipient)},
                {"kind", to_string(msg.kind)},   {"payload", payload_to_json(msg)}};
}

Message message_from_json(const json& doc) {
    expect_keys(doc, {"session_id", "seq", "from", "to", "kind", "payload"}, "message");
    if (!doc["session_id"].is_string() || !doc["kind"].is_string() ||
        !doc["from"].is_string() || !doc["to"].is_string()) {
        throw ValidationError("message: string field has wrong type");
    }
    Message msg{doc["session_id"].get<std::string>(),
                get_int(doc["seq"], "message.seq"),
                party_from_string(doc["from"].get<std::string>()),
                party_from_string(doc["to"].get<std::string>()),
                kind_from_string(doc["kind"].get<std::string>()),
                SizeReportPayload{}};
    msg.payload = payload_from_json(msg.kind, doc["payload"]);
    if (!is_allowed_route(msg.sender, msg.recipient, msg.kind)) {
        throw ValidationError("message: illegal (from, to, kind) route");
    }
    return msg;
}

void write_trace(const std::filesystem::path& path, const std::vector<Message>& log) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    for (const auto& msg : log) {
        out << message_to_json(msg).dump() << "\n";
    }
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

std::vector<Message> read_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<Message> log;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json doc;
        try {
            doc = json::parse(line);
        } catch (const json::exception& e) {
            throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                                  ": invalid JSON: " + e.what());
        }
        log.push_back(message_from_json(doc));
    }
    return log;
}

namespace {

bool near(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

}  // namespace

VerifyOutcome verify_trace(const std::vector<Message>& log) {
    VerifyOutcome out;
    auto fail = [&out](const std::string& why) { out.errors.push_back(why); };

    if (log.empty()) {
        fail("empty trace");
        return out;
    }
    for (std::size_t i = 0; i < log.size(); ++i) {
        const Message& m = log[i];
        if (m.session_id != log.front().session_id) {
            fail("message " + std::to_string(i) + ": session id differs");
        }
        if (m.sequence != static_cast<int>(i)) {
            fail("message " + std::to_string(i) + ": sequence out of order");
        }
        if (!is_allowed_route(m.sender, m.recipient, m.kind)) {
            fail("message " + std::to_string(i) + ": illegal route");
        }
        if (!payload_matches_kind(m)) {
            fail("message " + std::to_string(i) + ": payload does not match kind");
        }
    }
    if (!out.errors.empty()) return out;

    // Choreography template: featural block optional, everything else fixed.
    struct Step {
        MessageKind kind;
        Party from, to;
    };
    const std::vector<Step> head = {
        {MessageKind::SizeReport, Party::Buyer, Party::Broker},
        {MessageKind::SizeReport, Party::Seller, Party::Broker},
        {MessageKind::ProxyGraph, Party::Broker, Party::Buyer},
        {MessageKind::ProxyGraph, Party::Broker, Party::Seller},
        {MessageKind::StructuralSummary, Party::Buyer, Party::Broker},
        {MessageKind::StructuralSummary, Party::Seller, Party::Broker},
    };
    const std::vector<Step> featural_block = {
        {MessageKind::BuyerEigenvectors, Party::Buyer, Party::Seller},
        {MessageKind::BuyerEigenvalues, Party::Buyer, Party::Broker},
        {MessageKind::SellerProjectedVariances, Party::Seller, Party::Broker},
    };
    const std::vector<Step> tail = {
        {MessageKind::ValuationReport, Party::Broker, Party::Buyer},
        {MessageKind::ValuationReport, Party::Broker, Party::Seller},
    };

    const bool with_featural = log.size() == head.size() + featural_block.size() + tail.size();
    if (!with_featural && log.size() != head.size() + tail.size()) {
        fail("trace has " + std::to_string(log.size()) + " messages, expected 8 or 11");
        return out;
    }
    std::vector<Step> expected = head;
    if (with_featural) {
        expected.insert(expected.end(), featural_block.begin(), featural_block.end());
    }
    expected.insert(expected.end(), tail.begin(), tail.end());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (log[i].kind != expected[i].kind || log[i].sender != expected[i].from ||
            log[i].recipient != expected[i].to) {
            fail("message " + std::to_string(i) + ": choreography violated, expected " +
                 to_string(expected[i].kind) + " " + to_string(expected[i].from) + " -> " +
                 to_string(expected[i].to));
        }
    }
    if (!out.errors.empty()) return out;

    const auto& buyer_size = std::get<SizeReportPayload>(log[0].payload);
    const auto& seller_size = std::get<SizeReportPayload>(log[1].payload);
    const auto& proxy_a = std::get<ProxyGraphPayload>(log[2].payload);
    const auto& proxy_b = std::get<ProxyGraphPayload>(log[3].payload);
    const auto& buyer_summary = std::get<StructuralSummaryPayload>(log[4].payload);
    const auto& seller_summary = std::get<StructuralSummaryPayload>(log[5].payload);
    const auto& report_a = std::get<ReportPayload>(log[log.size() - 2].payload).report;
    const auto& report_b = std::get<ReportPayload>(log[log.size() - 1].payload).report;
    out.report = report_a;

    if (report_to_json(report_a) != report_to_json(report_b)) {
        fail("the two report copies differ");
    }
    if (proxy_a.graph.node_count() != proxy_b.graph.node_count() ||
        proxy_a.graph.edges() != proxy_b.graph.edges()) {
        fail("the two proxy copies differ");
    }

    const SessionConfig& cfg = report_a.config;
    if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0)) {
        fail("config alpha outside [0, 1]");
    }
    const int expected_proxy_n =
        cfg.proxy_nodes ? *cfg.proxy_nodes
                        : std::max(buyer_size.max_nodes, seller_size.max_nodes);
    if (proxy_a.graph.node_count() != expected_proxy_n) {
        fail("proxy node count inconsistent with size reports and config");
    }

    auto check_summary = [&](const StructuralSummaryPayload& s, const SizeReportPayload& size,
                             const std::string& who) {
        if (s.summary.data.rows() != size.graph_count) {
            fail(who + " summary row count != reported graph count");
        }
        const int cap = std::max(proxy_a.graph.node_count(), size.max_nodes);
        if (s.summary.node_cap != cap || s.summary.data.cols() != cap) {
            fail(who + " summary node cap inconsistent");
        }
        if (!(s.max_residual >= 0.0) || !std::isfinite(s.max_residual)) {
            fail(who + " max residual invalid");
        }
    };
    check_summary(buyer_summary, buyer_size, "buyer");
    check_summary(seller_summary, seller_size, "seller");

    const bool featural_expected =
        buyer_size.feature_dim.has_value() && seller_size.feature_dim.has_value();
    if (featural_expected != with_featural) {
        fail("featural message block inconsistent with reported feature dims");
    }
    if (featural_expected != report_a.featural.has_value()) {
        fail("report featural presence inconsistent with feature dims");
    }

    if (with_featural && out.errors.empty()) {
        const auto& basis = std::get<BuyerEigenvectorsPayload>(log[6].payload).basis;
        const auto& lam = std::get<BuyerEigenvaluesPayload>(log[7].payload).eigenvalues;
        const auto& lam_hat =
            std::get<SellerProjectedVariancesPayload>(log[8].payload).values;
        const int r = buyer_size.feature_dim.value_or(0);
        if (seller_size.feature_dim.value_or(-1) != r) {
            fail("buyer and seller feature dims differ");
        }
        if (basis.rows() != r || basis.cols() != r) {
            fail("basis shape != feature dim");
        } else if ((basis.transpose() * basis - Eigen::MatrixXd::Identity(r, r))
                       .cwiseAbs()
                       .maxCoeff() > 1e-6) {
            fail("basis is not orthonormal");
        }
        if (lam.size() != r || lam_hat.size() != r) {
            fail("spectrum lengths != feature dim");
        } else {
            if ((lam.array() < 0).any() || (lam_hat.array() < 0).any()) {
                fail("negative spectrum entries");
            }
            for (Eigen::Index i = 0; i + 1 < lam.size(); ++i) {
                if (lam[i] < lam[i + 1]) {
                    fail("buyer eigenvalues not descending");
                    break;
                }
            }
            if (out.errors.empty() && report_a.featural) {
                const FeaturalScores recomputed = diversity_relevance(lam, lam_hat);
                if (!near(recomputed.diversity, report_a.featural->diversity) ||
                    !near(recomputed.relevance, report_a.featural->relevance)) {
                    fail("diversity/relevance do not match the logged spectra");
                }
            }
        }
    }

    if (out.errors.empty()) {
        const double gwd = gwd_sets(buyer_summary.summary, seller_summary.summary);
        if (!near(gwd, report_a.s.gwd)) {
            fail("gwd does not match the logged summaries");
        }
        if (!near(report_a.s.alpha, cfg.alpha)) {
            fail("score alpha differs from config alpha");
        }
        if (!near(std::abs(cfg.alpha - 1.0 / (1.0 + gwd)), report_a.s.s)) {
            fail("disparity score does not match recomputation");
        }
        if (!near(buyer_summary.max_residual + seller_summary.max_residual,
                  report_a.epsilon_hat_max)) {
            fail("epsilon_hat_max does not match the published residuals");
        }
    }

    out.ok = out.errors.empty();
    return out;
}

VerifyOutcome verify_trace_file(const std::filesystem::path& path) {
    try {
        return verify_trace(read_trace(path));
    } catch (const ValidationError& e) {
        VerifyOutcome out;
        out.errors.push_back(e.what());
        return out;
    }
}

}  // namespace graphval
