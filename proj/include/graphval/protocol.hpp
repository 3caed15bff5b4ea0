#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "graphval/featural.hpp"
#include "graphval/graph.hpp"
#include "graphval/matching.hpp"
#include "graphval/transport.hpp"

namespace graphval {

enum class Party { Broker, Buyer, Seller };
enum class MessageKind {
    SizeReport,
    ProxyGraph,
    StructuralSummary,
    BuyerEigenvectors,
    BuyerEigenvalues,
    SellerProjectedVariances,
    ValuationReport
};

std::string to_string(Party p);
std::string to_string(MessageKind k);
Party party_from_string(const std::string& s);
MessageKind kind_from_string(const std::string& s);

/// The only scalars a party reveals before computation starts.
struct SizeReportPayload {
    int max_nodes;
    int graph_count;
    std::optional<int> feature_dim;
};

struct ProxyGraphPayload {
    Graph graph;
};

/// Pooled key-frame embedding plus the worst per-graph matching residual,
/// published so the broker can bound alignment error.
struct StructuralSummaryPayload {
    PooledSummary summary;
    double max_residual;
};

struct BuyerEigenvectorsPayload {
    Eigen::MatrixXd basis;  // r x r orthonormal
};

struct BuyerEigenvaluesPayload {
    Eigen::VectorXd eigenvalues;  // descending, non-negative
};

struct SellerProjectedVariancesPayload {
    Eigen::VectorXd values;
};

struct SessionConfig {
    double alpha = 0.5;
    int walk_steps = 16;
    int eigenvector_count = 8;
    std::uint64_t seed = 0;
    double proxy_edge_probability = 0.5;
    std::optional<int> proxy_nodes;  // overrides the max-of-maxima default
};

struct ValuationReport {
    DisparityScore s;
    std::optional<FeaturalScores> featural;  // absent when either party lacks features
    double epsilon_hat_max;
    SessionConfig config;
};

struct ReportPayload {
    ValuationReport report;
};

using MessagePayload =
    std::variant<SizeReportPayload, ProxyGraphPayload, StructuralSummaryPayload,
                 BuyerEigenvectorsPayload, BuyerEigenvaluesPayload,
                 SellerProjectedVariancesPayload, ReportPayload>;

struct Message {
    std::string session_id;
    int sequence;
    Party sender;
    Party recipient;
    MessageKind kind;
    MessagePayload payload;
};

/// Whether the (sender, recipient, kind) triple is one the protocol permits.
/// Raw graph structure only ever travels broker -> party as the proxy.
bool is_allowed_route(Party sender, Party recipient, MessageKind kind);

/// Whether the payload variant is the one the kind demands.
bool payload_matches_kind(const Message& msg);

enum class Phase { Init, ProxySent, StructuralCollected, FeaturalCollected, Done };

/// Broker-side state machine. Messages are validated against the current
/// phase before any state changes; an out-of-order or ill-routed message
/// throws ProtocolError and leaves the session untouched.
class BrokerSession {
public:
    explicit BrokerSession(SessionConfig config);

    Phase phase() const { return phase_; }
    const SessionConfig& config() const { return config_; }

    void receive(const Message& msg);

    /// Requires both size reports; samples the proxy and moves to ProxySent.
    Graph broker_init();

    /// Requires both structural summaries; computes S and moves on.
    DisparityScore broker_structural_score();

    /// Requires both featural payloads; computes D and R and moves on.
    FeaturalScores broker_featural_score();

    /// Assembles the report. Valid from StructuralCollected (featural
    /// skipped) or FeaturalCollected; moves to Done.
    ValuationReport finalize();

private:
    Phase phase_ = Phase::Init;
    SessionConfig config_;
    std::optional<SizeReportPayload> buyer_size_, seller_size_;
    std::optional<StructuralSummaryPayload> buyer_summary_, seller_summary_;
    std::optional<BuyerEigenvaluesPayload> buyer_eigenvalues_;
    std::optional<SellerProjectedVariancesPayload> seller_variances_;
    std::optional<DisparityScore> disparity_;
    std::optional<FeaturalScores> featural_;
};

SizeReportPayload make_size_report(const GraphSet& gs);

/// Per-graph spectral matches against the key, in set order.
std::vector<MatchResult> match_set_against_key(const GraphSet& gs, const Graph& key);

/// Full party-side structural pipeline: match every graph against the proxy,
/// align its embedding into the key frame, mean-pool the stack.
StructuralSummaryPayload party_structural_summary(const GraphSet& gs, const Graph& proxy,
                                                  int walk_steps, int eigenvector_count);

/// Buyer's featural opening: eigenvectors for the seller, eigenvalues for
/// the broker.
std::pair<BuyerEigenvectorsPayload, BuyerEigenvaluesPayload> buyer_featural_offer(
    const GraphSet& gs);

SellerProjectedVariancesPayload seller_featural_response(
    const GraphSet& gs, const Eigen::Ref<const Eigen::MatrixXd>& basis);

struct SessionOutcome {
    ValuationReport report;
    std::vector<Message> log;
};

/// Drives the whole three-party choreography in process and returns the
/// report together with the ordered message log it was derived from.
SessionOutcome run_session(const GraphSet& buyer, const GraphSet& seller,
                           const SessionConfig& config);

}  // namespace graphval
