#include "graphval/protocol.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>

#include "graphval/embedding.hpp"
#include "graphval/errors.hpp"
#include "graphval/parallel.hpp"
#include "graphval/proxy.hpp"

namespace graphval {

std::string to_string(Party p) {
    switch (p) {
        case Party::Broker: return "broker";
        case Party::Buyer: return "buyer";
        case Party::Seller: return "seller";
    }
    throw ValidationError("unknown party");
}

std::string to_string(MessageKind k) {
    switch (k) {
        case MessageKind::SizeReport: return "SizeReport";
        case MessageKind::ProxyGraph: return "ProxyGraph";
        case MessageKind::StructuralSummary: return "StructuralSummary";
        case MessageKind::BuyerEigenvectors: return "BuyerEigenvectors";
        case MessageKind::BuyerEigenvalues: return "BuyerEigenvalues";
        case MessageKind::SellerProjectedVariances: return "SellerProjectedVariances";
        case MessageKind::ValuationReport: return "ValuationReport";
    }
    throw ValidationError("unknown message kind");
}

Party party_from_string(const std::string& s) {
    if (s == "broker") return Party::Broker;
    if (s == "buyer") return Party::Buyer;
    if (s == "seller") return Party::Seller;
    throw ValidationError("unknown party '" + s + "'");
}

MessageKind kind_from_string(const std::string& s) {
    if (s == "SizeReport") return MessageKind::SizeReport;
    if (s == "ProxyGraph") return MessageKind::ProxyGraph;
    if (s == "StructuralSummary") return MessageKind::StructuralSummary;
    if (s == "BuyerEigenvectors") return MessageKind::BuyerEigenvectors;
    if (s == "BuyerEigenvalues") return MessageKind::BuyerEigenvalues;
    if (s == "SellerProjectedVariances") return MessageKind::SellerProjectedVariances;
    if (s == "ValuationReport") return MessageKind::ValuationReport;
    throw ValidationError("unknown message kind '" + s + "'");
}

bool is_allowed_route(Party sender, Party recipient, MessageKind kind) {
    switch (kind) {
        case MessageKind::SizeReport:
        case MessageKind::StructuralSummary:
            return (sender == Party::Buyer || sender == Party::Seller) &&
                   recipient == Party::Broker;
        case MessageKind::BuyerEigenvalues:
            return sender == Party::Buyer && recipient == Party::Broker;
        case MessageKind::SellerProjectedVariances:
            return sender == Party::Seller && recipient == Party::Broker;
        case MessageKind::ProxyGraph:
        case MessageKind::ValuationReport:
            return sender == Party::Broker &&
                   (recipient == Party::Buyer || recipient == Party::Seller);
        case MessageKind::BuyerEigenvectors:
            return sender == Party::Buyer && recipient == Party::Seller;
    }
    return false;
}

bool payload_matches_kind(const Message& msg) {
    switch (msg.kind) {
        case MessageKind::SizeReport:
            return std::holds_alternative<SizeReportPayload>(msg.payload);
        case MessageKind::ProxyGraph:
            return std::holds_alternative<ProxyGraphPayload>(msg.payload);
        case MessageKind::StructuralSummary:
            return std::holds_alternative<StructuralSummaryPayload>(msg.payload);
        case MessageKind::BuyerEigenvectors:
            return std::holds_alternative<BuyerEigenvectorsPayload>(msg.payload);
        case MessageKind::BuyerEigenvalues:
            return std::holds_alternative<BuyerEigenvaluesPayload>(msg.payload);
        case MessageKind::SellerProjectedVariances:
            return std::holds_alternative<SellerProjectedVariancesPayload>(msg.payload);
        case MessageKind::ValuationReport:
            return std::holds_alternative<ReportPayload>(msg.payload);
    }
    return false;
}

BrokerSession::BrokerSession(SessionConfig config) : config_(config) {
    if (!(config_.alpha >= 0.0 && config_.alpha <= 1.0)) {
        throw ValidationError("alpha must lie in [0, 1]");
    }
    if (config_.walk_steps < 1 || config_.eigenvector_count < 1) {
        throw ValidationError("embedding dimensions must be positive");
    }
}

void BrokerSession::receive(const Message& msg) {
    if (!is_allowed_route(msg.sender, msg.recipient, msg.kind)) {
        throw ProtocolError("illegal route: " + to_string(msg.sender) + " -> " +
                            to_string(msg.recipient) + " " + to_string(msg.kind));
    }
    if (!payload_matches_kind(msg)) {
        throw ProtocolError("payload does not match kind " + to_string(msg.kind));
    }
    if (msg.recipient != Party::Broker) {
        throw ProtocolError("broker received a message addressed to " +
                            to_string(msg.recipient));
    }
    switch (msg.kind) {
        case MessageKind::SizeReport: {
            if (phase_ != Phase::Init) {
                throw ProtocolError("SizeReport outside Init phase");
            }
            auto& slot = msg.sender == Party::Buyer ? buyer_size_ : seller_size_;
            if (slot) throw ProtocolError("duplicate SizeReport");
            slot = std::get<SizeReportPayload>(msg.payload);
            return;
        }
        case MessageKind::StructuralSummary: {
            if (phase_ != Phase::ProxySent) {
                throw ProtocolError("StructuralSummary outside ProxySent phase");
            }
            auto& slot = msg.sender == Party::Buyer ? buyer_summary_ : seller_summary_;
            if (slot) throw ProtocolError("duplicate StructuralSummary");
            slot = std::get<StructuralSummaryPayload>(msg.payload);
            return;
        }
        case MessageKind::BuyerEigenvalues: {
            if (phase_ != Phase::StructuralCollected) {
                throw ProtocolError("BuyerEigenvalues outside StructuralCollected phase");
            }
            if (buyer_eigenvalues_) throw ProtocolError("duplicate BuyerEigenvalues");
            buyer_eigenvalues_ = std::get<BuyerEigenvaluesPayload>(msg.payload);
            return;
        }
        case MessageKind::SellerProjectedVariances: {
            if (phase_ != Phase::StructuralCollected) {
                throw ProtocolError(
                    "SellerProjectedVariances outside StructuralCollected phase");
            }
            if (seller_variances_) throw ProtocolError("duplicate SellerProjectedVariances");
            seller_variances_ = std::get<SellerProjectedVariancesPayload>(msg.payload);
            return;
        }
        default:
            throw ProtocolError("broker cannot accept " + to_string(msg.kind));
    }
}

Graph BrokerSession::broker_init() {
    if (phase_ != Phase::Init) {
        throw ProtocolError("broker_init outside Init phase");
    }
    if (!buyer_size_ || !seller_size_) {
        throw ProtocolError("broker_init before both SizeReports");
    }
    const int n = config_.proxy_nodes
                      ? *config_.proxy_nodes
                      : std::max(buyer_size_->max_nodes, seller_size_->max_nodes);
    Graph proxy = generate_proxy(n, config_.proxy_edge_probability, config_.seed);
    phase_ = Phase::ProxySent;
    return proxy;
}

DisparityScore BrokerSession::broker_structural_score() {
    if (phase_ != Phase::ProxySent) {
        throw ProtocolError("structural score outside ProxySent phase");
    }
    if (!buyer_summary_ || !seller_summary_) {
        throw ProtocolError("structural score before both summaries");
    }
    const double gwd = gwd_sets(buyer_summary_->summary, seller_summary_->summary);
    disparity_ = structural_disparity(gwd, config_.alpha);
    phase_ = Phase::StructuralCollected;
    return *disparity_;
}

FeaturalScores BrokerSession::broker_featural_score() {
    if (phase_ != Phase::StructuralCollected) {
        throw ProtocolError("featural score outside StructuralCollected phase");
    }
    if (!buyer_eigenvalues_ || !seller_variances_) {
        throw ProtocolError("featural score before both spectra");
    }
    featural_ = diversity_relevance(buyer_eigenvalues_->eigenvalues, seller_variances_->values);
    phase_ = Phase::FeaturalCollected;
    return *featural_;
}

ValuationReport BrokerSession::finalize() {
    if (phase_ != Phase::StructuralCollected && phase_ != Phase::FeaturalCollected) {
        throw ProtocolError("finalize before scores are available");
    }
    ValuationReport report;
    report.s = *disparity_;
    report.featural = featural_;
    report.epsilon_hat_max = buyer_summary_->max_residual + seller_summary_->max_residual;
    report.config = config_;
    phase_ = Phase::Done;
    return report;
}

SizeReportPayload make_size_report(const GraphSet& gs) {
    return SizeReportPayload{gs.max_node_count(), static_cast<int>(gs.size()),
                             gs.feature_dim()};
}

std::vector<MatchResult> match_set_against_key(const GraphSet& gs, const Graph& key) {
    std::vector<std::optional<MatchResult>> slots(gs.size());
    parallel_for(gs.size(), [&](std::size_t i) {
        slots[i] = spectral_match(key, gs.graphs()[i]);
    });
    std::vector<MatchResult> matches;
    matches.reserve(gs.size());
    for (auto& slot : slots) {
        matches.push_back(std::move(*slot));
    }
    return matches;
}

StructuralSummaryPayload party_structural_summary(const GraphSet& gs, const Graph& proxy,
                                                  int walk_steps, int eigenvector_count) {
    const int node_cap = std::max(proxy.node_count(), gs.max_node_count());
    std::vector<Eigen::MatrixXd> aligned(gs.size());
    std::vector<double> residuals(gs.size());
    parallel_for(gs.size(), [&](std::size_t i) {
        const Graph& g = gs.graphs()[i];
        const MatchResult match = spectral_match(proxy, g);
        aligned[i] = align_embedding(embed(g, walk_steps, eigenvector_count),
                                     match.permutation, node_cap);
        residuals[i] = match.residual;
    });
    return StructuralSummaryPayload{mean_pool(aligned),
                                    *std::max_element(residuals.begin(), residuals.end())};
}

std::pair<BuyerEigenvectorsPayload, BuyerEigenvaluesPayload> buyer_featural_offer(
    const GraphSet& gs) {
    const FeatureSpectrum spec = buyer_spectrum(stack_and_center(gs));
    return {BuyerEigenvectorsPayload{spec.eigenvectors},
            BuyerEigenvaluesPayload{spec.eigenvalues}};
}

SellerProjectedVariancesPayload seller_featural_response(
    const GraphSet& gs, const Eigen::Ref<const Eigen::MatrixXd>& basis) {
    return SellerProjectedVariancesPayload{
        seller_projected_variances(stack_and_center(gs), basis).values};
}

namespace {

// Deterministic opaque token: FNV-1a over the session-defining scalars.
std::string derive_session_id(const GraphSet& buyer, const GraphSet& seller,
                              const SessionConfig& config) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (v >> (8 * byte)) & 0xffull;
            h *= 1099511628211ull;
        }
    };
    auto mix_double = [&](double d) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(d));
        std::memcpy(&bits, &d, sizeof(bits));
        mix(bits);
    };
    mix_double(config.alpha);
    mix(static_cast<std::uint64_t>(config.walk_steps));
    mix(static_cast<std::uint64_t>(config.eigenvector_count));
    mix(config.seed);
    mix_double(config.proxy_edge_probability);
    mix(config.proxy_nodes ? static_cast<std::uint64_t>(*config.proxy_nodes) : 0ull);
    mix(static_cast<std::uint64_t>(buyer.size()));
    mix(static_cast<std::uint64_t>(buyer.max_node_count()));
    mix(static_cast<std::uint64_t>(seller.size()));
    mix(static_cast<std::uint64_t>(seller.max_node_count()));
    char buf[32];
    std::snprintf(buf, sizeof(buf), "sess-%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace

SessionOutcome run_session(const GraphSet& buyer, const GraphSet& seller,
                           const SessionConfig& config) {
    BrokerSession broker(config);
    const std::string session_id = derive_session_id(buyer, seller, config);

    std::vector<Message> log;
    auto send = [&](Party from, Party to, MessageKind kind,
                    MessagePayload payload) -> const Message& {
        log.push_back(Message{session_id, static_cast<int>(log.size()), from, to, kind,
                              std::move(payload)});
        return log.back();
    };

    broker.receive(send(Party::Buyer, Party::Broker, MessageKind::SizeReport,
                        make_size_report(buyer)));
    broker.receive(send(Party::Seller, Party::Broker, MessageKind::SizeReport,
                        make_size_report(seller)));

    const Graph proxy = broker.broker_init();
    send(Party::Broker, Party::Buyer, MessageKind::ProxyGraph, ProxyGraphPayload{proxy});
    send(Party::Broker, Party::Seller, MessageKind::ProxyGraph, ProxyGraphPayload{proxy});

    broker.receive(send(Party::Buyer, Party::Broker, MessageKind::StructuralSummary,
                        party_structural_summary(buyer, proxy, config.walk_steps,
                                                 config.eigenvector_count)));
    broker.receive(send(Party::Seller, Party::Broker, MessageKind::StructuralSummary,
                        party_structural_summary(seller, proxy, config.walk_steps,
                                                 config.eigenvector_count)));
    broker.broker_structural_score();

    const bool featural = buyer.feature_dim().has_value() && seller.feature_dim().has_value();
    if (featural) {
        if (*buyer.feature_dim() != *seller.feature_dim()) {
            throw ValidationError("buyer and seller feature dimensions differ");
        }
        auto [basis, eigenvalues] = buyer_featural_offer(buyer);
        const Eigen::MatrixXd basis_matrix = basis.basis;
        send(Party::Buyer, Party::Seller, MessageKind::BuyerEigenvectors, std::move(basis));
        broker.receive(send(Party::Buyer, Party::Broker, MessageKind::BuyerEigenvalues,
                            std::move(eigenvalues)));
        broker.receive(send(Party::Seller, Party::Broker,
                            MessageKind::SellerProjectedVariances,
                            seller_featural_response(seller, basis_matrix)));
        broker.broker_featural_score();
    }

    ValuationReport report = broker.finalize();
    send(Party::Broker, Party::Buyer, MessageKind::ValuationReport, ReportPayload{report});
    send(Party::Broker, Party::Seller, MessageKind::ValuationReport, ReportPayload{report});
    return SessionOutcome{std::move(report), std::move(log)};
}

}  // namespace graphval
