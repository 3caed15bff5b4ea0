#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "graphval/protocol.hpp"

namespace graphval {

/// One message as one JSON object:
/// {"session_id", "seq", "from", "to", "kind", "payload"}. Matrix payloads
/// are row-major nested arrays of finite doubles.
nlohmann::json message_to_json(const Message& msg);

/// Strict inverse of message_to_json: unknown keys, missing keys, wrong
/// types and non-finite numbers all throw ValidationError.
Message message_from_json(const nlohmann::json& doc);

nlohmann::json report_to_json(const ValuationReport& report);

/// Writes the log as newline-delimited JSON in sequence order.
void write_trace(const std::filesystem::path& path, const std::vector<Message>& log);

std::vector<Message> read_trace(const std::filesystem::path& path);

struct VerifyOutcome {
    bool ok = false;
    std::vector<std::string> errors;
    std::optional<ValuationReport> report;
};

/// Replays a message log with broker eyes only: schema and routing of every
/// message, choreography order, proxy copies identical and correctly sized,
/// summary shapes consistent with the size reports, and every score in the
/// embedded report recomputed from the logged summaries to 1e-9.
VerifyOutcome verify_trace(const std::vector<Message>& log);

/// verify_trace over a file; parse failures become verification errors
/// rather than exceptions (an unreadable file still throws IoError).
VerifyOutcome verify_trace_file(const std::filesystem::path& path);

}  // namespace graphval
