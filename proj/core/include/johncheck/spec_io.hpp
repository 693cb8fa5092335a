#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "johncheck/checker.hpp"
#include "johncheck/types.hpp"

namespace johncheck {

/// Malformed JSON text; the message carries nlohmann's line/column locator.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed JSON that does not match the schema: unknown kind, unknown or
/// missing field, wrong type. The message names the offending field path.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Schema-valid document whose content violates a rule invariant
/// (validate_spec failures, dimension clashes). One "path: message" line per
/// issue.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Parses and validates a rule-spec document. Strict: any field outside the
/// schema for the declared kind is rejected.
///
/// Schemas by "kind":
///   builtin             {"kind","name"}
///   finite_menu_mixture {"kind","d","outcomes":[{"z","cost"}...],
///                        "lambda_measure"}
///   quadratic_family    {"kind","d","A", optional "b",
///                        optional "lambda_measure"}
///   linear_rule         {"kind","d","Mx","My"}
/// where "lambda_measure" is {"type":"uniform"} or
/// {"type":"discrete","atoms":[{"lambda","weight"}...]}.
RuleSpec parse_rule_spec(const std::string& text);

/// Reads the file and parses it; file-system failures surface as ParseError.
RuleSpec load_rule_spec(const std::string& path);

/// Human-readable kind tag of a spec ("builtin", "finite_menu_mixture", ...).
std::string rule_kind(const RuleSpec& spec);

/// Serializes a diagnostic run. Field order is fixed and doubles are written
/// in shortest round-trip form, so equal runs produce byte-identical
/// documents.
nlohmann::ordered_json report_to_json(const SuiteReport& report,
                                      const CheckConfig& cfg,
                                      const std::string& rule_kind_tag);

/// Inverse of report_to_json: recovers the diagnostics and the config fields
/// the verdict depends on, so aggregate_report reproduces the stored verdict.
SuiteReport report_from_json(const nlohmann::ordered_json& doc,
                             CheckConfig* cfg_out = nullptr);

}  // namespace johncheck
