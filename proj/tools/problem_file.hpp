#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "robustab/error.hpp"
#include "robustab/interval.hpp"

namespace robustab::cli {

/// Problem document failed to parse or violated the schema. The message names
/// the line/column (syntax errors) or the offending field.
class SchemaError : public Error {
 public:
  using Error::Error;
};

struct Problem {
  IntervalPolynomial box;
  std::optional<double> omega_max;
  std::optional<int> steps;
  std::optional<std::uint64_t> seed;
};

/// Accepts a problem document
///   {"order": n, "intervals": [[lo, hi], ...], "omega_max"?, "steps"?, "seed"?}
/// or a certificate, whose "input" member is a problem document.
Problem parse_problem(std::string_view text);
Problem load_problem(const std::string& path);

/// Canonical serialization used for digests and certificate embedding.
nlohmann::ordered_json problem_to_json(const Problem& problem);

/// "sha256:<hex>" of the canonical serialization.
std::string input_digest(const Problem& problem);

}  // namespace robustab::cli
