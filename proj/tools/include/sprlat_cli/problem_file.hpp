#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sprlat/spr_search.hpp"

namespace sprlat::cli {

/// Malformed input; the message names the offending line or field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pair of vectors sharing an ambient space, read from the "pair" field.
struct PairProblem {
  Ambient ambient;
  CplxVec first, second;
};

/// Parses JSON text; syntax errors report line and column.
nlohmann::json parse_json(const std::string& text, const std::string& source);
nlohmann::json read_json_file(const std::string& path);

Ambient parse_ambient(const nlohmann::json& doc);
NormSpec parse_norm(const nlohmann::json& node, std::size_t dim);
CplxVec parse_vector(const nlohmann::json& node, std::size_t dim, Field field, const std::string& where);

/// {ambient_dim, field, norm, basis}.
Subspace parse_problem(const nlohmann::json& doc);
/// {ambient_dim, field, norm, pair: [x, y]}.
PairProblem parse_pair(const nlohmann::json& doc);

Subspace load_problem(const std::string& path);
PairProblem load_pair(const std::string& path);

}  // namespace sprlat::cli
