#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "sprlat/hilbert_fit.hpp"
#include "sprlat/lattice.hpp"
#include "sprlat/spr_search.hpp"

namespace sprlat::cli {

using Json = nlohmann::ordered_json;

/// Numbers, with +-inf as the strings "inf" / "-inf" and NaN as null.
Json number(double x);
/// Real entries for a real field, [re, im] pairs otherwise.
Json vector_json(const CplxVec& x, Field field);
Json norm_json(const NormSpec& spec);
Json ambient_json(const Ambient& ambient);
Json gram_json(const Eigen::Matrix2cd& gram);
Json witness_json(const PairWitness& w, Field field);
Json budget_json(const SearchBudget& budget);

/// Indented "key: value" listing of a report.
std::string to_text(const Json& report);

}  // namespace sprlat::cli
