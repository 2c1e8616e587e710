#include "sprlat_cli/problem_file.hpp"

#include <fstream>
#include <sstream>

#include "sprlat/errors.hpp"

namespace sprlat::cli {

using nlohmann::json;

namespace {

std::string line_and_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

const json& require(const json& doc, const char* key) {
  if (!doc.is_object()) throw ParseError("top level must be a JSON object");
  const auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

double as_number(const json& node, const std::string& where) {
  if (!node.is_number()) throw ParseError("field '" + where + "': expected a number, got " + node.dump());
  return node.get<double>();
}

}  // namespace

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream msg;
    msg << source << ": invalid JSON at " << line_and_column(text, e.byte == 0 ? 0 : e.byte - 1) << ": " << e.what();
    throw ParseError(msg.str());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str(), path);
}

NormSpec parse_norm(const json& node, std::size_t dim) {
  if (!node.is_object()) throw ParseError("field 'norm': expected an object {p, weights}");
  NormSpec spec;
  const auto p = node.find("p");
  if (p == node.end()) throw ParseError("field 'norm.p': missing");
  if (p->is_string()) {
    if (p->get<std::string>() != "inf") throw ParseError("field 'norm.p': expected a number >= 1 or \"inf\"");
    spec.p = kInf;
  } else {
    spec.p = as_number(*p, "norm.p");
  }
  if (const auto w = node.find("weights"); w != node.end() && !w->is_null()) {
    if (!w->is_array()) throw ParseError("field 'norm.weights': expected a list of positive numbers");
    if (w->size() != dim) {
      throw ParseError("field 'norm.weights': has " + std::to_string(w->size()) + " entries, ambient_dim is " +
                       std::to_string(dim));
    }
    for (std::size_t i = 0; i < w->size(); ++i) {
      spec.weights.push_back(as_number((*w)[i], "norm.weights[" + std::to_string(i) + "]"));
    }
  }
  try {
    spec.validate(dim);
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("field 'norm': ") + e.what());
  }
  return spec;
}

Ambient parse_ambient(const json& doc) {
  const json& dim_node = require(doc, "ambient_dim");
  if (!dim_node.is_number_integer() || dim_node.get<long long>() < 1) {
    throw ParseError("field 'ambient_dim': expected a positive integer");
  }
  Ambient ambient;
  ambient.dim = dim_node.get<std::size_t>();
  const json& field_node = require(doc, "field");
  if (!field_node.is_string()) throw ParseError("field 'field': expected \"real\" or \"complex\"");
  try {
    ambient.field = field_from_string(field_node.get<std::string>());
  } catch (const std::exception&) {
    throw ParseError("field 'field': expected \"real\" or \"complex\", got " + field_node.dump());
  }
  ambient.norm = parse_norm(require(doc, "norm"), ambient.dim);
  return ambient;
}

CplxVec parse_vector(const json& node, std::size_t dim, Field field, const std::string& where) {
  if (!node.is_array()) throw ParseError("field '" + where + "': expected a list of entries");
  if (node.size() != dim) {
    throw ParseError("field '" + where + "': has " + std::to_string(node.size()) + " entries, ambient_dim is " +
                     std::to_string(dim));
  }
  CplxVec out(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const json& entry = node[i];
    const std::string here = where + "[" + std::to_string(i) + "]";
    if (entry.is_number()) {
      out[static_cast<Eigen::Index>(i)] = entry.get<double>();
    } else if (entry.is_array() && entry.size() == 2) {
      const Complex z{as_number(entry[0], here + "[0]"), as_number(entry[1], here + "[1]")};
      if (field == Field::real && z.imag() != 0.0) {
        throw ParseError("field '" + here + "': complex entry in a real problem");
      }
      out[static_cast<Eigen::Index>(i)] = z;
    } else {
      throw ParseError("field '" + here + "': expected a number or [re, im], got " + entry.dump());
    }
  }
  return out;
}

Subspace parse_problem(const json& doc) {
  Subspace E;
  E.ambient = parse_ambient(doc);
  const json& basis = require(doc, "basis");
  if (!basis.is_array() || basis.empty()) throw ParseError("field 'basis': expected a nonempty list of vectors");
  for (std::size_t j = 0; j < basis.size(); ++j) {
    E.basis.push_back(parse_vector(basis[j], E.ambient.dim, E.ambient.field, "basis[" + std::to_string(j) + "]"));
  }
  try {
    E.validate();
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("field 'basis': ") + e.what());
  }
  return E;
}

PairProblem parse_pair(const json& doc) {
  PairProblem out;
  out.ambient = parse_ambient(doc);
  const json& pair = require(doc, "pair");
  if (!pair.is_array() || pair.size() != 2) throw ParseError("field 'pair': expected a list of two vectors");
  out.first = parse_vector(pair[0], out.ambient.dim, out.ambient.field, "pair[0]");
  out.second = parse_vector(pair[1], out.ambient.dim, out.ambient.field, "pair[1]");
  return out;
}

Subspace load_problem(const std::string& path) {
  try {
    return parse_problem(read_json_file(path));
  } catch (const ParseError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0 || what.rfind("cannot open", 0) == 0) throw;
    throw ParseError(path + ": " + what);
  }
}

PairProblem load_pair(const std::string& path) {
  try {
    return parse_pair(read_json_file(path));
  } catch (const ParseError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0 || what.rfind("cannot open", 0) == 0) throw;
    throw ParseError(path + ": " + what);
  }
}

}  // namespace sprlat::cli
