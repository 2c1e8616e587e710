#include "sprlat_cli/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace sprlat::cli {

Json number(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json vector_json(const CplxVec& x, Field field) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (field == Field::real) {
      out.push_back(x[i].real());
    } else {
      out.push_back(Json::array({x[i].real(), x[i].imag()}));
    }
  }
  return out;
}

Json norm_json(const NormSpec& spec) {
  Json out;
  out["p"] = spec.is_sup() ? Json("inf") : Json(spec.p);
  if (!spec.weights.empty()) out["weights"] = spec.weights;
  return out;
}

Json ambient_json(const Ambient& ambient) {
  Json out;
  out["ambient_dim"] = ambient.dim;
  out["field"] = to_string(ambient.field);
  out["norm"] = norm_json(ambient.norm);
  return out;
}

Json gram_json(const Eigen::Matrix2cd& gram) {
  Json out = Json::array();
  for (int r = 0; r < 2; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 2; ++c) row.push_back(Json::array({gram(r, c).real(), gram(r, c).imag()}));
    out.push_back(row);
  }
  return out;
}

Json witness_json(const PairWitness& w, Field field) {
  Json out;
  out["u"] = vector_json(w.u, field);
  out["v"] = vector_json(w.v, field);
  out["separation"] = number(w.separation);
  out["disjointness"] = number(w.disjointness);
  out["perp"] = number(w.perp);
  return out;
}

Json budget_json(const SearchBudget& budget) {
  Json out;
  out["restarts"] = budget.restarts;
  out["iterations"] = budget.iterations;
  out["penalty_rounds"] = budget.penalty_rounds;
  return out;
}

namespace {

bool is_flat(const Json& node) {
  if (!node.is_array()) return node.is_primitive();
  for (const auto& item : node) {
    if (item.is_object()) return false;
    if (item.is_array() && !is_flat(item)) return false;
  }
  return true;
}

std::string scalar_text(const Json& node) {
  if (node.is_string()) return node.get<std::string>();
  if (node.is_number_float()) {
    std::ostringstream s;
    s << std::setprecision(12) << node.get<double>();
    return s.str();
  }
  if (node.is_array()) {
    std::string out = "[";
    for (std::size_t i = 0; i < node.size(); ++i) out += (i ? ", " : "") + scalar_text(node[i]);
    return out + "]";
  }
  return node.dump();
}

void emit(const Json& node, int depth, std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  for (const auto& [key, value] : node.items()) {
    if (value.is_object()) {
      out << pad << key << ":\n";
      emit(value, depth + 1, out);
    } else if (value.is_array() && !is_flat(value)) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        out << pad << key << "[" << i << "]:";
        if (value[i].is_object()) {
          out << "\n";
          emit(value[i], depth + 1, out);
        } else {
          out << " " << scalar_text(value[i]) << "\n";
        }
      }
    } else {
      out << pad << key << ": " << scalar_text(value) << "\n";
    }
  }
}

}  // namespace

std::string to_text(const Json& report) {
  std::ostringstream out;
  emit(report, 0, out);
  return out.str();
}

}  // namespace sprlat::cli
