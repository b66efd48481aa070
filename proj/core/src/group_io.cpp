#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lgt/group.hpp"

namespace lgt {

namespace {

using nlohmann::json;

cplx read_entry(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw Error("matrix entry must be a number or a [re, im] pair");
}

CMatrix read_matrix(const json& m, int dim) {
  if (!m.is_array() || static_cast<int>(m.size()) != dim) throw Error("matrix must have " + std::to_string(dim) + " rows");
  CMatrix out(dim, dim);
  for (int r = 0; r < dim; ++r) {
    if (!m[r].is_array() || static_cast<int>(m[r].size()) != dim)
      throw Error("matrix row must have " + std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c) out(r, c) = read_entry(m[r][c]);
  }
  return out;
}

json write_matrix(const CMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

template <class T>
T require(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(std::string("group file: missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(std::string("group file: field '") + key + "': " + e.what());
  }
}

}  // namespace

GroupCatalogEntry parse_group_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("group file: ") + e.what());
  }
  if (!doc.is_object()) throw Error("group file: top level must be an object");
  const auto name = doc.value("name", std::string("custom"));
  const int order = require<int>(doc, "order");
  if (order <= 0) throw Error("group file: order must be positive");

  std::vector<int> mul;
  const json& table = doc.contains("multiplication") ? doc["multiplication"] : json();
  if (!table.is_array()) throw Error("group file: missing field 'multiplication'");
  for (const auto& row : table) {
    if (row.is_array()) {
      for (const auto& v : row) {
        if (!v.is_number_integer()) throw Error("group file: multiplication entries must be integers");
        mul.push_back(v.get<int>());
      }
    } else if (row.is_number_integer()) {
      mul.push_back(row.get<int>());
    } else {
      throw Error("group file: multiplication entries must be integers");
    }
  }

  std::vector<std::string> labels;
  if (doc.contains("elements")) labels = require<std::vector<std::string>>(doc, "elements");
  std::optional<int> identity;
  if (doc.contains("identity")) identity = require<int>(doc, "identity");
  std::optional<std::vector<int>> classes;
  if (doc.contains("classes")) classes = require<std::vector<int>>(doc, "classes");

  GroupSpec spec = make_group_spec(name, order, std::move(mul), std::move(labels), identity, classes);

  if (!doc.contains("irreps") || !doc["irreps"].is_array() || doc["irreps"].empty())
    throw Error("group file: 'irreps' must be a non-empty array (irreps are never derived from the table)");
  std::vector<Irrep> irreps;
  for (const auto& jr : doc["irreps"]) {
    Irrep ir;
    ir.label = require<std::string>(jr, "label");
    ir.dim = require<int>(jr, "dim");
    if (ir.dim <= 0) throw Error("group file: irrep '" + ir.label + "' has non-positive dim");
    if (!jr.contains("matrices") || !jr["matrices"].is_array() || static_cast<int>(jr["matrices"].size()) != order)
      throw Error("group file: irrep '" + ir.label + "' needs one matrix per element");
    for (const auto& jm : jr["matrices"]) ir.matrices.push_back(read_matrix(jm, ir.dim));
    irreps.push_back(std::move(ir));
  }

  int fundamental = -1;
  const std::string fund_label = doc.value("fundamental", std::string());
  for (std::size_t i = 0; i < irreps.size(); ++i) {
    if (!fund_label.empty() && irreps[i].label == fund_label) fundamental = static_cast<int>(i);
  }
  if (fundamental < 0) {
    if (!fund_label.empty()) throw Error("group file: fundamental irrep '" + fund_label + "' not listed");
    // Smallest-dimensional faithful irrep.
    for (std::size_t i = 0; i < irreps.size() && fundamental < 0; ++i) {
      bool faithful = true;
      for (int g = 0; g < order && faithful; ++g)
        for (int h = g + 1; h < order && faithful; ++h)
          faithful = (irreps[i].matrices[g] - irreps[i].matrices[h]).cwiseAbs().maxCoeff() > 1e-6;
      if (faithful) fundamental = static_cast<int>(i);
    }
    if (fundamental < 0) fundamental = 0;
  }
  return GroupCatalogEntry(name, GroupKind::Finite, std::move(spec), std::move(irreps), fundamental);
}

GroupCatalogEntry load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open group file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_group_json(ss.str());
}

std::string to_group_json(const GroupCatalogEntry& entry) {
  const GroupSpec& s = entry.spec();
  json doc;
  doc["name"] = entry.name();
  doc["order"] = s.order;
  doc["elements"] = s.element_labels;
  doc["identity"] = s.identity;
  doc["classes"] = s.class_of;
  json table = json::array();
  for (int a = 0; a < s.order; ++a) {
    json row = json::array();
    for (int b = 0; b < s.order; ++b) row.push_back(s.multiply(a, b));
    table.push_back(row);
  }
  doc["multiplication"] = table;
  doc["fundamental"] = entry.irrep(entry.fundamental()).label;
  json irreps = json::array();
  for (const auto& ir : entry.irreps()) {
    json jr;
    jr["label"] = ir.label;
    jr["dim"] = ir.dim;
    json mats = json::array();
    for (const auto& m : ir.matrices) mats.push_back(write_matrix(m));
    jr["matrices"] = mats;
    irreps.push_back(jr);
  }
  doc["irreps"] = irreps;
  return doc.dump(2);
}

}  // namespace lgt
