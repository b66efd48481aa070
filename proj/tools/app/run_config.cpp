#include "run_config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include <lgt/group.hpp>

namespace lgt::app {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const json& need(const json& j, const char* key, const char* where) {
  if (!j.contains(key)) throw ConfigError(std::string(where) + ": missing '" + key + "'");
  return j.at(key);
}

template <class T>
T get_as(const json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + ": wrong type");
  }
}

std::string param_string(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    std::ostringstream os;
    os << v.get<double>();
    return os.str();
  }
  throw ConfigError(where + ": group parameters must be strings or numbers");
}

cplx read_complex(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(where + ": expected a number or [re, im]");
}

bool parse_boundary(const std::string& s, const std::string& where) {
  if (s == "open") return false;
  if (s == "periodic") return true;
  throw ConfigError(where + ": boundary must be 'open' or 'periodic'");
}

std::vector<std::string> read_sector(const json& v, const std::string& where) {
  if (v.is_string()) return {v.get<std::string>()};
  return get_as<std::vector<std::string>>(v, where);
}

Task parse_task(const json& t) {
  Task task;
  if (t.is_string()) {
    task.kind = t.get<std::string>();
  } else if (t.is_object() && t.size() == 1) {
    task.kind = t.begin().key();
    const json& body = t.begin().value();
    if (task.kind == "spectrum") {
      if (body.contains("k")) task.spectrum.k = get_as<int>(body["k"], "tasks.spectrum.k");
      if (body.contains("sector")) task.spectrum.sector = read_sector(body["sector"], "tasks.spectrum.sector");
    } else if (task.kind == "observables") {
      if (body.is_array()) {
        task.observables.names = get_as<std::vector<std::string>>(body, "tasks.observables");
      } else {
        if (body.contains("names"))
          task.observables.names = get_as<std::vector<std::string>>(body["names"], "tasks.observables.names");
        if (body.contains("state")) task.observables.state = get_as<std::string>(body["state"], "tasks.observables.state");
        if (body.contains("sector")) task.observables.sector = read_sector(body["sector"], "tasks.observables.sector");
      }
    }
  } else {
    throw ConfigError("tasks: each task is a name or a single-key object");
  }
  static const std::vector<std::string> kinds{"verify", "spectrum", "observables", "vortex-masses"};
  if (std::find(kinds.begin(), kinds.end(), task.kind) == kinds.end())
    throw ConfigError("tasks: unknown task '" + task.kind + "'");
  if (task.kind == "spectrum" && task.spectrum.k < 1) throw ConfigError("tasks.spectrum.k must be positive");
  if (task.kind == "observables" && task.observables.state != "ground" && task.observables.state != "vacuum")
    throw ConfigError("tasks.observables.state must be 'ground' or 'vacuum'");
  return task;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source_dir) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  RunConfig c;
  c.source_dir = source_dir;

  const json& g = need(doc, "group", "config");
  if (g.is_string()) {
    const std::string ref = g.get<std::string>();
    const auto colon = ref.find(':');
    c.group.builtin = ref.substr(0, colon);
    if (colon != std::string::npos) {
      std::stringstream rest(ref.substr(colon + 1));
      std::string item;
      while (std::getline(rest, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("group: malformed parameter '" + item + "'");
        c.group.params[item.substr(0, eq)] = item.substr(eq + 1);
      }
    }
  } else if (g.is_object()) {
    if (g.contains("file")) {
      c.group.file = get_as<std::string>(g["file"], "group.file");
    } else {
      c.group.builtin = get_as<std::string>(need(g, "builtin", "group"), "group.builtin");
      if (g.contains("params"))
        for (const auto& [k, v] : g["params"].items()) c.group.params[k] = param_string(v, "group.params." + k);
    }
  } else {
    throw ConfigError("group: expected a name or an object");
  }

  const json& l = need(doc, "lattice", "config");
  c.lattice.lx = get_as<int>(need(l, "Lx", "lattice"), "lattice.Lx");
  c.lattice.ly = get_as<int>(need(l, "Ly", "lattice"), "lattice.Ly");
  if (c.lattice.lx < 1 || c.lattice.ly < 1) throw ConfigError("lattice: Lx and Ly must be positive");
  if (l.contains("boundary")) {
    const json& b = l["boundary"];
    if (b.is_string()) {
      c.lattice.periodic_x = c.lattice.periodic_y = parse_boundary(b.get<std::string>(), "lattice.boundary");
    } else {
      const auto both = get_as<std::vector<std::string>>(b, "lattice.boundary");
      if (both.size() != 2) throw ConfigError("lattice.boundary: give one value or [x, y]");
      c.lattice.periodic_x = parse_boundary(both[0], "lattice.boundary");
      c.lattice.periodic_y = parse_boundary(both[1], "lattice.boundary");
    }
  }
  if (l.contains("include_matter")) c.lattice.include_matter = get_as<bool>(l["include_matter"], "lattice.include_matter");

  if (doc.contains("params")) {
    const json& p = doc["params"];
    ModelParams& mp = c.params;
    if (p.contains("mass")) mp.mass = get_as<double>(p["mass"], "params.mass");
    if (p.contains("epsilon")) mp.epsilon = read_complex(p["epsilon"], "params.epsilon");
    if (p.contains("link_epsilon"))
      for (const auto& [k, v] : p["link_epsilon"].items()) {
        int idx = 0;
        try {
          idx = std::stoi(k);
        } catch (const std::exception&) {
          throw ConfigError("params.link_epsilon: keys are link indices");
        }
        mp.link_epsilon[idx] = read_complex(v, "params.link_epsilon");
      }
    if (p.contains("g")) mp.coupling = get_as<double>(p["g"], "params.g");
    if (p.contains("electric_weights"))
      mp.electric_weights = get_as<std::map<std::string, double>>(p["electric_weights"], "params.electric_weights");
    if (p.contains("magnetic_rep")) mp.magnetic_rep = get_as<std::string>(p["magnetic_rep"], "params.magnetic_rep");
    if (p.contains("staggered")) mp.staggered = get_as<bool>(p["staggered"], "params.staggered");
    if (p.contains("terms")) {
      const auto terms = get_as<std::vector<std::string>>(p["terms"], "params.terms");
      mp.mass_term = mp.tunneling_term = mp.electric_term = mp.magnetic_term = false;
      for (const auto& t : terms) {
        if (t == "mass") mp.mass_term = true;
        else if (t == "tunneling") mp.tunneling_term = true;
        else if (t == "electric") mp.electric_term = true;
        else if (t == "magnetic") mp.magnetic_term = true;
        else throw ConfigError("params.terms: unknown term '" + t + "'");
      }
    }
    if (p.contains("omit_hermitian_conjugate"))
      mp.omit_hermitian_conjugate = get_as<bool>(p["omit_hermitian_conjugate"], "params.omit_hermitian_conjugate");
  }
  if (c.params.coupling == 0.0 && (c.params.electric_term || c.params.magnetic_term))
    throw ConfigError("params.g must be nonzero when electric or magnetic terms are enabled");

  if (doc.contains("basis")) {
    try {
      c.basis = parse_link_basis(get_as<std::string>(doc["basis"], "basis"));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }

  const json& tasks = need(doc, "tasks", "config");
  if (!tasks.is_array() || tasks.empty()) throw ConfigError("tasks: must be a non-empty list");
  for (const auto& t : tasks) c.tasks.push_back(parse_task(t));

  if (doc.contains("seed")) c.seed = get_as<std::uint64_t>(doc["seed"], "seed");
  if (doc.contains("output")) c.output = get_as<std::string>(doc["output"], "output");
  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    if (s.contains("dense_limit")) c.solver.dense_limit = get_as<int>(s["dense_limit"], "solver.dense_limit");
    if (s.contains("tolerance")) c.solver.tolerance = get_as<double>(s["tolerance"], "solver.tolerance");
    if (s.contains("max_iterations")) c.solver.max_iterations = get_as<int>(s["max_iterations"], "solver.max_iterations");
    if (s.contains("krylov_dim")) c.solver.krylov_dim = get_as<int>(s["krylov_dim"], "solver.krylov_dim");
  }
  if (doc.contains("probes")) c.probes = get_as<int>(doc["probes"], "probes");
  if (!c.group.file.empty()) {
    const auto path = std::filesystem::path(source_dir) / c.group.file;
    if (!std::filesystem::exists(c.group.file) && !std::filesystem::exists(path))
      throw ConfigError("group file '" + c.group.file + "' does not exist");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config(ss.str(), dir.empty() ? "." : dir.string());
}

namespace {

ordered_json complex_json(cplx v) {
  if (v.imag() == 0.0) return v.real();
  return ordered_json::array({v.real(), v.imag()});
}

ordered_json sector_json(const std::vector<std::string>& s) {
  if (s.size() == 1) return s.front();
  return s;
}

}  // namespace

std::string config_to_json(const RunConfig& c) {
  ordered_json doc;
  if (!c.group.file.empty()) {
    doc["group"] = {{"file", c.group.file}};
  } else {
    ordered_json g;
    g["builtin"] = c.group.builtin;
    if (!c.group.params.empty()) g["params"] = c.group.params;
    doc["group"] = g;
  }
  doc["lattice"] = {{"Lx", c.lattice.lx},
                    {"Ly", c.lattice.ly},
                    {"boundary", {c.lattice.periodic_x ? "periodic" : "open", c.lattice.periodic_y ? "periodic" : "open"}},
                    {"include_matter", c.lattice.include_matter}};
  ordered_json p;
  const ModelParams& mp = c.params;
  p["mass"] = mp.mass;
  p["epsilon"] = complex_json(mp.epsilon);
  if (!mp.link_epsilon.empty()) {
    ordered_json le;
    for (const auto& [k, v] : mp.link_epsilon) le[std::to_string(k)] = complex_json(v);
    p["link_epsilon"] = le;
  }
  p["g"] = mp.coupling;
  if (!mp.electric_weights.empty()) p["electric_weights"] = mp.electric_weights;
  if (!mp.magnetic_rep.empty()) p["magnetic_rep"] = mp.magnetic_rep;
  p["staggered"] = mp.staggered;
  ordered_json terms = ordered_json::array();
  if (mp.mass_term) terms.push_back("mass");
  if (mp.tunneling_term) terms.push_back("tunneling");
  if (mp.electric_term) terms.push_back("electric");
  if (mp.magnetic_term) terms.push_back("magnetic");
  p["terms"] = terms;
  if (mp.omit_hermitian_conjugate) p["omit_hermitian_conjugate"] = true;
  doc["params"] = p;
  doc["basis"] = to_string(c.basis);
  ordered_json tasks = ordered_json::array();
  for (const auto& t : c.tasks) {
    if (t.kind == "spectrum") {
      tasks.push_back({{"spectrum", {{"k", t.spectrum.k}, {"sector", sector_json(t.spectrum.sector)}}}});
    } else if (t.kind == "observables") {
      tasks.push_back({{"observables",
                        {{"state", t.observables.state},
                         {"names", t.observables.names},
                         {"sector", sector_json(t.observables.sector)}}}});
    } else {
      tasks.push_back(t.kind);
    }
  }
  doc["tasks"] = tasks;
  doc["seed"] = c.seed;
  if (!c.output.empty()) doc["output"] = c.output;
  doc["solver"] = {{"dense_limit", c.solver.dense_limit},
                   {"tolerance", c.solver.tolerance},
                   {"max_iterations", c.solver.max_iterations},
                   {"krylov_dim", c.solver.krylov_dim}};
  doc["probes"] = c.probes;
  return doc.dump(2);
}

CatalogPtr load_catalog(const GroupRef& ref, const std::string& source_dir) {
  try {
    if (!ref.file.empty()) {
      std::string path = ref.file;
      if (!std::filesystem::exists(path)) path = (std::filesystem::path(source_dir) / ref.file).string();
      return std::make_shared<const GroupCatalogEntry>(load_group_file(path));
    }
    return std::make_shared<const GroupCatalogEntry>(build_builtin(ref.builtin, ref.params));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

CatalogPtr load_catalog_reference(const std::string& ref) {
  try {
    if (std::filesystem::exists(ref) && std::filesystem::is_regular_file(ref))
      return std::make_shared<const GroupCatalogEntry>(load_group_file(ref));
    return std::make_shared<const GroupCatalogEntry>(build_from_reference(ref));
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace lgt::app
