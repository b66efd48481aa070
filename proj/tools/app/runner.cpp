#include "runner.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <lgt/clebsch_gordan.hpp>
#include <lgt/spectra.hpp>
#include <lgt/verify.hpp>

namespace lgt::app {

using nlohmann::ordered_json;

namespace {

ordered_json value_json(cplx v) {
  ordered_json j;
  j["re"] = v.real();
  j["im"] = v.imag();
  return j;
}

ordered_json check_json(const CheckResult& c) {
  ordered_json j;
  j["name"] = c.name;
  j["passed"] = c.passed;
  j["residual"] = c.residual;
  j["tolerance"] = c.tolerance;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

/// Gauss-law sector as a constraint on Krylov vectors (finite groups) or as
/// an explicit kernel basis (Lie groups, dense sizes only).
struct Sector {
  bool active = false;
  std::vector<SparseMatrix> projectors;
  CMatrix lie_basis;
  bool lie = false;
};

Sector make_sector(const Model& model, const std::vector<std::string>& spec, int dense_limit) {
  Sector s;
  if (spec.size() == 1 && spec.front() == "none") return s;
  s.active = true;
  const auto& e = model.catalog();
  const int nv = model.lattice().num_vertices();
  if (!e.is_finite()) {
    if (!(spec.size() == 1 && spec.front() == "trivial"))
      throw ConfigError("Lie groups support only the 'trivial' Gauss sector");
    if (model.dim() > dense_limit)
      throw Error("Lie-group Gauss sector needs dim <= " + std::to_string(dense_limit) + " (kernel of Σ G²)");
    s.lie = true;
    s.lie_basis = kernel_basis(model.gauss_casimir(), 1e-8);
    return s;
  }
  std::vector<std::string> labels;
  if (spec.size() == 1 && spec.front() == "trivial") {
    labels.assign(static_cast<std::size_t>(nv), e.irrep(e.trivial_irrep()).label);
  } else if (static_cast<int>(spec.size()) == nv) {
    labels = spec;
  } else {
    throw ConfigError("sector must be 'none', 'trivial' or one irrep label per vertex");
  }
  for (int v = 0; v < nv; ++v) {
    const int irrep = e.find_irrep(labels[v]);
    if (irrep < 0) throw ConfigError("sector: unknown irrep '" + labels[v] + "'");
    s.projectors.push_back(model.vertex_projector(v, irrep));
  }
  return s;
}

void apply_sector(const Sector& s, CVector& v) {
  for (const auto& p : s.projectors) {
    CVector w(v.size());
    multiply(p, v, w);
    v = std::move(w);
  }
}

EigensolveOptions solver_options(const RunConfig& c) {
  EigensolveOptions o;
  o.seed = c.seed;
  o.dense_limit = c.solver.dense_limit;
  o.tolerance = c.solver.tolerance;
  o.max_iterations = c.solver.max_iterations;
  o.krylov_dim = c.solver.krylov_dim;
  return o;
}

SpectrumResult solve(const SparseMatrix& h, int k, const Sector& sector, EigensolveOptions opts) {
  if (sector.active && sector.lie) return restricted_spectrum(h, sector.lie_basis, k, opts.want_vectors);
  if (sector.active) opts.constraint = [&sector](CVector& v) { apply_sector(sector, v); };
  return eigensolve(h, k, opts);
}

ordered_json spectrum_json(const SpectrumResult& r) {
  ordered_json j;
  j["method"] = r.method;
  j["eigenvalues"] = r.eigenvalues;
  j["residuals"] = r.residuals;
  ordered_json levels = ordered_json::array();
  for (const auto& l : degeneracies(r.eigenvalues)) levels.push_back({{"energy", l.energy}, {"multiplicity", l.multiplicity}});
  j["degeneracies"] = levels;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  return j;
}

ordered_json run_spectrum(const Model& model, const RunConfig& c, const SpectrumTask& t, RunResult& result,
                          bool& failed) {
  ordered_json j;
  j["task"] = "spectrum";
  j["dim"] = model.dim();
  int k = t.k;
  if (k > model.dim()) {
    result.warnings.push_back("spectrum: k = " + std::to_string(k) + " exceeds dim " + std::to_string(model.dim()) +
                              "; clamped");
    k = model.dim();
    j["warning"] = "k clamped to dim";
  }
  j["k"] = k;
  const SparseMatrix h = model.hamiltonian();
  EigensolveOptions opts = solver_options(c);
  opts.want_vectors = false;
  const SpectrumResult full = eigensolve(h, k, opts);
  j["spectrum"] = spectrum_json(full);
  failed = failed || !full.converged;
  const Sector sector = make_sector(model, t.sector, c.solver.dense_limit);
  if (sector.active) {
    const SpectrumResult phys = solve(h, k, sector, opts);
    ordered_json pj = spectrum_json(phys);
    pj["sector"] = t.sector;
    j["physical"] = pj;
    failed = failed || !phys.converged;
  }
  return j;
}

ordered_json run_observables(const Model& model, const RunConfig& c, const ObservablesTask& t, bool& failed) {
  ordered_json j;
  j["task"] = "observables";
  j["state"] = t.state;
  const SparseMatrix h = model.hamiltonian();
  const Sector sector = make_sector(model, t.sector, c.solver.dense_limit);
  CVector state;
  if (t.state == "vacuum") {
    state = model.vacuum();
  } else {
    EigensolveOptions opts = solver_options(c);
    const SpectrumResult r = solve(h, 1, sector, opts);
    if (r.eigenvalues.empty()) throw Error("observables: empty Gauss sector");
    state = r.eigenvectors.col(0);
    j["ground_energy"] = r.eigenvalues.front();
    failed = failed || !r.converged;
  }
  // Fix the global phase so the largest component is real and positive.
  Eigen::Index arg = 0;
  state.cwiseAbs().maxCoeff(&arg);
  state *= std::conj(state(arg)) / std::abs(state(arg));

  std::vector<std::string> names = t.names;
  if (names.empty()) names = {"energy", "electric_energy", "magnetic_energy", "link_occupation"};
  ordered_json values;
  auto record = [&](const std::string& name, cplx v) {
    if (std::abs(v.imag()) > 1e-10) failed = true;
    values[name] = v.real();
  };
  const auto& e = model.catalog();
  for (const auto& name : names) {
    if (name == "energy") {
      record(name, expectation(h, state));
    } else if (name == "mass_energy") {
      record(name, expectation(model.mass_term(), state));
    } else if (name == "tunneling_energy") {
      record(name, expectation(model.tunneling_term(), state));
    } else if (name == "electric_energy") {
      record(name, expectation(model.electric_term(), state));
    } else if (name == "magnetic_energy") {
      record(name, expectation(model.magnetic_term(), state));
    } else if (name == "plaquette") {
      const int np = static_cast<int>(model.lattice().plaquettes().size());
      if (np == 0) throw ConfigError("observable 'plaquette' needs at least one plaquette");
      cplx acc = 0.0;
      for (int p = 0; p < np; ++p) acc += expectation(model.plaquette_trace(p, model.magnetic_irrep()), state);
      values[name] = value_json(acc / static_cast<double>(np));
    } else if (name == "link_occupation") {
      ordered_json occ;
      for (int irrep = 0; irrep < e.num_irreps(); ++irrep) {
        const LinkOperator pj = model.link_space().projector_rep(irrep, model.link_basis());
        cplx acc = 0.0;
        for (int l = 0; l < model.lattice().num_links(); ++l) acc += expectation(model.embed_link(pj, l), state);
        occ[e.irrep(irrep).label] = acc.real() / std::max(1, model.lattice().num_links());
      }
      values[name] = occ;
    } else if (name == "particle_number") {
      if (!model.lattice().include_matter()) throw ConfigError("observable 'particle_number' needs matter");
      cplx acc = 0.0;
      for (int v = 0; v < model.lattice().num_vertices(); ++v)
        acc += expectation(model.embed_vertex(vertex_fock(e, 0).number(), v), state);
      record(name, acc);
    } else if (name == "gauss_violation") {
      if (e.is_finite()) {
        Sector trivial = make_sector(model, {"trivial"}, c.solver.dense_limit);
        CVector p = state;
        apply_sector(trivial, p);
        values[name] = 1.0 - std::pow(norm(p), 2);
      } else {
        record(name, expectation(model.gauss_casimir(), state));
      }
    } else {
      throw ConfigError("unknown observable '" + name + "'");
    }
  }
  j["values"] = values;
  return j;
}

ordered_json run_vortex(const Model& model, bool& failed) {
  ordered_json j;
  j["task"] = "vortex-masses";
  if (!model.catalog().is_finite()) throw ConfigError("vortex-masses needs a finite group");
  const auto masses = vortex_masses(model.link_space().catalog_ptr(), model.magnetic_irrep(), model.params().coupling);
  ordered_json arr = ordered_json::array();
  for (const auto& m : masses) {
    const double diff = std::abs(m.measured - m.predicted);
    const bool ok = diff <= 1e-10;
    failed = failed || !ok;
    arr.push_back({{"class", m.cls},
                   {"representative", m.representative},
                   {"measured", m.measured},
                   {"predicted", m.predicted},
                   {"passed", ok}});
  }
  j["irrep"] = model.catalog().irrep(model.magnetic_irrep()).label;
  j["masses"] = arr;
  return j;
}

}  // namespace

RunResult run(const RunConfig& config, const RunOptions& options) {
  RunResult result;
  const CatalogPtr catalog = load_catalog(config.group, config.source_dir);
  const ValidationReport report = validate(*catalog);
  if (!report.passed()) throw ConfigError("group fails validation: " + report.first_failure()->name);

  std::unique_ptr<Model> model;
  try {
    LatticeSpec lattice(config.lattice.lx, config.lattice.ly, config.lattice.periodic_x, config.lattice.periodic_y,
                        config.lattice.include_matter, config.params.staggered);
    model = std::make_unique<Model>(std::move(lattice), config.params, catalog, config.basis);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }

  std::vector<Task> tasks;
  for (const auto& t : config.tasks)
    if (options.only_kind.empty() || t.kind == options.only_kind) tasks.push_back(t);
  if (tasks.empty()) {
    Task t;
    t.kind = options.only_kind;
    tasks.push_back(t);
  }

  ordered_json doc;
  doc["artifact"] = "lgt";
  doc["version"] = kArtifactVersion;
  doc["seed"] = config.seed;
  // The output path is where the document goes, not part of the result.
  doc["config"] = ordered_json::parse(config_to_json(config));
  doc["config"].erase("output");
  doc["dim"] = model->dim();
  ordered_json outputs = ordered_json::array();
  bool any_failed = false;
  for (const auto& t : tasks) {
    const auto start = std::chrono::steady_clock::now();
    bool failed = false;
    ordered_json out;
    try {
      if (t.kind == "verify") {
        VerifyOptions vo;
        vo.probes = config.probes;
        vo.seed = config.seed;
        vo.dense_limit = config.solver.dense_limit;
        out["task"] = "verify";
        ordered_json checks = ordered_json::array();
        for (const auto& c : verify_model(*model, vo)) {
          failed = failed || !c.passed;
          checks.push_back(check_json(c));
        }
        out["checks"] = checks;
      } else if (t.kind == "spectrum") {
        out = run_spectrum(*model, config, t.spectrum, result, failed);
      } else if (t.kind == "observables") {
        out = run_observables(*model, config, t.observables, failed);
      } else if (t.kind == "vortex-masses") {
        out = run_vortex(*model, failed);
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      out["task"] = t.kind;
      out["error"] = e.what();
      failed = true;
    }
    out["status"] = failed ? "failed" : "ok";
    any_failed = any_failed || failed;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.timings.emplace_back(t.kind, secs);
    if (options.include_timings) out["seconds"] = secs;
    outputs.push_back(out);
  }
  doc["tasks"] = outputs;
  if (!result.warnings.empty()) doc["warnings"] = result.warnings;
  doc["status"] = any_failed ? "failed" : "ok";
  result.document = doc;
  result.exit_code = any_failed ? 1 : 0;
  return result;
}

RunResult group_info(const CatalogPtr& catalog) {
  RunResult r;
  const auto& e = *catalog;
  ordered_json j;
  j["name"] = e.name();
  const ValidationReport rep = validate(e);
  ordered_json irreps = ordered_json::array();
  for (const auto& ir : e.irreps()) irreps.push_back({{"label", ir.label}, {"dim", ir.dim}});
  j["irreps"] = irreps;
  j["fundamental"] = e.irrep(e.fundamental()).label;
  int sum = 0;
  for (const auto& ir : e.irreps()) sum += ir.dim * ir.dim;
  j["sum_dim_squared"] = sum;
  if (e.is_finite()) {
    const GroupSpec& s = e.spec();
    j["order"] = s.order;
    j["regular_check"] = sum == s.order;
    const CharacterTable ct = character_table(e);
    ordered_json classes = ordered_json::array();
    for (int c = 0; c < s.num_classes(); ++c)
      classes.push_back({{"representative", s.element_labels[ct.class_representatives[c]]}, {"size", ct.class_sizes[c]}});
    j["classes"] = classes;
    ordered_json table = ordered_json::array();
    for (std::size_t i = 0; i < ct.chi.size(); ++i) {
      ordered_json row = ordered_json::array();
      for (const auto& v : ct.chi[i]) {
        const double re = std::abs(v.real()) < 1e-12 ? 0.0 : v.real();
        const double im = std::abs(v.imag()) < 1e-12 ? 0.0 : v.imag();
        row.push_back(im == 0.0 ? ordered_json(re) : ordered_json::array({re, im}));
      }
      table.push_back(row);
    }
    j["characters"] = table;
  } else {
    j["truncation"] = e.kind() == GroupKind::SU2 ? half_integer_label(e.cutoff()) : std::to_string(e.cutoff());
    j["link_dim"] = e.rep_space_dim();
  }
  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.checks) checks.push_back(check_json(c));
  j["validation"] = checks;
  j["valid"] = rep.passed();
  if (!rep.passed()) {
    j["first_failure"] = rep.first_failure()->name;
    r.exit_code = 2;
  }
  r.document = j;
  return r;
}

std::string group_info_text(const ordered_json& j) {
  std::ostringstream os;
  os << "group " << j["name"].get<std::string>() << "\n";
  if (j.contains("order")) os << "order " << j["order"] << "\n";
  os << "irreps";
  for (const auto& ir : j["irreps"]) os << "  " << ir["label"].get<std::string>() << "(dim " << ir["dim"] << ")";
  os << "\nsum dim^2 = " << j["sum_dim_squared"] << "\n";
  if (j.contains("classes")) {
    os << "classes " << j["classes"].size() << ":";
    for (const auto& c : j["classes"]) os << "  [" << c["representative"].get<std::string>() << "] x" << c["size"];
    os << "\ncharacter table\n";
    for (std::size_t i = 0; i < j["characters"].size(); ++i) {
      os << "  " << std::setw(6) << j["irreps"][i]["label"].get<std::string>() << " |";
      for (const auto& v : j["characters"][i]) os << " " << std::setw(10) << v.dump();
      os << "\n";
    }
  } else {
    os << "truncation " << j["truncation"].get<std::string>() << ", link dim " << j["link_dim"] << "\n";
  }
  os << "validation: " << (j["valid"].get<bool>() ? "ok" : "FAILED at " + j["first_failure"].get<std::string>()) << "\n";
  return os.str();
}

std::string serialize(const RunResult& r) { return r.document.dump(2) + "\n"; }

}  // namespace lgt::app
