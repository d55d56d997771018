#include "divspec/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "divspec/assembly.hpp"
#include "divspec/radial.hpp"

namespace divspec {

using nlohmann::json;

ConfigError::ConfigError(std::string p, const std::string& message)
    : std::runtime_error(p + ": " + message), path(std::move(p)) {}

namespace {

std::string join(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }

// Strict object reader: every key must be consumed, types are checked.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) throw ConfigError(join(path_, key), "missing required field");
    return j_.at(key);
  }

  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError(join(path_, key), "expected a number");
    return v.get<double>();
  }
  double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

  long long integer(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number_integer()) throw ConfigError(join(path_, key), "expected an integer");
    return v.get<long long>();
  }
  long long integer(const std::string& key, long long fallback) { return has(key) ? integer(key) : fallback; }

  std::string string(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError(join(path_, key), "expected a string");
    return v.get<std::string>();
  }
  std::string string(const std::string& key, const std::string& fallback) {
    return has(key) ? string(key) : fallback;
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_boolean()) throw ConfigError(join(path_, key), "expected true or false");
    return v.get<bool>();
  }

  std::vector<double> numbers(const std::string& key, std::size_t count) {
    const json& v = raw(key);
    const std::string p = join(path_, key);
    if (!v.is_array() || v.size() != count)
      throw ConfigError(p, "expected an array of " + std::to_string(count) + " numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i) {
      if (!v[i].is_number()) throw ConfigError(p + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  Reader child(const std::string& key) { return Reader(raw(key), join(path_, key)); }

  std::string path(const std::string& key) const { return join(path_, key); }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(join(path_, it.key()), "unknown field");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

int to_int(long long v, const std::string& path) {
  if (v < -1000000000LL || v > 1000000000LL) throw ConfigError(path, "integer out of range");
  return static_cast<int>(v);
}

DomainSpec read_domain(Reader r) {
  const std::string kind = r.string("kind");
  DomainSpec d;
  try {
    if (kind == "rectangle") {
      const auto w = r.has("widths") ? r.numbers("widths", 2) : std::vector<double>{1.0, 1.0};
      d = DomainSpec::rectangle(w[0], w[1]);
    } else if (kind == "ball") {
      d = DomainSpec::ball(r.number("radius"));
    } else if (kind == "annulus") {
      d = DomainSpec::annulus(r.number("inner"), r.number("outer"));
    } else if (kind == "soliton_annulus") {
      const int l = to_int(r.integer("l"), r.path("l"));
      const double lambda = r.number("lambda");
      const int n = to_int(r.integer("n", 2), r.path("n"));
      d = soliton_annulus_spec(l, lambda, n);
    } else {
      throw ConfigError(r.path("kind"),
                        "unknown domain kind '" + kind + "' (rectangle, ball, annulus, soliton_annulus)");
    }
    d.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(r.path("kind"), e.what());
  }
  r.finish();
  return d;
}

DriftField read_drift(Reader r) {
  const std::string kind = r.string("kind");
  DriftField f;
  if (kind == "constant") {
    f = DriftField::constant(r.number("c", 0.0));
  } else if (kind == "gaussian_soliton") {
    f = DriftField::gaussian_soliton(r.number("lambda"));
  } else if (kind == "partial_isoparametric") {
    const double lambda = r.number("lambda");
    const long long axes = r.integer("axes");
    if (axes != 1 && axes != 2) throw ConfigError(r.path("axes"), "must be 1 or 2");
    f = DriftField::partial_isoparametric(lambda, static_cast<int>(axes));
  } else {
    throw ConfigError(r.path("kind"),
                      "unknown drift kind '" + kind + "' (constant, gaussian_soliton, partial_isoparametric)");
  }
  if (kind != "constant") f = f.shifted(r.number("offset", 0.0));
  r.finish();
  return f;
}

TensorField read_tensor(Reader r) {
  const std::string kind = r.string("kind");
  try {
    TensorField t;
    if (kind == "identity") {
      t = TensorField::identity();
    } else if (kind == "scaled") {
      t = TensorField::scaled(r.number("c"));
    } else if (kind == "diagonal") {
      const auto d = r.numbers("d", 2);
      t = TensorField::diagonal(d[0], d[1]);
    } else if (kind == "affine_conformal") {
      t = TensorField::affine_conformal(r.number("beta"));
    } else if (kind == "constant_symmetric") {
      const json& m = r.raw("matrix");
      const std::string p = r.path("matrix");
      if (!m.is_array() || m.size() != 2) throw ConfigError(p, "expected a 2x2 array");
      Mat2 mat;
      for (int i = 0; i < 2; ++i) {
        if (!m[i].is_array() || m[i].size() != 2) throw ConfigError(p, "expected a 2x2 array");
        for (int j = 0; j < 2; ++j) {
          if (!m[i][j].is_number()) throw ConfigError(p, "expected numbers");
          mat(i, j) = m[i][j].get<double>();
        }
      }
      t = TensorField::constant_symmetric(mat);
    } else {
      throw ConfigError(r.path("kind"), "unknown tensor kind '" + kind +
                                            "' (identity, scaled, diagonal, affine_conformal, constant_symmetric)");
    }
    r.finish();
    return t;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(r.path("kind"), e.what());
  }
}

SolverMethod read_method(const std::string& s, const std::string& path) {
  if (s == "auto") return SolverMethod::automatic;
  if (s == "dense") return SolverMethod::dense;
  if (s == "iterative") return SolverMethod::iterative;
  throw ConfigError(path, "unknown method '" + s + "' (auto, dense, iterative)");
}

// Suite reports for a single k. The lower-order sums do not depend on k and
// are only emitted once.
void add(std::vector<BoundReport>& out, const BoundReport& r) { out.push_back(r); }
void add(std::vector<BoundReport>& out, const std::vector<BoundReport>& rs) {
  out.insert(out.end(), rs.begin(), rs.end());
}

bool is_lower_order(const BoundReport& r) { return r.id.find("lower_order_sum") != std::string::npos; }

void evaluate_suite(const std::string& id, const ExperimentConfig& cfg, const BoundInput& in,
                    std::vector<BoundReport>& out) {
  const int modes = static_cast<int>(in.sigmas.size());
  if (id == "quadratic") {
    for (int k = 1; k < modes; ++k) add(out, eval_thm_quadratic(in, k));
  } else if (id == "lower_order_sum") {
    add(out, lower_order_sum_reports(in));
  } else if (id == "yang") {
    for (int k = 1; k < modes; ++k) add(out, yang_reports(in, k));
  } else if (id == "sharpgap") {
    for (int k = 1; k < modes; ++k) {
      auto [level, gap] = eval_sharpgap(in, k);
      add(out, level);
      add(out, gap);
    }
  } else if (id == "recursion") {
    for (int k = 1; k < modes; ++k) add(out, eval_recursion(in, k));
  } else if (id == "rigidity" || id == "divfree") {
    for (int k = 1; k < modes; ++k) {
      auto rs = id == "rigidity" ? eval_rigidity_suite(in, k) : eval_divfree_suite(in, k);
      for (const auto& r : rs)
        if (k == 1 || !is_lower_order(r)) add(out, r);
    }
  } else if (id == "expanding_ball") {
    if (cfg.domain.kind != DomainKind::ball || cfg.drift.kind() != DriftKind::gaussian_soliton)
      throw ConfigError("suite", "expanding_ball needs a ball domain and a gaussian_soliton drift");
    auto [first, sum] = eval_expanding_ball(in, cfg.domain.radius, cfg.drift.lambda());
    add(out, first);
    add(out, sum);
  } else if (id == "expanding_annulus") {
    if (cfg.drift.kind() != DriftKind::gaussian_soliton)
      throw ConfigError("suite", "expanding_annulus needs a gaussian_soliton drift");
    add(out, eval_expanding_annulus(in, cfg.drift.lambda()));
  }
}

RadialProblem radial_problem(const ExperimentConfig& cfg) {
  RadialProblem p;
  p.inner = cfg.domain.inner_radius();
  p.outer = cfg.domain.outer_radius();
  p.n = cfg.domain.kind == DomainKind::soliton_annulus ? cfg.domain.dimension : 2;
  p.drift.lambda = cfg.drift.kind() == DriftKind::constant ? 0.0 : cfg.drift.lambda();
  p.drift.offset = cfg.drift.offset();
  p.l_max = cfg.l_max;
  p.grid_size = cfg.grid_size;
  return p;
}

// Constants for radial spectra in general n, where no planar mesh exists.
FieldConstants radial_constants(const ExperimentConfig& cfg, int n) {
  FieldConstants c;
  c.eps.value = 1.0;
  c.delta.value = 1.0;
  c.T0.value = 0.0;
  const double lambda = cfg.drift.kind() == DriftKind::constant ? 0.0 : cfg.drift.lambda();
  c.eta0.value = std::abs(lambda) * cfg.domain.outer_radius();
  c.C0.sup_term = lambda == 0.0 ? 0.0 : gaussian_c0(lambda, n, cfg.domain);
  c.C0.coupling_term = 0.0;
  c.C0.value = c.C0.sup_term;
  return c;
}

struct FemSolution {
  Spectrum spectrum;
  ModeQuantities quantities;
};

FemSolution solve_fem(const ExperimentConfig& cfg, const Mesh& mesh) {
  FemSolution out;
  if (cfg.vector_system) {
    const VectorSystem sys = assemble_vector_system(mesh, cfg.tensor, cfg.drift, cfg.alpha);
    out.spectrum = solve_smallest(sys.A, sys.M, cfg.k, cfg.solver);
    out.quantities = mode_quantities(out.spectrum, sys.K, &sys.C, mesh, cfg.tensor, cfg.drift, cfg.alpha);
  } else {
    const SparseSymOperator K = assemble_stiffness(mesh, cfg.tensor, cfg.drift);
    const SparseSymOperator M = assemble_mass(mesh, cfg.drift);
    out.spectrum = solve_smallest(K, M, cfg.k, cfg.solver);
    out.quantities = mode_quantities(out.spectrum, K, nullptr, mesh, cfg.tensor, cfg.drift, 0.0);
  }
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!(alpha >= 0.0)) throw ConfigError("alpha", "must be >= 0");
  if (k < 1) throw ConfigError("k", "must be >= 1");
  if (resolution < 2) throw ConfigError("resolution", "must be >= 2");
  if (!(solver.tol > 0.0)) throw ConfigError("solver.tol", "must be > 0");
  if (solver.max_iterations < 1) throw ConfigError("solver.max_iterations", "must be >= 1");
  if (!(slack >= 0.0)) throw ConfigError("slack", "must be >= 0");
  if (alpha > 0.0 && !vector_system) throw ConfigError("alpha", "a positive alpha needs system = \"vector\"");
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto& ids = suite_ids();
    if (std::find(ids.begin(), ids.end(), suite[i]) == ids.end()) {
      std::string all;
      for (const auto& s : ids) all += (all.empty() ? "" : ", ") + s;
      throw ConfigError("suite[" + std::to_string(i) + "]", "unknown suite '" + suite[i] + "' (" + all + ")");
    }
  }
  if (source == SpectrumSource::radial_oracle) {
    if (!domain.is_polar()) throw ConfigError("spectrum_source", "radial_oracle needs a ball or annulus domain");
    if (vector_system) throw ConfigError("spectrum_source", "radial_oracle supports scalar systems only");
    if (tensor.kind() != TensorKind::identity) throw ConfigError("spectrum_source", "radial_oracle needs T = identity");
    if (drift.kind() == DriftKind::partial_isoparametric)
      throw ConfigError("spectrum_source", "radial_oracle needs a radial drift");
    if (l_max < 0) throw ConfigError("oracle.l_max", "must be >= 0");
    if (grid_size < 4) throw ConfigError("oracle.grid_size", "must be >= 4");
    if (std::find(suite.begin(), suite.end(), "oracle_crosscheck") != suite.end())
      throw ConfigError("suite", "oracle_crosscheck compares a fem spectrum against the oracle");
  } else if (domain.kind == DomainKind::soliton_annulus && domain.dimension != 2) {
    throw ConfigError("domain.n", "fem spectra need n = 2; use spectrum_source = \"radial_oracle\"");
  }
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  Reader r(j, "");
  ExperimentConfig cfg;
  cfg.domain = read_domain(r.child("domain"));
  if (r.has("drift")) cfg.drift = read_drift(r.child("drift"));
  if (r.has("tensor")) cfg.tensor = read_tensor(r.child("tensor"));
  cfg.alpha = r.number("alpha", 0.0);
  cfg.resolution = to_int(r.integer("resolution", cfg.resolution), "resolution");
  cfg.k = to_int(r.integer("k"), "k");
  const std::string system = r.string("system", "scalar");
  if (system != "scalar" && system != "vector") throw ConfigError("system", "expected \"scalar\" or \"vector\"");
  cfg.vector_system = system == "vector";
  const std::string source = r.string("spectrum_source", "fem");
  if (source == "fem")
    cfg.source = SpectrumSource::fem;
  else if (source == "radial_oracle")
    cfg.source = SpectrumSource::radial_oracle;
  else
    throw ConfigError("spectrum_source", "expected \"fem\" or \"radial_oracle\"");
  if (r.has("oracle")) {
    Reader o = r.child("oracle");
    cfg.l_max = to_int(o.integer("l_max", cfg.l_max), "oracle.l_max");
    cfg.grid_size = to_int(o.integer("grid_size", cfg.grid_size), "oracle.grid_size");
    o.finish();
  }
  if (r.has("solver")) {
    Reader s = r.child("solver");
    cfg.solver.tol = s.number("tol", cfg.solver.tol);
    const long long seed = s.integer("seed", static_cast<long long>(cfg.solver.seed));
    if (seed < 0) throw ConfigError("solver.seed", "must be >= 0");
    cfg.solver.seed = static_cast<std::uint64_t>(seed);
    cfg.solver.max_iterations = to_int(s.integer("max_iterations", cfg.solver.max_iterations), "solver.max_iterations");
    cfg.solver.method = read_method(s.string("method", "auto"), "solver.method");
    s.finish();
  }
  if (r.has("suite")) {
    const json& s = r.raw("suite");
    if (!s.is_array()) throw ConfigError("suite", "expected an array of suite ids");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!s[i].is_string()) throw ConfigError("suite[" + std::to_string(i) + "]", "expected a string");
      cfg.suite.push_back(s[i].get<std::string>());
    }
  }
  cfg.output_dir = r.string("output_dir", cfg.output_dir);
  cfg.emit_plots = r.boolean("emit_plots", false);
  cfg.slack = r.number("slack", cfg.slack);
  r.finish();
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("<file>", "cannot read " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids{"quadratic",      "lower_order_sum",   "yang",
                                            "sharpgap",       "recursion",         "rigidity",
                                            "expanding_ball", "expanding_annulus", "divfree",
                                            "oracle_crosscheck"};
  return ids;
}

bool ExperimentResult::all_satisfied() const {
  return std::all_of(reports.begin(), reports.end(), [](const BoundReport& r) { return r.satisfied; });
}

bool ExperimentResult::residuals_ok() const {
  return std::all_of(spectrum.begin(), spectrum.end(),
                     [this](const SpectrumRow& r) { return r.residual <= tolerance; });
}

int ExperimentResult::exit_code() const { return all_satisfied() && residuals_ok() ? 0 : 2; }

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result;
  result.tolerance = cfg.solver.tol;

  BoundInput in;
  in.alpha = cfg.alpha;
  in.slack = cfg.slack;
  std::vector<double> oracle_check;  // fem sigmas for the crosscheck

  if (cfg.source == SpectrumSource::radial_oracle) {
    const RadialProblem p = radial_problem(cfg);
    const RadialSpectrum rs = radial_spectrum(p, cfg.k);
    in.n = p.n;
    in.sigmas = rs.sigmas();
    result.constants.field = radial_constants(cfg, p.n);
    if (p.n == 2) {
      // A planar mesh exists; take the mesh-based constants so provenance is reported the same way.
      const Mesh mesh = build_mesh(cfg.domain, std::max(cfg.resolution, 4));
      result.constants.field = compute_field_constants(cfg.tensor, cfg.drift, mesh);
    }
    for (int i = 0; i < cfg.k; ++i) result.spectrum.push_back({i + 1, in.sigmas[i], 0.0, in.sigmas[i], 0.0});
  } else {
    const Mesh mesh = build_mesh(cfg.domain, cfg.resolution);
    const FemSolution sol = solve_fem(cfg, mesh);
    in.n = 2;
    in.sigmas = sol.spectrum.sigmas;
    in.divnorms = sol.quantities.divnorm;
    result.constants.field = compute_field_constants(cfg.tensor, cfg.drift, mesh);
    for (int i = 0; i < cfg.k; ++i) {
      result.spectrum.push_back({i + 1, sol.spectrum.sigmas[i], sol.quantities.divnorm[i],
                                 sol.quantities.t_energy[i], sol.spectrum.residuals[i]});
    }
  }

  const FieldConstants& fc = result.constants.field;
  in.constants = BoundConstants{fc.eps.value, fc.delta.value, fc.T0.value, fc.eta0.value, fc.C0.value};

  double min_div = in.divnorm(1);
  for (int j = 2; j < cfg.k; ++j) min_div = std::min(min_div, in.divnorm(j));
  result.constants.D0 = -cfg.alpha * min_div + fc.C0.value;
  result.constants.D1 = -cfg.alpha * in.divnorm(1) + fc.C0.value;
  result.constants.has_shifts = true;

  for (const auto& id : suite_ids()) {
    if (std::find(cfg.suite.begin(), cfg.suite.end(), id) == cfg.suite.end()) continue;
    if (id == "oracle_crosscheck") {
      if (cfg.vector_system || !cfg.domain.is_polar())
        throw ConfigError("suite", "oracle_crosscheck needs a scalar problem on a ball or annulus");
      const RadialSpectrum rs = radial_spectrum(radial_problem(cfg), cfg.k);
      for (int i = 0; i < cfg.k; ++i) {
        const double ref = rs.modes[static_cast<std::size_t>(i)].sigma;
        result.reports.push_back(make_report("oracle_agreement", "|s_i(fem) - s_i(radial)| / s_i(radial) <= 0.005",
                                             i + 1, std::abs(in.sigmas[static_cast<std::size_t>(i)] - ref) / ref,
                                             0.005, 0.0));
      }
      continue;
    }
    evaluate_suite(id, cfg, in, result.reports);
  }
  return result;
}

void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir, bool plots) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    return f;
  };
  {
    auto f = open("spectrum.csv");
    write_spectrum_csv(f, result.spectrum);
  }
  {
    auto f = open("bounds.csv");
    write_bounds_csv(f, result.reports);
  }
  {
    auto f = open("constants.json");
    write_constants_json(f, result.constants);
  }
  if (plots) {
    auto f = open("margins.svg");
    write_margins_svg(f, result.reports);
  }
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"square-laplace",     "square-lame",       "anisotropic-square",
                                              "shrinking-rigidity", "expanding-ball",    "expanding-annulus",
                                              "divfree-suite",      "oracle-crosscheck"};
  return names;
}

ExperimentConfig builtin_config(const std::string& name) {
  ExperimentConfig c;
  c.output_dir = name;
  if (name == "square-laplace") {
    c.resolution = 64;
    c.k = 10;
    c.solver.method = SolverMethod::iterative;
    c.suite = {"quadratic", "lower_order_sum", "yang", "sharpgap", "recursion"};
  } else if (name == "square-lame") {
    c.resolution = 24;
    c.k = 8;
    c.alpha = 1.0;
    c.vector_system = true;
    c.suite = {"quadratic", "lower_order_sum", "yang"};
  } else if (name == "anisotropic-square") {
    c.tensor = TensorField::diagonal(2.0, 3.0);
    c.resolution = 64;
    c.k = 8;
    c.solver.method = SolverMethod::iterative;
    c.suite = {"quadratic", "divfree"};
  } else if (name == "shrinking-rigidity") {
    c.domain = soliton_annulus_spec(1, 1.0, 2);
    c.drift = DriftField::gaussian_soliton(1.0);
    c.source = SpectrumSource::radial_oracle;
    c.k = 10;
    c.suite = {"rigidity"};
  } else if (name == "expanding-ball") {
    c.domain = DomainSpec::ball(1.0);
    c.drift = DriftField::gaussian_soliton(-1.0);
    c.resolution = 24;
    c.k = 6;
    c.suite = {"expanding_ball", "lower_order_sum"};
  } else if (name == "expanding-annulus") {
    c.domain = soliton_annulus_spec(1, -1.0, 2);
    c.drift = DriftField::gaussian_soliton(-1.0);
    c.source = SpectrumSource::radial_oracle;
    c.k = 8;
    c.suite = {"expanding_annulus", "lower_order_sum", "yang"};
  } else if (name == "divfree-suite") {
    Mat2 m;
    m << 2.0, 0.5, 0.5, 1.5;
    c.tensor = TensorField::constant_symmetric(m);
    c.drift = DriftField::gaussian_soliton(1.0);
    c.alpha = 0.5;
    c.vector_system = true;
    c.resolution = 20;
    c.k = 8;
    c.suite = {"divfree", "quadratic"};
  } else if (name == "oracle-crosscheck") {
    c.domain = soliton_annulus_spec(1, 1.0, 2);
    c.drift = DriftField::gaussian_soliton(1.0);
    c.resolution = 32;
    c.k = 8;
    c.suite = {"oracle_crosscheck", "rigidity"};
  } else {
    std::string all;
    for (const auto& n : builtin_names()) all += (all.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown builtin case '" + name + "'; available: " + all);
  }
  c.validate();
  return c;
}

std::vector<std::string> dump_matrices(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  cfg.validate();
  const Mesh mesh = build_mesh(cfg.domain, cfg.resolution);
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  auto dump = [&](const char* name, const SparseSymOperator& op) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    write_coordinate(f, op);
    written.emplace_back(name);
  };
  if (cfg.vector_system) {
    const VectorSystem sys = assemble_vector_system(mesh, cfg.tensor, cfg.drift, cfg.alpha);
    dump("A.txt", sys.A);
    dump("M.txt", sys.M);
    dump("K.txt", sys.K);
    dump("C.txt", sys.C);
  } else {
    dump("A.txt", assemble_stiffness(mesh, cfg.tensor, cfg.drift));
    dump("M.txt", assemble_mass(mesh, cfg.drift));
  }
  return written;
}

}  // namespace divspec
