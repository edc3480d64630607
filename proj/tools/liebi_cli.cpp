// liebi: verification suites for Lie bialgebras, Manin triples, loop decay and
// group cocycle integration.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 input or usage error.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "liebi/liebi.hpp"

namespace {

using namespace liebi;
using nlohmann::json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;

struct Output {
  std::string out;
  bool plain = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json parse_file(const std::string& path, std::string& inputs) {
  const std::string text = slurp(path);
  inputs += text;
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw StructuralError("cannot parse '" + path + "': " + e.what());
  }
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw StructuralError("expected a comma-separated integer list, got '" + s + "'");
    }
  }
  if (out.empty()) throw StructuralError("empty integer list");
  return out;
}

int emit(SuiteReport& s, const Output& o, std::chrono::steady_clock::time_point start) {
  s.wall_clock_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const std::string text = to_json(s).dump(2) + "\n";
  if (o.out.empty())
    std::cout << text;
  else
    io::write_text_file(o.out, text);
  const bool ok = s.pass();
  const bool color = !o.plain && isatty(fileno(stderr));
  for (const auto& c : s.checks) {
    if (c.pass) continue;
    std::cerr << "  failed: " << c.check << "\n";
  }
  std::cerr << s.suite << ": " << (color ? (ok ? "\033[32m" : "\033[31m") : "") << (ok ? "PASS" : "FAIL")
            << (color ? "\033[0m" : "") << " (" << s.checks.size() << " checks)\n";
  return ok ? kPass : kFail;
}

CheckReport refused(const std::string& name, const std::string& why) {
  CheckReport r;
  r.check = name;
  r.pass = false;
  r.notes["refused"] = why;
  return r;
}

// verify ----------------------------------------------------------------------

struct VerifyArgs {
  std::string target;
  std::string catalog;
  std::string weights;
  std::string weighting_file;
  std::string algebra_file;
  std::string bialgebra_file;
  int modes = -1;
  double tol = 1e-10;
};

void verify_weighted(const TorusWeighting& w, const std::optional<TraceState>& state, const Mat* form, double tol,
                     SuiteReport& s) {
  CheckReport wr = check_weighting(w, tol);
  s.checks.push_back(wr);
  if (state) s.checks.push_back(state->check(w, tol));
  if (!wr.pass) {
    s.checks.push_back(refused("manin", "weighting is not a torus grading with abelian zero mode"));
    return;
  }
  try {
    const ManinTriple t = state ? build_double_manin(w, *state, tol) : build_double_manin(w, *form, tol);
    s.checks.push_back(verify_manin(t, tol));
  } catch (const RefusedError& e) {
    s.checks.push_back(refused("manin", e.what()));
  }
}

int cmd_verify_manin(const VerifyArgs& a, SuiteReport& s, std::string& inputs) {
  if (!a.weighting_file.empty()) {
    const json j = parse_file(a.weighting_file, inputs);
    const io::WeightingFile f = io::weighting_from_json(j);
    if (f.realization) {
      const TraceState state(MatrixRealization(f.weighting.algebra, *f.realization));
      verify_weighted(f.weighting, state, nullptr, a.tol, s);
      return kPass;
    }
    std::optional<Mat> form = f.weighting.algebra->form();
    if (!form) throw StructuralError("weighting file needs a form or a realization");
    verify_weighted(f.weighting, std::nullopt, &*form, a.tol, s);
    return kPass;
  }
  if (a.catalog.empty()) throw StructuralError("verify manin needs --catalog or --weighting");
  inputs += "catalog:" + a.catalog + ";weights:" + a.weights + ";modes:" + std::to_string(a.modes);
  if (a.catalog == "witt" || a.catalog == "sl2-loop") {
    const int N = a.modes < 0 ? (a.catalog == "witt" ? 4 : 2) : a.modes;
    const LoopManin lm = a.catalog == "witt" ? catalog::witt(N) : catalog::sl2_loop(N);
    s.checks.push_back(check_weighting(lm.weighting, a.tol));
    s.checks.push_back(verify_manin(lm.triple, a.tol));
    return kPass;
  }
  std::vector<int> k;
  if (!a.weights.empty()) k = parse_ints(a.weights);
  catalog::MatrixAlgebra m = catalog::matrix_algebra_by_name(a.catalog, catalog::matrix_size(a.catalog) ? k : std::vector<int>{});
  std::vector<int> w = m.weights;
  if (!k.empty() && !catalog::matrix_size(a.catalog)) {
    if (k.size() != m.algebra->dim()) throw StructuralError("--weights needs one weight per basis element");
    w = k;
  }
  verify_weighted(TorusWeighting(m.algebra, w), TraceState(m.realization), nullptr, a.tol, s);
  return kPass;
}

struct LoadedBialgebra {
  Bialgebra bi;
  std::optional<GroupModel> model;
  std::optional<ManinTriple> source;
};

LoadedBialgebra load_bialgebra(const std::string& name, const std::string& file, std::string& inputs) {
  if (!file.empty()) {
    const json j = parse_file(file, inputs);
    io::BialgebraFile f = io::bialgebra_from_json(j);
    std::optional<GroupModel> model;
    if (f.realization) model.emplace(f.group, f.bi, MatrixRealization(f.bi.g(), *f.realization));
    return LoadedBialgebra{f.bi, std::move(model), std::nullopt};
  }
  if (name.empty()) throw StructuralError("need --catalog or --bialgebra");
  inputs += "catalog:" + name;
  catalog::BialgebraEntry e = catalog::bialgebra(name);
  return LoadedBialgebra{e.model.bi, e.model, e.source};
}

void bialgebra_suite(const LoadedBialgebra& b, double tol, SuiteReport& s) {
  s.checks.push_back(check_jacobi(*b.bi.g(), tol));
  s.checks.push_back(check_cocycle(b.bi, tol));
  s.checks.push_back(dual_bracket(b.bi, tol).jacobi);
  const ToManin tm = to_manin(b.bi, tol);
  CheckReport dj = tm.jacobi;
  dj.check = "double_jacobi";
  s.checks.push_back(dj);
  CheckReport vm = verify_manin(tm.triple, tol);
  vm.check = "double_manin";
  s.checks.push_back(vm);
  if (b.source) {
    const FromManin fm = from_manin(*b.source, {}, tol);
    Mat T(b.source->p1.rows(), b.source->p1.rows());
    T << b.source->p1, fm.dual_basis;
    s.checks.push_back(double_isomorphism_residual(tm.triple, *b.source, T, tol));
  }
}

int cmd_verify(const VerifyArgs& a, const Output& o) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport s;
  s.suite = "verify " + a.target;
  std::string inputs = a.target + ";";
  if (a.target == "manin") {
    cmd_verify_manin(a, s, inputs);
  } else if (a.target == "jacobi") {
    if (!a.algebra_file.empty()) {
      const LieAlgebra g = io::algebra_from_json(parse_file(a.algebra_file, inputs));
      s.checks.push_back(check_jacobi(g, a.tol));
    } else if (!a.catalog.empty()) {
      inputs += "catalog:" + a.catalog;
      if (a.catalog == "witt" || a.catalog == "sl2-loop") {
        const int N = a.modes < 0 ? 4 : a.modes;
        const LoopManin lm = a.catalog == "witt" ? catalog::witt(N) : catalog::sl2_loop(N);
        s.checks.push_back(check_jacobi(*lm.truncated, a.tol));
      } else {
        s.checks.push_back(check_jacobi(*catalog::matrix_algebra_by_name(a.catalog).algebra, a.tol));
      }
    } else {
      throw StructuralError("verify jacobi needs --algebra or --catalog");
    }
  } else if (a.target == "cocycle") {
    const LoadedBialgebra b = load_bialgebra(a.catalog, a.bialgebra_file, inputs);
    s.checks.push_back(check_cocycle(b.bi, a.tol));
  } else if (a.target == "bialgebra") {
    bialgebra_suite(load_bialgebra(a.catalog, a.bialgebra_file, inputs), a.tol, s);
  } else {
    throw StructuralError("unknown verify target '" + a.target + "'");
  }
  s.inputs_digest = digest(inputs);
  return emit(s, o, start);
}

// fourier ---------------------------------------------------------------------

struct FourierArgs {
  std::string catalog;
  std::string loop_file;
  double param = 0.5;
  int modes = 16;
  std::string regime;
  int samples = 256;
  std::string csv;
};

// Scalar loop sum_{|m| <= M} c_m e^{im theta} over a one-dimensional abelian base.
LoopElement scalar_loop(const std::function<double(int)>& coeff, int M) {
  LoopAlgebraPtr L = LoopAlgebra::current(share(LieAlgebra::abelian(1, Field::complex, {"x"})));
  std::map<int, Vec> modes;
  for (int m = -M; m <= M; ++m) {
    Vec v(1);
    v[0] = coeff(m);
    modes[m] = v;
  }
  return loop_element(L, std::move(modes));
}

int cmd_fourier(const FourierArgs& a, const Output& o) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport s;
  s.suite = "fourier";
  std::string inputs;
  if (a.samples < 1) throw StructuralError("--samples must be positive");
  const auto S = static_cast<std::size_t>(a.samples);
  const int nyq = (a.samples - 1) / 2;
  if (a.modes > nyq)
    throw RefusedError("--modes " + std::to_string(a.modes) + " exceeds the Nyquist limit " + std::to_string(nyq) +
                       " of " + std::to_string(a.samples) + " samples");
  if (a.modes < 1) throw StructuralError("--modes must be positive");

  LoopElement loop;
  std::optional<double> expected;
  DecayRegime regime = DecayRegime::analytic;
  if (!a.loop_file.empty()) {
    loop = io::loop_from_json(parse_file(a.loop_file, inputs));
    if (loop.support_bound() > nyq) throw RefusedError("loop support exceeds the Nyquist limit of the sample");
    if (a.regime.empty()) throw StructuralError("--regime is required with --loop");
  } else if (a.catalog == "geometric") {
    const double r = std::exp(-a.param);
    loop = scalar_loop([r](int m) { return std::pow(r, std::abs(m)); }, nyq);
    expected = a.param;
  } else if (a.catalog == "smooth") {
    const double k = a.param;
    loop = scalar_loop([k](int m) { return m == 0 ? 1.0 : std::pow(std::abs(static_cast<double>(m)), -k); }, nyq);
    expected = k;
    regime = DecayRegime::smooth;
  } else if (a.catalog == "constant") {
    loop = scalar_loop([](int m) { return m == 0 ? 1.0 : 0.0; }, 0);
  } else {
    throw StructuralError("fourier needs --loop or --catalog geometric|smooth|constant");
  }
  if (!a.regime.empty()) {
    if (a.regime == "smooth")
      regime = DecayRegime::smooth;
    else if (a.regime == "analytic")
      regime = DecayRegime::analytic;
    else
      throw StructuralError("--regime must be smooth or analytic");
  }
  inputs += "catalog:" + a.catalog + ";param:" + std::to_string(a.param) + ";modes:" + std::to_string(a.modes) +
            ";samples:" + std::to_string(a.samples) + ";regime:" + to_string(regime);

  const SampledLoop sl = sample(loop, S);
  std::vector<int> modes;
  for (int m = 0; m <= a.modes; ++m) modes.push_back(m);

  CheckReport spectrum;
  spectrum.check = "spectrum";
  spectrum.tol = kDecayFloor;
  double tail = 0.0;
  for (int m = 1; m <= a.modes; ++m)
    tail = std::max({tail, fourier_project(sl, m).norm(), fourier_project(sl, -m).norm()});
  spectrum.residuals["max_nonzero_mode_norm"] = tail;
  spectrum.residuals["mode0_norm"] = fourier_project(sl, 0).norm();
  spectrum.pass = a.catalog != "constant" || tail < kDecayFloor;
  s.checks.push_back(spectrum);

  std::optional<DecayReport> fit;
  try {
    fit = decay_fit(sl, modes, regime);
  } catch (const RefusedError& e) {
    if (a.catalog != "constant" && !(a.catalog.empty() && tail < kDecayFloor))
      s.checks.push_back(refused("decay_fit", e.what()));
  }
  if (fit) {
    CheckReport c;
    c.check = "decay_fit";
    c.residuals["slope"] = fit->slope;
    c.residuals["intercept"] = fit->intercept;
    c.residuals["fitted"] = fit->fitted;
    c.residuals["fit_residual"] = fit->residual;
    c.notes["regime"] = to_string(regime);
    c.notes["fitted"] = regime == DecayRegime::smooth ? "k" : "log rho";
    c.pass = std::isfinite(fit->fitted);
    if (expected) {
      c.residuals["expected"] = *expected;
      const double err = std::abs(fit->fitted - *expected);
      c.residuals["error"] = err;
      c.tol = regime == DecayRegime::smooth ? 0.3 : 0.05 * std::abs(*expected);
      c.pass = err <= c.tol;
    }
    s.checks.push_back(c);
    if (!a.csv.empty()) io::write_text_file(a.csv, io::decay_csv(*fit));
  } else if (!a.csv.empty()) {
    DecayReport flat;
    flat.regime = regime;
    flat.modes = modes;
    for (int m : modes) flat.norms[m] = fourier_project(sl, m).norm();
    flat.intercept = -std::numeric_limits<double>::infinity();
    io::write_text_file(a.csv, io::decay_csv(flat));
  }
  if (a.catalog == "smooth" && a.param > 1.0) {
    const int k = static_cast<int>(std::floor(a.param));
    if (k >= 2) {
      CheckReport t;
      t.check = "tail_bound";
      t.tol = 0.1;
      const double err = partial_sum_error(sl, a.modes);
      const double bound = tail_bound(seminorm(sl, k), k, a.modes);
      t.residuals["partial_sum_error"] = err;
      t.residuals["bound"] = bound;
      t.residuals["ratio"] = err / bound;
      t.pass = err <= bound * (1.0 + t.tol);
      s.checks.push_back(t);
    }
  }
  s.inputs_digest = digest(inputs);
  return emit(s, o, start);
}

// integrate -------------------------------------------------------------------

struct IntegrateArgs {
  std::string catalog;
  std::string bialgebra_file;
  std::string path_file;
  std::string path2_file;
  int steps = 400;
  std::string check = "pathindep";
  bool force = false;
  double tol = 1e-6;
};

// Smooth nonconstant default path x_i(t) = 0.5 cos((i+1) t) + 0.1 i.
AlgebraPath default_path(std::size_t d, double phase = 0.0) {
  return AlgebraPath(d, [d, phase](double t) {
    Vec x(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i)
      x[static_cast<Eigen::Index>(i)] = 0.5 * std::cos(static_cast<double>(i + 1) * t + phase) + 0.1 * static_cast<double>(i);
    return x;
  });
}

int cmd_integrate(const IntegrateArgs& a, const Output& o) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport s;
  s.suite = "integrate " + a.check;
  s.steps = a.steps;
  std::string inputs = a.check + ";steps:" + std::to_string(a.steps) + ";";
  const std::string name = a.bialgebra_file.empty() && a.catalog.empty() ? "sl2" : a.catalog;
  LoadedBialgebra b = load_bialgebra(name, a.bialgebra_file, inputs);
  if (!b.model) throw StructuralError("integration needs a matrix realization of the algebra");
  const GroupModel& m = *b.model;
  const std::size_t d = m.bi.dim();
  if (a.steps < 4 || a.steps % 4 != 0) throw StructuralError("--steps must be a positive multiple of 4");

  CheckReport cc = check_cocycle(m.bi);
  if (!cc.pass && !a.force) {
    cc.notes["integrate"] = "not run: cobracket fails the cocycle condition (use --force)";
    s.checks.push_back(cc);
    s.inputs_digest = digest(inputs);
    return emit(s, o, start);
  }

  AlgebraPath path = default_path(d);
  if (!a.path_file.empty()) path = io::path_from_json(parse_file(a.path_file, inputs), d);
  AlgebraPath path2 = default_path(d, 1.0).scaled(0.5);
  if (!a.path2_file.empty()) path2 = io::path_from_json(parse_file(a.path2_file, inputs), d);

  const auto base = integrate_cocycle(m, path, a.steps);
  CheckReport th;
  th.check = "theta";
  th.tol = a.tol;
  th.residuals["theta_max_abs"] = base.theta.cwiseAbs().maxCoeff();
  th.residuals["group_constraint"] = group_constraint_residual(base.g0.matrix, m.group);
  th.pass = th.residuals["group_constraint"] <= a.tol;
  s.checks.push_back(th);

  if (a.check == "cocycle") {
    s.checks.push_back(check_group_cocycle(m, path, path2, a.steps, a.tol));
  } else if (a.check == "multiplicative") {
    s.checks.push_back(multiplicativity_residual(m, path, path2, a.steps, a.tol));
  } else if (a.check == "pathindep") {
    Vec Y = Vec::Ones(static_cast<Eigen::Index>(d)) / std::sqrt(static_cast<double>(d));
    s.checks.push_back(check_path_independence(m, path, detour(m.realization, path, Y), a.steps, a.tol));
  } else if (a.check == "jacobiator") {
    s.checks.push_back(jacobiator_check(m, path, a.steps));
  } else {
    throw StructuralError("unknown --check '" + a.check + "'");
  }
  s.inputs_digest = digest(inputs);
  return emit(s, o, start);
}

int cmd_catalog_list() {
  std::cout << "algebras:";
  for (const auto& n : catalog::algebra_names()) std::cout << " " << n;
  std::cout << "\nbialgebras:";
  for (const auto& n : catalog::bialgebra_names()) std::cout << " " << n;
  std::cout << "\nloops: geometric smooth constant\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie bialgebra and Manin triple verification"};
  app.require_subcommand(1);
  Output out;
  app.add_flag("--plain", out.plain, "Plain output without color");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("target", va.target, "manin | bialgebra | jacobi | cocycle")
      ->required()
      ->check(CLI::IsMember({"manin", "bialgebra", "jacobi", "cocycle"}));
  verify->add_option("--catalog", va.catalog, "Catalog algebra or bialgebra name");
  verify->add_option("--weights", va.weights, "Comma-separated diagonal weights k_i for M_n");
  verify->add_option("--weighting", va.weighting_file, "Weighting JSON file");
  verify->add_option("--algebra", va.algebra_file, "Algebra JSON file");
  verify->add_option("--bialgebra", va.bialgebra_file, "Bialgebra JSON file");
  verify->add_option("--modes", va.modes, "Truncation N for loop catalogs");
  verify->add_option("--tol", va.tol, "Residual tolerance");
  verify->add_option("--out", out.out, "Write the JSON report here");

  FourierArgs fa;
  auto* fourier = app.add_subcommand("fourier", "Fourier decay table and fit");
  fourier->add_option("--catalog", fa.catalog, "geometric | smooth | constant");
  fourier->add_option("--param", fa.param, "log rho for geometric, k for smooth");
  fourier->add_option("--loop", fa.loop_file, "Loop JSON file");
  fourier->add_option("--modes", fa.modes, "Largest mode N in the table");
  fourier->add_option("--regime", fa.regime, "smooth | analytic");
  fourier->add_option("--samples", fa.samples, "Number of grid samples S");
  fourier->add_option("--csv", fa.csv, "Write the decay table here");
  fourier->add_option("--out", out.out, "Write the JSON report here");

  IntegrateArgs ia;
  auto* integrate = app.add_subcommand("integrate", "Integrate the group cocycle along paths");
  integrate->add_option("--catalog", ia.catalog, "Catalog bialgebra name (default sl2)");
  integrate->add_option("--bialgebra", ia.bialgebra_file, "Bialgebra JSON file with realization");
  integrate->add_option("--path", ia.path_file, "Path JSON file");
  integrate->add_option("--path2", ia.path2_file, "Second path for cocycle and multiplicative checks");
  integrate->add_option("--steps", ia.steps, "RK4 steps K (multiple of 4)");
  integrate->add_option("--check", ia.check, "cocycle | pathindep | multiplicative | jacobiator")
      ->check(CLI::IsMember({"cocycle", "pathindep", "multiplicative", "jacobiator"}));
  integrate->add_option("--tol", ia.tol, "Residual tolerance");
  integrate->add_flag("--force", ia.force, "Integrate even if the cobracket is not a cocycle");
  integrate->add_option("--out", out.out, "Write the JSON report here");

  auto* cat = app.add_subcommand("catalog", "Catalog queries");
  cat->add_subcommand("list", "List catalog entries");
  cat->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInput;
  }

  try {
    if (*verify) return cmd_verify(va, out);
    if (*fourier) return cmd_fourier(fa, out);
    if (*integrate) return cmd_integrate(ia, out);
    if (*cat) return cmd_catalog_list();
  } catch (const liebi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
