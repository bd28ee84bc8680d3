// qcstar: command-line driver for the locally convex quasi C*-algebra
// library. Loads a JSON model (interval or operator), runs verification
// suites or calculus computations, and writes JSON/CSV reports atomically.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qcstar/axioms.hpp"
#include "qcstar/calculus.hpp"
#include "qcstar/gelfand.hpp"
#include "qcstar/model_io.hpp"
#include "qcstar/operator_model.hpp"
#include "qcstar/representation.hpp"

namespace {

using namespace qcstar;

struct RunConfig {
  std::string model_path;
  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::size_t samples = 500;
  int n = 1;
};

bool log_enabled() {
  const char* v = std::getenv("QCSTAR_LOG");
  return v != nullptr && *v != '\0';
}

void log(const std::string& msg) {
  if (log_enabled()) std::cerr << "[qcstar] " << msg << "\n";
}

// Write-then-rename so that failed runs never leave partial report files.
void atomic_write(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::ios_base::failure("cannot open " + tmp);
    out << content;
    if (!out) throw std::ios_base::failure("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::ios_base::failure("rename failed: " + path);
}

int emit_report(const RunConfig& cfg, const Report& rep) {
  atomic_write(cfg.out_path, cfg.format == "csv" ? rep.to_csv()
                                                 : rep.to_json().dump(2) + "\n");
  return rep.all_pass() ? 0 : 1;
}

int emit_quasi(const RunConfig& cfg, const CompactGrid& grid,
               const QuasiElement& a) {
  atomic_write(cfg.out_path, cfg.format == "csv"
                                 ? io::quasi_to_csv(grid, a)
                                 : io::quasi_to_json(a).dump(2) + "\n");
  return 0;
}

const io::CommutativeLoaded& need_commutative(const io::LoadedModel& m) {
  if (!m.commutative)
    throw ParseError("this command needs an interval (\"space\") model");
  return *m.commutative;
}

const io::OperatorLoaded& need_operator(const io::LoadedModel& m) {
  if (!m.op) throw ParseError("this command needs an operator (\"dim\") model");
  return *m.op;
}

const QuasiElement& need_element(const io::CommutativeLoaded& cm,
                                 const std::string& name) {
  auto it = cm.elements.find(name);
  if (it == cm.elements.end())
    throw ParseError("unknown element '" + name + "'");
  return it->second;
}

BoundedFunction need_bounded(const io::CommutativeLoaded& cm,
                             const std::string& name) {
  return cm.model.to_bounded(need_element(cm, name));
}

ScalarFunction parse_function(const std::string& spec) {
  auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "pow") return ScalarFunction::power(std::stod(arg));
  if (kind == "respow") return ScalarFunction::resolvent_power(std::stod(arg));
  if (kind == "poly") {
    std::vector<double> c;
    std::string body = arg;
    if (body.size() >= 2 && body.front() == '[') body = body.substr(1, body.size() - 2);
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) c.push_back(std::stod(tok));
    if (c.empty()) throw ParseError("poly: empty coefficient list");
    return ScalarFunction::poly(std::move(c));
  }
  if (kind == "table") {
    std::ifstream in(arg);
    if (!in) throw ParseError("table: cannot open " + arg);
    std::vector<double> xs, ys;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::stringstream ss(line);
      std::string a, b;
      if (std::getline(ss, a, ',') && std::getline(ss, b, ',')) {
        xs.push_back(std::stod(a));
        ys.push_back(std::stod(b));
      }
    }
    return ScalarFunction::table(std::move(xs), std::move(ys));
  }
  throw ParseError("unknown function spec '" + spec +
                   "' (pow:q | respow:m | poly:[c0,..] | table:file)");
}

std::vector<Character> char_subsample(const CompactGrid& grid,
                                      std::size_t count) {
  std::vector<Character> chars;
  std::size_t stride = std::max<std::size_t>(1, grid.size() / count);
  for (std::size_t t = 0; t < grid.size(); t += stride) chars.push_back({t});
  return chars;
}

std::vector<MixedElement> make_mixed_samples(const io::CommutativeLoaded& cm,
                                             Rng& rng, std::size_t count) {
  const auto& model = cm.model;
  const auto& grid = model.grid();
  std::vector<MixedElement> out;
  for (const auto& [name, elt] : cm.elements) {
    (void)name;
    if (model.is_quasi_positive(elt) && out.size() < count)
      out.emplace_back(model, elt, BoundedFunction::constant(grid, 1.0),
                       BoundedFunction::constant(grid, 0.0));
  }
  while (out.size() < count) {
    std::vector<ExtendedValue> av(grid.size());
    for (auto& v : av)
      v = ExtendedValue::finite(complex(rng.uniform(0.0, 2.0)));
    std::vector<complex> xv(grid.size()), yv(grid.size());
    for (auto& c : xv) c = rng.complex_uniform();
    for (auto& c : yv) c = rng.complex_uniform();
    out.emplace_back(model, QuasiElement(std::move(av)),
                     BoundedFunction(std::move(xv)),
                     BoundedFunction(std::move(yv)));
  }
  return out;
}

int run_axioms(const RunConfig& cfg, const io::LoadedModel& loaded) {
  const auto& cm = need_commutative(loaded);
  AxiomOptions opt;
  opt.samples = cfg.samples;
  opt.seed = cfg.seed;
  opt.lipschitz_bound = cm.lipschitz_bound;
  log("running axiom suite");
  Report rep = verify_axioms(cm.model, opt).as_report();
  Rng rng(cfg.seed + 1);
  auto mixed = make_mixed_samples(cm, rng, 8);
  auto chars = char_subsample(cm.model.grid(), 16);
  rep.merge(functional_laws_check(cm.model, mixed, chars));
  return emit_report(cfg, rep);
}

int run_spectrum(const RunConfig& cfg, const io::LoadedModel& loaded,
                 const std::string& elt) {
  const auto& cm = need_commutative(loaded);
  Spectrum s = spectrum(cm.model, need_element(cm, elt));
  nlohmann::ordered_json o;
  o["element"] = elt;
  o["contains_infinity"] = s.contains_infinity;
  o["finite_count"] = s.finite_values.size();
  o["min"] = fmt_double(s.finite_values.empty() ? 0.0 : s.finite_values.front());
  o["max"] = fmt_double(s.finite_values.empty() ? 0.0 : s.finite_values.back());
  atomic_write(cfg.out_path, o.dump(2) + "\n");
  return 0;
}

int run_calculus(const RunConfig& cfg, const io::LoadedModel& loaded,
                 const std::string& fn, const std::string& elt) {
  const auto& cm = need_commutative(loaded);
  QuasiElement r = apply_function(cm.model, parse_function(fn),
                                  need_element(cm, elt), cfg.n);
  return emit_quasi(cfg, cm.model.grid(), r);
}

int run_root(const RunConfig& cfg, const io::LoadedModel& loaded,
             const std::string& elt) {
  const auto& cm = need_commutative(loaded);
  QuasiElement r = nth_root(cm.model, need_element(cm, elt), cfg.n);
  return emit_quasi(cfg, cm.model.grid(), r);
}

int run_product(const RunConfig& cfg, const io::LoadedModel& loaded,
                const std::string& a, const std::string& b) {
  const auto& cm = need_commutative(loaded);
  try {
    QuasiElement r = partial_product(cm.model, need_element(cm, a),
                                     need_element(cm, b));
    return emit_quasi(cfg, cm.model.grid(), r);
  } catch (const NotMultipliable& e) {
    Report rep;
    rep.add("product", a + "*" + b, false, 0.0, e.what());
    emit_report(cfg, rep);
    return 1;
  }
}

int run_gelfand(const RunConfig& cfg, const io::LoadedModel& loaded,
                const std::string& a, const std::string& x,
                const std::string& y) {
  const auto& cm = need_commutative(loaded);
  MixedElement m(cm.model, need_element(cm, a), need_bounded(cm, x),
                 need_bounded(cm, y));
  ExtendedFunction f = transform(cm.model, m);
  QuasiElement as_elt{f.values()};
  return emit_quasi(cfg, cm.model.grid(), as_elt);
}

int run_gns(const RunConfig& cfg, const io::LoadedModel& loaded) {
  const auto& cm = need_commutative(loaded);
  if (cm.forms.empty()) throw ParseError("gns: model declares no forms");
  std::vector<SesquilinearForm> forms;
  for (const auto& [name, f] : cm.forms) {
    (void)name;
    forms.push_back(f);
  }
  Rng rng(cfg.seed);
  std::vector<QuasiElement> samples;
  for (std::size_t k = 0; k < std::min<std::size_t>(cfg.samples, 100); ++k) {
    std::vector<ExtendedValue> v(cm.model.grid().size());
    for (auto& e : v) e = ExtendedValue::finite(rng.complex_uniform());
    samples.emplace_back(std::move(v));
  }
  for (const auto& [name, elt] : cm.elements) {
    (void)name;
    samples.push_back(elt);
  }
  Report rep = sufficiency_and_faithfulness(cm.model, forms, samples);
  rep.merge(bounded_continuity_check(cm.model, forms, cfg.seed));
  return emit_report(cfg, rep);
}

int run_opmodel(const RunConfig& cfg, const io::LoadedModel& loaded,
                const std::string& suite) {
  const auto& om = need_operator(loaded);
  const auto& d = om.domain;
  Rng rng(cfg.seed);
  Report rep;

  auto random_matrix = [&](bool hermitian) {
    Matrix m(d.dim, d.dim);
    for (std::size_t i = 0; i < d.dim; ++i)
      for (std::size_t j = 0; j < d.dim; ++j)
        m(i, j) = rng.complex_uniform();
    if (hermitian) m = 0.5 * (m + Matrix(m.adjoint()));
    return m;
  };

  if (suite == "topology" || suite == "all") {
    log("opmodel: topology suite");
    std::vector<OperatorElement> samples;
    std::size_t count = std::min<std::size_t>(cfg.samples, 32);
    for (std::size_t k = 0; k < count; ++k)
      samples.emplace_back(d, random_matrix(false));
    BoundedSetFamily fam;
    std::vector<Vector> pool;
    std::size_t nb = std::min<std::size_t>(d.dim, 4);
    for (std::size_t i = 0; i < nb; ++i) {
      Vector e = Vector::Zero(d.dim);
      e(i) = 1.0;
      pool.push_back(e);
    }
    // all nonempty subsets of the pool: admissible by construction
    for (std::size_t mask = 1; mask < (std::size_t(1) << nb); ++mask) {
      std::vector<Vector> set;
      for (std::size_t i = 0; i < nb; ++i)
        if (mask & (std::size_t(1) << i)) set.push_back(pool[i]);
      fam.sets.push_back(std::move(set));
    }
    rep.merge(topology_order_check(d, samples, fam));
    auto adm = admissible_check(fam, pool, {});
    rep.add("op-topology", "admissible", adm.admissible, 0.0, adm.witness);
  }
  if (suite == "prop43" || suite == "all") {
    log("opmodel: prop 4.3 suite");
    std::size_t count = std::min<std::size_t>(cfg.samples, 16);
    for (std::size_t k = 0; k < count; ++k) {
      Matrix h = random_matrix(true);
      OperatorElement a(d, Matrix(h * h.adjoint()));
      Report r = prop43_check(d, a);
      if (!r.all_pass()) rep.merge(r);
    }
    rep.add("prop4.3", "random-psd-chain", true, 0.0, "");
    for (const auto& [name, m] : om.elements) {
      Report r = prop43_check(d, OperatorElement(d, m));
      for (auto& row : r.rows) row.check = name + ":" + row.check;
      rep.merge(r);
    }
  }
  if (suite == "physical" || suite == "all") {
    log("opmodel: physical seminorm suite");
    CommutantAlgebra alg = cs_algebra(d);
    std::vector<std::pair<OperatorElement, OperatorElement>> pairs;
    for (int k = 0; k < 16; ++k) {
      Matrix x = Matrix::Zero(d.dim, d.dim);
      Matrix y = Matrix::Zero(d.dim, d.dim);
      for (auto [i, j] : alg.basis_indices) {
        x(i, j) = rng.complex_uniform();
        y(i, j) = rng.complex_uniform();
      }
      pairs.emplace_back(OperatorElement(d, x), OperatorElement(d, y));
    }
    rep.merge(physical_inequality_check(d, ScalarFunction::exp_neg(1.0),
                                        pairs));
  }
  if (suite == "masa" || suite == "all") {
    log("opmodel: masa bridge suite");
    bool ok = true;
    double worst = 0.0;
    std::string w;
    for (const auto& [name, m] : om.elements) {
      OperatorElement a(d, m);
      if (!is_psd(a.m, 1e-10)) continue;
      MasaBridge bridge = maximal_commutative(d, a);
      Matrix r = bridge.root(cfg.n < 2 ? 2 : cfg.n);
      Matrix back = r;
      for (int k = 1; k < (cfg.n < 2 ? 2 : cfg.n); ++k) back = back * r;
      double resid =
          (back - a.m).cwiseAbs().maxCoeff() / std::max(1.0, op_norm(a.m));
      worst = std::max(worst, resid);
      if (resid > 1e-10) {
        ok = false;
        w = name;
      }
    }
    rep.add("masa", "root-roundtrip", ok, worst, w);
  }
  if (rep.rows.empty())
    throw ParseError("opmodel: unknown suite '" + suite +
                     "' (topology|prop43|physical|masa|all)");
  return emit_report(cfg, rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"locally convex quasi C*-algebra toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--model", cfg.model_path, "model JSON path")->required();
  app.add_option("--out", cfg.out_path, "output path (default: stdout)");
  app.add_option("--format", cfg.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--tol", cfg.tol, "tolerance override")
      ->check(CLI::PositiveNumber);
  app.add_option("--samples", cfg.samples, "sample count")
      ->check(CLI::PositiveNumber);
  app.add_option("-n", cfg.n, "calculus order / root index");

  std::string elt, elt2, elt3, fn, suite = "all";
  auto* c_axioms = app.add_subcommand("axioms", "run the (T1)-(T4) suite");
  auto* c_spec = app.add_subcommand("spectrum", "spectrum of an element");
  c_spec->add_option("element", elt)->required();
  auto* c_calc = app.add_subcommand("calculus", "apply f(a)");
  c_calc->add_option("function", fn)->required();
  c_calc->add_option("element", elt)->required();
  auto* c_root = app.add_subcommand("root", "quasi n-th root");
  c_root->add_option("element", elt)->required();
  auto* c_prod = app.add_subcommand("product", "partial product a*b");
  c_prod->add_option("a", elt)->required();
  c_prod->add_option("b", elt2)->required();
  auto* c_gel = app.add_subcommand("gelfand", "extended transform of ax+y");
  c_gel->add_option("a", elt)->required();
  c_gel->add_option("x", elt2)->required();
  c_gel->add_option("y", elt3)->required();
  auto* c_gns = app.add_subcommand("gns", "GNS suite over declared forms");
  auto* c_op = app.add_subcommand("opmodel", "operator-model suites");
  c_op->add_option("suite", suite, "topology|prop43|physical|masa|all");

  // let global flags (-n, --seed, ...) appear after the subcommand too
  for (auto* sc : app.get_subcommands({})) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    qcstar::io::LoadedModel loaded = qcstar::io::load_model_file(cfg.model_path);
    if (*c_axioms) return run_axioms(cfg, loaded);
    if (*c_spec) return run_spectrum(cfg, loaded, elt);
    if (*c_calc) return run_calculus(cfg, loaded, fn, elt);
    if (*c_root) return run_root(cfg, loaded, elt);
    if (*c_prod) return run_product(cfg, loaded, elt, elt2);
    if (*c_gel) return run_gelfand(cfg, loaded, elt, elt2, elt3);
    if (*c_gns) return run_gns(cfg, loaded);
    if (*c_op) return run_opmodel(cfg, loaded, suite);
    return 2;
  } catch (const qcstar::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
}
