#include <omp.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "orlab/geometry.hpp"
#include "orlab/interpolation.hpp"
#include "orlab/json_io.hpp"
#include "orlab/numerics.hpp"
#include "orlab/suites.hpp"
#include "orlab/tracial.hpp"

using namespace olab;

namespace {

// "log:a:b:n" or a comma-separated list.
std::vector<double> parse_grid(const std::string& spec) {
  if (spec.rfind("log:", 0) == 0) {
    std::istringstream in(spec.substr(4));
    std::string a, b, n;
    if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, n))
      throw SchemaError("grid: expected log:a:b:n, got " + spec);
    try {
      const double lo = std::stod(a), hi = std::stod(b);
      const long count = std::stol(n);
      if (!(lo > 0) || !(hi > lo) || count < 2) throw SchemaError("grid: need 0 < a < b and n >= 2");
      return log_grid(lo, hi, static_cast<std::size_t>(count));
    } catch (const std::logic_error&) {
      throw SchemaError("grid: cannot parse " + spec);
    }
  }
  std::vector<double> out;
  std::istringstream in(spec);
  for (std::string tok; std::getline(in, tok, ',');) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::logic_error&) {
      throw SchemaError("grid: cannot parse " + tok);
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!(out[i] > 0) || (i && out[i] <= out[i - 1])) throw SchemaError("grid: values must be positive and increasing");
  if (out.empty()) throw SchemaError("grid: empty");
  return out;
}

// Writes to `path` or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw SchemaError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

// Shortest representation that round-trips.
std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

AlgebraPtr load_algebra(const std::string& path) { return path.empty() ? nullptr : parse_algebra(load_json(path)); }

json load_or_null(const std::string& path) { return path.empty() ? json(nullptr) : load_json(path); }

void apply_thread_cap() {
  const char* env = std::getenv("ORLICZ_LAB_THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) throw SchemaError(std::string("ORLICZ_LAB_THREADS must be a positive integer, got ") + env);
  omp_set_num_threads(static_cast<int>(n));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orlicz-lab: noncommutative Orlicz space computations on finite-dimensional models"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("-o,--out", out_path, "write the artifact to this file instead of stdout");

  // norm
  auto* norm = app.add_subcommand("norm", "Luxemburg, Amemiya or dual-sup norm of an element");
  std::string algebra_path, element_path, psi_arg, which = "lux";
  norm->add_option("--algebra", algebra_path, "algebra JSON (defaults to the element's own or unit weights)");
  norm->add_option("--element", element_path, "element JSON")->required();
  norm->add_option("--psi", psi_arg, "Orlicz function JSON (inline or file)")->required();
  norm->add_option("--which", which, "lux | amemiya | oracle | mu1 | lambda")
      ->check(CLI::IsMember({"lux", "amemiya", "oracle", "mu1", "lambda"}));

  // svf
  auto* svf_cmd = app.add_subcommand("svf", "singular value function as CSV (t, mu)");
  bool crossed = false;
  std::string grid_arg = "log:1e-3:1e3:61";
  svf_cmd->add_option("--algebra", algebra_path, "algebra JSON");
  svf_cmd->add_option("--element", element_path, "element JSON (crossed-element JSON with --crossed)")->required();
  svf_cmd->add_flag("--crossed", crossed, "element is a crossed-product element; mu_t sampled on --grid");
  svf_cmd->add_option("--grid", grid_arg, "log:a:b:n or comma list, used with --crossed");

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite and emit a JSON report");
  std::string suite;
  int trials = 50;
  std::uint64_t seed = 1;
  std::vector<std::string> tighten_args;
  std::string meta_path;
  std::string names;
  for (const auto& n : suite_names()) names += (names.empty() ? "" : " | ") + n;
  verify->add_option("--suite", suite, names)->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--trials", trials, "number of random instances")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "instance stream seed");
  verify->add_option("--tighten", tighten_args, "check=tolerance, may only lower a default");
  verify->add_option("--meta", meta_path, "write run metadata (timing, threads) to this file");

  // kfunc
  auto* kfunc = app.add_subcommand("kfunc", "K-functional profile as CSV (t, K, k)");
  bool modified = false;
  std::string kgrid = "log:1e-6:1e6:64";
  kfunc->add_option("--algebra", algebra_path, "algebra JSON");
  kfunc->add_option("--element", element_path,
                    "element JSON; with --modified {\"rho\"?, \"c0\"?, \"d0\"?, \"e0\"?, \"f0\"?} iota components")
      ->required();
  kfunc->add_flag("--modified", modified, "modified K over four-space decompositions");
  kfunc->add_option("--grid", kgrid, "log:a:b:n or comma list");

  // construct-psi0
  auto* psi0 = app.add_subcommand("construct-psi0", "Orlicz function with a given fundamental function");
  std::string phi_path;
  double eps = 0;
  psi0->add_option("--phi", phi_path, "profile JSON: {\"knots\": [[t, phi], ...]} or {\"psi\": ..., \"fundamental\": lux|orl}")
      ->required();
  psi0->add_option("--eps", eps, "regularization point in (0, c); default c/2");

  // boyd
  auto* boyd = app.add_subcommand("boyd", "Boyd-index normability and growth constant of psi");
  boyd->add_option("--psi", psi_arg, "Orlicz function JSON")->required();

  // pairing
  auto* pairing = app.add_subcommand("pairing", "duality pairing tr(ba) of crossed elements");
  std::string a_path, b_path;
  pairing->add_option("--algebra", algebra_path, "algebra JSON")->required();
  pairing->add_option("--a", a_path, "crossed-element JSON for a")->required();
  pairing->add_option("--b", b_path, "crossed-element JSON for b")->required();
  pairing->add_option("--psi", psi_arg, "Orlicz function JSON")->required();

  // probe
  auto* probe = app.add_subcommand("probe", "random probe of the triple norm |||a|||_psi");
  std::string rho_path;
  int samples = 100;
  probe->add_option("--algebra", algebra_path, "algebra JSON");
  probe->add_option("--element", element_path, "element JSON for the matrix m")->required();
  probe->add_option("--rho", rho_path, "state JSON {\"rho\": element}; tracial by default");
  probe->add_option("--psi", psi_arg, "Orlicz function JSON")->required();
  probe->add_option("--samples", samples, "number of probe pairs")->check(CLI::PositiveNumber);
  probe->add_option("--seed", seed, "probe seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    apply_thread_cap();
    Output out(out_path);
    auto& os = out.stream();

    if (*norm) {
      const auto doc = load_json(element_path);
      const auto a = parse_element(doc, load_algebra(algebra_path));
      const auto psi = parse_psi(load_json(psi_arg));
      double value = 0;
      if (which == "lux") value = luxemburg_norm(a, psi);
      else if (which == "amemiya") value = amemiya_norm(a, psi);
      else if (which == "oracle") value = orlicz_norm_oracle(a, psi);
      else if (which == "mu1") value = lux_via_mu1(a, psi);
      else value = amemiya_via_lambda(a, psi);
      json r{{"schema", kSchemaVersion}, {"which", which}, {"psi", psi.label()}, {"value", number_or_inf(value)},
             {"bisection_rel_tol", kNormRelTol}};
      os << r.dump(2) << "\n";
      return 0;
    }

    if (*svf_cmd) {
      const auto alg = load_algebra(algebra_path);
      const auto doc = load_json(element_path);
      if (crossed) {
        const auto x = parse_crossed(doc, alg ? alg : parse_algebra(doc.at("algebra")));
        if (!x.closed_form()) std::cerr << "note: " << x.evaluation_note() << "\n";
        os << "t,mu\n";
        for (double t : parse_grid(grid_arg)) os << fmt(t) << "," << fmt(mu_crossed(x, t)) << "\n";
      } else {
        const auto mu = svf(parse_element(doc, alg));
        os << "t,mu\n";
        const auto starts = mu.left_endpoints();
        for (double t : starts) os << fmt(t) << "," << fmt(mu(t)) << "\n";
      }
      return 0;
    }

    if (*verify) {
      std::map<std::string, double> tighten;
      for (const auto& arg : tighten_args) {
        const auto eq = arg.find('=');
        if (eq == std::string::npos) throw SchemaError("--tighten expects check=tolerance, got " + arg);
        try {
          tighten[arg.substr(0, eq)] = std::stod(arg.substr(eq + 1));
        } catch (const std::logic_error&) {
          throw SchemaError("--tighten: cannot parse " + arg);
        }
      }
      const auto start = std::chrono::steady_clock::now();
      const auto report = run_suite(suite, trials, seed, tighten);
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      os << report.to_json().dump(2) << "\n";
      if (!meta_path.empty()) {
        std::ofstream meta(meta_path);
        meta << json{{"schema", kSchemaVersion},
                     {"suite", suite},
                     {"wall_seconds", seconds},
                     {"unix_time", static_cast<long long>(std::time(nullptr))},
                     {"threads", omp_get_max_threads()},
                     {"bisection_rel_tol", kNormRelTol}}
                    .dump(2)
             << "\n";
      }
      if (const auto* f = report.first_failure()) {
        std::cerr << "FAIL " << suite << "/" << f->name << ": " << f->anchor << " (max violation "
                  << fmt(f->max_violation) << " > tolerance " << fmt(f->tolerance) << ")\n";
        return 1;
      }
      return 0;
    }

    if (*kfunc) {
      const auto alg = load_algebra(algebra_path);
      const auto doc = load_json(element_path);
      const auto grid = parse_grid(kgrid);
      KProfile p;
      if (modified) {
        const auto al = alg ? alg : parse_algebra(doc.at("algebra"));
        const auto density = parse_density(doc, al);
        auto part = [&](const char* key) {
          return doc.contains(key) ? parse_element(doc.at(key), al) : AlgebraElement::zero(al);
        };
        IotaSum x = iota_1(density, part("c0")) + iota_2r(density, part("d0")) + iota_2l(density, part("e0")) +
                    iota_inf(density, part("f0"));
        p = k_tilde(modified_K_curve(x, grid));
      } else {
        p = k_density(parse_element(doc, alg), grid);
      }
      os << "t,K,k\n";
      os << "0," << fmt(p.K0) << "," << fmt(p.k_head) << "\n";
      for (std::size_t i = 0; i < p.t.size(); ++i) os << fmt(p.t[i]) << "," << fmt(p.K[i]) << "," << fmt(p.k[i]) << "\n";
      return 0;
    }

    if (*psi0) {
      const auto phi = parse_fundamental(load_json(phi_path));
      const auto hull = concave_majorant(phi);
      const auto reg = eps > 0 ? regularize(hull, eps) : regularize(hull);
      const auto rec = orlicz_from_fundamental(reg.phi0);
      double k = 1;
      for (std::size_t i = 0; i < phi.t.size(); ++i) {
        const double a = phi.phi[i], b = reg.phi0(phi.t[i]);
        if (a > 0 && b > 0) k = std::max({k, a / b, b / a});
      }
      json knots = json::array();
      for (const auto& kn : rec.knots) knots.push_back({number_or_inf(kn.t), number_or_inf(kn.v)});
      os << json{{"schema", kSchemaVersion},
                 {"psi0", {{"kind", "table"}, {"knots", knots}, {"b_psi", number_or_inf(rec.psi0.b_psi())}}},
                 {"k", k},
                 {"eps", number_or_inf(reg.eps)},
                 {"limit", number_or_inf(phi.limit)},
                 {"plateau", number_or_inf(phi.plateau)}}
                .dump(2)
         << "\n";
      return 0;
    }

    if (*boyd) {
      const auto psi = parse_psi(load_json(psi_arg));
      const auto r = boyd_normability(psi);
      const auto g = growth_constant(psi);
      os << json{{"schema", kSchemaVersion},
                 {"psi", psi.label()},
                 {"normable", r.normable},
                 {"constant", number_or_inf(r.constant)},
                 {"alpha_lower", r.alpha_lower},
                 {"alpha_estimator", BoydReport::estimator},
                 {"growth_k", g.k},
                 {"growth_bound_holds", g.bound_holds},
                 {"growth_worst_ratio", g.worst_ratio}}
                .dump(2)
         << "\n";
      return 0;
    }

    if (*pairing) {
      const auto alg = load_algebra(algebra_path);
      const auto a = parse_crossed(load_json(a_path), alg);
      const auto b = parse_crossed(load_json(b_path), alg);
      const auto r = pairing_duality(a, b, parse_psi(load_json(psi_arg)));
      os << json{{"schema", kSchemaVersion},
                 {"value", {r.value.real(), r.value.imag()}},
                 {"bound", number_or_inf(r.bound)},
                 {"l1_deviation", r.l1_deviation},
                 {"ok", r.ok}}
                .dump(2)
         << "\n";
      if (!r.ok) {
        std::cerr << "FAIL pairing: |tr(ba)| <= 2 mu_1(b) mu_1(a)\n";
        return 1;
      }
      return 0;
    }

    if (*probe) {
      const auto doc = load_json(element_path);
      const auto m = parse_element(doc, load_algebra(algebra_path));
      const auto density = parse_density(load_or_null(rho_path), m.algebra());
      const auto r = probe_triple_norm(m, density, parse_psi(load_json(psi_arg)), samples, seed);
      os << json{{"schema", kSchemaVersion},
                 {"sup_ratio", r.sup_ratio},
                 {"mu1", r.mu1},
                 {"bound_3mu1_ok", r.bound_3mu1_ok},
                 {"bound_mu1_ok", r.bound_mu1_ok}}
                .dump(2)
         << "\n";
      if (!r.bound_3mu1_ok) {
        std::cerr << "FAIL probe: |tr(b0 a b1*)| <= 3 mu_1(b0) mu_1(b1) mu_1(a)\n";
        return 1;
      }
      return 0;
    }
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const CheckFailure& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
