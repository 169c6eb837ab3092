// gl2p: command-line driver for the verification suites.
//
// Exit status: 0 all checks pass, 1 some check failed, 2 usage or
// configuration error, 3 some check could not be certified.

#include <filesystem>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "suites.hpp"

using namespace gl2p;
using namespace gl2p::cli;

namespace {

struct Flags {
  std::string bump, finite, primes, out, csv_dir;
  std::string format = "table";
  double tol = 1e-5, quad_tol = 1e-10, a_max = 4, xi_max = 0;
  long det = 1, order = 10;
  int threads = 0;
  bool no_negative_control = false;
};

RunConfig make_config(const Flags& fl) {
  RunConfig cfg;
  cfg.det = fl.det;
  cfg.bump.n0 = static_cast<double>(fl.det);
  if (!fl.bump.empty()) cfg.parse_bump(fl.bump);
  if (!fl.finite.empty()) cfg.parse_finite(fl.finite == "none" ? "" : fl.finite);
  if (!fl.primes.empty()) cfg.primes = parse_prime_list(fl.primes);
  cfg.tol = fl.tol;
  cfg.quad_tol = fl.quad_tol;
  cfg.a_max = fl.a_max;
  cfg.xi_max = fl.xi_max;
  cfg.order = fl.order;
  cfg.format = fl.format;
  cfg.threads = fl.threads;
  cfg.validate();
  return cfg;
}

int emit(const ReportDocument& doc, const Flags& fl) {
  if (fl.format == "json")
    std::cout << doc.to_json().dump(2) << "\n";
  else
    std::cout << doc.render_table();
  if (!fl.out.empty()) write_file_atomic(fl.out, doc.to_json().dump(2) + "\n");
  if (!fl.csv_dir.empty()) {
    std::filesystem::create_directories(fl.csv_dir);
    for (const auto& t : doc.tables) write_csv(t, (std::filesystem::path(fl.csv_dir) / (t.name + ".csv")).string());
  }
  return doc.exit_status();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification engine for the GL(2) trace-formula identities"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags fl;
  SuiteOptions opt;
  app.add_option("--det", fl.det, "determinant n of the slice");
  app.add_option("--bump", fl.bump, "real-place bump, e.g. \"center=0,1;radius=1.5;order=4;amp=1\"");
  app.add_option("--finite", fl.finite, "finite places, e.g. \"2:unit;3:hecke1;5:congruence2*1/2\" or none");
  app.add_option("--primes", fl.primes, "comma-separated primes for local suites");
  app.add_option("--a-max", fl.a_max, "primal window A_max");
  app.add_option("--xi-max", fl.xi_max, "dual window; 0 certifies automatically");
  app.add_option("--tol", fl.tol, "acceptance tolerance");
  app.add_option("--quad-tol", fl.quad_tol, "quadrature tolerance");
  app.add_option("--order", fl.order, "truncation order for basic-function series");
  app.add_option("--threads", fl.threads, "worker threads (0 = hardware)");
  app.add_option("--format", fl.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  app.add_option("--out", fl.out, "write the JSON report to this path");
  app.add_option("--csv", fl.csv_dir, "write CSV tables into this directory");

  std::map<std::string, Suite> suites;
  auto add = [&](const std::string& name, const std::string& help, Suite s) {
    suites[name] = s;
    return app.add_subcommand(name, help);
  };
  auto* t1 = add("verify-theorem1", "elliptic sum against the dual side", suite_theorem1);
  t1->add_flag("--no-negative-control", fl.no_negative_control, "skip the perturbed run");
  t1->add_option("--perturb", opt.perturb, "size of the negative-control perturbation");
  add("poisson-check", "Poisson engine self-tests, Weyl closure and decay diagnostics", suite_poisson);
  auto* orb = add("orbital", "p-adic orbital integrals against the lattice oracle", suite_orbital);
  orb->add_option("--a-range", opt.orbital_a_max, "|a| bound");
  add("germ-check", "Shalika germ residuals", suite_germ);
  auto* cn = add("class-numbers", "class numbers and the Kronecker-Hurwitz relation", suite_class_numbers);
  cn->add_option("--max", opt.class_max, "largest |D| in the table");
  cn->add_option("--kh-max", opt.kh_max, "largest n for the Kronecker-Hurwitz check");
  auto* mz = add("matz-enum", "(q, X) enumeration against matrices", suite_matz);
  mz->add_option("--height", opt.height, "height bound");
  mz->add_option("--dets", opt.dets, "determinants")->delimiter(',');
  mz->add_option("--random", opt.random_matrices, "random matrices for the discriminant identity");
  mz->add_option("--seed", opt.seed, "random seed");
  auto* sk = add("satake-check", "Satake transform and basic-function series", suite_satake);
  sk->add_option("--satake-primes", opt.satake_primes, "primes")->delimiter(',');
  add("zeta", "Tate zeta values, residues, L-factors and Hecke volumes", suite_zeta);
  add("unipotent", "regular-unipotent profile and its zeta", suite_unipotent);
  add("report-all", "every suite in one report", suite_all);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  opt.negative_control = !fl.no_negative_control;
  try {
    RunConfig cfg = make_config(fl);
    for (auto* sub : app.get_subcommands()) return emit(suites.at(sub->get_name())(cfg, opt), fl);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
