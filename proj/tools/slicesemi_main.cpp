// Command line front end: algebra tables, spectra, resolvents, semigroup
// evolution, Cauchy kernels, and the verification suites.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "slicesemi/contour.hpp"
#include "slicesemi/io.hpp"
#include "slicesemi/operators.hpp"
#include "slicesemi/semigroup.hpp"
#include "slicesemi/slice.hpp"
#include "slicesemi/verify.hpp"

using namespace slicesemi;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

json parse_json_arg(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
    json j = json::parse(arg, nullptr, false);
    if (j.is_discarded()) fail(Err::BadInput, "inline JSON did not parse");
    return j;
  }
  return read_json_file(arg);
}

Element parse_element(const std::string& arg, const Algebra* alg_hint) {
  // basis token (i, j, k, o5, e12), inline JSON, or a file path
  if (alg_hint != nullptr && !arg.empty() && arg.front() != '{' && arg.front() != '[') {
    for (int k = 0; k < alg_hint->dim(); ++k)
      if (alg_hint->basis_label(k) == arg) return Element::basis(*alg_hint, k);
    if (alg_hint->kind() == AlgebraKind::Octonion) {
      if (arg == "i") return Element::basis(*alg_hint, 1);
      if (arg == "j") return Element::basis(*alg_hint, 2);
      if (arg == "k") return Element::basis(*alg_hint, 3);
    }
  }
  json j = parse_json_arg(arg);
  if (j.is_array() && alg_hint != nullptr)
    return Element(*alg_hint, j.get<std::vector<double>>());
  return element_from_json(j);
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::fputs(content.c_str(), stdout);
  else
    write_text_file(out_path, content);
}

struct EvolveArgs {
  std::string op_path, x_path, out_path, j_token;
  std::string method = "expm";
  double t_max = 5.0, t = 1.0, delta = 0.3, tol = 1e-8, tail_tol = 1e-9;
  int steps = 100;
  bool full = false;
  double r = 0.0, eta = 0.0;
  int quad_nodes = 64, gauss_order = 16;
  std::uint64_t seed = 0;
  int sector_samples = 128;
};

int run_evolve(const EvolveArgs& a) {
  OpMatrix A = op_from_json(read_json_file(a.op_path));
  QuadratureSpec quad;
  quad.nodes_per_arc = a.quad_nodes;
  quad.gauss_order = a.gauss_order;
  quad.tail_tol = a.tail_tol;

  if (a.method == "contour") {
    if (a.t == 0.0) {
      json out = {{"operator", op_to_json(OpMatrix::identity(A.algebra(), A.m()))}};
      emit(a.out_path, out.dump(2) + "\n");
      return 0;
    }
    SectorReport sector = sector_check(A, a.delta, a.sector_samples, a.seed);
    Element j = a.j_token.empty() ? Element::basis(A.algebra(), 1)
                                  : parse_element(a.j_token, &A.algebra());
    std::optional<double> r, eta;
    if (a.r > 0.0) r = a.r;
    if (a.eta > 0.0) eta = a.eta;
    ContourResult res = semigroup_contour(A, a.t, j, sector, quad, r, eta);
    json out = {{"operator", op_to_json(res.T)}, {"certificate", certificate_to_json(res.cert)}};
    emit(a.out_path, out.dump(2) + "\n");
    return 0;
  }

  SemigroupTrace trace;
  trace.method = a.method == "yosida" ? EvolveMethod::Yosida : EvolveMethod::Expm;
  ModuleVec x;
  bool have_x = !a.x_path.empty();
  if (have_x) x = vec_from_json(read_json_file(a.x_path));
  if (a.method == "yosida" && !have_x) fail(Err::BadInput, "yosida evolution needs --x");
  if (!a.full && !have_x) fail(Err::BadInput, "need --x (or --full for the whole operator)");

  const double h = a.t_max / a.steps;
  json meta;
  if (a.method == "yosida") {
    // the operator trace is reconstructed column by column from basis vectors
    for (int k = 0; k <= a.steps; ++k) trace.times.push_back(k * h);
    double worst_tol = 0.0, max_n = 0.0;
    for (int k = 0; k <= a.steps; ++k) {
      double t = trace.times[k];
      OpMatrix Tk(A.algebra(), A.m());
      if (t == 0.0) {
        Tk = OpMatrix::identity(A.algebra(), A.m());
      } else {
        for (int col = 0; col < A.m(); ++col) {
          ModuleVec basis(A.m(), Element(A.algebra()));
          basis[col] = Element::scalar(A.algebra(), 1.0);
          YosidaEvolveResult yr = evolve_yosida(A, t, basis, a.tol);
          worst_tol = std::max(worst_tol, yr.achieved_tol);
          max_n = std::max(max_n, yr.n_final);
          for (int row = 0; row < A.m(); ++row) Tk.at(row, col) = yr.value[row];
        }
      }
      trace.values.push_back(std::move(Tk));
    }
    meta["achieved_tol"] = worst_tol;
    meta["max_stage_n"] = max_n;
    meta["stopping_rule"] = "heuristic Cauchy doubling";
  } else {
    trace = expm_trace(A, a.t_max, a.steps);
  }
  std::string csv = trace_csv(trace, have_x ? &x : nullptr, !have_x && a.full);
  emit(a.out_path, csv);
  if (!meta.empty()) std::fprintf(stderr, "%s\n", meta.dump().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypercomplex operator calculus: spherical spectra, resolvents, semigroups"};
  app.require_subcommand(1);

  // algebra table
  auto* algebra_cmd = app.add_subcommand("algebra", "algebra level utilities");
  algebra_cmd->require_subcommand(1);
  auto* table_cmd = algebra_cmd->add_subcommand("table", "print the signed multiplication table");
  std::string table_kind = "H", table_out;
  table_cmd->add_option("--kind", table_kind, "algebra code (R, C, H, O, Cl<n>)");
  table_cmd->add_option("--out", table_out, "output path (stdout by default)");

  // spectrum
  auto* spectrum_cmd = app.add_subcommand("spectrum", "spherical spectrum of an operator");
  std::string spec_op, spec_out;
  std::uint64_t spec_seed = 0;
  spectrum_cmd->add_option("--op", spec_op, "operator JSON path")->required();
  spectrum_cmd->add_option("--out", spec_out, "output path");
  spectrum_cmd->add_option("--seed", spec_seed, "seed for the verification sampling");

  // resolvent
  auto* resolvent_cmd = app.add_subcommand("resolvent", "spherical resolvent C_alpha(A)");
  std::string res_op, res_alpha, res_out;
  bool res_contour = false;
  double res_delta = 0.3, res_tail = 1e-9;
  resolvent_cmd->add_option("--op", res_op, "operator JSON path")->required();
  resolvent_cmd->add_option("--alpha", res_alpha, "element JSON/path/basis token")->required();
  resolvent_cmd->add_option("--out", res_out, "output path");
  resolvent_cmd->add_flag("--contour", res_contour, "use the keyhole integral (real alpha only)");
  resolvent_cmd->add_option("--delta", res_delta, "sector half-angle excess for --contour");
  resolvent_cmd->add_option("--tail-tol", res_tail, "tail tolerance for --contour");

  // evolve
  auto* evolve_cmd = app.add_subcommand("evolve", "semigroup evolution T(t)");
  EvolveArgs ev;
  evolve_cmd->add_option("--op", ev.op_path, "operator JSON path")->required();
  evolve_cmd->add_option("--method", ev.method, "expm | yosida | contour")
      ->check(CLI::IsMember({"expm", "yosida", "contour"}));
  evolve_cmd->add_option("--t-max", ev.t_max, "trace horizon (expm/yosida)");
  evolve_cmd->add_option("--steps", ev.steps, "trace steps (expm/yosida)");
  evolve_cmd->add_option("--x", ev.x_path, "module vector JSON path");
  evolve_cmd->add_option("--out", ev.out_path, "output path");
  evolve_cmd->add_flag("--full", ev.full, "emit the flattened operator instead of T(t)x");
  evolve_cmd->add_option("--tol", ev.tol, "Cauchy tolerance for yosida");
  evolve_cmd->add_option("--t", ev.t, "evaluation time for contour");
  evolve_cmd->add_option("--delta", ev.delta, "sector half-angle excess for contour");
  evolve_cmd->add_option("--r", ev.r, "keyhole arc radius (default 1/t)");
  evolve_cmd->add_option("--eta", ev.eta, "keyhole ray angle (default pi/2 + delta/2)");
  evolve_cmd->add_option("--j", ev.j_token, "plane axis (basis token or coeff JSON)");
  evolve_cmd->add_option("--quad-nodes", ev.quad_nodes, "arc quadrature nodes");
  evolve_cmd->add_option("--gauss-order", ev.gauss_order, "Gauss order per panel");
  evolve_cmd->add_option("--tail-tol", ev.tail_tol, "certified tail tolerance");
  evolve_cmd->add_option("--seed", ev.seed, "sector sampling seed");
  evolve_cmd->add_option("--sector-samples", ev.sector_samples, "sector sampling count");

  // cauchy
  auto* cauchy_cmd = app.add_subcommand("cauchy", "noncommutative Cauchy kernel");
  std::string ck_q, ck_p, ck_out;
  bool ck_reconstruct = false;
  std::string ck_stem = "exp", ck_beta, ck_j;
  double ck_t = 1.0, ck_center = 0.0, ck_radius = 4.0;
  int ck_nodes = 256;
  cauchy_cmd->add_option("--kernel", ck_q, "kernel parameter q (JSON/path)");
  cauchy_cmd->add_option("--at", ck_p, "evaluation point p (JSON/path)");
  cauchy_cmd->add_option("--out", ck_out, "output path");
  cauchy_cmd->add_flag("--reconstruct", ck_reconstruct,
                       "reconstruct a built-in stem through the slice Cauchy integral");
  cauchy_cmd->add_option("--stem", ck_stem, "id | exp | poly (with --coeffs)");
  cauchy_cmd->add_option("--t", ck_t, "time parameter of the exp stem");
  cauchy_cmd->add_option("--beta", ck_beta, "reconstruction point (JSON/path)");
  cauchy_cmd->add_option("--j", ck_j, "integration plane axis");
  cauchy_cmd->add_option("--center", ck_center, "loop center on the real axis");
  cauchy_cmd->add_option("--radius", ck_radius, "loop radius");
  cauchy_cmd->add_option("--quad-nodes", ck_nodes, "loop quadrature nodes");
  std::string ck_coeffs;
  cauchy_cmd->add_option("--coeffs", ck_coeffs, "JSON array of coefficient lists for poly");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  std::string vf_suite = "all", vf_algebra = "H", vf_report;
  int vf_m = 2;
  std::uint64_t vf_seed = 0;
  bool vf_fast = false;
  verify_cmd->add_option("--suite", vf_suite, "algebra|slice|resolvent|semigroup|contour|all");
  verify_cmd->add_option("--algebra", vf_algebra, "algebra code for operator suites");
  verify_cmd->add_option("--m", vf_m, "module rank for operator suites");
  verify_cmd->add_option("--seed", vf_seed, "sampling seed");
  verify_cmd->add_flag("--fast", vf_fast, "reduced sampling and node counts");
  verify_cmd->add_option("--json-report", vf_report, "write the machine readable report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (table_cmd->parsed()) {
      emit(table_out, algebra_table_csv(Algebra::from_code(table_kind)));
      return 0;
    }
    if (spectrum_cmd->parsed()) {
      OpMatrix A = op_from_json(read_json_file(spec_op));
      emit(spec_out, spectrum_csv(spherical_spectrum(A, spec_seed)));
      return 0;
    }
    if (resolvent_cmd->parsed()) {
      OpMatrix A = op_from_json(read_json_file(res_op));
      Element alpha = parse_element(res_alpha, &A.algebra());
      if (res_contour) {
        ConeParts p = cone_decompose(alpha);
        if (p.b != 0.0) fail(Err::BadInput, "--contour supports real alpha");
        QuadratureSpec quad;
        quad.tail_tol = res_tail;
        SectorReport sector = sector_check(A, res_delta, 128, 0);
        ContourResult r = resolvent_contour(A, p.a, Element::basis(A.algebra(), 1), sector, quad);
        json out = {{"operator", op_to_json(r.T)}, {"certificate", certificate_to_json(r.cert)}};
        emit(res_out, out.dump(2) + "\n");
      } else {
        emit(res_out, op_to_json(resolvent(A, alpha)).dump(2) + "\n");
      }
      return 0;
    }
    if (evolve_cmd->parsed()) return run_evolve(ev);
    if (cauchy_cmd->parsed()) {
      if (ck_reconstruct) {
        if (ck_beta.empty()) fail(Err::BadInput, "--reconstruct needs --beta");
        Element beta = parse_element(ck_beta, nullptr);
        const Algebra& alg = beta.algebra();
        Stem stem;
        if (ck_stem == "id")
          stem = identity_stem(alg);
        else if (ck_stem == "exp")
          stem = exp_stem(alg, ck_t);
        else if (ck_stem == "poly") {
          if (ck_coeffs.empty()) fail(Err::BadInput, "poly stem needs --coeffs");
          std::vector<Element> cs;
          for (const auto& row : parse_json_arg(ck_coeffs))
            cs.emplace_back(alg, row.get<std::vector<double>>());
          stem = poly_stem(alg, cs);
        } else {
          fail(Err::BadInput, "unknown stem '" + ck_stem + "'");
        }
        Element j = ck_j.empty() ? Element::basis(alg, 1) : parse_element(ck_j, &alg);
        QuadratureSpec quad;
        quad.nodes_per_arc = ck_nodes;
        Element rec = slice_cauchy_reconstruct(stem, beta, j, ck_center, ck_radius, quad);
        Element direct = eval_slice(stem, beta);
        json out = {{"reconstructed", element_to_json(rec)},
                    {"direct", element_to_json(direct)},
                    {"error", euclid_norm(rec - direct)}};
        emit(ck_out, out.dump(2) + "\n");
        return 0;
      }
      if (ck_q.empty() || ck_p.empty()) fail(Err::BadInput, "need --kernel and --at");
      Element q = parse_element(ck_q, nullptr);
      Element p = parse_element(ck_p, &q.algebra());
      emit(ck_out, element_to_json(cauchy_kernel(q, p)).dump(2) + "\n");
      return 0;
    }
    if (verify_cmd->parsed()) {
      VerifyOptions opt;
      opt.algebra = vf_algebra;
      opt.m = vf_m;
      opt.seed = vf_seed;
      opt.fast = vf_fast;
      VerifyReport report = run_suite(vf_suite, opt);
      json j = report_to_json(report);
      if (!vf_report.empty()) write_text_file(vf_report, j.dump(2) + "\n");
      for (const VerifyCase& c : report.cases)
        std::printf("%-48s %10.3e  (tol %.1e)  %s\n", c.name.c_str(), c.residual, c.tol,
                    c.pass ? "pass" : "FAIL");
      std::printf("suite %s: %s (max residual %.3e)\n", report.suite.c_str(),
                  report.pass ? "pass" : "FAIL", report.max_residual);
      return report.pass ? 0 : 2;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    json failure = {{"error", err_name(e.code())}, {"detail", e.what()}};
    std::fprintf(stderr, "%s\n", failure.dump().c_str());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
