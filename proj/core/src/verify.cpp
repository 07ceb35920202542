#include "slicesemi/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "slicesemi/contour.hpp"
#include "slicesemi/io.hpp"
#include "slicesemi/operators.hpp"
#include "slicesemi/semigroup.hpp"
#include "slicesemi/slice.hpp"

namespace slicesemi {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

struct SuiteBuilder {
  VerifyReport report;

  void add(const std::string& name, double residual, double tol) {
    VerifyCase c{name, residual, tol, residual <= tol};
    report.max_residual = std::max(report.max_residual, residual);
    report.pass = report.pass && c.pass;
    report.cases.push_back(std::move(c));
  }

  void add_flag(const std::string& name, bool ok) { add(name, ok ? 0.0 : 1.0, 0.5); }
};

const std::vector<const Algebra*>& family_list(bool fast) {
  static const std::vector<const Algebra*> all = {
      &Algebra::real(),       &Algebra::complex_alg(), &Algebra::quaternion(),
      &Algebra::octonion(),   &Algebra::clifford(3),   &Algebra::clifford(5)};
  static const std::vector<const Algebra*> small = {
      &Algebra::quaternion(), &Algebra::clifford(3)};
  return fast ? small : all;
}

// ------------------------------------------------------------------ algebra

VerifyReport suite_algebra(const VerifyOptions& opt) {
  SuiteBuilder sb;
  sb.report.suite = "algebra";
  Rng rng(opt.seed);
  const int samples = opt.fast ? 200 : 2000;

  for (const Algebra* alg : family_list(opt.fast)) {
    const std::string tag = alg->code();
    double alt = 0.0, invol = 0.0, powassoc = 0.0;
    for (int s = 0; s < samples; ++s) {
      Element x = random_element(*alg, rng);
      Element y = random_element(*alg, rng);
      double scale = (1.0 + euclid_norm(x)) * (1.0 + euclid_norm(x)) * (1.0 + euclid_norm(y));
      alt = std::max(alt, euclid_norm(mul(x, mul(x, y)) - mul(mul(x, x), y)) / scale);
      alt = std::max(alt, euclid_norm(mul(mul(x, y), y) - mul(x, mul(y, y))) / scale);
      double s2 = (1.0 + euclid_norm(x)) * (1.0 + euclid_norm(y));
      invol = std::max(invol, euclid_norm(conj(conj(x)) - x) / (1.0 + euclid_norm(x)));
      invol = std::max(invol, euclid_norm(conj(mul(x, y)) - mul(conj(y), conj(x))) / s2);
      int n = 1 + rng.uniform_int(4), mm = 1 + rng.uniform_int(4);
      double sp = std::pow(1.0 + euclid_norm(x), n + mm);
      powassoc = std::max(powassoc,
                          euclid_norm(pow_int(x, n + mm) - mul(pow_int(x, n), pow_int(x, mm))) / sp);
    }
    sb.add(tag + ".alternative_laws", alt, 1e-12);
    sb.add(tag + ".anti_involution", invol, 1e-14);
    sb.add(tag + ".power_associativity", powassoc, 1e-12);

    if (alg->kind() != AlgebraKind::Real) {
      double conemul = 0.0;
      for (int s = 0; s < samples / 4; ++s) {
        Element j = random_imaginary_unit(*alg, rng);
        Element a = Element::scalar(*alg, rng.normal()) + rng.normal() * j;
        Element b = Element::scalar(*alg, rng.normal()) + rng.normal() * j;
        double prod = euclid_norm(mul(a, b));
        conemul = std::max(conemul, std::abs(prod - euclid_norm(a) * euclid_norm(b)) /
                                        (1.0 + euclid_norm(a) * euclid_norm(b)));
      }
      sb.add(tag + ".plane_norm_multiplicative", conemul, 1e-12);
    }

    if (alg->kind() == AlgebraKind::Quaternion || alg->kind() == AlgebraKind::Octonion) {
      double multi = 0.0;
      for (int s = 0; s < samples / 2; ++s) {
        Element x = random_element(*alg, rng);
        Element y = random_element(*alg, rng);
        multi = std::max(multi, std::abs(euclid_norm(mul(x, y)) - euclid_norm(x) * euclid_norm(y)) /
                                    (1.0 + euclid_norm(x) * euclid_norm(y)));
      }
      sb.add(tag + ".norm_multiplicative", multi, 1e-12);
    }

    if (alg->kind() == AlgebraKind::Clifford) {
      double submult = 0.0;
      for (int s = 0; s < (opt.fast ? 50 : 300); ++s) {
        Element x = random_element(*alg, rng);
        Element y = random_element(*alg, rng);
        double excess = clifford_op_norm(mul(x, y)) -
                        clifford_op_norm(x) * clifford_op_norm(y);
        submult = std::max(submult, excess / (1.0 + clifford_op_norm(x) * clifford_op_norm(y)));
      }
      sb.add(tag + ".clifford_submultiplicative", std::max(submult, 0.0), 1e-9);

      // norm homogeneity ||alpha u|| = |alpha| ||u|| on the cone, with the
      // Clifford operator norm per component
      double homog = 0.0;
      for (int s = 0; s < (opt.fast ? 25 : 150); ++s) {
        Element alpha = random_cone_element(*alg, rng);
        ModuleVec u = random_vec(*alg, opt.m, rng);
        ModuleVec lu, ru;
        for (const Element& e : u) lu.push_back(mul(alpha, e));
        for (const Element& e : u) ru.push_back(mul(e, alpha));
        double nu = bimodule_norm(u) * abs_cone(alpha);
        homog = std::max(homog, std::abs(bimodule_norm(lu) - nu) / (1.0 + nu));
        homog = std::max(homog, std::abs(bimodule_norm(ru) - nu) / (1.0 + nu));
      }
      sb.add(tag + ".bimodule_norm_homogeneity", homog, 1e-7);
    }
  }

  {  // zero divisor identity, exact by construction of the table
    const Algebra& cl3 = Algebra::clifford(3);
    int e123 = 7;  // last basis blade of Cl(0,3) in cardinality-lex order
    Element u = Element::scalar(cl3, 1.0) - Element::basis(cl3, e123);
    Element v = Element::scalar(cl3, 1.0) + Element::basis(cl3, e123);
    sb.add("Cl3.zero_divisor_exact", euclid_norm(mul(u, v)), 0.0);
  }
  return sb.report;
}

// -------------------------------------------------------------------- slice

VerifyReport suite_slice(const VerifyOptions& opt) {
  SuiteBuilder sb;
  sb.report.suite = "slice";
  Rng rng(opt.seed);
  const Algebra& alg = Algebra::from_code(opt.algebra);
  if (alg.kind() == AlgebraKind::Real) fail(Err::WrongAlgebra, "slice suite needs S_A nonempty");
  const int samples = opt.fast ? 20 : 100;

  std::vector<Stem> stems;
  stems.push_back(identity_stem(alg));
  stems.push_back(exp_stem(alg, 1.0));
  {
    std::vector<Element> coeffs;
    for (int k = 0; k < 4; ++k) coeffs.push_back(random_element(alg, rng));
    stems.push_back(poly_stem(alg, coeffs));
  }

  double branch = 0.0;
  for (const Stem& F : stems) {
    for (int s = 0; s < samples; ++s) {
      Element alpha = random_cone_element(alg, rng);
      ConeParts p = cone_decompose(alpha);
      if (!p.j) continue;
      Element v1 = eval_slice_branch(F, p.a, p.b, *p.j);
      Element v2 = eval_slice_branch(F, p.a, -p.b, -1.0 * (*p.j));
      branch = std::max(branch, euclid_norm(v1 - v2) / (1.0 + euclid_norm(v1)));
    }
  }
  sb.add("eval_branch_well_posed", branch, 1e-13);

  double group = 0.0;
  for (int s = 0; s < samples; ++s) {
    Element alpha = random_cone_element(alg, rng);
    double t = rng.uniform(-1.5, 1.5), u = rng.uniform(-1.5, 1.5);
    Element lhs = mul(exp_slice(t, alpha), exp_slice(u, alpha));
    Element rhs = exp_slice(t + u, alpha);
    group = std::max(group, euclid_norm(lhs - rhs) / (1.0 + euclid_norm(rhs)));
  }
  sb.add("exp_one_parameter_group", group, 1e-12);

  double series = 0.0;
  for (int s = 0; s < 10; ++s) {
    Element alpha = random_cone_element(alg, rng);
    double t = rng.uniform(-1.0, 1.0);
    Element sum(alg);
    Element term = Element::scalar(alg, 1.0);
    for (int n = 1; n <= 40; ++n) {
      sum += term;
      term = (t / n) * mul(term, alpha);
    }
    series = std::max(series, euclid_norm(exp_slice(t, alpha) - sum));
  }
  sb.add("exp_matches_series", series, 1e-12);

  // kernel is slice in the evaluation point: recovered stem has the even-odd
  // symmetry, and on a common plane it collapses to (q - p)^{-1}
  double sym = 0.0, classical = 0.0;
  for (int s = 0; s < samples / 2; ++s) {
    Element q = random_cone_element(alg, rng);
    Element j = random_imaginary_unit(alg, rng);
    auto f = [&](const Element& p) { return cauchy_kernel(q, p); };
    Stem K = stem_from_samples(f, j, "kernel");
    double a = rng.uniform(-2.0, 2.0), b = rng.uniform(0.1, 2.0);
    std::complex<double> z(a, b);
    ConeParts qp = cone_decompose(q);
    auto far = [&](std::complex<double> w) {
      return std::min(std::abs(w - std::complex<double>(qp.a, qp.b)),
                      std::abs(w - std::complex<double>(qp.a, -qp.b))) > 0.3;
    };
    if (!far(z)) continue;
    sym = std::max(sym, euclid_norm(K.f1(std::conj(z)) - K.f1(z)));
    sym = std::max(sym, euclid_norm(K.f2(std::conj(z)) + K.f2(z)));

    ConeParts jq = cone_decompose(q);
    if (jq.j) {
      Element p = Element::scalar(alg, a) + b * (*jq.j);  // same plane as q
      if (far(z)) {
        Element lhs = cauchy_kernel(q, p);
        Element rhs = cone_inverse(q - p);
        classical = std::max(classical, euclid_norm(lhs - rhs) / (1.0 + euclid_norm(rhs)));
      }
    }
  }
  sb.add("kernel_stem_even_odd", sym, 1e-12);
  sb.add("kernel_classical_on_common_plane", classical, 1e-10);

  double sp_real = 0.0, sp_id = 0.0;
  {
    Stem e = exp_stem(alg, 1.0);  // real slice
    Stem g = stems[2];
    Stem prod = slice_product(e, g);
    for (int s = 0; s < samples; ++s) {
      Element alpha = random_cone_element(alg, rng);
      Element lhs = eval_slice(prod, alpha);
      Element rhs = mul(eval_slice(e, alpha), eval_slice(g, alpha));
      sp_real = std::max(sp_real, euclid_norm(lhs - rhs) / (1.0 + euclid_norm(rhs)));
    }
    Stem idsq = slice_product(identity_stem(alg), identity_stem(alg));
    for (int s = 0; s < samples; ++s) {
      Element alpha = random_cone_element(alg, rng);
      Element lhs = eval_slice(idsq, alpha);
      sp_id = std::max(sp_id, euclid_norm(lhs - mul(alpha, alpha)) /
                                  (1.0 + euclid_norm(alpha) * euclid_norm(alpha)));
    }
  }
  sb.add("slice_product_real_factor_pointwise", sp_real, 1e-12);
  sb.add("slice_product_identity_square", sp_id, 1e-13);

  const double h = 1e-4;
  double cr_poly = cr_residual(stems[2], {0.3, 0.7}, h);
  double cr_exp = cr_residual(stems[1], {-0.2, 1.1}, h);
  sb.add("cr_poly", cr_poly, 1e-5);
  sb.add("cr_exp", cr_exp, 1e-6);
  {
    Stem bad;
    bad.alg = &alg;
    bad.label = "re";
    bad.f1 = [&alg](std::complex<double> z) { return Element::scalar(alg, z.real()); };
    bad.f2 = [&alg](std::complex<double>) { return Element(alg); };
    double r = cr_residual(bad, {0.4, 0.8}, h);
    sb.add_flag("cr_detects_non_regular", r > 0.5);
  }

  std::vector<std::complex<double>> pts;
  for (int k = 0; k < 12; ++k) pts.emplace_back(rng.uniform(-2, 2), rng.uniform(-2, 2));
  sb.add_flag("exp_is_real_slice", is_real_slice(stems[1], pts));
  if (alg.dim() > 1) {
    Stem cst;
    cst.alg = &alg;
    cst.label = "const";
    cst.f1 = [&alg](std::complex<double>) { return Element::basis(alg, alg.dim() - 1); };
    cst.f2 = [&alg](std::complex<double>) { return Element(alg); };
    sb.add_flag("nonreal_constant_detected", !is_real_slice(cst, pts));
  }
  return sb.report;
}

// ---------------------------------------------------------------- resolvent

VerifyReport suite_resolvent(const VerifyOptions& opt) {
  SuiteBuilder sb;
  sb.report.suite = "resolvent";
  Rng rng(opt.seed);
  const Algebra& alg = Algebra::from_code(opt.algebra);
  if (!alg.associative()) fail(Err::NonAssociative, "resolvent suite needs an associative algebra");
  const int mats = opt.fast ? 3 : 8;
  const int m = opt.m;

  double circ_on = 0.0;
  double circ_off_min = 1e300;
  double commQ = 0.0, commQQ = 0.0, creal = 0.0, req = 0.0, comm = 0.0, ball = 0.0;
  bool nonempty = true;
  for (int trial = 0; trial < mats; ++trial) {
    OpMatrix A = random_op(alg, m, rng);
    SphereSpectrum spec = spherical_spectrum(A, opt.seed + trial);
    nonempty = nonempty && !spec.spheres.empty();
    const double normA = op_norm(A);
    ball = std::max(ball, spec.radius() - normA);

    for (const Sphere& s : spec.spheres) {
      for (int k = 0; k < 3; ++k) {
        Element j = random_imaginary_unit(alg, rng);
        Element alpha = Element::scalar(alg, s.a) + s.b * j;
        RealMatrix D = realify(delta(A, alpha));
        circ_on = std::max(circ_on, smallest_sv(D) / std::max(1.0, norm_inf(D)));
      }
    }
    for (int k = 0; k < 10; ++k) {
      Element j = random_imaginary_unit(alg, rng);
      double a = rng.uniform(-1.5, 1.5) * (1.0 + spec.radius());
      double b = rng.uniform(0.0, 1.5) * (1.0 + spec.radius());
      double dist = 1e300;
      for (const Sphere& s : spec.spheres) dist = std::min(dist, std::hypot(a - s.a, b - s.b));
      if (dist < 0.1 * (1.0 + spec.radius())) continue;
      Element alpha = Element::scalar(alg, a) + b * j;
      RealMatrix D = realify(delta(A, alpha));
      circ_off_min = std::min(circ_off_min, smallest_sv(D) / std::max(1.0, norm_inf(D)));
    }

    double lam = normA + 1.0 + std::abs(rng.normal());
    double mu = normA + 2.0 + std::abs(rng.normal());
    Element alpha = Element::scalar(alg, rng.uniform(0.5, 1.5) * (normA + 1.0)) +
                    rng.uniform(0.5, 1.5) * (normA + 1.0) * random_imaginary_unit(alg, rng);

    OpMatrix Q = resolvent_q(A, alpha);
    commQ = std::max(commQ, op_norm(matmul(Q, A) - matmul(A, Q)));
    Element beta = Element::scalar(alg, lam);
    OpMatrix Qb = resolvent_q(A, beta);
    commQQ = std::max(commQQ, op_norm(matmul(Q, Qb) - matmul(Qb, Q)));

    RealMatrix shifted = realify(lam * OpMatrix::identity(alg, m) - A);
    OpMatrix lu_inv = derealify(LuFactors::factor(shifted).inverse(), alg, m);
    creal = std::max(creal, op_norm(resolvent(A, lam) - lu_inv));

    req = std::max(req, resolvent_equation_residual(A, lam, mu));
    comm = std::max(comm, commutation_residual(A, alpha));
  }
  sb.add("spectrum_spheres_singular", circ_on, 1e-6);
  sb.add_flag("off_sphere_invertible", circ_off_min > 1e-9);
  sb.add_flag("spectrum_nonempty", nonempty);
  sb.add("spectral_ball_inclusion", std::max(ball, 0.0), 1e-8);
  sb.add("q_commutes_with_a", commQ, 1e-10);
  sb.add("q_family_commutes", commQQ, 1e-10);
  sb.add("real_resolvent_matches_lu", creal, 1e-10);
  sb.add("resolvent_equation", req, 1e-9);
  sb.add("commutation_identity", comm, 1e-9);

  {  // Neumann series against the LU route
    OpMatrix B = random_op(alg, m, rng);
    double nb = op_norm(B);
    Element j = random_imaginary_unit(alg, rng);
    Element alpha = Element::scalar(alg, 1.2 * nb) + (2.0 * nb * 0.8) * j;  // |alpha| = 2||B||
    double aa = abs_cone(alpha);
    alpha = (2.0 * nb / aa) * alpha;
    NeumannResult nr = neumann_resolvent(B, alpha, 60);
    double diff = op_norm(nr.sum - resolvent(B, alpha));
    sb.add("neumann_within_tail", std::max(diff - nr.tail_bound, 0.0), 1e-12 * (1.0 + 1.0 / nb));
  }
  {
    OpMatrix A = random_op(alg, m, rng);
    A = A + (op_norm(A) + 1.0) * OpMatrix::identity(alg, m);  // well clear of singular
    OpMatrix B = random_op(alg, m, rng);
    double cap = 0.4 / op_norm(derealify(LuFactors::factor(realify(A)).inverse(), alg, m));
    B = (cap / std::max(op_norm(B), 1e-12)) * B;
    OpMatrix X = neumann_inverse(A, B);
    double res = op_norm(matmul(A + B, X) - OpMatrix::identity(alg, m));
    sb.add("neumann_inverse_residual", res, 1e-10);
  }
  {  // the Moebius bridge identities
    OpMatrix A = random_op(alg, m, rng);
    double lam = op_norm(A) + 2.0;
    MobiusBridge mb = mobius_bridge(A, lam);
    SphereSpectrum sA = spherical_spectrum(A, opt.seed, false);
    SphereSpectrum sB = spherical_spectrum(mb.B, opt.seed, false);
    double setdist = 0.0;
    for (const Sphere& s : sA.spheres) {
      Element img = mb.map(Element::scalar(alg, s.a) + s.b * random_imaginary_unit(alg, rng));
      ConeParts ip = cone_decompose(img);
      double best = 1e300;
      for (const Sphere& sb2 : sB.spheres)
        best = std::min(best, std::hypot(ip.a - sb2.a, ip.b - sb2.b));
      setdist = std::max(setdist, best);
    }
    sb.add("mobius_spectrum_map", setdist, 1e-7);

    double idres = 0.0;
    for (int k = 0; k < 4; ++k) {
      Element alpha = Element::scalar(alg, rng.uniform(0.5, 1.5) * (lam + 1.0)) +
                      rng.uniform(0.5, 1.5) * (lam + 1.0) * random_imaginary_unit(alg, rng);
      if (!in_spherical_resolvent(A, alpha)) continue;
      Element phi = mb.map(alpha);
      OpMatrix lhs = resolvent(A, alpha);
      OpMatrix rhs = -1.0 * right_scalar(matmul(mb.B, resolvent(mb.B, phi)), phi);
      idres = std::max(idres, op_norm(lhs - rhs));
    }
    sb.add("mobius_resolvent_bridge", idres, 1e-9);
  }
  {  // holomorphy of the resolvent in a spectral-free plane region
    OpMatrix B = random_op(alg, m, rng);
    double R = op_norm(B);
    Element j = random_imaginary_unit(alg, rng);
    Element alpha = Element::scalar(alg, 1.5 * R + 1.0) + (R + 1.0) * j;
    double h = 1e-4;
    double r1 = cr_residual_resolvent(B, alpha, h);
    double r2 = cr_residual_resolvent(B, alpha, h / 2.0);
    sb.add("resolvent_cr_residual", r1, 1e-5);
    sb.add_flag("resolvent_cr_order_h2", r2 <= r1 / 2.5 + 1e-12);
  }
  return sb.report;
}

// ---------------------------------------------------------------- semigroup

VerifyReport suite_semigroup(const VerifyOptions& opt) {
  SuiteBuilder sb;
  sb.report.suite = "semigroup";
  Rng rng(opt.seed);
  const Algebra& alg = Algebra::from_code(opt.algebra);
  if (!alg.associative()) fail(Err::NonAssociative, "semigroup suite needs an associative algebra");
  const int m = opt.m;
  const int mats = opt.fast ? 2 : 4;

  double rightlin = 0.0, growth = 0.0, law = 0.0, agree = 0.0, cauchy_ratio = 0.0, laplace = 0.0;
  for (int trial = 0; trial < mats; ++trial) {
    OpMatrix A = random_op(alg, m, rng);
    A = (1.0 / (1.0 + op_norm(A))) * A;  // keep scales tame
    SemigroupTrace tr = expm_trace(A, 2.0, 40);

    for (int k = 0; k < 5; ++k) {
      int idx = rng.uniform_int(static_cast<int>(tr.values.size()));
      rightlin = std::max(rightlin, right_linearity_residual(tr.values[idx], rng));
    }
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      double bound = tr.bound.M * std::exp(tr.bound.w * tr.times[k]) * (1.0 + 1e-8);
      growth = std::max(growth, op_norm(tr.values[k]) - bound);
    }
    law = std::max(law, semigroup_law_residual(tr));

    ModuleVec x = random_vec(alg, m, rng);
    YosidaEvolveResult y = evolve_yosida(A, 1.0, x, 1e-8);
    ModuleVec ex = apply(evolve_expm(A, 1.0), x);
    agree = std::max(agree, vec_norm(vec_sub(y.value, ex)) / (1.0 + vec_norm(ex)));

    double c1 = cauchy_problem_residual(A, tr, x);
    SemigroupTrace tr2 = expm_trace(A, 2.0, 80);
    double c2 = cauchy_problem_residual(A, tr2, x);
    cauchy_ratio = std::max(cauchy_ratio, c2 / std::max(c1, 1e-300));

    SemigroupTrace longtr = expm_trace(-1.0 * A - 0.2 * OpMatrix::identity(alg, m), 40.0, 400);
    double lam = 1.0;
    LaplaceResult lr = laplace_residual(-1.0 * A - 0.2 * OpMatrix::identity(alg, m), lam, longtr,
                                        x, 1e-6);
    laplace = std::max(laplace, std::max(lr.residual - lr.tail_bound, 0.0));
  }
  sb.add("evolution_right_linear", rightlin, 1e-10);
  sb.add("growth_bound_certified", std::max(growth, 0.0), 1e-12);
  sb.add("semigroup_law", law, 1e-10);
  sb.add("yosida_matches_expm", agree, 1e-7);
  sb.add_flag("cauchy_residual_order_h2", cauchy_ratio < 0.35);
  sb.add("laplace_transform_identity", laplace, 1e-5);

  {  // contraction bound for a rotation generator; a violation must be seen
     // for the expanding identity against shift 0
    OpMatrix Lj(alg, 1);
    Lj.at(0, 0) = Element::basis(alg, 1);
    std::vector<double> grid;
    for (int i = 1; i <= 100; ++i) grid.push_back(0.1 * i);
    HYCheck ok = check_hille_yosida(Lj, grid, opt.fast ? 4 : 8, 0.0);
    sb.add_flag("hille_yosida_contraction", ok.ok && ok.bound.M <= 1.0 + 1e-12);
    OpMatrix Id = OpMatrix::identity(alg, 1);
    HYCheck bad = check_hille_yosida(Id, grid, 4, 0.0);
    sb.add_flag("hille_yosida_violation_witnessed", !bad.ok);
  }
  return sb.report;
}

// ------------------------------------------------------------------ contour

VerifyReport suite_contour(const VerifyOptions& opt) {
  SuiteBuilder sb;
  sb.report.suite = "contour";
  Rng rng(opt.seed);
  const Algebra& alg = Algebra::from_code(opt.algebra);
  if (!alg.associative()) fail(Err::NonAssociative, "contour suite needs an associative algebra");
  const int m = opt.m;
  QuadratureSpec quad;
  quad.tail_tol = opt.fast ? 1e-7 : 1e-9;
  quad.nodes_per_arc = opt.fast ? 32 : 64;

  Element j = Element::basis(alg, 1);

  {  // identity as a Cauchy integral, with the doubling convergence study
    OpMatrix B(alg, 1);
    B.at(0, 0) = 0.88 * j;
    QuadratureSpec q1 = quad;
    q1.nodes_per_arc = 256;
    QuadratureSpec q2 = quad;
    q2.nodes_per_arc = 512;
    double e1 = op_norm(identity_integral(B, j, 1.0, q1) - OpMatrix::identity(alg, 1));
    double e2 = op_norm(identity_integral(B, j, 1.0, q2) - OpMatrix::identity(alg, 1));
    sb.add("identity_integral_256", e1, 1e-7);
    sb.add_flag("identity_integral_doubling", e2 <= e1 / 4.0 || e2 < 1e-13);
  }

  {  // integral over a spectrum-free loop vanishes
    OpMatrix B = random_op(alg, m, rng);
    B = (1.0 / (1.0 + op_norm(B))) * B;
    double v = vanishing_integral(B, exp_stem(alg, 1.0), j, {3.0 + op_norm(B), 0.0}, 0.5, quad);
    sb.add("vanishing_integral", v, opt.fast ? 1e-6 : 1e-8);
  }

  {  // sectorial generator: contour vs exponential, law, derivative, bounds
    OpMatrix A0 = random_op(alg, m, rng);
    A0 = (1.0 / (1.0 + op_norm(A0))) * A0;
    const double delta = 0.3;
    SphereSpectrum s0 = spherical_spectrum(A0, opt.seed, false);
    double shift = 0.0;
    for (const Sphere& s : s0.spheres)
      shift = std::max(shift, s.a + s.b * std::tan(delta));
    OpMatrix A = A0 - (shift + 1.0) * OpMatrix::identity(alg, m);
    SectorReport sector = sector_check(A, delta, opt.fast ? 32 : 128, opt.seed);

    double vs_expm = 0.0;
    for (double t : {0.5, 1.0}) {
      ContourResult c = semigroup_contour(A, t, j, sector, quad);
      vs_expm = std::max(vs_expm, op_norm(c.T - evolve_expm(A, t)));
    }
    sb.add("contour_matches_expm", vs_expm, opt.fast ? 1e-5 : 1e-6);

    ContourResult c1 = semigroup_contour(A, 0.7, j, sector, quad);
    ContourResult c2 = semigroup_contour(A, 0.9, j, sector, quad);
    ContourResult c12 = semigroup_contour(A, 1.6, j, sector, quad);
    double lawres = op_norm(c12.T - matmul(c1.T, c2.T));
    double lawtol = 3.0 * (c1.cert.tail_bound + c2.cert.tail_bound + c12.cert.tail_bound + 1e-8);
    sb.add("contour_semigroup_law", lawres, lawtol);

    Element j2 = random_imaginary_unit(alg, rng);
    double ind = contour_parameter_independence(A, 1.0, j, 0.5, kPi / 2.0 + delta * 0.45, j2, 1.1,
                                                kPi / 2.0 + delta * 0.3, sector, quad);
    sb.add("contour_parameter_independence", ind, 3.0 * (2.0 * quad.tail_tol + 1e-8));

    const double h = 1e-3;
    ContourResult tp = semigroup_contour(A, 1.0 + h, j, sector, quad);
    ContourResult tm = semigroup_contour(A, 1.0 - h, j, sector, quad);
    ContourResult tc = semigroup_contour(A, 1.0, j, sector, quad);
    double dres = op_norm((0.5 / h) * (tp.T - tm.T) - matmul(A, tc.T));
    sb.add("contour_time_derivative", dres, 1e-3 * (1.0 + op_norm(A)));

    // uniform bound sup_t ||T(t)|| against the sector estimate
    double embed = 0.0;
    {
      const auto& [gx, gw] = gauss_legendre(64);
      double eta = kPi / 2.0 + delta / 2.0;
      double arcpart = 0.0;
      for (std::size_t i = 0; i < gx.size(); ++i)
        arcpart += gw[i] * eta * std::exp(std::cos(eta * gx[i]));
      double e1 = 0.0;  // int_{|cos eta|}^inf e^{-u}/u du by panels
      double lo = std::abs(std::cos(eta));
      for (int panel = 0; panel < 60; ++panel) {
        double a = lo * std::pow(2.0, panel), b = 2.0 * a;
        for (std::size_t i = 0; i < gx.size(); ++i) {
          double u = 0.5 * (a + b) + 0.5 * (b - a) * gx[i];
          e1 += gw[i] * 0.5 * (b - a) * std::exp(-u) / u;
        }
        if (a > 40.0) break;
      }
      embed = sector.M / (2.0 * kPi) * arcpart + sector.M / kPi * e1;
    }
    double sup = 0.0;
    for (double t : {0.01, 0.1, 1.0, 5.0, 10.0})
      sup = std::max(sup, op_norm(semigroup_contour(A, t, j, sector, quad).T));
    sb.add("contour_uniform_bound", std::max(sup - embed, 0.0), 1e-6);

    ContourResult rc = resolvent_contour(A, 2.0, j, sector, quad);
    sb.add("resolvent_contour_matches_lu", op_norm(rc.T - resolvent(A, 2.0)),
           opt.fast ? 1e-5 : 1e-7);
  }

  {
    TailBoundedScalar z = exp_ray_integral_zero(j, 0.8, kPi / 2.0 + 0.3, 1.0, quad);
    sb.add("exp_keyhole_integral_zero", z.norm + z.tail_bound, 1e-8);
  }

  {  // slice Cauchy reconstruction for id, square, exp
    std::vector<Stem> fs = {identity_stem(alg),
                            slice_product(identity_stem(alg), identity_stem(alg)),
                            exp_stem(alg, 1.0)};
    QuadratureSpec qc = quad;
    qc.nodes_per_arc = 256;
    double worst = 0.0;
    for (const Stem& F : fs) {
      for (int s = 0; s < (opt.fast ? 3 : 8); ++s) {
        Element beta = random_cone_element(alg, rng);
        beta = (1.0 / (1.0 + euclid_norm(beta))) * beta;  // keep inside radius 4
        Element val = slice_cauchy_reconstruct(F, beta, j, 0.0, 4.0, qc);
        worst = std::max(worst, euclid_norm(val - eval_slice(F, beta)));
      }
    }
    sb.add("slice_cauchy_reconstruction", worst, 1e-7);
  }
  return sb.report;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"algebra", "slice", "resolvent", "semigroup", "contour", "all"};
}

VerifyReport run_suite(const std::string& name, const VerifyOptions& opt) {
  if (name == "algebra") return suite_algebra(opt);
  if (name == "slice") return suite_slice(opt);
  if (name == "resolvent") return suite_resolvent(opt);
  if (name == "semigroup") return suite_semigroup(opt);
  if (name == "contour") return suite_contour(opt);
  if (name == "all") {
    VerifyReport all;
    all.suite = "all";
    for (const std::string& n : {"algebra", "slice", "resolvent", "semigroup", "contour"}) {
      VerifyReport r = run_suite(n, opt);
      for (VerifyCase& c : r.cases) {
        c.name = n + "." + c.name;
        all.max_residual = std::max(all.max_residual, c.residual);
        all.pass = all.pass && c.pass;
        all.cases.push_back(std::move(c));
      }
    }
    return all;
  }
  fail(Err::UnknownSuite, "no suite named '" + name + "'");
}

nlohmann::json report_to_json(const VerifyReport& r) {
  nlohmann::json cases = nlohmann::json::array();
  for (const VerifyCase& c : r.cases)
    cases.push_back({{"name", c.name}, {"residual", c.residual}, {"tol", c.tol}, {"pass", c.pass}});
  return nlohmann::json{{"suite", r.suite},
                        {"cases", std::move(cases)},
                        {"max_residual", r.max_residual},
                        {"pass", r.pass}};
}

}  // namespace slicesemi
