#include "jetlin/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "jetlin/kernels.hpp"
#include "jetlin/random.hpp"

namespace jetlin {

Level parse_level(const std::string& s) {
  if (s == "quick") return Level::Quick;
  if (s == "full") return Level::Full;
  throw DomainError("level must be quick or full, got '" + s + "'");
}

std::string to_string(Level level) { return level == Level::Quick ? "quick" : "full"; }

bool AcceptanceReport::passed() const {
  for (const auto& r : results)
    if (!r.passed) return false;
  return !results.empty();
}

AcceptanceSizes sizes_for(Level level) {
  if (level == Level::Quick) return {1000, 50, 100, 20, 100, 20, 10, 20};
  return {5000, 200, 400, 60, 500, 100, 30, 80};
}

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t stream(std::uint64_t seed, int criterion) {
  return seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(criterion + 1));
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

template <class F>
CriterionResult timed(int id, std::string title, std::string claim, F body) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  r.claim = std::move(claim);
  auto t0 = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail += (r.detail.empty() ? "" : "; ") + std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

Section section_of_rhs(const std::string& rhs) {
  static const std::set<std::string, std::less<>> vars{"x", "y", "p"};
  return rhs_to_section(parse(rhs, vars));
}

}  // namespace

CriterionResult criterion_structure() {
  return timed(1, "structural dimensions",
               "dim g = 2 with generators e1, e2; g^(1) = 0; dim g(x)V* = 4, d_{2,1} injective, H^{1,2} = 0; "
               "dim g_{0_2} = 6, dim W_0/L^4_0 = 30, orbit of 0_2 has dim 24 = dim J^2 - 2",
               [](CriterionResult& r) {
                 std::vector<std::string> bad;
                 auto expect = [&](bool ok, const std::string& what) {
                   ++r.cases;
                   if (!ok) bad.push_back(what);
                 };
                 Rng rng(1);
                 for (int n = 0; n < 3; ++n) {
                   JetPoint theta0 = n == 0 ? JetPoint(0, {Scalar(0), Scalar(0)}) : random_jet(rng, 0);
                   Subspace g = symbol_g(theta0);
                   expect(g.dimension() == 2, "dim g");
                   expect(span_equal(g.basis, {generator_e1(), generator_e2()}, 6), "generators");
                   expect(prolong(g).dimension() == 0, "g^(1)");
                   SpencerComplex c = symbol_spencer_complex(theta0);
                   expect(c.dims[1] == 4, "dim g(x)V*");
                   expect(rank(c.d1) == c.dims[1], "d_{2,1} injective");
                   expect(c.cohomology[1] == 0 && c.cohomology[2] == 0, "H^{1,2}");
                 }
                 JetPoint zero2(2, {Scalar(0), Scalar(0)});
                 std::size_t g02 = isotropy_algebra(zero2).dimension();
                 std::size_t w = VectorFieldJet::vector_size(4);
                 std::size_t orbit = orbit_dimension(zero2);
                 expect(g02 == 6, "dim g_{0_2}");
                 expect(w == 30, "dim W_0/L^4_0");
                 expect(orbit == 24 && orbit == w - g02, "orbit dimension");
                 expect(orbit == zero2.total_dimension() - 2, "dim M");
                 r.passed = bad.empty();
                 r.detail = "dim g_{0_2} = " + std::to_string(g02) + ", orbit dim " + std::to_string(orbit) +
                            ", J^2 dim " + std::to_string(zero2.total_dimension());
                 for (const auto& b : bad) r.detail += "; failed: " + b;
               });
}

CriterionResult criterion_routes(std::uint64_t seed, int jets) {
  return timed(2, "closed form vs constructive route",
               "H_theta_1 and F1, F2 closed forms equal the isotropy-space solve exactly", [&](CriterionResult& r) {
                 Rng rng(stream(seed, 2));
                 std::vector<JetPoint> batch;
                 batch.push_back(JetPoint(2, {Scalar(0), Scalar(0)}));
                 while (static_cast<int>(batch.size()) < jets) batch.push_back(random_jet(rng, 2));
                 auto checks = check_routes_parallel(batch);
                 int frames = 0, values = 0;
                 for (const auto& c : checks) {
                   frames += c.frame_agrees;
                   values += c.obstruction_agrees;
                 }
                 r.cases = jets;
                 r.passed = frames == jets && values == jets;
                 r.detail = std::to_string(frames) + "/" + std::to_string(jets) + " frames, " + std::to_string(values) +
                            "/" + std::to_string(jets) + " obstruction values, calibration " +
                            to_string(antisymmetrization_scale());
               });
}

CriterionResult criterion_psi_flow(std::uint64_t seed, int cases) {
  return timed(3, "psi vs flow", "|flow derivative - psi| < 1e-5 at dt = 1e-3", [&](CriterionResult& r) {
    Rng rng(stream(seed, 3));
    double worst = 0;
    for (int n = 0; n < cases; ++n) {
      PolynomialField X = random_field(rng, 2);
      Section s = random_section(rng, 2);
      Point p = random_point(rng, 1, 4);
      auto exact = psi(X.jet(p, 2), jet_eval(s, p, 1));
      auto approx = flow_oracle(X, s, p, 1e-3);
      for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::fabs(exact[i].to_double() - approx[i]));
      ++r.cases;
    }
    r.passed = worst < 1e-5;
    r.detail = "max deviation " + fmt(worst);
  });
}

CriterionResult criterion_isotropy_laws(std::uint64_t seed, int jets) {
  return timed(4, "isotropy-space laws",
               "g_theta_k in A_theta_{k+1}; rho_{3,2}(A_theta_2) = A_theta_1; [A_theta_2, A_theta_2] in A_theta_1",
               [&](CriterionResult& r) {
                 Rng rng(stream(seed, 4));
                 int inclusion = 0, surjection = 0, closure = 0;
                 for (int n = 0; n < jets; ++n) {
                   JetPoint theta2 = random_jet(rng, 2);
                   JetPoint theta1 = project(theta2, 1);
                   Subspace a2 = isotropy_space(theta2), a1 = isotropy_space(theta1);
                   inclusion += a2.contains(isotropy_algebra(theta1)) && a1.contains(isotropy_algebra(project(theta2, 0)));
                   surjection += a2.projected(2) == a1;
                   bool closed = true;
                   for (std::size_t i = 0; i < a2.dimension() && closed; ++i)
                     for (std::size_t j = i + 1; j < a2.dimension() && closed; ++j)
                       closed = a1.contains(bracket(a2.element(i), a2.element(j)));
                   closure += closed;
                   ++r.cases;
                 }
                 r.passed = inclusion == jets && surjection == jets && closure == jets;
                 r.detail = "inclusion " + std::to_string(inclusion) + ", projection " + std::to_string(surjection) +
                            ", bracket " + std::to_string(closure) + " of " + std::to_string(jets);
               });
}

CriterionResult criterion_linearizable(std::uint64_t seed, int transforms) {
  return timed(5, "transforms of y'' = 0 are linearizable",
               "F1 = F2 = 0 identically on pushforwards of the zero section", [&](CriterionResult& r) {
                 Rng rng(stream(seed, 5));
                 std::vector<Section> eqs;
                 for (int n = 0; n < transforms; ++n)
                   eqs.push_back(pushforward_equation(random_polynomial_transform(rng), Section::zero()));
                 ZeroTestOptions opt;
                 opt.samples = 100;
                 opt.seed = stream(seed, 50);
                 auto verdicts = analyze_parallel(eqs, opt);
                 int proven = 0, numeric = 0;
                 for (const auto& a : verdicts) {
                   if (!a.verdict) throw InternalInconsistencyError(a.error);
                   proven += a.verdict->kind == Verdict::Kind::Linearizable;
                   numeric += a.verdict->kind == Verdict::Kind::NumericallyLinearizable;
                 }
                 r.cases = transforms;
                 r.passed = proven + numeric == transforms;
                 r.detail = std::to_string(proven) + " proven zero, " + std::to_string(numeric) + " numerically zero of " +
                            std::to_string(transforms);
               });
}

CriterionResult criterion_witnesses() {
  return timed(6, "non-linearizable witnesses", "y'' = y^2: F1 = 6, F2 = 0; y'' = 6y^2 + x: F1 = 36",
               [](CriterionResult& r) {
                 auto f = obstruction_form(section_of_rhs("y^2"));
                 auto g = obstruction_form(section_of_rhs("6*y^2 + x"));
                 auto v = linearizable(section_of_rhs("y^2"));
                 bool ok = f[0] == Expr(6) && f[1] == Expr(0) && g[0] == Expr(36) && g[1] == Expr(0) &&
                           v.kind == Verdict::Kind::NotLinearizable && v.witness && v.witness_values[0] == Scalar(6);
                 JetPoint theta = jet_eval(section_of_rhs("y^2"), {Scalar(ratio(1, 3)), Scalar(-2)}, 2);
                 ObstructionValue at = obstruction_at(theta);
                 ok = ok && at.F1 == Scalar(6) && at.F2.is_zero();
                 r.cases = 3;
                 r.passed = ok;
                 r.detail = "F(y^2) = (" + render(f[0]) + ", " + render(f[1]) + "), F(6y^2 + x) = (" + render(g[0]) + ", " +
                            render(g[1]) + ")";
               });
}

CriterionResult criterion_invariance(std::uint64_t seed, int identity_tangent, int affine) {
  return timed(7, "invariance", "F^i(f^(2) theta_2) = F^i(theta_2) for [f]^1 = id; omega equivariant under affine maps",
               [&](CriterionResult& r) {
                 Rng rng(stream(seed, 7));
                 int it_ok = 0, af_ok = 0;
                 for (int n = 0; n < identity_tangent; ++n) {
                   JetPoint theta = random_jet(rng, 2);
                   auto rep = invariance_check(random_identity_tangent(rng, theta.base()), theta, 0);
                   it_ok += rep.passed && rep.kind == "identity-tangent" && rep.deviation == 0;
                 }
                 for (int n = 0; n < affine; ++n) {
                   JetPoint theta = random_jet(rng, 2);
                   auto rep = invariance_check(random_affine(rng), theta, 0);
                   af_ok += rep.passed && rep.kind == "affine" && rep.deviation == 0;
                 }
                 r.cases = identity_tangent + affine;
                 r.passed = it_ok == identity_tangent && af_ok == affine;
                 r.detail = std::to_string(it_ok) + "/" + std::to_string(identity_tangent) + " identity-tangent, " +
                            std::to_string(af_ok) + "/" + std::to_string(affine) + " affine, exact";
               });
}

CriterionResult criterion_curves(std::uint64_t seed, int cases) {
  return timed(8, "solution curves", "images of solutions solve the transformed equation, residual < 1e-6",
               [&](CriterionResult& r) {
                 Rng rng(stream(seed, 8));
                 const Expr x1 = Expr::variable("x1"), x2 = Expr::variable("x2");
                 double worst = 0;
                 for (int n = 0; n < cases; ++n) {
                   PointTransform f;
                   Section s;
                   InitialValue ivp{0, 0.1, 0.3};
                   if (n == 0) {
                     f = PointTransform::parse("x", "exp(y)");
                   } else {
                     // near the identity
                     Expr q = Expr(rng.rational(1, 4)) * x1 * x1 + Expr(rng.rational(1, 4)) * x1;
                     PointTransform shear{x1, normalize(x2 + q), std::array<Expr, 2>{x1, normalize(x2 - q)}};
                     Rational a = rng.rational(1, 4);
                     PointTransform slant{normalize(x1 + Expr(a) * x2), x2,
                                          std::array<Expr, 2>{normalize(x1 - Expr(a) * x2), x2}};
                     f = compose(slant, shear);
                     for (auto& u : s.u) u = normalize(Expr(rng.rational(1, 4)) + Expr(rng.rational(1, 4)) * x2);
                     ivp = {rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
                   }
                   CurveReport rep = solution_curve_oracle(f, s, ivp, 0.5, 4000);
                   worst = std::max(worst, rep.max_residual);
                   ++r.cases;
                 }
                 r.passed = worst < 1e-6;
                 r.detail = "max residual " + fmt(worst) + ", includes (x, e^y) on y'' = 0";
               });
}

CriterionResult criterion_homomorphism(std::uint64_t seed, int cases) {
  return timed(9, "bracket homomorphism", "[X^(k), Y^(k)] = [X, Y]^(k) within 1e-4 by finite differences",
               [&](CriterionResult& r) {
                 Rng rng(stream(seed, 9));
                 double worst = 0;
                 for (int n = 0; n < cases; ++n) {
                   PolynomialField X = random_field(rng, 2), Y = random_field(rng, 2);
                   JetPoint theta = random_jet(rng, 2, 2, 3);
                   worst = std::max(worst, homomorphism_check(X, Y, theta).max_error);
                   ++r.cases;
                 }
                 r.passed = worst < 1e-4;
                 r.detail = "max relative deviation " + fmt(worst);
               });
}

AcceptanceReport run_acceptance(std::uint64_t seed, Level level,
                                const std::function<void(const CriterionResult&)>& on_result) {
  AcceptanceSizes n = sizes_for(level);
  AcceptanceReport rep;
  rep.seed = seed;
  rep.level = level;
  auto add = [&](CriterionResult c) {
    if (on_result) on_result(c);
    rep.results.push_back(std::move(c));
  };
  add(criterion_structure());
  add(criterion_routes(seed, n.route_jets));
  add(criterion_psi_flow(seed, n.flows));
  add(criterion_isotropy_laws(seed, n.isotropy_jets));
  add(criterion_linearizable(seed, n.transforms));
  add(criterion_witnesses());
  add(criterion_invariance(seed, n.identity_tangent, n.affine));
  add(criterion_curves(seed, n.curves));
  add(criterion_homomorphism(seed, n.homomorphisms));
  return rep;
}

json to_json(const AcceptanceReport& r) {
  json results = json::array();
  for (const auto& c : r.results)
    results.push_back({{"id", c.id},
                       {"title", c.title},
                       {"claim", c.claim},
                       {"passed", c.passed},
                       {"cases", c.cases},
                       {"detail", c.detail}});
  return {{"seed", r.seed}, {"level", to_string(r.level)}, {"passed", r.passed()}, {"criteria", results}};
}

std::string result_line(const CriterionResult& c, bool with_time) {
  std::string s = std::string(c.passed ? "[PASS] " : "[FAIL] ") + std::to_string(c.id) + " " + c.title + ": " + c.detail;
  if (with_time) s += " (" + fmt(c.seconds) + " s)";
  return s;
}

std::string to_text(const AcceptanceReport& r) {
  std::string s = "selftest seed " + std::to_string(r.seed) + " level " + to_string(r.level) + "\n";
  for (const auto& c : r.results) s += result_line(c) + "\n    checks: " + c.claim + "\n";
  s += r.passed() ? "all criteria passed\n" : "FAILED\n";
  return s;
}

}  // namespace jetlin
