#include <CLI11.hpp>

#include <omp.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "jetlin/acceptance.hpp"
#include "jetlin/json_io.hpp"
#include "jetlin/kernels.hpp"

using namespace jetlin;

namespace {

// exit codes: 0 linearizable / success, 1 not linearizable / selftest
// failure, 2 inconclusive, 3 bad input, 4 internal error
constexpr int kBadInput = 3;
constexpr int kInternal = 4;

struct JobConfig {
  std::string command;
  std::string rhs;
  std::string coeffs;
  std::string jet;
  std::string f1 = "x";
  std::string f2 = "y";
  std::string point = "0,0";
  int order = 2;
  double slope = 0;
  double span = 0.5;
  int steps = 4000;
  std::string in;
  std::string out;
  std::string format = "json";
  std::string level = "quick";
  std::uint64_t selftest_seed = 42;
  int threads = 0;
  ZeroTestOptions zero;

  json to_json() const {
    json j{{"command", command}};
    if (!rhs.empty()) j["rhs"] = rhs;
    if (!coeffs.empty()) j["coeffs"] = coeffs;
    if (!jet.empty()) j["jet"] = jet;
    if (command == "transform" || command == "lift") j["transform"] = {f1, f2};
    if (command != "selftest" && command != "batch" && command != "analyze") j["point"] = point;
    if (command == "jet" || command == "lift" || command == "isotropy") j["order"] = order;
    if (command == "transform") {
      j["slope"] = slope;
      j["span"] = span;
      j["steps"] = steps;
    }
    if (command == "analyze" || command == "batch")
      j["sampling"] = {{"samples", zero.samples},
                       {"epsilon", zero.epsilon},
                       {"box", zero.box},
                       {"max_denominator", zero.max_denominator},
                       {"seed", zero.seed}};
    if (command == "selftest") {
      j["seed"] = selftest_seed;
      j["level"] = level;
    }
    if (command == "batch") j["in"] = in;
    return j;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError("invalid JSON in " + what + ": " + e.what());
  }
}

Scalar number(const std::string& s) {
  if (s.find_first_of(".eE") != std::string::npos) {
    std::size_t used = 0;
    double d = std::stod(s, &used);
    if (used != s.size()) throw DomainError("bad number '" + s + "'");
    return Scalar(d);
  }
  return Scalar(parse_rational(s));
}

Point parse_point(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw DomainError("--point expects x,y");
  return {number(s.substr(0, comma)), number(s.substr(comma + 1))};
}

Section section_of_rhs(const std::string& rhs) {
  static const std::set<std::string, std::less<>> vars{"x", "y", "p"};
  return rhs_to_section(parse(rhs, vars));
}

Section equation(const JobConfig& c) {
  if (!c.rhs.empty() && !c.coeffs.empty()) throw DomainError("give either --rhs or --coeffs, not both");
  if (!c.coeffs.empty()) return section_from_json(parse_json(read_file(c.coeffs), c.coeffs));
  if (!c.rhs.empty()) return section_of_rhs(c.rhs);
  throw DomainError("an equation is required (--rhs or --coeffs)");
}

bool has_equation(const JobConfig& c) { return !c.rhs.empty() || !c.coeffs.empty(); }

JetPoint input_jet(const JobConfig& c) {
  if (!c.jet.empty()) return jet_from_json(parse_json(read_file(c.jet), c.jet));
  if (c.order < 0) throw DomainError("--order must be >= 0");
  if (has_equation(c)) return jet_eval(equation(c), parse_point(c.point), c.order);
  return JetPoint(c.order, parse_point(c.point));
}

void text_lines(const json& j, const std::string& prefix, std::ostream& os) {
  for (const auto& [k, v] : j.items()) {
    if (v.is_object() && k != "config") {
      text_lines(v, prefix + k + ".", os);
      continue;
    }
    os << prefix << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

void emit(const JobConfig& c, const json& j) {
  std::ostringstream os;
  if (c.format == "text")
    text_lines(j, "", os);
  else
    os << j.dump(2) << "\n";
  if (c.out.empty()) {
    std::cout << os.str();
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw DomainError("cannot write '" + c.out + "'");
  f << os.str();
}

int verdict_code(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Linearizable:
    case Verdict::Kind::NumericallyLinearizable:
      return 0;
    case Verdict::Kind::NotLinearizable:
      return 1;
    case Verdict::Kind::Inconclusive:
      return 2;
  }
  return kInternal;
}

int cmd_analyze(const JobConfig& c) {
  Section s = equation(c);
  Verdict v = linearizable(s, c.zero);
  json j{{"config", c.to_json()}, {"equation", to_json(s)}};
  json vj = to_json(v);
  for (const auto& [k, x] : vj.items()) j[k] = x;
  emit(c, j);
  return verdict_code(v.kind);
}

int cmd_transform(const JobConfig& c) {
  Section s = equation(c);
  PointTransform f = PointTransform::parse(c.f1, c.f2);
  Point p = parse_point(c.point);
  auto A = f.jacobian(p);
  if ((A[0][0] * A[1][1] - A[0][1] * A[1][0]).is_zero())
    throw SingularJacobianError("Jacobian of the transform is singular at the probe point");
  json j{{"config", c.to_json()}, {"transform", to_json(f)}, {"equation", to_json(s)}};
  if (f.inverse) {
    j["transformed"] = to_json(pushforward_equation(f, s));
    j["coordinates"] = "new";
  } else {
    // no inverse: coefficients as functions of the old coordinates
    auto src = pushforward_source_form(f, s);
    json t = json::object();
    for (int i = 0; i < 4; ++i) t["u" + std::to_string(i)] = render(src[static_cast<std::size_t>(i)].reduced().to_expr());
    j["transformed"] = t;
    j["coordinates"] = "source";
  }
  InitialValue ivp{p[0].to_double(), p[1].to_double(), c.slope};
  try {
    CurveReport r = solution_curve_oracle(f, s, ivp, c.span, c.steps);
    j["residual"] = {{"max_residual", r.max_residual},
                     {"points_checked", r.points_checked},
                     {"passed", r.max_residual < 1e-6}};
  } catch (const Error& e) {
    j["residual"] = {{"error", e.what()}, {"passed", false}};
  }
  emit(c, j);
  return 0;
}

int cmd_jet(const JobConfig& c) {
  Section s = equation(c);
  JetPoint theta = jet_eval(s, parse_point(c.point), c.order);
  emit(c, {{"config", c.to_json()}, {"equation", to_json(s)}, {"jet", to_json(theta)}});
  return 0;
}

int cmd_lift(const JobConfig& c) {
  JetPoint theta = input_jet(c);
  PointTransform f = PointTransform::parse(c.f1, c.f2);
  JetPoint lifted = lift_jet(f, theta);
  json j{{"config", c.to_json()}, {"transform", to_json(f)}, {"jet", to_json(theta)}, {"lifted", to_json(lifted)}};
  if (has_equation(c) && c.jet.empty() && f.inverse) {
    JetPoint direct = jet_eval(pushforward_equation(f, equation(c)), lifted.base(), theta.order());
    j["matches_transformed_equation"] = direct == lifted;
  }
  emit(c, j);
  return 0;
}

int cmd_isotropy(const JobConfig& c) {
  JetPoint theta = input_jet(c);
  if (!theta.is_exact()) throw DomainError("isotropy needs an exact rational jet");
  int k = theta.order();
  JetPoint theta0 = project(theta, 0);
  Subspace g = isotropy_algebra(theta);
  Subspace sym = symbol_g(theta0);
  Subspace prol = prolong(sym);
  SpencerComplex sc = symbol_spencer_complex(theta0);
  json j{{"config", c.to_json()}, {"jet", to_json(theta)}};
  j["isotropy_algebra"] = to_json(g);
  j["isotropy_algebra"]["jet_order"] = k;
  if (k >= 1) {
    j["isotropy_space"] = to_json(isotropy_space(theta));
    j["isotropy_space"]["jet_order"] = k;
  } else {
    j["isotropy_space"] = nullptr;
  }
  j["symbol"] = to_json(sym);
  j["prolongation"] = {{"dimension", prol.dimension()}};
  j["spencer"] = to_json(sc);
  j["spencer"]["H12"] = sc.cohomology[2];
  j["orbit_dimension"] = orbit_dimension(theta);
  j["jet_space_dimension"] = theta.total_dimension();
  emit(c, j);
  return 0;
}

int cmd_selftest(const JobConfig& c) {
  Level level = parse_level(c.level);
  AcceptanceReport r = run_acceptance(c.selftest_seed, level);
  std::ostringstream os;
  if (c.format == "text")
    os << to_text(r);
  else
    os << json{{"config", c.to_json()}, {"report", to_json(r)}}.dump(2) << "\n";
  if (c.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(c.out);
    f << os.str();
  }
  return r.passed() ? 0 : 1;
}

// one JSON object per line: {"rhs": "..."} or {"u0": ..., "u3": ...}
int cmd_batch(const JobConfig& c) {
  std::ifstream in(c.in);
  if (!in) throw DomainError("cannot open '" + c.in + "'");
  std::vector<Section> eqs;
  std::vector<std::size_t> index;
  std::vector<json> out;
  std::string line;
  for (std::size_t n = 0; std::getline(in, line); ++n) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      out.push_back(nullptr);
      continue;
    }
    try {
      json j = parse_json(line, "line " + std::to_string(n + 1));
      Section s = j.is_object() && j.contains("rhs") ? section_of_rhs(j.at("rhs").get<std::string>())
                                                      : section_from_json(j.is_object() && j.contains("coeffs") ? j.at("coeffs") : j);
      eqs.push_back(s);
      index.push_back(n);
      out.push_back({{"index", n}});
    } catch (const std::exception& e) {
      out.push_back({{"index", n}, {"error", e.what()}});
    }
  }
  auto results = analyze_parallel(eqs, c.zero);
  for (std::size_t m = 0; m < results.size(); ++m) {
    json& j = out[index[m]];
    if (results[m].verdict) {
      json vj = to_json(*results[m].verdict);
      for (const auto& [k, x] : vj.items()) j[k] = x;
    } else {
      j["error"] = results[m].error;
    }
  }
  std::ostringstream os;
  bool all_ok = true;
  for (const json& j : out) {
    if (j.is_null()) continue;
    if (j.contains("error")) all_ok = false;
    os << j.dump() << "\n";
  }
  if (c.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(c.out);
    f << os.str();
  }
  return all_ok ? 0 : kBadInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linearizability of y'' = u0 + u1 y' + u2 y'^2 + u3 y'^3 under point transformations"};
  app.require_subcommand(1);
  JobConfig c;

  auto equation_flags = [&](CLI::App* s) {
    s->add_option("--rhs", c.rhs, "right-hand side in x, y, p = y'");
    s->add_option("--coeffs", c.coeffs, "JSON file {\"u0\": ..., \"u3\": ...} in x1, x2 (or x, y)");
  };
  auto sampling_flags = [&](CLI::App* s) {
    s->add_option("--samples", c.zero.samples, "sample points for the numeric zero test")->capture_default_str();
    s->add_option("--epsilon", c.zero.epsilon, "zero threshold")->capture_default_str();
    s->add_option("--box", c.zero.box, "sample coordinates lie in [-box, box]")->capture_default_str();
    s->add_option("--max-denominator", c.zero.max_denominator)->capture_default_str();
    s->add_option("--seed", c.zero.seed, "sampling seed")->capture_default_str();
  };
  auto output_flags = [&](CLI::App* s) {
    s->add_option("--out", c.out, "write output here instead of stdout");
    s->add_option("--format", c.format)->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  };
  auto point_flag = [&](CLI::App* s) { s->add_option("--point", c.point, "base point x,y")->capture_default_str(); };
  auto transform_flags = [&](CLI::App* s) {
    s->add_option("--f1", c.f1, "new x as a function of x, y")->capture_default_str();
    s->add_option("--f2", c.f2, "new y as a function of x, y")->capture_default_str();
  };

  auto* analyze = app.add_subcommand("analyze", "obstruction F1, F2 and the linearizability verdict");
  equation_flags(analyze);
  sampling_flags(analyze);
  output_flags(analyze);

  auto* transform = app.add_subcommand("transform", "transform an equation by a point transformation");
  equation_flags(transform);
  transform_flags(transform);
  point_flag(transform);
  transform->add_option("--slope", c.slope, "initial y' for the solution-curve check")->capture_default_str();
  transform->add_option("--span", c.span, "x-interval of the solution-curve check")->capture_default_str();
  transform->add_option("--steps", c.steps, "RK4 steps")->capture_default_str();
  output_flags(transform);

  auto* jet = app.add_subcommand("jet", "k-jet of an equation at a point");
  equation_flags(jet);
  point_flag(jet);
  jet->add_option("--order", c.order)->capture_default_str();
  output_flags(jet);

  auto* lift = app.add_subcommand("lift", "lift a jet through a point transformation");
  equation_flags(lift);
  lift->add_option("--jet", c.jet, "JSON jet file instead of an equation");
  transform_flags(lift);
  point_flag(lift);
  lift->add_option("--order", c.order)->capture_default_str();
  output_flags(lift);

  auto* iso = app.add_subcommand("isotropy", "isotropy algebra, isotropy space, symbol and Spencer data of a jet");
  equation_flags(iso);
  iso->add_option("--jet", c.jet, "JSON jet file; without a jet or equation the zero jet is used");
  point_flag(iso);
  iso->add_option("--order", c.order)->capture_default_str();
  output_flags(iso);

  auto* self = app.add_subcommand("selftest", "run the acceptance suite");
  self->add_option("--seed", c.selftest_seed)->capture_default_str();
  self->add_option("--level", c.level)->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
  output_flags(self);

  auto* batch = app.add_subcommand("batch", "analyze a JSON-lines file of equations");
  batch->add_option("--in", c.in, "input, one equation per line")->required();
  sampling_flags(batch);
  batch->add_option("--threads", c.threads, "OpenMP threads (0 = default)");
  output_flags(batch);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kBadInput;
  }

  if (c.threads > 0) omp_set_num_threads(c.threads);
  try {
    for (auto* s : app.get_subcommands()) {
      c.command = s->get_name();
      if (c.command == "analyze") return cmd_analyze(c);
      if (c.command == "transform") return cmd_transform(c);
      if (c.command == "jet") return cmd_jet(c);
      if (c.command == "lift") return cmd_lift(c);
      if (c.command == "isotropy") return cmd_isotropy(c);
      if (c.command == "selftest") return cmd_selftest(c);
      if (c.command == "batch") return cmd_batch(c);
    }
  } catch (const InternalInconsistencyError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
