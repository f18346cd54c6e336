#include "jetlin/json_io.hpp"

namespace jetlin {

json to_json(const Scalar& s) {
  if (s.is_exact()) return to_string(s.exact());
  return s.to_double();
}

Scalar scalar_from_json(const json& j) {
  if (j.is_string()) return Scalar(parse_rational(j.get<std::string>()));
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (j.is_number()) return Scalar(j.get<double>());
  throw DomainError("expected a number or a rational string, got " + j.dump());
}

json to_json(const Point& p) { return json::array({to_json(p[0]), to_json(p[1])}); }

Point point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("a point is a pair [x1, x2]");
  return {scalar_from_json(j[0]), scalar_from_json(j[1])};
}

json to_json(const JetPoint& theta) {
  json coords = json::array();
  for (int i = 0; i < 4; ++i)
    for (MultiIndex s : MultiIndex::up_to(theta.order()))
      coords.push_back({{"i", i}, {"sigma", {s.r1, s.r2}}, {"value", to_json(theta.u(i, s))}});
  return {{"order", theta.order()}, {"base", to_json(theta.base())}, {"coords", coords}};
}

JetPoint jet_from_json(const json& j) {
  int order = j.at("order").get<int>();
  if (order < 0) throw DomainError("jet order must be >= 0");
  Point base = j.contains("base") ? point_from_json(j.at("base")) : Point{Scalar(0), Scalar(0)};
  JetPoint theta(order, base);
  if (!j.contains("coords")) return theta;
  for (const json& c : j.at("coords")) {
    int i = c.at("i").get<int>();
    const json& sigma = c.at("sigma");
    if (i < 0 || i > 3 || !sigma.is_array() || sigma.size() != 2) throw DomainError("bad jet coordinate " + c.dump());
    MultiIndex s{sigma[0].get<int>(), sigma[1].get<int>()};
    if (s.r1 < 0 || s.r2 < 0 || s.order() > order)
      throw DomainError("coordinate " + c.dump() + " exceeds jet order " + std::to_string(order));
    theta.u(i, s) = scalar_from_json(c.at("value"));
  }
  return theta;
}

json to_json(const Section& s) {
  json j = json::object();
  for (int i = 0; i < 4; ++i) j["u" + std::to_string(i)] = render(s.u[static_cast<std::size_t>(i)]);
  return j;
}

Section section_from_json(const json& j) {
  static const std::set<std::string, std::less<>> vars{"x", "y", "x1", "x2"};
  static const std::map<std::string, std::string, std::less<>> aliases{{"x", "x1"}, {"y", "x2"}};
  Section s;
  for (const auto& [key, value] : j.items()) {
    if (key.size() != 2 || key[0] != 'u' || key[1] < '0' || key[1] > '3')
      throw DomainError("unexpected coefficient key '" + key + "'");
    std::string text = value.is_string() ? value.get<std::string>() : value.dump();
    s.u[static_cast<std::size_t>(key[1] - '0')] = rename(parse(text, vars), aliases);
  }
  return s;
}

json to_json(const VectorFieldJet& X) {
  json coords = json::array();
  for (int i = 1; i <= 2; ++i)
    for (MultiIndex t : MultiIndex::up_to(X.order()))
      coords.push_back({{"i", i}, {"sigma", {t.r1, t.r2}}, {"value", to_json(X.at(i, t))}});
  return {{"order", X.order()}, {"base", to_json(X.base())}, {"coords", coords}};
}

VectorFieldJet field_from_json(const json& j) {
  int order = j.at("order").get<int>();
  if (order < 0) throw DomainError("field order must be >= 0");
  Point base = j.contains("base") ? point_from_json(j.at("base")) : Point{Scalar(0), Scalar(0)};
  VectorFieldJet X(order, base);
  if (!j.contains("coords")) return X;
  for (const json& c : j.at("coords")) {
    int i = c.at("i").get<int>();
    const json& sigma = c.at("sigma");
    if (i < 1 || i > 2 || !sigma.is_array() || sigma.size() != 2) throw DomainError("bad field coordinate " + c.dump());
    MultiIndex t{sigma[0].get<int>(), sigma[1].get<int>()};
    if (t.r1 < 0 || t.r2 < 0 || t.order() > order)
      throw DomainError("coordinate " + c.dump() + " exceeds field order " + std::to_string(order));
    X.at(i, t) = scalar_from_json(c.at("value"));
  }
  return X;
}

json to_json(const PointTransform& f) {
  json j{{"f1", render(f.f1)}, {"f2", render(f.f2)}};
  if (f.inverse)
    j["inverse"] = {render((*f.inverse)[0]), render((*f.inverse)[1])};
  else
    j["inverse"] = nullptr;
  return j;
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (const Vector& r : m.row_vectors()) {
    json row = json::array();
    for (const Rational& q : r) row.push_back(to_string(q));
    rows.push_back(row);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

json to_json(const Subspace& g) {
  json unknowns = json::array();
  for (int i = 1; i <= 2; ++i)
    for (MultiIndex t : MultiIndex::up_to(g.order))
      if (t.order() >= g.min_order) unknowns.push_back(x_name(i, t));
  json basis = json::array();
  for (const Vector& v : g.basis) {
    json row = json::array();
    for (const Rational& q : v) row.push_back(to_string(q));
    basis.push_back(row);
  }
  return {{"dimension", g.dimension()}, {"ambient_dimension", g.ambient_dimension()}, {"unknowns", unknowns},
          {"basis", basis}};
}

json to_json(const SpencerComplex& c) {
  return {{"top_grade", c.top_grade}, {"dims", c.dims}, {"cohomology", c.cohomology},
          {"d0", to_json(c.d0)},     {"d1", to_json(c.d1)}, {"d2", to_json(c.d2)}};
}

json to_json(const ObstructionValue& v) {
  json omega = json::array();
  for (const Scalar& s : v.omega()) omega.push_back(to_json(s));
  return {{"F1", to_json(v.F1)}, {"F2", to_json(v.F2)}, {"omega", omega}};
}

json to_json(const ZeroVerdict& v) {
  json j{{"kind", to_string(v.kind)}, {"method", v.method}};
  if (v.method == "sampling") {
    j["samples"] = v.samples_used;
    j["singular_samples"] = v.singular_samples;
    j["max_abs"] = v.max_abs;
  }
  return j;
}

json to_json(const Verdict& v) {
  json j{{"F1", render(v.F[0])}, {"F2", render(v.F[1])}, {"verdict", to_string(v.kind)}};
  if (v.witness) {
    j["witness"] = to_json(*v.witness);
    j["witness_values"] = json::array({to_json(v.witness_values[0]), to_json(v.witness_values[1])});
  } else {
    j["witness"] = nullptr;
  }
  j["method"] = v.method;
  j["samples"] = v.options.samples;
  j["epsilon"] = v.options.epsilon;
  json tests = json::array();
  for (const auto& t : v.tests) tests.push_back(t ? to_json(*t) : json(nullptr));
  j["zero_tests"] = tests;
  return j;
}

}  // namespace jetlin
