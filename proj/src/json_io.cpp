#include "orlab/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace olab {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw SchemaError(where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where, std::string("missing \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string() && j.get<std::string>() == "inf") return kInf;
  fail(where, "expected a number");
}

double number_or(const json& j, const char* key, double fallback, const std::string& where) {
  return j.contains(key) ? number(j.at(key), where + "." + key) : fallback;
}

cplx entry(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail(where, "entry must be a number or [re, im]");
}

CMatrix matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "matrix must be a nonempty array of rows");
  // A bare number is a 1x1 block.
  if (j.size() == 1 && !j[0].is_array()) return matrix(json::array({j}), where);
  const std::size_t n = j.size();
  CMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.size() != n) fail(where, "row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = entry(row[c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

}  // namespace

json load_json(const std::string& arg) {
  json j;
  try {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
      j = json::parse(arg);
    } else {
      std::ifstream in(arg);
      if (!in) throw SchemaError("cannot open " + arg);
      j = json::parse(in);
    }
  } catch (const json::parse_error& e) {
    throw SchemaError(arg + ": " + e.what());
  }
  if (j.is_object() && j.contains("schema") && j["schema"] != kSchemaVersion)
    throw SchemaError(arg + ": unsupported schema " + j["schema"].dump());
  return j;
}

AlgebraPtr parse_algebra(const json& j) {
  const auto& blocks = field(j, "blocks", "algebra");
  if (!blocks.is_array() || blocks.empty()) fail("algebra.blocks", "must be a nonempty array");
  std::vector<Block> out;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const std::string where = "algebra.blocks[" + std::to_string(k) + "]";
    const auto& b = blocks[k];
    const auto& dim = field(b, "dim", where);
    if (!dim.is_number_integer() || dim.get<long>() < 1) fail(where + ".dim", "must be a positive integer");
    const double w = number(field(b, "weight", where), where + ".weight");
    if (!(w > 0) || !std::isfinite(w)) fail(where + ".weight", "must be positive and finite");
    out.push_back({dim.get<std::size_t>(), w});
  }
  return make_algebra(std::move(out));
}

AlgebraElement parse_element(const json& j, AlgebraPtr alg) {
  if (!alg && j.is_object() && j.contains("algebra")) alg = parse_algebra(j["algebra"]);
  const json& blocks = j.is_array() ? j : field(j, "blocks", "element");
  if (!blocks.is_array() || blocks.empty()) fail("element.blocks", "must be a nonempty array of matrices");
  std::vector<CMatrix> mats;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto& b = blocks[k];
    mats.push_back(b.is_number() ? matrix(json::array({json::array({b})}), "element")
                                 : matrix(b, "element.blocks[" + std::to_string(k) + "]"));
  }
  if (!alg) {
    std::vector<Block> bl;
    for (const auto& m : mats) bl.push_back({m.rows(), 1.0});
    alg = make_algebra(std::move(bl));
  }
  if (alg->size() != mats.size())
    fail("element", std::to_string(mats.size()) + " blocks given, algebra has " + std::to_string(alg->size()));
  for (std::size_t k = 0; k < mats.size(); ++k)
    if (mats[k].rows() != alg->blocks()[k].dim)
      fail("element.blocks[" + std::to_string(k) + "]", "dimension " + std::to_string(mats[k].rows()) +
                                                            " does not match the algebra (" +
                                                            std::to_string(alg->blocks()[k].dim) + ")");
  return AlgebraElement(alg, std::move(mats));
}

DensityPtr parse_density(const json& j, const AlgebraPtr& alg) {
  if (j.is_null() || (j.is_object() && !j.contains("rho"))) return tracial_density(alg);
  const auto rho = parse_element(j.at("rho"), alg);
  if (!rho.is_hermitian(1e-12)) fail("rho", "must be Hermitian");
  try {
    return make_density(rho);
  } catch (const DomainError& e) {
    fail("rho", e.what());
  }
}

OrliczFunction parse_psi(const json& j) {
  const auto& kind_j = field(j, "kind", "psi");
  if (!kind_j.is_string()) fail("psi.kind", "must be a string");
  const auto kind = kind_j.get<std::string>();
  try {
    if (kind == "power") {
      const double p = number(field(j, "p", "psi"), "psi.p");
      if (!(p >= 1) || !std::isfinite(p)) fail("psi.p", "must be a finite number >= 1");
      return OrliczFunction::power(p, number_or(j, "coef", 1.0, "psi"));
    }
    if (kind == "linf") return OrliczFunction::linf(number_or(j, "cutoff", 1.0, "psi"));
    if (kind == "one-cap-inf") return OrliczFunction::one_cap_inf();
    if (kind == "one-plus-inf") return OrliczFunction::one_plus_inf();
    if (kind == "table") {
      const auto& kn = field(j, "knots", "psi");
      if (!kn.is_array()) fail("psi.knots", "must be an array of [t, value] pairs");
      std::vector<Knot> knots;
      for (std::size_t i = 0; i < kn.size(); ++i) {
        const std::string where = "psi.knots[" + std::to_string(i) + "]";
        if (!kn[i].is_array() || kn[i].size() != 2) fail(where, "must be a [t, value] pair");
        knots.push_back({number(kn[i][0], where), number(kn[i][1], where)});
      }
      return OrliczFunction::table(std::move(knots), number_or(j, "b_psi", kInf, "psi"));
    }
  } catch (const DomainError& e) {
    fail("psi", e.what());
  }
  fail("psi.kind", "unknown kind \"" + kind + "\"");
}

json number_or_inf(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

json psi_to_json(const OrliczFunction& psi) {
  json j{{"schema", kSchemaVersion}};
  switch (psi.kind()) {
    case OrliczKind::power:
      j["kind"] = "power";
      j["p"] = psi.exponent();
      if (psi.coefficient() != 1.0) j["coef"] = psi.coefficient();
      return j;
    case OrliczKind::linf:
      j["kind"] = "linf";
      if (psi.coefficient() != 1.0) j["cutoff"] = psi.coefficient();
      return j;
    case OrliczKind::one_cap_inf: j["kind"] = "one-cap-inf"; return j;
    case OrliczKind::one_plus_inf: j["kind"] = "one-plus-inf"; return j;
    case OrliczKind::table: {
      j["kind"] = "table";
      json kn = json::array();
      for (const auto& k : psi.knots()) kn.push_back({k.t, k.v});
      j["knots"] = kn;
      j["b_psi"] = number_or_inf(psi.b_psi());
      return j;
    }
    default: throw DomainError("psi_to_json: " + psi.label() + " has no serialized form");
  }
}

Profile parse_profile(const json& j) {
  const auto& kind_j = field(j, "kind", "profile");
  if (!kind_j.is_string()) fail("profile.kind", "must be a string");
  const auto kind = kind_j.get<std::string>();
  auto base = [&]() -> Profile {
    if (kind == "power") {
      const double a = number(field(j, "a", "profile"), "profile.a");
      if (!(a >= 0 && a <= 1)) fail("profile.a", "must lie in [0, 1]");
      return power_profile(a);
    }
    if (kind == "constant") return constant_profile(number_or(j, "c", 1.0, "profile"));
    if (kind == "min-one") return min_one_profile();
    if (kind == "lux") return fundamental_lux(parse_psi(field(j, "psi", "profile")));
    if (kind == "orl") return fundamental_orl(parse_psi(field(j, "psi", "profile")));
    fail("profile.kind", "unknown kind \"" + kind + "\"");
  }();
  if (j.contains("sqrt") && j["sqrt"].is_boolean() && j["sqrt"].get<bool>()) return sqrt_profile(base);
  return base;
}

CrossedElement parse_crossed(const json& j, const AlgebraPtr& alg) {
  const auto density = parse_density(j, alg);
  const auto& terms = field(j, "terms", "crossed");
  if (!terms.is_array()) fail("crossed.terms", "must be an array");
  std::vector<Term> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = "crossed.terms[" + std::to_string(i) + "]";
    const auto& t = terms[i];
    Term term{parse_element(field(t, "base", where), alg), parse_profile(field(t, "profile", where))};
    const std::string arg = t.value("argument", "exp_t");
    if (arg == "exp_t") term.argument = Argument::exp_t;
    else if (arg == "density") term.argument = Argument::density;
    else fail(where + ".argument", "must be \"exp_t\" or \"density\"");
    const std::string pl = t.value("placement", "right");
    if (pl == "right") term.placement = Placement::right;
    else if (pl == "left") term.placement = Placement::left;
    else if (pl == "sandwich") term.placement = Placement::sandwich;
    else fail(where + ".placement", "must be \"right\", \"left\" or \"sandwich\"");
    out.push_back(std::move(term));
  }
  if (out.empty()) return CrossedElement::zero(density);
  return CrossedElement::separable(density, std::move(out));
}

QuasiConcaveProfile parse_fundamental(const json& j) {
  if (j.is_object() && j.contains("knots")) {
    const auto& kn = j["knots"];
    if (!kn.is_array() || kn.size() < 2) fail("phi.knots", "must be an array of at least two [t, phi] pairs");
    std::vector<double> t, v;
    for (std::size_t i = 0; i < kn.size(); ++i) {
      const std::string where = "phi.knots[" + std::to_string(i) + "]";
      if (!kn[i].is_array() || kn[i].size() != 2) fail(where, "must be a [t, phi] pair");
      t.push_back(number(kn[i][0], where));
      v.push_back(number(kn[i][1], where));
    }
    try {
      return profile_from_knots(std::move(t), std::move(v));
    } catch (const DomainError& e) {
      fail("phi", e.what());
    }
  }
  const auto psi = parse_psi(field(j, "psi", "phi"));
  const std::string which = j.value("fundamental", "lux");
  if (which == "lux") return sample_profile(fundamental_lux(psi));
  if (which == "orl") return sample_profile(fundamental_orl(psi));
  fail("phi.fundamental", "must be \"lux\" or \"orl\"");
}

json element_to_json(const AlgebraElement& a) {
  json blocks = json::array();
  for (const auto& m : a.blocks()) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
      rows.push_back(row);
    }
    blocks.push_back(rows);
  }
  json alg = json::array();
  for (const auto& b : a.algebra()->blocks()) alg.push_back({{"dim", b.dim}, {"weight", b.weight}});
  return {{"schema", kSchemaVersion}, {"algebra", {{"blocks", alg}}}, {"blocks", blocks}};
}

}  // namespace olab
