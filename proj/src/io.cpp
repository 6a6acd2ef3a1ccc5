#include "skewloop/io.hpp"

#include <fstream>

namespace skewloop {

namespace {
double require_number(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ParseError(std::string("missing or non-numeric field \"") + key +
                     "\"");
  return j[key].get<double>();
}

std::vector<double> number_array(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    throw ParseError(std::string("missing or non-array field \"") + key +
                     "\"");
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number())
      throw ParseError(std::string("non-numeric entry in \"") + key + "\"");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<Vector3d> vec3_array(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    throw ParseError(std::string("missing or non-array field \"") + key +
                     "\"");
  std::vector<Vector3d> out;
  for (const auto& v : j[key]) {
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() ||
        !v[1].is_number() || !v[2].is_number())
      throw ParseError(std::string("entries of \"") + key +
                       "\" must be [x, y, z] numbers");
    out.emplace_back(v[0].get<double>(), v[1].get<double>(),
                     v[2].get<double>());
  }
  return out;
}

std::string require_kind(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ParseError("expected an object with a \"kind\" field");
  return j["kind"].get<std::string>();
}

Json vec3s_to_json(const std::vector<Vector3d>& v) {
  Json out = Json::array();
  for (const auto& p : v) out.push_back({p[0], p[1], p[2]});
  return out;
}
}  // namespace

Json to_json(const TrigPoly& f) {
  return {{"kind", "trigpoly"},
          {"a0", f.a0()},
          {"cos", f.cos_coeffs()},
          {"sin", f.sin_coeffs()}};
}

TrigPoly trigpoly_from_json(const Json& j) {
  if (require_kind(j) != "trigpoly")
    throw ParseError("expected kind \"trigpoly\"");
  std::vector<double> a = number_array(j, "cos"), b = number_array(j, "sin");
  if (a.size() != b.size())
    throw ParseError("\"cos\" and \"sin\" arrays must have equal length");
  return TrigPoly(require_number(j, "a0"), std::move(a), std::move(b));
}

Json to_json(const SpaceCurve& c) {
  if (c.is_analytic()) {
    const AnalyticCurve& a = c.analytic();
    return {{"kind", "curve3"},
            {"x", to_json(a.x)},
            {"y", to_json(a.y)},
            {"z", to_json(a.z)}};
  }
  const SampledCurve& s = c.sampled();
  return {{"kind", "sampled_c1"},
          {"period", s.period},
          {"positions", vec3s_to_json(s.positions)},
          {"velocities", vec3s_to_json(s.velocities)}};
}

SpaceCurve curve_from_json(const Json& j) {
  const std::string kind = require_kind(j);
  if (kind == "curve3") {
    for (const char* key : {"x", "y", "z"})
      if (!j.contains(key))
        throw ParseError(std::string("curve3 missing component \"") + key +
                         "\"");
    return SpaceCurve(trigpoly_from_json(j["x"]), trigpoly_from_json(j["y"]),
                      trigpoly_from_json(j["z"]));
  }
  if (kind == "sampled_c1") {
    SampledCurve s;
    s.period = require_number(j, "period");
    s.positions = vec3_array(j, "positions");
    s.velocities = vec3_array(j, "velocities");
    if (s.period <= 0) throw ParseError("sampled_c1 period must be positive");
    if (s.positions.size() != s.velocities.size() || s.positions.size() < 4)
      throw ParseError(
          "sampled_c1 needs matching positions/velocities arrays (>= 4 samples)");
    return SpaceCurve(std::move(s));
  }
  throw ParseError("unknown curve kind \"" + kind + "\"");
}

std::string status_name(SkewStatus s) {
  switch (s) {
    case SkewStatus::CertifiedSkew:
      return "CertifiedSkew";
    case SkewStatus::NotSkew:
      return "NotSkew";
    default:
      return "Inconclusive";
  }
}

namespace {
Json to_json(const WitnessPair& w) {
  return {{"t", w.t}, {"s", w.s}, {"defect", w.defect}};
}
}  // namespace

Json to_json(const SkewCertificate& cert) {
  Json near = Json::array();
  for (const auto& w : cert.near_witnesses) near.push_back(to_json(w));
  Json j = {{"status", status_name(cert.status)},
            {"certified", cert.certified},
            {"margin", cert.margin},
            {"band_width", cert.band_width},
            {"boxes_processed", cert.boxes_processed},
            {"box_budget", cert.box_budget},
            {"refute_tol", cert.refute_tol},
            {"lipschitz", cert.lipschitz},
            {"near_witnesses", near},
            {"bounds",
             {{"B1", cert.bounds.B1},
              {"B2", cert.bounds.B2},
              {"B3", cert.bounds.B3},
              {"m1", cert.bounds.m1},
              {"speed_inf_lower", cert.bounds.speed_inf.lower},
              {"speed_inf_upper", cert.bounds.speed_inf.upper}}}};
  if (cert.witness) j["witness"] = to_json(*cert.witness);
  return j;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(2) << "\n";
}

TrigPoly load_trigpoly(const std::string& path) {
  return trigpoly_from_json(load_json(path));
}

SpaceCurve load_curve(const std::string& path) {
  return curve_from_json(load_json(path));
}

}  // namespace skewloop
