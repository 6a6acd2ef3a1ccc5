#pragma once

#include <string>

#include <json.hpp>

#include "skewloop/curve.hpp"
#include "skewloop/verify.hpp"

namespace skewloop {

using Json = nlohmann::json;

/// {"kind":"trigpoly","a0":...,"cos":[...],"sin":[...]}
Json to_json(const TrigPoly& f);
TrigPoly trigpoly_from_json(const Json& j);

/// {"kind":"curve3","x":...,"y":...,"z":...} or
/// {"kind":"sampled_c1","period":...,"positions":[[x,y,z]...],"velocities":[...]}
Json to_json(const SpaceCurve& c);
SpaceCurve curve_from_json(const Json& j);

Json to_json(const SkewCertificate& cert);

/// Throws ParseError on unreadable files or malformed JSON.
Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

TrigPoly load_trigpoly(const std::string& path);
SpaceCurve load_curve(const std::string& path);

std::string status_name(SkewStatus s);

}  // namespace skewloop
