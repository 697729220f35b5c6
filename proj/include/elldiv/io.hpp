/*
   Copyright 2026 The elldiv authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ELLDIV_IO_HPP
#define ELLDIV_IO_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "elldiv/divide.hpp"
#include "elldiv/ladder.hpp"

namespace elldiv {

using Json = nlohmann::ordered_json;

/// Decimal string for m = 1, little-endian array of decimal strings for
/// extensions.
inline Json field_to_json(const FieldElement& a) {
    if (a.field()->extension_degree() == 1) return a.coeffs()[0].str();
    Json arr = Json::array();
    for (const auto& c : a.coeffs()) arr.push_back(c.str());
    return arr;
}

inline Json point_to_json(const CurvePoint& P) {
    if (P.is_infinity()) return "infinity";
    return Json{{"x", field_to_json(P.x())}, {"y", field_to_json(P.y())}};
}

inline Json curve_to_json(const EllipticCurve& E) {
    Json j;
    j["p"] = E.field()->characteristic().str();
    if (E.field()->extension_degree() > 1) {
        Json mod = Json::array();
        for (const auto& c : E.field()->modulus()) mod.push_back(c.str());
        j["ext_modulus"] = mod;
    }
    j["a"] = field_to_json(E.a());
    j["b"] = field_to_json(E.b());
    return j;
}

inline Json result_to_json(const PreimageResult& res) {
    Json j;
    j["in_image"] = res.in_image;
    if (res.sectors) {
        j["omega1"] = field_to_json(res.sectors->first);
        j["omega2"] = field_to_json(res.sectors->second);
    } else {
        j["omega1"] = nullptr;
        j["omega2"] = nullptr;
    }
    Json pre = Json::array();
    for (const auto& rec : res.preimages) {
        Json e;
        e["label"] = Json::array({rec.i, rec.j});
        if (rec.P.is_infinity()) {
            e["x"] = nullptr;
            e["y"] = nullptr;
        } else {
            e["x"] = field_to_json(rec.P.x());
            e["y"] = field_to_json(rec.P.y());
        }
        pre.push_back(e);
    }
    j["preimages"] = pre;
    Json diag;
    diag["fallback_used"] = res.fallback_used;
    diag["messages"] = res.diagnostics;
    j["diagnostics"] = diag;
    return j;
}

inline Json polynomial_to_json(const Poly& f) {
    Json arr = Json::array();
    for (const auto& c : f.coeffs()) arr.push_back(field_to_json(c));
    return arr;
}

/// Parses a signed decimal integer; reduction mod p happens in from_int.
inline Int parse_int(const std::string& s) {
    if (s.empty()) throw domain_error("empty integer literal");
    std::size_t k = s[0] == '-' || s[0] == '+' ? 1 : 0;
    if (k == s.size()) throw domain_error("bad integer literal: " + s);
    for (; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9')
            throw domain_error("bad integer literal: " + s);
    return Int(s);
}

/// "x,y" with signed decimal coordinates, or "infinity".
inline CurvePoint parse_point(const FieldDescriptor::Ptr& F, const std::string& s) {
    if (s == "infinity" || s == "inf") return CurvePoint::infinity();
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw domain_error("point must be 'x,y' or 'infinity': " + s);
    return CurvePoint(F->from_int(parse_int(s.substr(0, comma))),
                      F->from_int(parse_int(s.substr(comma + 1))));
}

}  // namespace elldiv

#endif  // ELLDIV_IO_HPP
