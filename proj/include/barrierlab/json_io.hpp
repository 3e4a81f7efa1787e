#pragma once

#include "barrierlab/geometry.hpp"
#include "barrierlab/solver.hpp"

#include <json.hpp>

#include <string>

namespace barrierlab::io {

// Numbers may be JSON numbers or "p/q" strings; in exact mode both convert
// without rounding (binary64 values are dyadic rationals).
template <class T>
T scalar_from_json(const nlohmann::json& v) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if constexpr (ScalarTraits<T>::exact) {
            return Rational(s);
        } else {
            auto slash = s.find('/');
            if (slash == std::string::npos) return std::stod(s);
            return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
        }
    }
    if (v.is_number_integer()) return ScalarTraits<T>::from_int(v.get<long>());
    return ScalarTraits<T>::from_double(v.get<double>());
}

// {"dim": n, "halfspaces": [{"a": [...], "b": s}, ...], "vertices": [[...]]};
// either representation may be omitted and is derived on demand.
template <class T>
geom::Polytope<T> polytope_from_json(const nlohmann::json& j) {
    if (!j.contains("dim")) throw InputError("polytope JSON needs a \"dim\" field");
    geom::Polytope<T> P;
    P.dim = j.at("dim").get<int>();
    if (P.dim < 1) throw InputError("dim must be >= 1");
    if (j.contains("halfspaces")) {
        for (const auto& h : j.at("halfspaces")) {
            geom::Halfspace<T> hs;
            for (const auto& c : h.at("a")) hs.normal.push_back(scalar_from_json<T>(c));
            if (static_cast<int>(hs.normal.size()) != P.dim)
                throw InputError("halfspace normal has wrong length");
            hs.offset = scalar_from_json<T>(h.at("b"));
            P.halfspaces.push_back(std::move(hs));
        }
    }
    if (j.contains("vertices")) {
        for (const auto& vj : j.at("vertices")) {
            Vec<T> v;
            for (const auto& c : vj) v.push_back(scalar_from_json<T>(c));
            if (static_cast<int>(v.size()) != P.dim)
                throw InputError("vertex has wrong length");
            P.vertices.push_back(std::move(v));
        }
    }
    if (!P.has_halfspaces() && !P.has_vertices())
        throw InputError("polytope JSON needs halfspaces or vertices");
    return P;
}

nlohmann::json polytope_to_json(const geom::Polytope<double>& P);

// {"polytope": {...}, "c": [...], "eps": 1e-6}
solver::LPProblem lp_from_json(const nlohmann::json& j);

// parse with line/column reporting on failure
nlohmann::json parse_text(const std::string& text);
nlohmann::json load_file(const std::string& path);

} // namespace barrierlab::io
