#include "barrierlab/json_io.hpp"

#include <fstream>
#include <sstream>

namespace barrierlab::io {

using nlohmann::json;

json polytope_to_json(const geom::Polytope<double>& P) {
    json j;
    j["dim"] = P.dim;
    json hs = json::array();
    for (const auto& h : P.halfspaces) hs.push_back({{"a", h.normal}, {"b", h.offset}});
    j["halfspaces"] = hs;
    if (P.has_vertices()) j["vertices"] = P.vertices;
    return j;
}

solver::LPProblem lp_from_json(const json& j) {
    if (!j.contains("polytope") || !j.contains("c"))
        throw InputError("LP JSON needs \"polytope\" and \"c\" fields");
    solver::LPProblem lp;
    lp.body = polytope_from_json<double>(j.at("polytope"));
    for (const auto& c : j.at("c")) lp.cost.push_back(scalar_from_json<double>(c));
    if (static_cast<int>(lp.cost.size()) != lp.body.dim)
        throw InputError("cost vector has wrong length");
    if (j.contains("eps")) lp.eps = j.at("eps").get<double>();
    return lp;
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // convert the byte offset into line/column
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::ostringstream os;
        os << "malformed JSON at line " << line << ", column " << col << ": " << e.what();
        throw InputError(os.str());
    }
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

} // namespace barrierlab::io
