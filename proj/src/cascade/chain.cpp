#include "barrierlab/cascade/chain.hpp"

#include "chain_json.hpp"

#include <json.hpp>

#include <sstream>

namespace barrierlab::cascade {

using nlohmann::json;

KPoly ScalarFactor::coeff() const {
    KPoly p(scale);
    for (const auto& f : linear) p = p * f;
    return p;
}

std::string ScalarFactor::str() const {
    std::ostringstream os;
    os << scale.str();
    for (const auto& f : linear) os << " (" << f.str() << ")";
    if (a != 0 || b != 0) os << " gamma^(" << a << "k" << (b >= 0 ? "+" : "") << b << ")";
    return os.str();
}

KPoly BoundaryProduct::expand() const {
    KPoly p(scale);
    for (const auto& f : factors) p = p * f;
    return p;
}

std::string BoundaryProduct::str() const {
    std::ostringstream os;
    os << scale.str();
    for (const auto& f : factors) os << " (" << f.str() << ")";
    return os.str();
}

namespace {

KPoly kpoly_from_json(const json& arr) {
    std::vector<BigInt> c;
    c.reserve(arr.size());
    for (const auto& v : arr) c.push_back(BigInt(v.get<long long>()));
    return KPoly::from_coeffs(std::move(c));
}

json kpoly_to_json(const KPoly& p) {
    json arr = json::array();
    for (const auto& c : p.coeffs()) arr.push_back(c.convert_to<long long>());
    return arr;
}

ExpPoly expoly_from_json(const json& arr) {
    ExpPoly p;
    for (const auto& t : arr)
        p.add_term(kpoly_from_json(t.at(2)), t.at(0).get<int>(), t.at(1).get<int>());
    return p;
}

json expoly_to_json(const ExpPoly& p) {
    // descending (a, b), matching the transcription layout
    json arr = json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
        arr.push_back(json::array({it->first.a, it->first.b, kpoly_to_json(it->second)}));
    return arr;
}

ScalarFactor factor_from_json(const json& j) {
    ScalarFactor f;
    f.scale = BigInt(j.at("scale").get<long long>());
    for (const auto& lf : j.at("linear")) f.linear.push_back(kpoly_from_json(lf));
    f.a = j.value("a", 0);
    f.b = j.value("b", 0);
    return f;
}

json factor_to_json(const ScalarFactor& f) {
    json lin = json::array();
    for (const auto& p : f.linear) lin.push_back(kpoly_to_json(p));
    return json{{"scale", f.scale.convert_to<long long>()},
                {"linear", lin},
                {"a", f.a},
                {"b", f.b}};
}

std::vector<ChainStep> steps_from_json(const json& arr) {
    std::vector<ChainStep> steps;
    for (const auto& s : arr)
        steps.push_back({s.at("lhs").get<std::string>(), s.at("rhs").get<std::string>(),
                         factor_from_json(s.at("factor"))});
    return steps;
}

// (gamma^(k+i) - 1) as an exponent polynomial
ExpPoly gk_minus_one(int offset) {
    ExpPoly p = ExpPoly::term(KPoly(1), 1, offset);
    p.add_term(KPoly(-1), 0, 0);
    return p;
}

} // namespace

ChainData ChainData::parse(const std::string& text) {
    json j = json::parse(text);
    ChainData d;
    d.k_min = j.at("k_min").get<long>();

    const auto& f = j.at("f_chain");
    for (const auto& [name, poly] : f.at("polys").items())
        d.f_polys.emplace(name, expoly_from_json(poly));
    d.f_steps = steps_from_json(f.at("steps"));
    d.f2pp_factor = factor_from_json(f.at("f2pp").at("factor"));
    d.f2pp_bracket = expoly_from_json(f.at("f2pp").at("bracket"));

    const auto& g = j.at("g_chain");
    d.g_lead = factor_from_json(g.at("lead"));
    for (const auto& s : g.at("A_summands"))
        d.a_summands.push_back({factor_from_json(s), s.at("offsets").get<std::vector<int>>()});
    for (const auto& s : g.at("B_summands"))
        d.b_summands.push_back({factor_from_json(s), s.at("offsets").get<std::vector<int>>()});
    d.g_prefactor = factor_from_json(g.at("prefactor"));
    d.g_prefactor_gm1_pow = g.at("prefactor").at("gamma_minus_one_pow").get<int>();
    for (const auto& [name, poly] : g.at("polys").items())
        d.g_polys.emplace(name, expoly_from_json(poly));
    d.g_steps = steps_from_json(g.at("steps"));
    for (const auto& [name, bp] : g.at("boundary").items()) {
        BoundaryProduct b;
        b.scale = BigInt(bp.at("scale").get<long long>());
        for (const auto& fac : bp.at("factors")) b.factors.push_back(kpoly_from_json(fac));
        d.boundary.emplace(name, std::move(b));
    }
    for (const auto& [kstr, c] : g.at("small_k").items()) {
        SmallKCase sk;
        sk.k = std::stol(kstr);
        sk.scale = BigInt(c.at("scale").get<long long>());
        sk.gamma_minus_one_pow = c.at("gamma_minus_one_pow").get<int>();
        sk.gamma_pow = c.at("gamma_pow").get<int>();
        for (const auto& t : c.at("tail")) sk.tail.push_back(BigInt(t.get<long long>()));
        d.small_k.push_back(std::move(sk));
    }

    const auto& gg = j.at("G");
    d.big_g_lead = factor_from_json(gg.at("lead"));
    for (const auto& s : gg.at("A_summands"))
        d.big_ga_summands.push_back({factor_from_json(s), s.at("xi_pows").get<std::vector<int>>()});
    for (const auto& s : gg.at("B_summands"))
        d.big_gb_summands.push_back({factor_from_json(s), s.at("xi_pows").get<std::vector<int>>()});
    return d;
}

const ChainData& ChainData::builtin() {
    static const ChainData d = ChainData::parse(kChainJson);
    return d;
}

std::string ChainData::dump_json() const {
    json f_polys_j, g_polys_j;
    for (const auto& [n, p] : f_polys) f_polys_j[n] = expoly_to_json(p);
    for (const auto& [n, p] : g_polys) g_polys_j[n] = expoly_to_json(p);
    auto steps_j = [](const std::vector<ChainStep>& steps) {
        json arr = json::array();
        for (const auto& s : steps)
            arr.push_back(json{{"lhs", s.lhs}, {"rhs", s.rhs}, {"factor", factor_to_json(s.factor)}});
        return arr;
    };
    auto summands_j = [](const auto& summands, const char* key) {
        json arr = json::array();
        for (const auto& s : summands) {
            json sj = factor_to_json(s.coeff);
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, ProductSummand>)
                sj[key] = s.offsets;
            else
                sj[key] = s.xi_pows;
            arr.push_back(sj);
        }
        return arr;
    };
    json boundary_j;
    for (const auto& [n, b] : boundary) {
        json facs = json::array();
        for (const auto& f : b.factors) facs.push_back(kpoly_to_json(f));
        boundary_j[n] = json{{"scale", b.scale.convert_to<long long>()}, {"factors", facs}};
    }
    json small_j;
    for (const auto& c : small_k) {
        json tail = json::array();
        for (const auto& t : c.tail) tail.push_back(t.convert_to<long long>());
        small_j[std::to_string(c.k)] = json{{"scale", c.scale.convert_to<long long>()},
                                            {"gamma_minus_one_pow", c.gamma_minus_one_pow},
                                            {"gamma_pow", c.gamma_pow},
                                            {"tail", tail}};
    }
    json pref = factor_to_json(g_prefactor);
    pref["gamma_minus_one_pow"] = g_prefactor_gm1_pow;
    json doc{
        {"k_min", k_min},
        {"f_chain",
         {{"polys", f_polys_j},
          {"steps", steps_j(f_steps)},
          {"f2pp", {{"factor", factor_to_json(f2pp_factor)}, {"bracket", expoly_to_json(f2pp_bracket)}}}}},
        {"g_chain",
         {{"lead", factor_to_json(g_lead)},
          {"A_summands", summands_j(a_summands, "offsets")},
          {"B_summands", summands_j(b_summands, "offsets")},
          {"prefactor", pref},
          {"polys", g_polys_j},
          {"steps", steps_j(g_steps)},
          {"boundary", boundary_j},
          {"small_k", small_j}}},
        {"G",
         {{"lead", factor_to_json(big_g_lead)},
          {"A_summands", summands_j(big_ga_summands, "xi_pows")},
          {"B_summands", summands_j(big_gb_summands, "xi_pows")}}},
    };
    return doc.dump(2) + "\n";
}

ExpPoly ChainData::build_a() const {
    ExpPoly acc;
    for (const auto& s : a_summands) {
        ExpPoly p = ExpPoly::term(s.coeff.coeff(), 0, 0);
        for (int off : s.offsets) p = p * gk_minus_one(off);
        acc = acc + p;
    }
    return acc;
}

ExpPoly ChainData::build_b() const {
    ExpPoly acc;
    for (const auto& s : b_summands) {
        ExpPoly p = ExpPoly::term(s.coeff.coeff(), 0, 0);
        for (int off : s.offsets) p = p * gk_minus_one(off);
        acc = acc + p;
    }
    return acc;
}

ExpPoly ChainData::build_g() const {
    ExpPoly a = build_a();
    ExpPoly b = build_b();
    return (a * a * a).times(g_lead.coeff()) - b * b;
}

namespace {

XiPoly xi_gamma_minus_one(int gamma_pow) {
    XiPoly p = XiPoly::term(KPoly(1), gamma_pow, 1);
    return p - XiPoly::term(KPoly(1), 0, 0);
}

XiPoly build_summands(const std::vector<XiSummand>& summands) {
    XiPoly acc;
    for (const auto& s : summands) {
        XiPoly p = XiPoly::term(s.coeff.coeff(), 0, 0);
        for (int gp : s.xi_pows) p = p * xi_gamma_minus_one(gp);
        acc = acc + p;
    }
    return acc;
}

} // namespace

XiPoly ChainData::build_big_ga() const { return build_summands(big_ga_summands); }
XiPoly ChainData::build_big_gb() const { return build_summands(big_gb_summands); }

XiPoly ChainData::build_big_g() const {
    XiPoly a = build_big_ga();
    XiPoly b = build_big_gb();
    return (a * a * a).times(big_g_lead.coeff()) - b * b;
}

Rational ChainData::eval_big_g(const Rational& gamma, const Rational& xi, long k) const {
    Rational kk(k);
    auto eval_summands = [&](const std::vector<XiSummand>& summands) {
        Rational acc(0);
        for (const auto& s : summands) {
            Rational p = s.coeff.coeff().eval(kk);
            for (int gp : s.xi_pows) p *= xi * rat_pow(gamma, gp) - Rational(1);
            acc += p;
        }
        return acc;
    };
    Rational a = eval_summands(big_ga_summands);
    Rational b = eval_summands(big_gb_summands);
    return big_g_lead.coeff().eval(kk) * a * a * a - b * b;
}

} // namespace barrierlab::cascade
