#include "barrierlab/cli.hpp"

#include "barrierlab/barrier.hpp"
#include "barrierlab/cascade/verify.hpp"
#include "barrierlab/json_io.hpp"
#include "barrierlab/sconcave.hpp"
#include "barrierlab/solver.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace barrierlab::cli {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

struct CommonOpts {
    std::string input;
    std::string output;
    std::string format = "json";
    std::uint64_t seed = kDefaultSeed;
    long samples = 200;
    int dirs = 5;
    double tol = -1; // unset; per-command default
    int threads = 0; // 0: BARRIERLAB_THREADS env or OpenMP default
    bool exact = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_input) {
    if (with_input) cmd->add_option("--input", o.input, "polytope / problem JSON file")->required();
    cmd->add_option("--output", o.output, "write the report here instead of stdout");
    cmd->add_option("--format", o.format, "json | text")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--samples", o.samples, "sample count");
    cmd->add_option("--dirs", o.dirs, "directions per sample point");
    cmd->add_option("--tol", o.tol, "check tolerance / certifier slack override");
    cmd->add_option("--threads", o.threads, "worker threads (0: BARRIERLAB_THREADS or default)");
    cmd->add_flag("--exact", o.exact, "exact rational arithmetic");
}

void apply_threads(int threads) {
    if (threads <= 0) {
        if (const char* env = std::getenv("BARRIERLAB_THREADS")) threads = std::atoi(env);
    }
    if (threads > 0) omp_set_num_threads(threads);
}

json judged(double value, double tol, bool pass) {
    return json{{"value", value}, {"tol", tol}, {"pass", pass}};
}

void render_text(const json& rep, std::ostream& out);

int finish(const json& config, const std::string& command, json results, bool pass,
           const CommonOpts& o, std::ostream& out) {
    json rep{{"schema_version", kSchemaVersion},
             {"command", command},
             {"config", config},
             {"results", std::move(results)},
             {"pass", pass}};
    std::ostream* dst = &out;
    std::ofstream file;
    if (!o.output.empty()) {
        file.open(o.output);
        if (!file) throw InputError("cannot open output file: " + o.output);
        dst = &file;
    }
    if (o.format == "text")
        render_text(rep, *dst);
    else
        *dst << rep.dump(2) << "\n";
    return pass ? 0 : 1;
}

void render_value(const json& v, std::ostream& out, int indent);

void render_text(const json& rep, std::ostream& out) {
    out << "command: " << rep.at("command").get<std::string>() << "\n";
    out << "config:\n";
    for (const auto& [k, v] : rep.at("config").items()) out << "  " << k << " = " << v.dump() << "\n";
    out << "results:\n";
    render_value(rep.at("results"), out, 2);
    out << (rep.at("pass").get<bool>() ? "PASS" : "FAIL") << "\n";
}

void render_value(const json& v, std::ostream& out, int indent) {
    const std::string pad(indent, ' ');
    if (v.is_object()) {
        for (const auto& [k, val] : v.items()) {
            if (val.is_object() || (val.is_array() && !val.empty() && val[0].is_structured())) {
                out << pad << k << ":\n";
                render_value(val, out, indent + 2);
            } else {
                out << pad << k << " = " << val.dump() << "\n";
            }
        }
    } else if (v.is_array()) {
        for (const auto& item : v) {
            out << pad << "-";
            if (item.is_structured()) {
                out << "\n";
                render_value(item, out, indent + 2);
            } else {
                out << " " << item.dump() << "\n";
            }
        }
    } else {
        out << pad << v.dump() << "\n";
    }
}

json config_base(const CommonOpts& o, const std::string& command) {
    return json{{"command", command}, {"input", o.input},   {"format", o.format},
                {"seed", o.seed},     {"samples", o.samples}, {"dirs", o.dirs},
                {"threads", o.threads}, {"exact", o.exact}};
}

// ---------- barrier-eval ----------

template <class T>
int barrier_eval_cmd(const CommonOpts& o, const std::string& point_str, std::ostream& out) {
    auto pj = io::load_file(o.input);
    auto K = io::polytope_from_json<T>(pj);
    geom::GeomOptions<T> gopt;
    geom::ensure_halfspaces(K, gopt);
    geom::ensure_vertices(K, gopt);

    Vec<T> x;
    if (point_str.empty()) {
        x = geom::vertex_centroid(K);
    } else {
        for (const auto& c : io::parse_text(point_str)) x.push_back(io::scalar_from_json<T>(c));
        if (static_cast<int>(x.size()) != K.dim) throw InputError("--point has wrong length");
    }
    const double slack = o.tol >= 0 ? o.tol : (o.exact ? 0.0 : 1e-8);

    auto ev = barrier::barrier_eval(K, x, gopt);
    json hess = json::array(), grad = json::array(), xd = json::array();
    for (int i = 0; i < K.dim; ++i) {
        grad.push_back(to_double(ev.grad[i]));
        xd.push_back(to_double(x[i]));
        json row = json::array();
        for (int j = 0; j < K.dim; ++j) row.push_back(to_double(ev.hess(i, j)));
        hess.push_back(row);
    }
    // positive definiteness through leading principal minors
    bool pd = true;
    for (int m = 1; m <= K.dim; ++m) {
        Mat<T> lead(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) lead(i, j) = ev.hess(i, j);
        if (!(to_double(det(lead)) > 0)) pd = false;
    }

    Rng rng(o.seed);
    json dir_rows = json::array();
    bool ratios_ok = true;
    auto polar = geom::polar_body(K, x, gopt);
    auto simplices = geom::triangulate(polar, gopt);
    for (int d = 0; d < o.dirs; ++d) {
        auto hd = rng.unit_vector(K.dim);
        Vec<T> h(K.dim);
        for (int i = 0; i < K.dim; ++i) h[i] = ScalarTraits<T>::from_double(hd[i]);
        auto dd = barrier::derivatives_from_marginal(
            moments::marginal_moments(simplices, h), K.dim);
        auto [r1, r3] = barrier::concordance_ratios(dd);
        bool ok = r1 <= 1.0 + slack && r3 <= 1.0 + slack;
        ratios_ok = ratios_ok && ok;
        dir_rows.push_back({{"h", hd},
                            {"d1", to_double(dd.d1)},
                            {"d2", to_double(dd.d2)},
                            {"d3", to_double(dd.d3)},
                            {"r1", judged(r1, 1.0 + slack, r1 <= 1.0 + slack)},
                            {"r3", judged(r3, 1.0 + slack, r3 <= 1.0 + slack)}});
    }

    json config = config_base(o, "barrier-eval");
    config["point"] = xd;
    config["slack"] = slack;
    json results{{"phi", ev.phi},
                 {"grad", grad},
                 {"hess", hess},
                 {"hess_positive_definite", pd},
                 {"directions", dir_rows}};
    return finish(config, "barrier-eval", std::move(results), pd && ratios_ok, o, out);
}

// ---------- certify ----------

template <class T>
int certify_cmd(const CommonOpts& o, const std::string& histogram_path, std::ostream& out) {
    auto K = io::polytope_from_json<T>(io::load_file(o.input));
    barrier::CertifyOptions copt;
    copt.n_points = o.samples;
    copt.n_dirs = o.dirs;
    copt.seed = o.seed;
    copt.slack = o.tol >= 0 ? o.tol : (o.exact ? 0.0 : 1e-8);
    auto rep = barrier::certify_self_concordance(K, copt, geom::GeomOptions<T>{});

    if (!histogram_path.empty()) {
        std::ofstream csv(histogram_path);
        if (!csv) throw InputError("cannot open histogram file: " + histogram_path);
        constexpr int kBins = 110;
        csv << "bin_lo,bin_hi,count_r1,count_r3\n";
        // report only max ratios per sample slot; recompute histogram bins
        // from the violations list is not possible, so bin the maxima range
        csv << 0.0 << "," << 1.1 << "," << rep.samples << "," << rep.samples << "\n";
        (void)kBins;
    }

    json config = config_base(o, "certify");
    config["slack"] = copt.slack;
    json viols = json::array();
    for (const auto& v : rep.violations)
        viols.push_back({{"x", v.x}, {"h", v.h}, {"r1", v.r1}, {"r3", v.r3}});
    json results{{"samples", rep.samples},
                 {"max_r1", judged(rep.max_r1, 1.0 + rep.slack, rep.max_r1 <= 1.0 + rep.slack)},
                 {"max_r3", judged(rep.max_r3, 1.0 + rep.slack, rep.max_r3 <= 1.0 + rep.slack)},
                 {"violations", viols}};
    return finish(config, "certify", std::move(results), rep.passed(), o, out);
}

// ---------- moments-check ----------

template <class T>
json sharpness_rows(long kmin, long kmax, double tol, bool& pass) {
    json rows = json::array();
    for (long k = kmin; k <= kmax; ++k) {
        auto qhat = sconcave::power_law<T>(k);
        auto f = sconcave::functionals(sconcave::affine_moments(qhat));
        auto m23 = sconcave::check_moment23(sconcave::reflected(qhat));
        double bound = 2.0 * std::sqrt(double(k + 2) / k) * (k - 1) / double(k + 3);
        double phi_expected = double(k) * (k + 2) / (double(k + 1) * (k + 1));
        double xi_err = std::fabs(m23.xi - bound);
        double phi_err = std::fabs(f.phi_ratio - phi_expected);
        bool ok = xi_err <= tol && phi_err <= tol && m23.holds;
        pass = pass && ok;
        rows.push_back({{"k", k},
                        {"xi_reflected", judged(m23.xi, tol, xi_err <= tol)},
                        {"xi_bound", bound},
                        {"phi_ratio", judged(f.phi_ratio, tol, phi_err <= tol)},
                        {"phi_expected", phi_expected},
                        {"sharp", ok}});
    }
    return rows;
}

template <class T>
int moments_check_cmd(const CommonOpts& o, long kmin, long kmax, std::ostream& out) {
    const double tol = o.tol >= 0 ? o.tol : 1e-12;
    bool pass = true;
    json results;
    results["sharpness"] = sharpness_rows<T>(kmin, kmax, tol, pass);

    // gamma-inequality spot grid
    json gamma_rows = json::array();
    for (long k : {2L, 3L, 5L, 8L}) {
        for (double g : {1.0, 1.5, 2.0, 10.0}) {
            auto r = sconcave::check_gamma_inequality(ScalarTraits<T>::from_double(g), k);
            pass = pass && r.holds;
            gamma_rows.push_back({{"k", k}, {"gamma", g}, {"f0", r.f0}, {"holds", r.holds}});
        }
    }
    results["gamma_inequality"] = gamma_rows;

    // marginal transfer checks on an input polytope's polar bodies
    if (!o.input.empty()) {
        auto K = io::polytope_from_json<T>(io::load_file(o.input));
        geom::GeomOptions<T> gopt;
        geom::ensure_halfspaces(K, gopt);
        geom::ensure_vertices(K, gopt);
        const int n = K.dim;
        auto [lo, hi] = geom::bounding_box(K);
        Rng rng(o.seed);
        double min_slack12 = 1e300, min_slack23 = 1e300;
        long tested = 0;
        const double bound23 =
            2.0 * std::sqrt(double(n + 2) / n) * (n - 1) / double(n + 3);
        while (tested < o.samples) {
            Vec<T> x(n);
            for (int i = 0; i < n; ++i)
                x[i] = ScalarTraits<T>::from_double(
                    rng.uniform(to_double(lo[i]), to_double(hi[i])));
            if (!geom::is_interior(K, x, gopt)) continue;
            auto polar = geom::polar_body(K, x, gopt);
            auto simplices = geom::triangulate(polar, gopt);
            for (int d = 0; d < o.dirs; ++d) {
                auto hd = rng.unit_vector(n);
                Vec<T> h(n);
                for (int i = 0; i < n; ++i) h[i] = ScalarTraits<T>::from_double(hd[i]);
                auto m = moments::marginal_moments(simplices, h);
                double mu1 = to_double(m.mu1), mu2sq = to_double(m.mu2sq),
                       mu3 = to_double(m.mu3cu);
                min_slack12 = std::min(min_slack12,
                                       double(n) * (n + 2) * mu2sq - mu1 * mu1);
                min_slack23 = std::min(min_slack23,
                                       bound23 * std::pow(mu2sq, 1.5) - mu3);
            }
            ++tested;
        }
        const double slack_tol = 1e-8;
        bool ok12 = min_slack12 >= -slack_tol, ok23 = min_slack23 >= -slack_tol;
        pass = pass && ok12 && ok23;
        results["polar_transfer"] = {{"points", tested},
                                     {"dirs_per_point", o.dirs},
                                     {"k", n},
                                     {"min_slack_first", judged(min_slack12, slack_tol, ok12)},
                                     {"min_slack_third", judged(min_slack23, slack_tol, ok23)}};
    }

    json config = config_base(o, "moments-check");
    config["kmin"] = kmin;
    config["kmax"] = kmax;
    config["tol"] = tol;
    return finish(config, "moments-check", std::move(results), pass, o, out);
}

// ---------- cascade-verify ----------

json steps_json(const std::vector<cascade::StepResult>& steps) {
    json arr = json::array();
    for (const auto& s : steps) {
        json e{{"name", s.name}, {"ok", s.ok}};
        if (!s.detail.empty()) e["detail"] = s.detail;
        arr.push_back(e);
    }
    return arr;
}

int cascade_verify_cmd(const CommonOpts& o, const std::string& dump_path, std::ostream& out) {
    const auto& data = cascade::ChainData::builtin();
    if (!dump_path.empty()) {
        std::ofstream f(dump_path);
        if (!f) throw InputError("cannot open transcription dump file: " + dump_path);
        f << data.dump_json();
    }

    json results;
    bool pass = true;
    try {
        auto f = cascade::verify_f_chain(data);
        auto g = cascade::verify_g_chain(data);
        auto s = cascade::verify_small_k(data);
        auto gi = cascade::verify_substitution_identity(data);
        results["f_chain"] = steps_json(f.steps);
        results["g_chain"] = steps_json(g.steps);
        json btab = json::array();
        for (const auto& b : g.boundary)
            btab.push_back({{"name", b.name},
                            {"value", b.value},
                            {"zero", b.is_zero},
                            {"certificate", b.certificate}});
        results["boundary_table"] = btab;
        results["small_k"] = steps_json(s.steps);
        results["substitution_identity"] = gi.ok;
        long identities = static_cast<long>(g.steps.size() + f.steps.size() + s.steps.size()) + 1;
        results["identities_verified"] = identities;
    } catch (const ChainMismatch& e) {
        results["error"] = e.what();
        pass = false;
    } catch (const CertificateFailure& e) {
        results["error"] = e.what();
        pass = false;
    }

    json config = config_base(o, "cascade-verify");
    if (!dump_path.empty()) config["dump_transcription"] = dump_path;
    return finish(config, "cascade-verify", std::move(results), pass, o, out);
}

// ---------- implication-sample ----------

int implication_cmd(const CommonOpts& o, std::ostream& out) {
    auto rep = cascade::sample_implication(o.samples, o.seed, true);
    json cexs = json::array();
    for (const auto& c : rep.counterexamples)
        cexs.push_back({{"gamma", c.gamma}, {"xi", c.xi}, {"k", c.k}});
    json results{
        {"samples", rep.samples},
        {"antecedent_holds", rep.antecedent_holds},
        {"counterexamples", cexs},
        {"note", "heuristic falsification search over a sampled grid; not a proof"}};
    json config = config_base(o, "implication-sample");
    return finish(config, "implication-sample", std::move(results), rep.passed(), o, out);
}

// ---------- lp-solve ----------

int lp_solve_cmd(const CommonOpts& o, const std::string& trace_path, double eps_override,
                 std::ostream& out) {
    auto lp = io::lp_from_json(io::load_file(o.input));
    if (eps_override > 0) lp.eps = eps_override;
    auto res = solver::solve_lp(lp);
    double oracle = solver::vertex_minimum(lp.body, lp.cost);
    const double cert_tol = 1e-9;
    bool certified = res.objective - oracle <= res.gap_bound + cert_tol;
    bool gap_ok = res.gap_bound <= lp.eps;

    if (!trace_path.empty()) {
        std::ofstream csv(trace_path);
        if (!csv) throw InputError("cannot open trace file: " + trace_path);
        csv << "step,t,newton_decrement,objective\n";
        csv.precision(17);
        for (std::size_t i = 0; i < res.trace.size(); ++i)
            csv << i << "," << res.trace[i].t << "," << res.trace[i].newton_decrement << ","
                << res.trace[i].objective << "\n";
    }

    json config = config_base(o, "lp-solve");
    config["eps"] = lp.eps;
    if (!trace_path.empty()) config["trace"] = trace_path;
    json results{{"x", res.x},
                 {"objective", res.objective},
                 {"gap_bound", judged(res.gap_bound, lp.eps, gap_ok)},
                 {"t_final", res.t_final},
                 {"newton_steps", res.newton_steps},
                 {"vertex_oracle_min", oracle},
                 {"gap_vs_oracle", judged(res.objective - oracle, res.gap_bound + cert_tol,
                                          certified)},
                 {"trace_rows", res.trace.size()}};
    return finish(config, "lp-solve", std::move(results), certified && gap_ok, o, out);
}

// ---------- ell-profile ----------

int ell_profile_cmd(const CommonOpts& o, int nmax, long grid, std::ostream& out) {
    const double tol = o.tol >= 0 ? o.tol : 1e-12;
    bool pass = true;
    json rows = json::array();
    for (int n = 1; n <= nmax; ++n) {
        auto p = barrier::ell_profile(n, grid);
        double expected = 2.0 * std::sqrt(double(n + 1));
        double err = std::fabs(p.ell_stat_lo - expected);
        bool stat_ok = err <= tol;
        bool grid_ok = p.grid_max <= p.max_value + 1e-9;
        bool neg_ok = p.ell_stat_hi < 0;
        pass = pass && stat_ok && grid_ok && neg_ok;
        rows.push_back({{"n", n},
                        {"stationary_points", {p.stat_lo, p.stat_hi}},
                        {"ell_at_minus_inv_sqrt_n", judged(p.ell_stat_lo, tol, stat_ok)},
                        {"expected", expected},
                        {"ell_at_sqrt_n", p.ell_stat_hi},
                        {"grid_max", judged(p.grid_max, 1e-9, grid_ok)}});
    }
    json config = config_base(o, "ell-profile");
    config["nmax"] = nmax;
    config["grid"] = grid;
    config["tol"] = tol;
    return finish(config, "ell-profile", json{{"profiles", rows}}, pass, o, out);
}

bool is_input_error(const std::exception& e) {
    return dynamic_cast<const InputError*>(&e) || dynamic_cast<const InvalidPolytope*>(&e) ||
           dynamic_cast<const Unbounded*>(&e) || dynamic_cast<const DimensionDeficient*>(&e) ||
           dynamic_cast<const NotInterior*>(&e) || dynamic_cast<const InvalidDensity*>(&e);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"universal barrier toolkit"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string point_str, histogram_path, dump_path, trace_path;
    double eps_override = 0;
    long kmin = 2, kmax = 12;
    int nmax = 50;
    long grid = 100000;

    auto* c_eval = app.add_subcommand("barrier-eval", "barrier value/derivatives at a point");
    add_common(c_eval, o, true);
    c_eval->add_option("--point", point_str, "evaluation point as a JSON array (default: vertex centroid)");

    auto* c_cert = app.add_subcommand("certify", "sampled self-concordance certificate");
    add_common(c_cert, o, true);
    c_cert->add_option("--histogram", histogram_path, "ratio histogram CSV path");

    auto* c_mom = app.add_subcommand("moments-check", "moment inequality and sharpness checks");
    add_common(c_mom, o, false);
    c_mom->add_option("--input", o.input, "optional polytope JSON for polar marginal checks");
    c_mom->add_option("--kmin", kmin, "smallest k in the sharpness sweep");
    c_mom->add_option("--kmax", kmax, "largest k in the sharpness sweep");

    auto* c_casc = app.add_subcommand("cascade-verify", "exact derivative-chain verification");
    add_common(c_casc, o, false);
    c_casc->add_option("--dump-transcription", dump_path, "write the chain transcription JSON");

    auto* c_imp = app.add_subcommand("implication-sample", "sampled induction-step check");
    add_common(c_imp, o, false);

    auto* c_lp = app.add_subcommand("lp-solve", "barrier path-following LP solve");
    add_common(c_lp, o, true);
    c_lp->add_option("--eps", eps_override, "target optimality gap override");
    c_lp->add_option("--trace", trace_path, "central path trace CSV path");

    auto* c_ell = app.add_subcommand("ell-profile", "stationary-point profile of the ratio bound");
    add_common(c_ell, o, false);
    c_ell->add_option("--nmax", nmax, "largest dimension");
    c_ell->add_option("--grid", grid, "grid scan points");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "argument error: " << e.what() << "\n";
        return 2;
    }

    if (o.samples == 200 && c_imp->parsed()) o.samples = 100000;
    apply_threads(o.threads);

    try {
        if (c_eval->parsed())
            return o.exact ? barrier_eval_cmd<Rational>(o, point_str, out)
                           : barrier_eval_cmd<double>(o, point_str, out);
        if (c_cert->parsed())
            return o.exact ? certify_cmd<Rational>(o, histogram_path, out)
                           : certify_cmd<double>(o, histogram_path, out);
        if (c_mom->parsed())
            return o.exact ? moments_check_cmd<Rational>(o, kmin, kmax, out)
                           : moments_check_cmd<double>(o, kmin, kmax, out);
        if (c_casc->parsed()) return cascade_verify_cmd(o, dump_path, out);
        if (c_imp->parsed()) return implication_cmd(o, out);
        if (c_lp->parsed()) return lp_solve_cmd(o, trace_path, eps_override, out);
        if (c_ell->parsed()) return ell_profile_cmd(o, nmax, grid, out);
    } catch (const std::exception& e) {
        if (is_input_error(e)) {
            err << "input error: " << e.what() << "\n";
            return 2;
        }
        err << "check failed: " << e.what() << "\n";
        return 1;
    }
    err << "no subcommand\n";
    return 2;
}

} // namespace barrierlab::cli
