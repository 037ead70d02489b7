#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "charpoly/asymptotics.hpp"
#include "charpoly/dualities.hpp"
#include "charpoly/ensembles.hpp"
#include "charpoly/errors.hpp"
#include "charpoly/gap.hpp"
#include "charpoly/oracles.hpp"
#include "charpoly/painleve.hpp"
#include "charpoly/verify.hpp"

using namespace charpoly;
using json = nlohmann::json;

namespace {

struct Options {
    int n = 8;
    int m = 0;
    std::optional<int> k;
    std::optional<double> gamma;
    std::string z = "0";
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    double tol = kDefaultSigmaTol;
    bool csv = false;
    std::string out;

    std::string ensemble = "ginibre";
    std::string route = "all";
    std::string family = "gue";
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<double> x;
    double from = -3.0, to = 3.0;
    int points = 13;
    bool oracle = false;
    std::string regime = "bulk";
    std::vector<int> ns;
    double kappa = 0.0;
    double u = 1.0;
    std::string u1 = "0.3,0.1", u2 = "-0.4,0.5";
    double k2 = 1.0;
    int d = 2;
    double t = 0.3;
    std::string level = "quick";
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TableRow {
    int N;
    double exact_log, asym_log;
};

Complex parse_complex(const std::string& s) {
    std::istringstream is(s);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(is >> re)) throw UsageError("cannot parse complex value '" + s + "'");
    if (is >> comma) {
        if (comma != ',' || !(is >> im)) throw UsageError("complex values are written re,im: '" + s + "'");
    }
    if (!(is >> std::ws).eof()) throw UsageError("trailing characters in complex value '" + s + "'");
    return {re, im};
}

double gamma_of(const Options& o) {
    if (o.gamma) return *o.gamma;
    if (o.k) return 2.0 * *o.k;
    throw UsageError("one of --k or --gamma is required");
}

std::optional<int> integer_k(const Options& o) {
    if (o.k) return o.k;
    const double half = 0.5 * *o.gamma;
    if (half >= 0.0 && half == std::floor(half)) return int(half);
    return std::nullopt;
}

std::vector<double> grid(const Options& o) {
    if (!o.x.empty()) return o.x;
    if (o.points < 1) throw UsageError("--points must be positive");
    std::vector<double> g(o.points);
    for (int i = 0; i < o.points; ++i) g[i] = o.points == 1 ? o.from : o.from + (o.to - o.from) * i / (o.points - 1);
    return g;
}

std::string num(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

void warn(const std::string& what, const std::exception& e) { std::cerr << "warning: " << what << ": " << e.what() << "\n"; }

// Each route is attempted separately; a failure is reported and skipped.
template <class F>
bool attempt(const std::string& what, F&& f) {
    try {
        f();
        return true;
    } catch (const DomainError&) {
        throw;
    } catch (const SizeError&) {
        throw;
    } catch (const Error& e) {
        warn(what, e);
        return false;
    }
}

void cmd_exact(const Options& o, RunReport& rep) {
    const Complex z = parse_complex(o.z);
    const double g = gamma_of(o);
    const auto k = integer_k(o);
    const bool all = o.route == "all";
    const std::string name = o.ensemble + " E|det(A-z)|^" + num(g);
    int ok = 0;
    auto route = [&](const std::string& r, Route tag, auto&& f) {
        if (!all && o.route != r) return;
        ok += attempt(r, [&] { rep.outputs.push_back({name, tag, f(), {}, {}, true}); });
    };
    if (o.ensemble == "ginibre") {
        if (k) route("exact", Route::exact, [&] { return ginibre_moment_exact(o.n, *k, z); });
        route("toeplitz", Route::toeplitz, [&] { return ginibre_moment_toeplitz(o.n, g, z); });
        route("pv", Route::pv, [&] { return ginibre_moment_pv(o.n, g, z, std::min(o.tol, 1e-8)); });
    } else if (o.ensemble == "tcue") {
        if (o.m <= o.n) throw UsageError("--m must exceed --n for the truncated CUE");
        if (k) route("exact", Route::exact, [&] { return tcue_moment_exact(o.m, o.n, *k, z); });
        route("toeplitz", Route::toeplitz, [&] { return tcue_moment_toeplitz(o.m, o.n, g, z); });
    } else {
        throw UsageError("unknown ensemble '" + o.ensemble + "'");
    }
    if (ok == 0) throw Error("no route produced a value");
}

void cmd_mc(const Options& o, RunReport& rep) {
    const Complex z = parse_complex(o.z);
    const double g = gamma_of(o);
    EnsembleSpec spec;
    double shift = 0.0;
    if (o.ensemble == "ginibre") {
        spec = Ginibre{o.n};
        attempt("reference", [&] { shift = ginibre_moment_toeplitz(o.n, g, z); });
    } else if (o.ensemble == "tcue") {
        if (o.m <= o.n) throw UsageError("--m must exceed --n for the truncated CUE");
        spec = TruncatedCUE{o.m, o.n};
        attempt("reference", [&] { shift = tcue_moment_toeplitz(o.m, o.n, g, z); });
    } else {
        throw UsageError("unknown ensemble '" + o.ensemble + "'");
    }
    const std::string name = o.ensemble + " E|det(A-z)|^" + num(g);
    const MCEstimate e = mc_moment(spec, {{z}, {g}}, o.samples, o.seed, shift);
    rep.outputs.push_back({name, Route::mc, e.log_value(), {}, e.relative_stderr(), true});
    if (shift != 0.0) rep.outputs.push_back({name, Route::toeplitz, shift, {}, {}, true});
}

GapEnsemble gap_ensemble(const Options& o) {
    const int k = o.k.value_or(1);
    if (o.family == "gue") return GUE{k};
    if (o.family == "lue") return LUE{k, o.alpha};
    if (o.family == "jue") return JUE{k, o.alpha, o.beta};
    throw UsageError("unknown gap family '" + o.family + "'");
}

void cmd_gap(const Options& o, RunReport& rep) {
    const GapEnsemble e = gap_ensemble(o);
    for (double x : grid(o)) {
        const std::string name = o.family + " F(" + num(x) + ")";
        rep.outputs.push_back({name, Route::exact, gap_cdf(e, x), {}, {}, false});
        if (o.oracle) rep.outputs.push_back({name, Route::oracle, gap_oracle(e, x), {}, {}, false});
    }
}

void cmd_painleve(const Options& o, RunReport& rep) {
    const std::vector<double> xs = grid(o);
    const double lo = *std::min_element(xs.begin(), xs.end()), hi = *std::max_element(xs.begin(), xs.end());
    const double k = o.gamma ? 0.5 * *o.gamma : double(o.k.value_or(1));
    SigmaSolution sol;
    std::optional<GapEnsemble> ref;
    bool tail = false;
    double anchor = 0.0;
    const bool kint = k == std::floor(k) && k >= 1.0;
    if (o.family == "p4") {
        sol = solve(PIV{k}, init_from_asymptote_p4(k, 1e4), lo, o.tol);
        if (kint) ref = GUE{int(k)};
    } else if (o.family == "p5") {
        if (!kint) throw UsageError("p5 needs an integer --k");
        if (lo <= 0.0) throw UsageError("p5 needs positive x");
        const PV f{k, o.alpha, LaguerreGap::smallest};
        sol = solve(f, init_from_gap(f, lo), hi, o.tol);
        anchor = log_lue_tail(int(k), o.alpha, lo) - log_F_from_sigma(sol, lo);
        tail = true;
        if (k > 1.0) std::cerr << "warning: forward PV integration loses accuracy for k > 1\n";
    } else if (o.family == "p6") {
        if (!kint) throw UsageError("p6 needs an integer --k");
        const PVI f = pvi_from_jue(k, o.alpha, o.beta);
        if (lo <= 0.0 || hi >= 1.0) throw UsageError("p6 needs x in (0, 1)");
        sol = solve_interval(f, init_from_gap(f, 0.5), std::min(lo, 0.02), std::max(hi, 0.9999), o.tol);
        ref = JUE{int(k), o.alpha, o.beta};
    } else {
        throw UsageError("unknown Painleve family '" + o.family + "'");
    }
    for (double x : xs) {
        const std::string name = o.family + " F(" + num(x) + ")";
        rep.outputs.push_back({name, Route::pv, anchor + log_F_from_sigma(sol, x), {}, {}, true});
        if (ref) rep.outputs.push_back({name, Route::exact, log_gap_cdf(*ref, x), {}, {}, true});
        if (tail) rep.outputs.push_back({name, Route::exact, log_lue_tail(int(k), o.alpha, x), {}, {}, true});
    }
}

std::vector<int> sizes(const Options& o) { return o.ns.empty() ? std::vector<int>{o.n} : o.ns; }

std::pair<double, double> asym_pair(const Options& o, int N) {
    const Complex z = parse_complex(o.z);
    const double k1 = o.gamma ? 0.5 * *o.gamma : double(o.k.value_or(1));
    const std::optional<int> k = k1 >= 0.0 && k1 == std::floor(k1) ? std::optional<int>(int(k1)) : std::nullopt;
    auto exact = [&](Complex w) { return k ? ginibre_moment_exact(N, *k, w) : ginibre_moment_toeplitz(N, 2.0 * k1, w); };
    if (o.regime == "bulk") return {exact(z), ww_bulk(N, 2.0 * k1, z)};
    if (o.regime == "edge") return {exact(z), ginibre_edge(N, k1, z)};
    if (o.regime == "exterior") return {exact(z), ginibre_exterior(N, k1, z)};
    if (o.regime == "tcue-edge") {
        if (!k) throw UsageError("tcue-edge needs an integer --k");
        if (o.kappa != std::floor(o.kappa)) throw UsageError("tcue-edge needs an integer --kappa for the exact route");
        const Complex w = 1.0 - o.u / N;
        return {tcue_moment_exact(N + int(o.kappa), N, *k, w), tcue_edge(N, o.kappa, k1, o.u)};
    }
    const double sn = std::sqrt(double(N));
    const Complex a = parse_complex(o.u1), b = parse_complex(o.u2);
    if (o.regime == "two-charge") {
        const ChargeConfiguration ch{{z + a / sn, z + b / sn}, {2.0 * k1, 2.0 * o.k2}};
        return {correlator_finiteN(GinibreWeight{N}, ch), bulk_two_charge(N, k1, o.k2, z, a, b)};
    }
    if (o.regime == "noninteger") {
        const double g = gamma_of(o);
        const ChargeConfiguration ch{{b.real() / sn}, {2.0 * o.k2}};
        return {correlator_finiteN(InducedGinibre{N, g}, ch), noninteger_bulk(N, g, o.k2, b.real())};
    }
    throw UsageError("unknown regime '" + o.regime + "'");
}

void cmd_asym(const Options& o, RunReport& rep, std::vector<TableRow>& table) {
    for (int N : sizes(o)) {
        const auto [ex, as] = asym_pair(o, N);
        const std::string name = o.regime + " N=" + std::to_string(N);
        rep.outputs.push_back({name, Route::exact, ex, {}, {}, true});
        rep.outputs.push_back({name, Route::asym, as, {}, {}, true});
        table.push_back({N, ex, as});
    }
}

void cmd_lemniscate(const Options& o, RunReport& rep, std::vector<TableRow>& table) {
    const double tc = lemniscate_critical_t(o.d);
    LemniscateRegime r;
    if (o.regime == "sub") r = LemniscateRegime::sub;
    else if (o.regime == "critical") r = LemniscateRegime::critical;
    else if (o.regime == "super") r = LemniscateRegime::super;
    else if (o.regime == "auto" || o.regime == "bulk")
        r = o.t < tc ? LemniscateRegime::sub : (o.t > tc ? LemniscateRegime::super : LemniscateRegime::critical);
    else throw UsageError("unknown lemniscate regime '" + o.regime + "'");
    for (int N : sizes(o)) {
        const double ex = lemniscate_partition(N, o.d, o.t);
        const LemniscateAsym a = lemniscate_asym(N, o.d, o.t, r);
        const std::string name = "Z N=" + std::to_string(N) + " d=" + std::to_string(o.d) + " t=" + num(o.t);
        rep.outputs.push_back({name, Route::exact, ex, {}, {}, true});
        rep.outputs.push_back({name + (a.conjectural ? " (conjectural)" : ""), Route::asym, a.log_value, {}, {}, true});
        table.push_back({N, ex, a.log_value});
    }
}

json record_json(const OutputRecord& r) {
    json j{{"name", r.name}, {"route", route_name(r.route)}};
    if (r.log_scale) {
        j["log"] = r.value;
        const double v = std::exp(r.value);
        if (std::isfinite(v) && v > 0.0) j["value"] = v;
    } else {
        j["value"] = r.value;
        if (r.value > 0.0 && !r.imag) j["log"] = std::log(r.value);
    }
    if (r.imag) j["imag"] = *r.imag;
    if (r.stderr_) j["stderr"] = *r.stderr_;
    return j;
}

json report_json(const RunReport& rep, const std::vector<TableRow>& table) {
    json j;
    j["command"] = rep.command;
    j["inputs"] = rep.inputs;
    j["outputs"] = json::array();
    for (const auto& r : rep.outputs) j["outputs"].push_back(record_json(r));
    j["checks"] = json::array();
    for (const auto& c : rep.checks)
        j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"observed", c.observed},
                               {"tolerance", c.tolerance}, {"note", c.note},
                               {"known_unattainable", c.known_unattainable}});
    if (!table.empty()) {
        j["table"] = json::array();
        for (const auto& t : table)
            j["table"].push_back({{"N", t.N}, {"exact_log", t.exact_log}, {"asym_log", t.asym_log},
                                  {"ratio", std::exp(t.exact_log - t.asym_log)}});
    }
    j["seed"] = rep.seed;
    j["wall_time"] = rep.wall_time;
    return j;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string csv_num(double x) {
    if (!std::isfinite(x)) return "";
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

void write_csv(std::ostream& os, const RunReport& rep, const std::vector<TableRow>& table) {
    if (!table.empty()) {
        os << "N,exact_log,asym_log,ratio\r\n";
        for (const auto& t : table)
            os << t.N << ',' << csv_num(t.exact_log) << ',' << csv_num(t.asym_log) << ','
               << csv_num(std::exp(t.exact_log - t.asym_log)) << "\r\n";
        return;
    }
    if (!rep.checks.empty()) {
        os << "name,pass,observed,tolerance,note\r\n";
        for (const auto& c : rep.checks)
            os << csv_field(c.name) << ',' << (c.pass ? "true" : "false") << ',' << csv_num(c.observed) << ','
               << csv_num(c.tolerance) << ',' << csv_field(c.note) << "\r\n";
        return;
    }
    os << "name,route,log,value,imag,stderr\r\n";
    for (const auto& r : rep.outputs) {
        const json j = record_json(r);
        auto get = [&](const char* key) { return j.contains(key) ? csv_num(j[key].get<double>()) : std::string(); };
        os << csv_field(r.name) << ',' << route_name(r.route) << ',' << get("log") << ',' << get("value") << ','
           << get("imag") << ',' << get("stderr") << "\r\n";
    }
}

void add_common(CLI::App* s, Options& o) {
    s->add_option("--n", o.n, "matrix size N");
    s->add_option("--m", o.m, "outer unitary size M (truncated CUE)");
    s->add_option("--k", o.k, "integer moment index, exponent 2k");
    s->add_option("--gamma", o.gamma, "real exponent gamma");
    s->add_option("--z", o.z, "point re,im");
    s->add_option("--samples", o.samples, "Monte Carlo samples");
    s->add_option("--seed", o.seed, "random seed");
    s->add_option("--tol", o.tol, "ODE tolerance");
    s->add_flag("--csv", o.csv, "emit RFC-4180 CSV instead of JSON");
    s->add_option("--out", o.out, "write to FILE instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moments and correlations of characteristic polynomials of non-Hermitian random matrices"};
    app.require_subcommand(1);
    Options o;

    auto* exact = app.add_subcommand("exact", "finite-N moments by the exact, Toeplitz and Painleve routes");
    add_common(exact, o);
    exact->add_option("--ensemble", o.ensemble, "ginibre | tcue")->check(CLI::IsMember({"ginibre", "tcue"}));
    exact->add_option("--route", o.route, "all | exact | toeplitz | pv")
        ->check(CLI::IsMember({"all", "exact", "toeplitz", "pv"}));

    auto* mc = app.add_subcommand("mc", "Monte Carlo moment estimate");
    add_common(mc, o);
    mc->add_option("--ensemble", o.ensemble, "ginibre | tcue")->check(CLI::IsMember({"ginibre", "tcue"}));

    auto* gap = app.add_subcommand("gap", "gap probabilities of GUE, LUE and JUE");
    add_common(gap, o);
    gap->add_option("--family", o.family, "gue | lue | jue");
    gap->add_option("--alpha", o.alpha);
    gap->add_option("--beta", o.beta);
    gap->add_option("--x", o.x, "evaluation points")->delimiter(',');
    gap->add_option("--from", o.from);
    gap->add_option("--to", o.to);
    gap->add_option("--points", o.points);
    gap->add_flag("--oracle", o.oracle, "also evaluate by direct quadrature");

    auto* pl = app.add_subcommand("painleve", "gap probabilities from sigma-form solutions");
    add_common(pl, o);
    pl->add_option("--family", o.family, "p4 | p5 | p6")->required();
    pl->add_option("--alpha", o.alpha);
    pl->add_option("--beta", o.beta);
    pl->add_option("--x", o.x, "evaluation points")->delimiter(',');
    pl->add_option("--from", o.from);
    pl->add_option("--to", o.to);
    pl->add_option("--points", o.points);

    auto* as = app.add_subcommand("asym", "large-N asymptotics against finite-N values");
    add_common(as, o);
    as->add_option("--regime", o.regime, "bulk | edge | exterior | tcue-edge | two-charge | noninteger");
    as->add_option("--ns", o.ns, "sizes for a convergence table")->delimiter(',');
    as->add_option("--kappa", o.kappa, "M - N for tcue-edge");
    as->add_option("--u", o.u, "edge offset for tcue-edge");
    as->add_option("--u1", o.u1, "first bulk offset re,im");
    as->add_option("--u2", o.u2, "second bulk offset re,im");
    as->add_option("--k2", o.k2, "second charge");

    auto* lem = app.add_subcommand("lemniscate", "planar partition function with lemniscate potential");
    add_common(lem, o);
    lem->add_option("--d", o.d, "lemniscate degree");
    lem->add_option("--t", o.t, "potential parameter");
    lem->add_option("--regime", o.regime, "auto | sub | critical | super");
    lem->add_option("--ns", o.ns, "sizes for a convergence table")->delimiter(',');

    auto* ver = app.add_subcommand("verify", "run the verification suite");
    ver->add_option("--level", o.level, "quick | full")->check(CLI::IsMember({"quick", "full"}));
    ver->add_option("--seed", o.seed, "random seed");
    ver->add_flag("--csv", o.csv, "emit RFC-4180 CSV instead of JSON");
    ver->add_option("--out", o.out, "write to FILE instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (lem->parsed() && o.regime == "bulk") o.regime = "auto";

    const auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    std::vector<TableRow> table;
    rep.seed = o.seed;
    CLI::App* sub = app.get_subcommands().front();
    rep.command = sub->get_name();
    for (const CLI::Option* opt : sub->get_options())
        if (opt->count() > 0 && opt->get_name() != "--help") {
            std::string v;
            for (const auto& r : opt->results()) v += (v.empty() ? "" : " ") + r;
            rep.inputs[opt->get_name().substr(2)] = v.empty() ? "true" : v;
        }

    try {
        if (sub == exact) cmd_exact(o, rep);
        else if (sub == mc) cmd_mc(o, rep);
        else if (sub == gap) cmd_gap(o, rep);
        else if (sub == pl) cmd_painleve(o, rep);
        else if (sub == as) cmd_asym(o, rep, table);
        else if (sub == lem) cmd_lemniscate(o, rep, table);
        else {
            const auto inputs = rep.inputs;
            rep = run_verification_suite(o.level == "full" ? SuiteLevel::full : SuiteLevel::quick, o.seed);
            for (const auto& [key, v] : inputs) rep.inputs[key] = v;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const SizeError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    if (rep.command != "verify") rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::ofstream file;
    if (!o.out.empty()) {
        file.open(o.out, std::ios::binary);
        if (!file) {
            std::cerr << "usage error: cannot open " << o.out << "\n";
            return 2;
        }
    }
    std::ostream& os = o.out.empty() ? std::cout : file;
    if (o.csv) write_csv(os, rep, table);
    else os << report_json(rep, table).dump(2) << "\n";
    return rep.all_pass() ? 0 : 1;
}
