#include "commands.hpp"

#include "pairy/costs.hpp"
#include "pairy/errors.hpp"
#include "pairy/moments.hpp"
#include "pairy/numerics.hpp"
#include "pairy/oracle.hpp"
#include "pairy/real.hpp"
#include "pairy/refdist.hpp"
#include "pairy/sampler.hpp"
#include "pairy/trees.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pairy::cli {

namespace {

using json = nlohmann::ordered_json;

struct Globals {
    std::string format = "json";
    std::string output;
    unsigned precision = 0;
    int threads = 1;
};

struct CostOpts {
    std::string family = "gamma-ratio";
    std::string a = "1/2";
    std::string p = "1";
};

void add_cost_opts(CLI::App* sc, CostOpts& c) {
    sc->add_option("--cost", c.family, "gamma-ratio | gamma-ratio-32 | power-half | power-one | pure-power | log-shift")
        ->capture_default_str();
    sc->add_option("--a", c.a, "shape parameter of the gamma-ratio families")->capture_default_str();
    sc->add_option("--p", c.p, "exponent p (decimal or fraction)")->capture_default_str();
}

class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(ErrorKind::validation, what) {}
    const char* name() const noexcept override { return "UsageError"; }
};

[[noreturn]] void invalid(const std::string& msg) { throw UsageError(msg); }

std::optional<Rat> try_rat(const std::string& s) {
    try {
        return rat_from_string(s);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

Real parse_real(const std::string& s, const char* what) {
    if (auto q = try_rat(s)) return Real(*q);
    try {
        return Real(s);
    } catch (const std::exception&) {
        invalid(std::string("cannot parse ") + what + " '" + s + "'");
    }
}

CostFunction make_cost(const CostOpts& o) {
    CostFamily fam;
    try {
        fam = cost_family_from_string(o.family);
    } catch (const std::exception&) {
        invalid("unknown cost family '" + o.family +
                "' (expected gamma-ratio, gamma-ratio-32, power-half, power-one, pure-power, log-shift)");
    }
    if (fam == CostFamily::log_shift) return CostFunction::log_shift();
    auto pq = try_rat(o.p), aq = try_rat(o.a);
    Real p = parse_real(o.p, "--p");
    try {
        switch (fam) {
            case CostFamily::gamma_ratio:
                if (pq && aq) return CostFunction::gamma_ratio(*aq, *pq);
                return CostFunction::gamma_ratio(parse_real(o.a, "--a"), p);
            case CostFamily::gamma_ratio_32:
                if (pq && aq) return CostFunction::gamma_ratio_32(*aq, *pq);
                return CostFunction::gamma_ratio_32(parse_real(o.a, "--a"), p);
            case CostFamily::power_half: return pq ? CostFunction::power_half(*pq) : CostFunction::power_half(p);
            case CostFamily::power_one: return pq ? CostFunction::power_one(*pq) : CostFunction::power_one(p);
            case CostFamily::pure_power: return pq ? CostFunction::pure_power(*pq) : CostFunction::pure_power(p);
            default: break;
        }
    } catch (const DomainError& e) {
        invalid(std::string("invalid cost parameters: ") + e.what());
    }
    invalid("unsupported cost family");
}

Ensemble parse_ensemble(const std::string& s) {
    try {
        return ensemble_from_string(s);
    } catch (const std::exception&) {
        invalid("unknown ensemble '" + s + "' (expected excursion or bridge)");
    }
}

std::string S(const Real& x) { return x.str(); }

json reals(const std::vector<Real>& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(S(x));
    return a;
}

json rats(const std::vector<Rat>& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(rat_str(x));
    return a;
}

json header(const std::string& cmd) {
    json j;
    j["schema_version"] = 1;
    j["command"] = cmd;
    j["precision"] = working_precision();
    return j;
}

bool is_half(const Real& p) { return p == Real(0.5); }

void half_hint(const Real& p, const char* cmd) {
    if (is_half(p))
        throw HalfPointError(std::string(cmd) +
                             ": p = 1/2 is a pole of the shift t(p); run `pairy limit-half` for the p -> 1/2 limit");
}

// ---------------------------------------------------------------- moments

struct MomentsOpts {
    std::string p = "1";
    std::string ensemble = "excursion";
    int smax = 10;
};

void cmd_moments(const MomentsOpts& o, const Globals& g, std::ostream& out) {
    Real p = parse_real(o.p, "--p");
    if (p.sign() < 0) invalid("--p must be >= 0");
    if (o.smax < 0) invalid("--smax must be >= 0");
    half_hint(p, "moments");
    auto e = parse_ensemble(o.ensemble);
    auto t = moment_table(e, p, o.smax, try_rat(o.p));
    if (g.format == "csv") {
        out << "s,mu,rescaled,shifted\n";
        for (int s = 0; s <= o.smax; ++s)
            out << s << ',' << (t.mu_exact ? rat_str((*t.mu_exact)[s]) : S(t.mu[s])) << ',' << S(t.rescaled[s]) << ','
                << S(t.shifted[s]) << '\n';
        return;
    }
    json j = header("moments");
    j["ensemble"] = to_string(e);
    j["p"] = o.p;
    j["mode"] = t.mu_exact ? "rational" : "real";
    j["s_max"] = o.smax;
    j["mu"] = t.mu_exact ? rats(*t.mu_exact) : reals(t.mu);
    if (t.mu_exact) j["mu_decimal"] = reals(t.mu);
    j["rescaled"] = reals(t.rescaled);
    j["shift_t"] = S(t.shift_t);
    j["shifted"] = reals(t.shifted);
    out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------- alpha

struct AlphaOpts {
    CostOpts cost;
    std::string method = "auto";
    std::string tol = "1e-30";
};

void cmd_alpha(const AlphaOpts& o, const Globals& g, std::ostream& out) {
    auto cf = make_cost(o.cost);
    Real tol = parse_real(o.tol, "--tol");
    AlphaResult r;
    if (o.method == "auto") r = alpha(cf, tol);
    else if (o.method == "closed") r = alpha_closed_form(cf);
    else if (o.method == "numeric") r = alpha_numeric(cf, tol);
    else invalid("--method must be auto, closed or numeric");
    if (g.format == "csv") {
        out << "cost,value,method,estimated_error\n";
        out << cf.id() << ',' << S(r.value) << ',' << to_string(r.method) << ',' << r.estimated_error.str(6) << '\n';
        return;
    }
    json j = header("alpha");
    j["cost"] = cf.id();
    j["value"] = S(r.value);
    j["method"] = to_string(r.method);
    j["estimated_error"] = r.estimated_error.str(6);
    out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------- finite-n

struct FiniteOpts {
    CostOpts cost;
    std::string ensemble = "excursion";
    std::string eps = "alpha";
    std::string mode = "auto";
    int nmax = 20;
    int smax = 4;
};

// alpha for centering finite-N data; the numeric ladder cannot reach the
// full working precision, and 1e-18 is far below what N <= 10^5 resolves
Real centering_alpha(const CostFunction& cf) {
    Real tol = max(ldexp(Real(1), -static_cast<long>(working_precision()) / 4), Real(1e-18));
    return alpha(cf, tol).value;
}

// eps as given, or alpha of the cost
Scalar resolve_eps(const std::string& eps, const CostFunction& cf, bool want_rational) {
    if (eps == "alpha") return centering_alpha(cf);
    if (auto q = try_rat(eps); q && want_rational) return *q;
    return parse_real(eps, "--eps");
}

Real rescale_factor(const CostFunction& cf, int N, int s) {
    Real n(N);
    if (cf.family() == CostFamily::log_shift) return N > 1 ? pow(n * log(n), Real(s) / 2) : Real(1);
    return pow(n, Real(s) * (cf.p() + Real(0.5)));
}

void cmd_finite_n(const FiniteOpts& o, const Globals& g, std::ostream& out) {
    auto cf = make_cost(o.cost);
    auto e = parse_ensemble(o.ensemble);
    if (o.nmax < 0 || o.smax < 0) invalid("--nmax and --smax must be >= 0");
    bool rational;
    if (o.mode == "auto") rational = cf.is_rational() && o.eps != "alpha" && try_rat(o.eps).has_value();
    else if (o.mode == "rational") rational = true;
    else if (o.mode == "real") rational = false;
    else invalid("--mode must be auto, rational or real");
    if (rational && !cf.is_rational()) invalid("rational mode needs a cost with rational values (e.g. integer p)");
    if (rational && !try_rat(o.eps)) invalid("rational mode needs a rational --eps such as 0 or -1/2");
    Scalar eps = resolve_eps(o.eps, cf, rational);
    auto t = exact_moment_dp(e, cf, eps, o.nmax, o.smax);
    if (g.format == "csv") {
        write_table_csv(out, t, cf.p());
        return;
    }
    json j = header("finite-n");
    j["ensemble"] = to_string(e);
    j["cost"] = cf.id();
    j["eps"] = t.eps_str;
    j["mode"] = t.exact ? "rational" : "real";
    j["n_max"] = o.nmax;
    j["s_max"] = o.smax;
    json rows = json::array();
    for (int N = 0; N <= o.nmax; ++N) {
        json r;
        r["N"] = N;
        json m = json::array(), sc = json::array();
        for (int s = 0; s <= o.smax; ++s) {
            m.push_back(t.exact ? rat_str((*t.exact)[s][N]) : S(t.at(s, N)));
            if (N > 0) sc.push_back(S(t.at(s, N) / rescale_factor(cf, N, s)));
            else sc.push_back(nullptr);
        }
        r["moments"] = m;
        r["rescaled"] = sc;
        rows.push_back(r);
    }
    j["rows"] = rows;
    out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------- sample

struct SampleOpts {
    CostOpts cost;
    std::string ensemble = "excursion";
    std::string eps = "alpha";
    std::string rescale = "auto";
    int N = 100;
    std::uint64_t n = 10000;
    std::uint64_t seed = 1;
    int bins = 0;
    int smax = 4;
    std::string histogram;
    bool compare_dp = false;
    double z_max = 4.0;
    bool ks_airy = false;
};

void cmd_sample(const SampleOpts& o, const Globals& g, std::ostream& out) {
    auto cf = make_cost(o.cost);
    auto e = parse_ensemble(o.ensemble);
    if (o.N < 1) invalid("--N must be >= 1");
    if (o.smax < 1) invalid("--smax must be >= 1");
    ExperimentConfig cfg;
    cfg.ensemble = e;
    cfg.N = o.N;
    cfg.n = o.n;
    cfg.seed = o.seed;
    cfg.bins = o.bins;
    cfg.s_max = o.smax;
    cfg.threads = g.threads;
    cfg.keep_values = o.ks_airy;
    const bool logc = cf.family() == CostFamily::log_shift;
    if (o.rescale == "auto") {
        cfg.rescale_exponent = logc ? 0.5 : (cf.p() + Real(0.5)).to_double();
        if (logc && o.N > 1) cfg.extra_scale = std::sqrt(std::log(static_cast<double>(o.N)));
    } else {
        cfg.rescale_exponent = parse_real(o.rescale, "--rescale").to_double();
    }
    std::vector<double> w;
    if (o.eps == "dp-mean") {
        // centre so that the finite-N mean equals bar M_1 (exact DP mean)
        if (logc) invalid("--eps dp-mean needs a power-law cost");
        half_hint(cf.p(), "sample");
        auto tab = cf.table(o.N);
        for (auto& x : tab) w.push_back(x.to_double());
        auto dp = exact_moment_dp_double(e, w, o.N, 1);
        double mbar = rescaled_moments(e, cf.p(), 1)[1].to_double();
        cfg.eps = (dp[1][o.N] - mbar * std::pow(o.N, cfg.rescale_exponent)) / o.N;
    } else {
        cfg.eps = std::get<Real>(resolve_eps(o.eps, cf, false)).to_double();
    }
    auto sum = run_experiment(cfg, cf);
    if (!o.histogram.empty()) {
        std::ofstream hf(o.histogram);
        if (!hf) invalid("cannot write histogram file '" + o.histogram + "'");
        write_histogram_csv(hf, sum.histogram);
    }
    if (g.format == "csv") {
        write_histogram_csv(out, sum.histogram);
        return;
    }
    json j = json::parse(summary_json(sum));
    j["command"] = "sample";
    bool mismatch = false;
    if (o.compare_dp) {
        if (w.empty()) {
            auto tab = cf.table(o.N);
            for (auto& x : tab) w.push_back(x.to_double());
        }
        std::vector<double> shifted(w.size());
        for (size_t k = 0; k < w.size(); ++k) shifted[k] = w[k] - cfg.eps;
        auto dp = exact_moment_dp_double(e, shifted, o.N, o.smax);
        const double denom = std::pow(static_cast<double>(o.N), cfg.rescale_exponent) * cfg.extra_scale;
        std::vector<double> ref(static_cast<size_t>(o.smax) + 1, 1.0);
        for (int s = 1; s <= o.smax; ++s) ref[s] = dp[s][o.N] / std::pow(denom, s);
        auto z = compare_to_reference(sum, ref);
        json c = json::array();
        for (int s = 1; s <= o.smax; ++s) c.push_back({{"s", s}, {"reference", ref[s]}, {"z", z.z[s]}});
        j["dp_comparison"] = {{"z_max", o.z_max}, {"max_abs_z", z.max_abs}, {"rows", c}};
        mismatch = z.max_abs > o.z_max;
    }
    if (o.ks_airy) {
        // p = 1 law is sqrt(2) times the area-Airy law
        double ks = ks_distance(sum.values, [](double x) { return airy_cdf(x / std::sqrt(2.0)); });
        j["ks_airy"] = ks;
    }
    out << j.dump(2) << '\n';
    if (mismatch) throw MismatchError("sample moments differ from the DP reference by more than --z-max");
}

// ---------------------------------------------------------------- tree-check

struct TreeOpts {
    std::string p = "1";
    int smax = 8;
    int order = 0;
    std::string tol = "1e-25";
};

void cmd_tree_check(const TreeOpts& o, const Globals& g, std::ostream& out) {
    Real p = parse_real(o.p, "--p");
    half_hint(p, "tree-check");
    if (o.smax < 1) invalid("--smax must be >= 1");
    if (o.smax > kTreeCap) throw CapExceeded("tree-check: --smax above " + std::to_string(kTreeCap));
    Real tol = parse_real(o.tol, "--tol");
    int order = o.order > 0 ? o.order : o.smax;
    auto r = check_mu_equals_tree_sum(o.smax, p, tol);
    auto xy = check_xy_identity(order, p, tol);
    if (g.format == "csv") {
        out << "s,mu_recursion,mu_trees\n";
        for (int s = 1; s <= o.smax; ++s) out << s << ',' << S(r.mu_recursion[s]) << ',' << S(r.mu_trees[s]) << '\n';
        return;
    }
    json j = header("tree-check");
    j["p"] = o.p;
    j["s_max"] = o.smax;
    json rows = json::array();
    for (int s = 1; s <= o.smax; ++s)
        rows.push_back({{"s", s}, {"mu_recursion", S(r.mu_recursion[s])}, {"mu_trees", S(r.mu_trees[s])}});
    j["rows"] = rows;
    j["max_rel_dev"] = r.max_rel_dev.str(6);
    j["xy_identity"] = {{"order", order}, {"max_dev_xy", xy.max_dev_xy.str(6)}, {"max_dev_a", xy.max_dev_a.str(6)}};
    out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------- bounds

struct BoundsOpts {
    std::string p = "1";
    int smax = 40;
};

void cmd_bounds(const BoundsOpts& o, const Globals& g, std::ostream& out) {
    Real p = parse_real(o.p, "--p");
    half_hint(p, "bounds");
    if (p.sign() <= 0) invalid("bounds need p > 0");
    if (o.smax < 1) invalid("--smax must be >= 1");
    auto r = bound_report(p, o.smax);
    // four-parameter fit, needs a few orders beyond the start
    std::optional<CarlemanFit> cf;
    if (o.smax >= 8) cf = carleman_fit(p, 5, o.smax);
    if (g.format == "csv") {
        out << "s,mu_e_abs,bound_e,mu_b_abs,bound_b\n";
        // the excursion bound starts at s = 1
        for (auto& row : r.rows)
            out << row.s << ',' << (row.s ? row.mu_e_abs.str(20) : "") << ',' << (row.s ? row.bound_e.str(20) : "")
                << ',' << row.mu_b_abs.str(20) << ',' << row.bound_b.str(20) << '\n';
    } else {
        json j = header("bounds");
        j["p"] = o.p;
        j["s_max"] = o.smax;
        j["constants"] = {{"f", S(r.constants.f_p)}, {"A", S(r.constants.A_p)}, {"R", S(r.constants.R_p)}};
        j["conditions_hold"] = r.conditions_hold;
        json rows = json::array();
        for (auto& row : r.rows)
            rows.push_back({{"s", row.s},
                            {"mu_e_abs", row.s ? json(row.mu_e_abs.str(20)) : json(nullptr)},
                            {"bound_e", row.s ? json(row.bound_e.str(20)) : json(nullptr)},
                            {"mu_b_abs", row.mu_b_abs.str(20)},
                            {"bound_b", row.bound_b.str(20)}});
        j["rows"] = rows;
        j["min_margin"] = r.min_margin.str(10);
        j["failures"] = r.failures;
        if (cf)
            j["carleman"] = {
                {"coeff_s_log_s", cf->coeff_slogs}, {"coeff_s", cf->coeff_s}, {"max_residual", cf->max_residual}};
        else
            j["carleman"] = nullptr;
        out << j.dump(2) << '\n';
    }
    if (!r.failures.empty()) {
        std::string f;
        for (auto& x : r.failures) f += " " + x;
        throw BoundViolation("bound violated at p=" + o.p + ":" + f);
    }
}

// ---------------------------------------------------------------- limit-half

struct LimitOpts {
    int smax = 5;
    std::vector<std::string> deltas;
};

void cmd_limit_half(const LimitOpts& o, const Globals& g, std::ostream& out) {
    if (o.smax < 1) invalid("--smax must be >= 1");
    std::vector<Real> d;
    for (auto& s : o.deltas) d.push_back(parse_real(s, "--deltas"));
    auto rows = limit_half_moments(o.smax, d);
    if (g.format == "csv") {
        out << "s,value,error\n";
        for (auto& r : rows) out << r.s << ',' << S(r.value) << ',' << r.error.str(6) << '\n';
        return;
    }
    json j = header("limit-half");
    j["s_max"] = o.smax;
    json a = json::array();
    for (auto& r : rows) a.push_back({{"s", r.s}, {"value", S(r.value)}, {"error", r.error.str(6)}});
    j["rows"] = a;
    out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------- log-case

struct LogOpts {
    int smax = 20;
    int nmax = 0;
};

void cmd_log_case(const LogOpts& o, const Globals& g, std::ostream& out) {
    if (o.smax < 0) invalid("--smax must be >= 0");
    auto cl = tau_log_coeffs_closed(o.smax);
    auto rc = tau_log_coeffs_recursion(o.smax);
    auto tau = tau_log(o.smax);
    auto gm = gaussian_log_moments(o.smax);
    bool agree = cl == rc;
    std::optional<Real> ratio;
    if (o.nmax > 1) {
        auto cf = CostFunction::log_shift();
        Real a = centering_alpha(cf);
        auto t = exact_moment_dp(Ensemble::excursion, cf, a, o.nmax, 2);
        Real N(o.nmax);
        ratio = t.at(2, o.nmax) / (N * log(N));
    }
    if (g.format == "csv") {
        out << "s,tau_coeff,tau,gaussian_moment\n";
        for (int s = 0; s <= o.smax; ++s) out << s << ',' << rat_str(cl[s]) << ',' << S(tau[s]) << ',' << S(gm[s]) << '\n';
    } else {
        json j = header("log-case");
        j["s_max"] = o.smax;
        j["tau_coeff_closed"] = rats(cl);
        j["tau_coeff_recursion"] = rats(rc);
        j["closed_equals_recursion"] = agree;
        j["tau"] = reals(tau);
        j["gaussian_moments"] = reals(gm);
        if (ratio)
            j["variance_check"] = {{"N", o.nmax}, {"M2_over_N_lnN", S(*ratio)}, {"euler_gamma", S(euler_gamma())}};
        out << j.dump(2) << '\n';
    }
    if (!agree) throw MismatchError("tau closed form differs from the convolution recursion");
}

// ---------------------------------------------------------------- airy

struct AiryOpts {
    std::string what = "moments";
    int K = 10;
    int smax = 4;
    double x_min = 0.1, x_max = 2.5;
    int points = 25;
};

void cmd_airy(const AiryOpts& o, const Globals& g, std::ostream& out) {
    const bool csv = g.format == "csv";
    json j = header("airy");
    j["what"] = o.what;
    json rows = json::array();
    auto grid = [&](const std::function<void(double)>& fn) {
        if (o.points < 1 || !(o.x_max >= o.x_min)) invalid("need --points >= 1 and --x-max >= --x-min");
        for (int i = 0; i < o.points; ++i) {
            double x = o.points == 1 ? o.x_min : o.x_min + (o.x_max - o.x_min) * i / (o.points - 1);
            fn(x);
        }
    };
    if (o.what == "zeros") {
        if (o.K < 1) invalid("--K must be >= 1");
        if (csv) out << "k,a_k,b_k\n";
        auto z = airy_zeros(o.K);
        for (int k = 1; k <= o.K; ++k) {
            Real a = z[k - 1], b = Real(2) * a * a * a / Real(27);
            if (csv) out << k << ',' << S(a) << ',' << S(b) << '\n';
            else rows.push_back({{"k", k}, {"a_k", S(a)}, {"b_k", S(b)}});
        }
    } else if (o.what == "density") {
        if (csv) out << "x,density,terms\n";
        grid([&](double x) {
            if (x <= 0) invalid("density needs x > 0");
            auto d = airy_density_terms(Real(x));
            if (csv) out << x << ',' << d.value.str(20) << ',' << d.terms << '\n';
            else rows.push_back({{"x", x}, {"density", d.value.str(20)}, {"terms", d.terms}});
        });
    } else if (o.what == "laplace") {
        if (csv) out << "lambda,laplace\n";
        grid([&](double x) {
            if (x <= 0) invalid("laplace needs lambda > 0");
            Real v = airy_laplace(Real(x));
            if (csv) out << x << ',' << v.str(20) << '\n';
            else rows.push_back({{"lambda", x}, {"laplace", v.str(20)}});
        });
    } else if (o.what == "cdf") {
        if (csv) out << "x,cdf\n";
        grid([&](double x) {
            double v = airy_cdf(x);
            if (csv) out << x << ',' << v << '\n';
            else rows.push_back({{"x", x}, {"cdf", v}});
        });
    } else if (o.what == "moments") {
        if (o.smax < 0) invalid("--smax must be >= 0");
        auto q = airy_quadrature_moments(o.smax);
        if (csv) out << "s,quadrature,exact\n";
        for (int s = 0; s <= o.smax; ++s) {
            Real ex = s == 0 ? Real(1) : airy_moment(s);
            if (csv) out << s << ',' << q[s] << ',' << S(ex) << '\n';
            else rows.push_back({{"s", s}, {"quadrature", q[s]}, {"exact", S(ex)}});
        }
    } else {
        invalid("--what must be zeros, density, laplace, cdf or moments");
    }
    if (!csv) {
        j["rows"] = rows;
        out << j.dump(2) << '\n';
    }
}

// ---------------------------------------------------------------- verify-all

void cmd_verify_all(const Globals& g, std::ostream& out) {
    struct Line {
        std::string name;
        bool ok;
        std::string detail;
    };
    std::vector<Line> lines;
    auto check = [&](const std::string& name, const std::function<std::string()>& fn) {
        try {
            lines.push_back({name, true, fn()});
        } catch (const Error& e) {
            lines.push_back({name, false, std::string(e.name()) + ": " + e.what()});
        }
    };
    check("recursion-vs-takacs", [] {
        auto mu = mu_excursion_exact(1, 30);
        auto K = takacs_K(30);
        for (int s = 0; s <= 30; ++s)
            if (mu[s] != K[s]) throw MismatchError("mu_" + std::to_string(s) + " != K_" + std::to_string(s));
        return std::string("s <= 30 exact");
    });
    check("zero-mean-shift", [] {
        Real worst(0);
        for (const char* ps : {"0.1", "0.25", "0.75", "1", "1.5", "2.5"}) {
            Real p = Real(rat_from_string(ps));
            auto m = rescaled_moments(Ensemble::excursion, p, 1);
            worst = max(worst, abs(m[1] - canonical_shift(p)));
        }
        if (worst > Real("1e-40")) throw MismatchError("bar M_1 - t(p) = " + worst.str(6));
        return "max |bar M_1 - t| = " + worst.str(3);
    });
    check("recursion-vs-trees", [] {
        Real worst(0);
        for (const char* ps : {"0.25", "0.75", "1", "2"}) {
            auto r = check_mu_equals_tree_sum(8, Real(rat_from_string(ps)), Real("1e-25"));
            check_xy_identity(8, Real(rat_from_string(ps)), Real("1e-25"));
            worst = max(worst, r.max_rel_dev);
        }
        return "max rel dev " + worst.str(3);
    });
    check("dp-vs-brute-force", [] {
        for (auto e : {Ensemble::excursion, Ensemble::bridge})
            for (auto cf : {CostFunction::power_half(Rat(1)), CostFunction::power_one(Rat(2))}) {
                auto t = exact_moment_dp(e, cf, Rat(0), 8, 4);
                auto b = brute_force_moments(e, cf, Rat(0), 8, 4);
                for (int s = 0; s <= 4; ++s)
                    for (int N = 0; N <= 8; ++N)
                        if ((*t.exact)[s][N] != b[s][N]) throw MismatchError("DP differs from enumeration");
            }
        return std::string("N <= 8, s <= 4, exact");
    });
    check("alpha-closed-vs-numeric", [] {
        Real worst(0);
        for (const char* ps : {"0.25", "0.75", "1"}) {
            auto cf = CostFunction::gamma_ratio(Rat(1, 2), rat_from_string(ps));
            Real c = alpha_closed_form(cf).value, n = alpha_numeric(cf, Real("1e-20")).value;
            worst = max(worst, abs(c - n) / abs(c));
        }
        if (worst > Real("1e-8")) throw MismatchError("relative deviation " + worst.str(6));
        return "max rel dev " + worst.str(3);
    });
    check("limit-half", [] {
        auto r = limit_half_moments(3);
        double v2 = r[2].value.to_double(), v3 = r[3].value.to_double();
        if (std::fabs(v2 - 0.610375) > 5e-6 || std::fabs(v3 - 0.266217) > 5e-6)
            throw MismatchError("limit-half values off");
        std::ostringstream os;
        os.precision(7);
        os << "s=2 " << v2 << ", s=3 " << v3;
        return os.str();
    });
    check("sampler-vs-dp", [&g] {
        auto cf = CostFunction::gamma_ratio(Rat(1, 2), Rat(1));
        ExperimentConfig cfg;
        cfg.N = 30;
        cfg.n = 20000;
        cfg.eps = -0.5;
        cfg.rescale_exponent = 1.5;
        cfg.s_max = 3;
        cfg.seed = 11;
        cfg.threads = g.threads;
        auto s = run_experiment(cfg, cf);
        auto t = exact_moment_dp(Ensemble::excursion, cf, Rat(-1, 2), 30, 3);
        std::vector<double> ref(4, 1.0);
        for (int k = 1; k <= 3; ++k) ref[k] = (t.at(k, 30) / pow(Real(30), Real(1.5 * k))).to_double();
        auto z = compare_to_reference(s, ref);
        if (z.max_abs > 4) throw MismatchError("max |z| = " + std::to_string(z.max_abs));
        return "max |z| = " + std::to_string(z.max_abs);
    });
    check("airy-zero", [] {
        Real a1 = airy_zero(1);
        if (abs(a1 - Real("2.3381074105")) > Real("1e-10")) throw MismatchError("a_1 = " + a1.str(12));
        return "a_1 = " + a1.str(12);
    });
    bool all = true;
    for (auto& l : lines) all = all && l.ok;
    if (g.format == "csv") {
        out << "check,status,detail\n";
        for (auto& l : lines) out << l.name << ',' << (l.ok ? "PASS" : "FAIL") << ",\"" << l.detail << "\"\n";
    } else {
        json j = header("verify-all");
        json a = json::array();
        for (auto& l : lines) a.push_back({{"check", l.name}, {"status", l.ok ? "PASS" : "FAIL"}, {"detail", l.detail}});
        j["checks"] = a;
        j["all_passed"] = all;
        out << j.dump(2) << '\n';
    }
    if (!all) throw MismatchError("verify-all: some checks failed");
}

unsigned precision_from_env() {
    const char* v = std::getenv("PAIRY_PRECISION");
    if (!v || !*v) return 0;
    char* end = nullptr;
    long b = std::strtol(v, &end, 10);
    if (*end != '\0' || b <= 0) invalid(std::string("PAIRY_PRECISION must be a positive integer, got '") + v + "'");
    return static_cast<unsigned>(b);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"pairy: moments of p-Airy laws for deformed areas of Dyck paths"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("-o,--output", g.output, "write to this file instead of stdout");
    app.add_option("--precision", g.precision, "working precision in bits (default $PAIRY_PRECISION or 256)");
    app.add_option("--threads", g.threads, "thread cap")->check(CLI::PositiveNumber)->capture_default_str();

    MomentsOpts mo;
    auto* sm = app.add_subcommand("moments", "mu_s, rescaled and shifted moments at fixed p");
    sm->add_option("--p", mo.p, "exponent p")->capture_default_str();
    sm->add_option("--ensemble", mo.ensemble, "excursion | bridge")->capture_default_str();
    sm->add_option("--smax", mo.smax, "largest moment order")->capture_default_str();

    AlphaOpts ao;
    auto* sa = app.add_subcommand("alpha", "non-universal constant alpha of a cost family");
    add_cost_opts(sa, ao.cost);
    sa->add_option("--method", ao.method, "auto | closed | numeric")->capture_default_str();
    sa->add_option("--tol", ao.tol, "target tolerance of the numeric route")->capture_default_str();

    FiniteOpts fo;
    auto* sf = app.add_subcommand("finite-n", "exact finite-N moments of A - eps N by dynamic programming");
    add_cost_opts(sf, fo.cost);
    sf->add_option("--ensemble", fo.ensemble, "excursion | bridge")->capture_default_str();
    sf->add_option("--eps", fo.eps, "centering per step: a number or 'alpha'")->capture_default_str();
    sf->add_option("--mode", fo.mode, "auto | rational | real")->capture_default_str();
    sf->add_option("--nmax", fo.nmax, "largest semilength")->capture_default_str();
    sf->add_option("--smax", fo.smax, "largest moment order")->capture_default_str();

    SampleOpts so;
    auto* ss = app.add_subcommand("sample", "Monte Carlo sampling of the rescaled statistic");
    add_cost_opts(ss, so.cost);
    ss->add_option("--ensemble", so.ensemble, "excursion | bridge")->capture_default_str();
    ss->add_option("--eps", so.eps, "centering: a number, 'alpha' or 'dp-mean'")->capture_default_str();
    ss->add_option("--rescale", so.rescale, "exponent r of N^r, or 'auto' (p + 1/2)")->capture_default_str();
    ss->add_option("--N", so.N, "semilength")->capture_default_str();
    ss->add_option("--n", so.n, "number of samples")->capture_default_str();
    ss->add_option("--seed", so.seed, "seed")->capture_default_str();
    ss->add_option("--bins", so.bins, "histogram bins (0: Freedman-Diaconis)")->capture_default_str();
    ss->add_option("--smax", so.smax, "largest moment order")->capture_default_str();
    ss->add_option("--histogram", so.histogram, "also write the histogram CSV here");
    ss->add_flag("--compare-dp", so.compare_dp, "z-scores against exact DP moments (exit 4 above --z-max)");
    ss->add_option("--z-max", so.z_max, "z-score threshold for --compare-dp")->capture_default_str();
    ss->add_flag("--ks-airy", so.ks_airy, "KS distance to the sqrt(2)-scaled area-Airy law");

    TreeOpts to;
    auto* st = app.add_subcommand("tree-check", "recursion against the plane-tree expansion");
    st->add_option("--p", to.p, "exponent p")->capture_default_str();
    st->add_option("--smax", to.smax, "largest order")->capture_default_str();
    st->add_option("--order", to.order, "order of the Y = X + Y^2 check (default smax)");
    st->add_option("--tol", to.tol, "relative tolerance")->capture_default_str();

    BoundsOpts bo;
    auto* sb = app.add_subcommand("bounds", "growth bounds on mu_s and a Carleman-type fit");
    sb->add_option("--p", bo.p, "exponent p")->capture_default_str();
    sb->add_option("--smax", bo.smax, "largest order")->capture_default_str();

    LimitOpts lo;
    auto* sl = app.add_subcommand("limit-half", "(2 sqrt(pi))^s-scaled shifted moments in the limit p -> 1/2");
    sl->add_option("--smax", lo.smax, "largest order")->capture_default_str();
    sl->add_option("--deltas", lo.deltas, "offsets |p - 1/2| used for extrapolation");

    LogOpts go;
    auto* sg = app.add_subcommand("log-case", "logarithmic cost: tau coefficients and the variance check");
    sg->add_option("--smax", go.smax, "largest order")->capture_default_str();
    sg->add_option("--nmax", go.nmax, "semilength of the DP variance check (0: skip)")->capture_default_str();

    AiryOpts yo;
    auto* sy = app.add_subcommand("airy", "area-Airy reference: zeros, density, Laplace transform, CDF, moments");
    sy->add_option("--what", yo.what, "zeros | density | laplace | cdf | moments")->capture_default_str();
    sy->add_option("--K", yo.K, "number of zeros")->capture_default_str();
    sy->add_option("--smax", yo.smax, "largest moment order")->capture_default_str();
    sy->add_option("--x-min", yo.x_min, "grid start")->capture_default_str();
    sy->add_option("--x-max", yo.x_max, "grid end")->capture_default_str();
    sy->add_option("--points", yo.points, "grid points")->capture_default_str();

    auto* sv = app.add_subcommand("verify-all", "cross-validation suite (recursion, trees, DP, sampler, references)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    std::ofstream file;
    std::ostream* os = &out;
    try {
        unsigned bits = g.precision ? g.precision : precision_from_env();
        if (bits) {
            if (bits < 53 || bits > 1u << 20) invalid("--precision must be between 53 and 1048576 bits");
            set_default_precision(bits);
        }
        if (!g.output.empty()) {
            file.open(g.output);
            if (!file) invalid("cannot open output file '" + g.output + "'");
            os = &file;
        }
        if (sm->parsed()) cmd_moments(mo, g, *os);
        else if (sa->parsed()) cmd_alpha(ao, g, *os);
        else if (sf->parsed()) cmd_finite_n(fo, g, *os);
        else if (ss->parsed()) cmd_sample(so, g, *os);
        else if (st->parsed()) cmd_tree_check(to, g, *os);
        else if (sb->parsed()) cmd_bounds(bo, g, *os);
        else if (sl->parsed()) cmd_limit_half(lo, g, *os);
        else if (sg->parsed()) cmd_log_case(go, g, *os);
        else if (sy->parsed()) cmd_airy(yo, g, *os);
        else if (sv->parsed()) cmd_verify_all(g, *os);
    } catch (const Error& e) {
        os->flush();
        err << "error: " << e.name() << ": " << e.what() << '\n';
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace pairy::cli
