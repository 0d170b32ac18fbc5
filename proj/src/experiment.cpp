#include "alloymsa/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "alloymsa/error.hpp"
#include "alloymsa/genfun.hpp"
#include "alloymsa/initial_scale.hpp"
#include "alloymsa/msa.hpp"
#include "alloymsa/resonance.hpp"
#include "alloymsa/rng.hpp"
#include "alloymsa/wegner.hpp"

namespace alloymsa {

namespace {

constexpr const char* kKindNames[] = {"genfun",          "wegner",   "resonance",
                                      "msa_schedule",    "msa_singularity",
                                      "lifshitz",        "large_disorder",
                                      "localization_decay"};

template <class T>
T param(const Json& p, const char* key, T def) {
    if (!p.contains(key)) return def;
    try {
        return p.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        fail(ErrorKind::schema, std::string("parameter \"") + key + "\" has the wrong type");
    }
}

template <class T>
T param(const Json& p, const char* key) {
    if (!p.contains(key)) fail(ErrorKind::schema, std::string("missing parameter \"") + key + "\"");
    return param<T>(p, key, T{});
}

Interval interval_param(const Json& p, const char* key) {
    const auto v = param<std::vector<double>>(p, key);
    if (v.size() != 2 || !(v[0] <= v[1]))
        fail(ErrorKind::schema, std::string("parameter \"") + key + "\" must be [lo, hi] with lo <= hi");
    return {v[0], v[1]};
}

MSAParameters msa_params(const Json& p) {
    MSAParameters m;
    m.xi = param<double>(p, "xi");
    m.kappa = param<double>(p, "kappa");
    m.beta = param<double>(p, "beta");
    m.q = param<double>(p, "q");
    m.m0 = param<double>(p, "m0");
    m.l0 = param<double>(p, "l0");
    m.zeta_nr = param<double>(p, "zeta_nr", 0.0);
    return m;
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t tag) {
    return trial_seed(seed, 0x9e3779b97f4a7c15ULL + tag);
}

int support_radius(const SingleSitePotential& u) {
    int r = 0;
    for (const auto& e : u.entries()) r = std::max(r, e.k.norm_inf());
    return r;
}

std::string point_cell(const LatticePoint& x) {
    std::string s;
    for (int r = 0; r < x.dim(); ++r) s += (r ? " " : "") + std::to_string(x[r]);
    return s;
}

// numbers that may be infinite go through strings so the JSON stays valid
Json num(double x) {
    if (std::isfinite(x)) return x;
    return format_number(x);
}

struct Context {
    const ExperimentConfig& cfg;
    SingleSitePotential u;
    DisorderModel model;
    Execution ex;
    ReportBundle out;
    Json constants = Json::object();
    Json results = Json::object();

    void contract(const std::string& name, bool ok) { out.contracts[name] = ok; }
};

void common_constants(Context& c) {
    const auto& u = c.u;
    c.constants["omega_plus"] = num(c.model.omega_plus());
    c.constants["bv_norm"] = num(density_bv_norm(c.model));
    c.constants["u_mean"] = u.mean();
    c.constants["u_l1"] = u.l1_norm_bound();
    c.constants["u_negative_part"] = u.negative_part_bound();
    c.constants["C_hat"] = num(tail_constant(u));
    if (u.mean() > 0) c.constants["beta0"] = num(beta0(u));
}

void run_genfun(Context& c) {
    const auto& p = c.cfg.params;
    const LeadingIndexData lead = find_leading_index(c.u);
    c.constants["leading"] = leading_to_json(lead);
    const auto ls = param<std::vector<double>>(p, "ls", {1.0});
    CsvWriter csv({"l", "R_l", "radius", "min_value", "slack", "holds"});
    bool all = true;
    Json per_l = Json::array();
    for (double l : ls) {
        const PositivityReport r = positivity_certificate(c.u, lead, l);
        csv.row(std::vector<double>{l, r.R_l, double(r.radius), r.min_value, r.slack, double(r.holds)});
        c.out.plot_rows.push_back({l, r.min_value});
        per_l.push_back(Json{{"l", l}, {"R_l", r.R_l}, {"worst_x", point_to_json(r.worst_x)}});
        all = all && r.holds;
    }
    c.constants["R_l"] = per_l;
    try {
        c.constants["C_W"] = num(uniform_wegner_constant(c.u, lead));
    } catch (const Error&) {
        c.constants["C_W"] = nullptr;
    }
    c.contract("positivity", all);
    if (c.u.exact_support()) {
        const int rad = param<int>(p, "exactness_radius", 5);
        const int K = rad + support_radius(c.u);
        const Box box(LatticePoint(c.u.dim()), rad);
        double worst = 0;
        for (const auto& rec : lead.derivative_table) {
            const double target = rec.index == lead.leading ? lead.c_u : 0.0;
            for (std::size_t i = 0; i < box.size(); ++i)
                worst = std::max(worst, std::abs(monomial_combination(c.u, rec.index, box.point(i), K) - target));
        }
        c.results["exactness_max_error"] = worst;
        c.contract("combination_exactness", worst <= 1e-10);
    }
    c.out.csv = csv.str();
    c.out.plot_header = {"l", "min_value"};
}

void run_wegner(Context& c) {
    const auto& p = c.cfg.params;
    const LeadingIndexData lead = find_leading_index(c.u);
    c.constants["leading"] = leading_to_json(lead);
    c.constants["C_W"] = num(uniform_wegner_constant(c.u, lead));
    const auto ls = param<std::vector<double>>(p, "ls", {2.0, 4.0, 6.0, 8.0});
    const Interval I = interval_param(p, "interval");
    const int exteriors = param<int>(p, "exteriors", 1);
    if (exteriors < 1) fail(ErrorKind::schema, "exteriors must be positive");
    const double mid = 0.5 * (I.lo + I.hi);
    const std::vector<Interval> parts{I, {I.lo, mid}, {std::nextafter(mid, INFINITY), I.hi}};
    CsvWriter csv({"d", "l", "R_l", "interval_lo", "interval_hi", "trials", "mean", "std_error",
                   "bound", "chain", "bv_norm"});
    bool bound_ok = true, additive = true;
    for (std::size_t li = 0; li < ls.size(); ++li) {
        const double l = ls[li];
        const WegnerBoundReport rep = wegner_bound(c.u, lead, c.model, l, I);
        for (int e = 0; e < exteriors; ++e) {
            const Box reach(LatticePoint(c.u.dim()),
                            std::max<double>(rep.radius, std::floor(l) + support_radius(c.u) + 1));
            const Configuration ext = sample_configuration(c.model, reach, sub_seed(c.cfg.seed, 1000 + e));
            const WegnerSample s = sample_eigenvalue_counts(c.u, lead, c.model, l, parts, ext, c.cfg.trials,
                                                            sub_seed(c.cfg.seed, li * 64 + e), c.ex);
            for (std::size_t t = 0; t < c.cfg.trials; ++t)
                additive = additive && s.counts[0][t] == s.counts[1][t] + s.counts[2][t];
            const MeanError me = s.stats[0];
            bound_ok = bound_ok && me.mean - 3 * me.std_error <= rep.bound;
            csv.row(std::vector<double>{double(c.u.dim()), l, rep.R_l, I.lo, I.hi, double(c.cfg.trials),
                                        me.mean, me.std_error, rep.bound, rep.c_w_chain, rep.bv_norm});
            c.out.plot_rows.push_back({std::log(2 * l + 1), std::log(me.mean),
                                       me.mean > 0 ? me.std_error / me.mean : INFINITY});
        }
    }
    c.contract("bound_above_mean_minus_3sigma", bound_ok);
    c.contract("interval_additivity", additive);
    c.out.csv = csv.str();
    c.out.plot_header = {"log(2l+1)", "log_mean", "rel_error"};
}

void run_resonance(Context& c) {
    const auto& p = c.cfg.params;
    const int d = c.u.dim();
    const LeadingIndexData lead = find_leading_index(c.u);
    c.constants["leading"] = leading_to_json(lead);
    const double l1 = param<double>(p, "l1");
    const double l2 = param<double>(p, "l2", l1);
    const LatticePoint x = p.contains("x") ? point_from_json(p["x"], d) : LatticePoint(d);
    LatticePoint y = x;
    if (p.contains("y")) {
        y = point_from_json(p["y"], d);
    } else {
        y[0] += static_cast<int>(std::floor(4 * l1) + std::floor(4 * l2)) + 2;
    }
    const auto eps = param<std::vector<double>>(p, "eps", {1e-3, 1e-2, 1e-1});
    const auto est = estimate_resonance_probability(c.u, lead, c.model, x, y, l1, l2, eps,
                                                    c.cfg.trials, sub_seed(c.cfg.seed, 0), c.ex);
    CsvWriter csv({"x", "y", "l1", "l2", "eps", "trials", "p_lo", "p_hi", "theory_bound", "delta1", "delta2"});
    bool ok = true;
    Json uniform = Json::array();
    for (const auto& r : est) {
        csv.row({point_cell(x), point_cell(y), format_number(l1), format_number(l2), format_number(r.eps),
                 std::to_string(r.trials), format_number(r.p_lo), format_number(r.p_hi),
                 format_number(r.theory_bound), format_number(r.delta1), format_number(r.delta2)});
        c.out.plot_rows.push_back({r.eps, r.p_hi, r.sigma_hi});
        uniform.push_back(num(r.theory_bound_uniform));
        ok = ok && r.p_hi <= r.theory_bound + 3 * r.sigma_hi;
    }
    if (!est.empty()) {
        c.constants["delta1"] = est[0].delta1;
        c.constants["delta2"] = est[0].delta2;
        c.constants["C1"] = num(est[0].C1);
        c.constants["C2"] = num(est[0].C2);
        c.constants["C_W"] = num(est[0].c_w);
    }
    c.results["theory_bound_uniform"] = uniform;
    c.contract("probability_below_bound", ok);
    const int completions = param<int>(p, "completions", 0);
    if (completions > 0) {
        const Box box(x, l1);
        const Configuration cfg = sample_configuration(c.model, Box(x, 4 * l1), sub_seed(c.cfg.seed, 1));
        const BracketCheck bc = bracket_soundness(c.u, c.model, cfg, box, completions, sub_seed(c.cfg.seed, 2));
        c.results["bracket_max_shift"] = bc.max_shift;
        c.results["bracket_radius"] = bc.radius;
        c.contract("bracket_soundness", bc.violations == 0);
    }
    c.out.csv = csv.str();
    c.out.plot_header = {"eps", "p_hi", "sigma_hi"};
}

void run_msa_schedule(Context& c) {
    const auto& p = c.cfg.params;
    const MSAParameters mp = msa_params(p);
    const LeadingIndexData lead = find_leading_index(c.u);
    const ParameterReport rep = validate_parameters(mp, lead, c.u, c.model);
    const int k_max = param<int>(p, "k_max", 25);
    const ScaleSchedule s = scale_schedule(mp, k_max);
    Json th = Json::object();
    for (const auto& [k, v] : rep.thresholds) th[k] = num(v);
    c.constants["thresholds"] = th;
    c.constants["l_star"] = num(rep.l_star);
    c.constants["l_bar"] = num(rep.l_bar);
    c.constants["gamma"] = rep.gamma;
    c.constants["zeta_nr"] = rep.zeta_nr;
    c.results["parameters_ok"] = rep.ok;
    c.results["violated"] = rep.violated;
    c.results["schedule"] = schedule_to_json(s, rep.l_star);
    CsvWriter csv({"k", "log_l", "l", "m", "m_inf", "l_pow_beta_minus_1"});
    bool above_floor = true, above_inf = true;
    for (std::size_t k = 0; k < s.m.size(); ++k) {
        const double floor_k = std::exp((mp.beta - 1) * s.log_l[k]);
        above_floor = above_floor && s.m[k] > floor_k;
        above_inf = above_inf && s.m[k] >= s.m_inf - 1e-12 * mp.m0;
        csv.row(std::vector<double>{double(k), s.log_l[k], s.l[k], s.m[k], s.m_inf, floor_k});
        c.out.plot_rows.push_back({double(k), s.log_l[k], s.m[k]});
    }
    c.contract("mass_above_scale_floor", above_floor);
    c.contract("mass_above_limit", above_inf);
    c.contract("mass_loss_bounded", s.mass_loss <= (1 - mp.q) * mp.m0 + 1e-9);
    c.out.csv = csv.str();
    c.out.plot_header = {"k", "log_l_k", "m_k"};
}

void run_msa_singularity(Context& c) {
    const auto& p = c.cfg.params;
    const double l = param<double>(p, "l");
    const double m = param<double>(p, "m");
    const Interval I = interval_param(p, "interval");
    const auto points = param<std::size_t>(p, "points", 101);
    const auto energies = energy_grid(I, points);
    const SingularityEstimate est = estimate_singularity_probability(
        c.u, c.model, l, m, energies, c.cfg.trials, sub_seed(c.cfg.seed, 0), c.ex);
    CsvWriter csv({"energy", "p_not_regular"});
    for (std::size_t i = 0; i < energies.size(); ++i) {
        csv.row(std::vector<double>{energies[i], est.per_energy_hi[i]});
        c.out.plot_rows.push_back({energies[i], est.per_energy_hi[i]});
    }
    c.constants["delta"] = est.delta;
    c.results["p_hi"] = est.p_hi;
    c.results["p_lo"] = est.p_lo;
    c.results["sigma_hi"] = est.sigma_hi;
    c.contract("bracket_order", est.p_lo <= est.p_hi);
    c.out.csv = csv.str();
    c.out.plot_header = {"E", "p_not_regular"};
}

void run_lifshitz(Context& c) {
    const auto& p = c.cfg.params;
    LifshitzParameters lp;
    lp.zeta = param<double>(p, "zeta", 1.0);
    lp.xi = param<double>(p, "xi", 1.0);
    lp.beta0 = param<double>(p, "beta0", 0.0);
    lp.epsilon0 = param<double>(p, "epsilon0", 0.0);
    const double b0 = lp.beta0 > 0 ? lp.beta0 : beta0(c.u);
    double l = param<double>(p, "l", 0.0);
    if (l <= 0) {
        const auto range = param<std::vector<double>>(p, "l_range", {15.0, 45.0});
        if (range.size() != 2) fail(ErrorKind::schema, "l_range must be [lo, hi]");
        const auto adm = admissible_lengths(lp.zeta, b0, range[0], range[1]);
        require(!adm.empty(), ErrorKind::parameter, "no admissible length in l_range");
        l = adm.front();
    }
    const LifshitzReport r = lifshitz_probe(c.u, c.model, lp, l, c.cfg.trials, sub_seed(c.cfg.seed, 0), c.ex);
    CsvWriter csv({"l", "zeta", "beta0", "delta", "trials", "p_emp", "chain_bound", "xi_bound", "lambda1_mean"});
    csv.row(std::vector<double>{r.l, r.zeta, r.beta0, r.delta, double(r.trials), r.p_emp, r.chain_bound,
                                r.xi_bound, r.lambda1_mean});
    c.out.plot_rows.push_back({r.l, r.p_emp, r.sigma});
    c.constants["l_tilde"] = r.l_tilde;
    c.constants["n"] = r.n;
    c.constants["closed_form_bound"] = num(r.closed_form_bound);
    c.constants["threshold"] = r.threshold;
    c.results["l"] = r.l;
    c.results["p_emp"] = r.p_emp;
    c.results["chain_bound"] = r.chain_bound;
    c.results["sigma"] = r.sigma;
    c.results["p_small"] = r.p_small;
    c.results["assumption_ok"] = r.assumption_ok;
    c.results["violations"] = r.violations;
    c.contract("probability_below_chain_bound", r.p_emp <= r.chain_bound + 3 * r.sigma);
    c.out.csv = csv.str();
    c.out.plot_header = {"l", "p_emp", "sigma"};
}

void run_large_disorder(Context& c) {
    const auto& p = c.cfg.params;
    const MSAParameters mp = msa_params(p);
    const LeadingIndexData lead = find_leading_index(c.u);
    const LargeDisorderReport r = large_disorder_probe(c.u, lead, c.model, mp);
    CsvWriter csv({"C1_hat", "C1", "C2", "target", "rhs_positive", "rhs_negative", "satisfies_positive",
                   "satisfies_negative", "max_bv_positive", "max_bv_negative"});
    csv.row(std::vector<double>{r.C1_hat, r.C1, r.C2, r.target, r.rhs_positive, r.rhs_negative,
                                double(r.satisfies_positive), double(r.satisfies_negative), r.max_bv_positive,
                                r.max_bv_negative});
    c.constants["C1_hat"] = num(r.C1_hat);
    c.constants["C2"] = num(r.C2);
    if (p.contains("zeta")) {
        const L0Report l0 = eval_l0(c.u, lead, c.model, mp, param<double>(p, "zeta"),
                                    param<double>(p, "eps", 0.5));
        c.constants["l0_bound"] = Json{{"first_term", num(l0.first_term)}, {"l14", num(l0.l14)},
                                       {"l16", num(l0.l16)}, {"l_star", num(l0.l_star)},
                                       {"value", num(l0.value)}, {"not_computed", l0.not_computed}};
    }
    c.out.csv = csv.str();
}

void run_decay(Context& c) {
    const auto& p = c.cfg.params;
    const double l = param<double>(p, "l", 20.0);
    const auto vectors = param<std::size_t>(p, "vectors", 5);
    const double rate_max = param<double>(p, "rate_max", -0.2);
    const double r2_min = param<double>(p, "r2_min", 0.8);
    const double min_fraction = param<double>(p, "min_fraction", 0.9);
    const DecayStudy s = localization_decay_study(c.u, c.model, l, vectors, c.cfg.trials,
                                                  sub_seed(c.cfg.seed, 0), rate_max, r2_min, c.ex);
    CsvWriter csv({"trial", "vector", "rate", "r2"});
    for (std::size_t t = 0; t < s.trials; ++t)
        for (std::size_t j = 0; j < s.vectors; ++j)
            csv.row(std::vector<double>{double(t), double(j), s.rates[t * s.vectors + j], s.r2[t * s.vectors + j]});
    for (std::size_t i = 0; i < s.example.shells; ++i)
        c.out.plot_rows.push_back({s.example.shell_radius[i], s.example.shell_log_max[i]});
    c.results["pass_fraction"] = s.pass_fraction;
    c.results["fit_failures"] = s.fit_failures;
    c.contract("decay_fraction", s.pass_fraction >= min_fraction);
    c.out.csv = csv.str();
    c.out.plot_header = {"dist_inf", "log_abs_psi"};
}

}  // namespace

const char* to_string(ExperimentKind k) { return kKindNames[static_cast<int>(k)]; }

ExperimentKind kind_from_string(const std::string& s) {
    for (int i = 0; i < 8; ++i)
        if (s == kKindNames[i]) return static_cast<ExperimentKind>(i);
    fail(ErrorKind::schema, "unknown experiment kind \"" + s + "\"");
}

ExperimentConfig parse_config(const Json& j) {
    if (!j.is_object()) fail(ErrorKind::schema, "config must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (key != "kind" && key != "model" && key != "params" && key != "seed" && key != "trials" &&
            key != "output")
            fail(ErrorKind::schema, "unknown config key \"" + key + "\"");
    ExperimentConfig cfg;
    cfg.kind = kind_from_string(param<std::string>(j, "kind"));
    const Json model = param<Json>(j, "model");
    cfg.d = param<int>(model, "d");
    cfg.potential = param<Json>(model, "potential");
    cfg.density = param<Json>(model, "density");
    const SingleSitePotential u = potential_from_json(cfg.potential);
    if (u.dim() != cfg.d) fail(ErrorKind::schema, "model d differs from the potential dimension");
    density_from_json(cfg.density);
    cfg.params = param<Json>(j, "params", Json::object());
    if (!cfg.params.is_object()) fail(ErrorKind::schema, "params must be an object");
    cfg.seed = param<std::uint64_t>(j, "seed", 1);
    cfg.trials = param<std::size_t>(j, "trials", kDefaultTrials);
    if (cfg.trials == 0) fail(ErrorKind::schema, "trials must be positive");
    cfg.output = param<std::string>(j, "output", "out");
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorKind::schema, "cannot read config " + path.string());
    Json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::schema, std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

Json config_to_json(const ExperimentConfig& cfg, bool with_output) {
    Json j{{"kind", to_string(cfg.kind)},
           {"model", {{"d", cfg.d}, {"potential", cfg.potential}, {"density", cfg.density}}},
           {"params", cfg.params},
           {"seed", cfg.seed},
           {"trials", cfg.trials}};
    if (with_output) j["output"] = cfg.output;
    return j;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash(const ExperimentConfig& cfg) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(config_to_json(cfg, false).dump())));
    return buf;
}

const std::map<std::string, std::string>& module_versions() {
    static const std::map<std::string, std::string> v{
        {"model_core", "1.0.0"}, {"genfun", "1.0.0"}, {"spectral", "1.0.0"},      {"wegner", "1.0.0"},
        {"resonance", "1.0.0"},  {"msa", "1.0.0"},    {"initial_scale", "1.0.0"}, {"cli", "1.0.0"}};
    return v;
}

ReportBundle run_experiment(const ExperimentConfig& cfg, Execution ex) {
    Context c{cfg, potential_from_json(cfg.potential), density_from_json(cfg.density), ex, {}, {}, {}};
    c.out.kind = cfg.kind;
    common_constants(c);
    switch (cfg.kind) {
        case ExperimentKind::genfun: run_genfun(c); break;
        case ExperimentKind::wegner: run_wegner(c); break;
        case ExperimentKind::resonance: run_resonance(c); break;
        case ExperimentKind::msa_schedule: run_msa_schedule(c); break;
        case ExperimentKind::msa_singularity: run_msa_singularity(c); break;
        case ExperimentKind::lifshitz: run_lifshitz(c); break;
        case ExperimentKind::large_disorder: run_large_disorder(c); break;
        case ExperimentKind::localization_decay: run_decay(c); break;
    }
    Json contracts = Json::object();
    for (const auto& [k, v] : c.out.contracts) {
        contracts[k] = v;
        c.out.pass = c.out.pass && v;
    }
    c.out.summary = Json{{"kind", to_string(cfg.kind)},
                         {"config_hash", config_hash(cfg)},
                         {"config", config_to_json(cfg, false)},
                         {"versions", module_versions()},
                         {"constants", c.constants},
                         {"results", c.results},
                         {"contracts", contracts},
                         {"pass", c.out.pass}};
    return std::move(c.out);
}

std::string emit_plotdata(const ReportBundle& report, ExperimentKind kind) {
    require(report.kind == kind, ErrorKind::parameter, "report kind differs from the requested kind");
    require(!report.plot_header.empty(), ErrorKind::parameter,
            std::string("no plot data defined for kind ") + to_string(kind));
    std::ostringstream s;
    s << "#";
    for (const auto& h : report.plot_header) s << " " << h;
    s << "\n";
    for (const auto& row : report.plot_rows) {
        for (std::size_t i = 0; i < row.size(); ++i) s << (i ? " " : "") << format_number(row[i]);
        s << "\n";
    }
    return s.str();
}

void write_report(const ReportBundle& report, const std::filesystem::path& dir) {
    const std::string k = to_string(report.kind);
    write_text(dir / (k + ".csv"), report.csv);
    write_text(dir / (k + "_summary.json"), report.summary.dump(2) + "\n");
    if (!report.plot_header.empty()) write_text(dir / (k + "_plot.dat"), emit_plotdata(report, report.kind));
}

DecayStudy localization_decay_study(const SingleSitePotential& u, const DisorderModel& model,
                                    double l, std::size_t vectors, std::size_t trials,
                                    std::uint64_t seed, double rate_max, double r2_min,
                                    Execution ex) {
    const Box box(LatticePoint(u.dim()), l);
    require(vectors >= 1 && vectors <= box.size(), ErrorKind::parameter,
            "vector count must lie between 1 and the box size");
    const Box reach(box.center(), l + support_radius(u) + 1);
    struct TrialFits {
        std::vector<double> rates, r2;
        DecayFit first;
    };
    auto per = run_trials<TrialFits>(
        trials,
        [&](std::size_t t) {
            Rng rng(trial_seed(seed, t));
            const Configuration cfg = sample_configuration(model, reach, rng);
            const SpectrumResult spec =
                eigensolve(restrict_hamiltonian(u, cfg, box, BoundaryKind::dirichlet_truncation), true);
            TrialFits tf;
            std::vector<double> psi(box.size());
            for (std::size_t j = 0; j < vectors; ++j) {
                for (std::size_t i = 0; i < box.size(); ++i) psi[i] = (*spec.eigenvectors)(i, j);
                try {
                    DecayFit f = decay_fit(box, psi);
                    tf.rates.push_back(f.rate);
                    tf.r2.push_back(f.r2);
                    if (j == 0) tf.first = std::move(f);
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::fit) throw;
                    tf.rates.push_back(NAN);
                    tf.r2.push_back(NAN);
                }
            }
            return tf;
        },
        ex);
    DecayStudy s;
    s.trials = trials;
    s.vectors = vectors;
    s.rate_max = rate_max;
    s.r2_min = r2_min;
    std::size_t passed = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        bool ok = true;
        for (std::size_t j = 0; j < vectors; ++j) {
            const double r = per[t].rates[j], q = per[t].r2[j];
            if (std::isnan(r)) ++s.fit_failures;
            ok = ok && r <= rate_max && q >= r2_min;  // nan compares false
            s.rates.push_back(r);
            s.r2.push_back(q);
        }
        s.trial_pass.push_back(ok);
        passed += ok;
    }
    s.pass_fraction = trials ? static_cast<double>(passed) / trials : 0.0;
    if (trials) s.example = per[0].first;
    return s;
}

}  // namespace alloymsa
