#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include <CLI11.hpp>

#include "borelkit/config.hpp"

using namespace borelkit;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kBadInput = 2;

struct Options {
    std::string config;
    std::string out = "borelkit_out";
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::optional<double> tol;
};

/// Output directory with atomic file writes and a manifest of what was produced.
class Output {
public:
    Output(std::string command, const Options& o, const RunConfig& rc) : command_(std::move(command)), dir_(o.out) {
        fs::create_directories(dir_);
        manifest_ = {{"command", command_},
                     {"config", fs::path(o.config).filename().string()},
                     {"config_hash", config_hash(rc.doc)},
                     {"seed", rc.seed},
                     {"tol", rc.tol},
                     {"version", kVersion},
                     {"outputs", json::array()}};
    }

    void write(const std::string& name, const std::string& text) {
        fs::path target = dir_ / name;
        fs::path tmp = dir_ / ("." + name + ".tmp" + std::to_string(::getpid()));
        {
            std::ofstream os(tmp, std::ios::binary);
            if (!os) throw std::runtime_error("cannot write " + tmp.string());
            os << text;
            os.flush();
            if (!os) throw std::runtime_error("write failed for " + tmp.string());
        }
        fs::rename(tmp, target);
        manifest_["outputs"].push_back(name);
    }

    void finish(bool pass) {
        manifest_["status"] = pass ? "pass" : "violation";
        write("manifest.json", manifest_.dump(2) + "\n");
    }

private:
    std::string command_;
    fs::path dir_;
    json manifest_;
};

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

RunConfig load(const Options& o) {
    RunConfig rc = load_config(o.config);
    if (o.seed) rc.seed = *o.seed;
    if (o.workers) rc.workers = *o.workers;
    if (o.tol) {
        if (!(*o.tol > 0.0)) throw ConfigError("--tol must be positive");
        rc.tol = *o.tol;
    }
    return rc;
}

double get(const json& j, const std::string& key, double dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_number()) throw ConfigError(key + ": expected a number");
    return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& key, int dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_number_integer()) throw ConfigError(key + ": expected an integer");
    return j.at(key).get<int>();
}

std::vector<cplx> complex_list(const json& j, const std::string& where) {
    std::vector<cplx> out;
    if (!j.is_array()) return {parse_complex(j, where)};
    for (const auto& x : j) out.push_back(parse_complex(x, where));
    return out;
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
    std::vector<std::string> out;
    if (!j.is_array()) throw ConfigError(where + ": expected a list of strings");
    for (const auto& x : j) {
        if (!x.is_string()) throw ConfigError(where + ": expected a list of strings");
        out.push_back(x.get<std::string>());
    }
    return out;
}

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (const char* a : keys) ok = ok || k == a;
        if (!ok) throw ConfigError(where + ": unknown key '" + k + "'");
    }
}

// validate

int cmd_validate(const Options& o) {
    RunConfig rc = load(o);
    json list = json::array();
    auto collect = [&](const std::string& block, const ValidationReport& r) {
        for (const auto& v : r.violations)
            list.push_back({{"block", block}, {"condition", v.condition}, {"indices", v.indices}, {"message", v.message}});
    };
    int checked = 0;
    if (rc.strips) collect("strips", validate_strip_family(*rc.strips)), ++checked;
    if (rc.covering) collect("covering", validate_good_covering(*rc.covering)), ++checked;
    if (rc.problem1) collect("problem1", validate_spec1(*rc.problem1)), ++checked;
    if (rc.problem2) collect("problem2", validate_spec2(*rc.problem2)), ++checked;
    if (rc.strips && rc.covering && rc.strips->n != rc.covering->n)
        list.push_back({{"block", "covering"}, {"condition", "n"}, {"indices", json::array()},
                        {"message", "strips and covering disagree on n"}});
    json report = {{"checked_blocks", checked}, {"violations", list}};
    if (!list.empty()) std::cerr << report.dump() << "\n";
    Output out("validate", o, rc);
    out.write("validate.json", report.dump(2) + "\n");
    out.finish(list.empty());
    std::cout << "validate: " << checked << " blocks, " << list.size() << " violations\n";
    return list.empty() ? kOk : kViolation;
}

// recurse

struct GridSetup {
    CoeffTable table;
    std::vector<cplx> nodes;
    DomainTag tag;
};

DomainTag tag_for(NormKind k) {
    switch (k) {
        case NormKind::SED: return DomainTag::StripH;
        case NormKind::SEG: return DomainTag::StripJ;
        case NormKind::EG_RH: return DomainTag::LShapeRH;
        case NormKind::SEG_RJ: return DomainTag::LShapeRJ;
        case NormKind::EG: break;
    }
    throw ConfigError("the EG norm lives on a sector disc; use sed, seg, eg_rh or seg_rj");
}

/// Recursion on a grid over strip k (or its L-shape) with the requested initial data.
GridSetup run_recursion(const RunConfig& rc, const json& j, DomainTag tag) {
    const ProblemSpec1 spec = rc.problem1 ? *rc.problem1 : desk_theorem1_config().spec;
    const StripFamily strips = rc.strips ? *rc.strips : desk_theorem1_config().strips;
    auto vs = validate_spec1(spec);
    if (!vs.ok()) throw DomainError("problem1 invalid: " + vs.violations[0].message);
    int k = get_int(j, "strip", 0);
    if (std::abs(k) > strips.n) throw ConfigError("strip index outside -n..n");
    const json g = j.contains("grid") ? j.at("grid") : json::object();
    double re_min = get(g, "re_min", -4.0);
    int n_re = get_int(g, "n_re", 9), n_im = get_int(g, "n_im", 5);
    double upsilon = get(g, "upsilon", -0.5);
    std::vector<cplx> nodes;
    bool use_j = tag == DomainTag::StripJ || tag == DomainTag::LShapeRJ;
    const Strip& s = use_j ? strips.j(k) : strips.h(k);
    if (tag == DomainTag::StripH || tag == DomainTag::StripJ)
        nodes = strip_grid(s, re_min, n_re, n_im);
    else
        nodes = lshape_grid(make_lshape(s, upsilon), re_min, n_re, n_im);
    std::vector<std::string> kinds = j.contains("init") ? string_list(j.at("init"), "init")
                                                         : std::vector<std::string>(spec.S, "worked");
    if (static_cast<int>(kinds.size()) != spec.S) throw ConfigError("init: need one kind per S");
    double a = get(j, "a", 2.0);
    std::vector<GridFunction> init;
    for (const auto& kind : kinds) init.push_back(GridFunction::sample(tag, nodes, make_init(kind, a)));
    cplx eps = j.contains("eps") ? parse_complex(j.at("eps"), "eps") : cplx(0.1, 0.0);
    int beta_max = get_int(j, "beta_max", 16);
    return {recurse_w(spec, init, eps, beta_max, rc.effective_workers()), nodes, tag};
}

int cmd_recurse(const Options& o) {
    RunConfig rc = load(o);
    const json& j = rc.block("recurse");
    reject_unknown(j, {"eps", "beta_max", "strip", "domain", "init", "a", "grid"}, "recurse");
    DomainTag tag = j.contains("domain") ? domain_tag_from_string(j.at("domain").get<std::string>()) : DomainTag::StripH;
    auto g = run_recursion(rc, j, tag);
    std::ostringstream os;
    write_coeff_table(os, g.table);
    Output out("recurse", o, rc);
    out.write("coeffs.txt", os.str());
    out.finish(true);
    std::cout << "recurse: beta_max " << g.table.beta_max() << " on " << g.nodes.size() << " nodes ("
              << to_string(tag) << ")\n";
    return kOk;
}

// laplace

int cmd_laplace(const Options& o) {
    RunConfig rc = load(o);
    const json& j = rc.block("laplace");
    reject_unknown(j, {"eps", "t", "z", "k", "direction", "A", "beta_max", "init", "a"}, "laplace");
    Theorem1Config t1 = theorem1_config(rc);
    if (j.contains("init")) t1.init = string_list(j.at("init"), "laplace.init");
    if (static_cast<int>(t1.init.size()) != t1.spec.S) throw ConfigError("laplace.init: need one kind per S");
    t1.a = get(j, "a", t1.a);
    t1.beta_max = get_int(j, "beta_max", t1.beta_max);
    cplx z = j.contains("z") ? parse_complex(j.at("z"), "laplace.z") : t1.z;
    std::vector<cplx> eps = j.contains("eps") ? complex_list(j.at("eps"), "laplace.eps")
                                              : geometric_ladder(t1.ladder.eps_max, t1.ladder.n, t1.ladder.ratio,
                                                                 t1.covering.e_hj(0).bisector());
    std::vector<cplx> ts = j.contains("t") ? complex_list(j.at("t"), "laplace.t") : std::vector<cplx>{t1.t};

    PathSpec path;
    std::string path_desc;
    if (j.contains("direction")) {
        path.pieces.push_back(RadialHalfline{get(j, "direction", 0.0), 0.0});
        path_desc = "ray " + num(get(j, "direction", 0.0));
    } else {
        cplx A;
        if (j.contains("A")) {
            A = parse_complex(j.at("A"), "laplace.A");
        } else {
            int k = get_int(j, "k", 0);
            if (std::abs(k) > t1.strips.n) throw ConfigError("laplace.k outside -n..n");
            double arg_t = std::arg(ts[0]);
            BoundedSector t_sector{arg_t - 0.01, arg_t + 0.01, std::abs(ts[0])};
            A = choose_Ak(t1.strips.h(k), t1.covering.e_hj(k), t_sector, t1.decay_eta, t1.min_abs_re, t1.max_abs_re);
        }
        path = build_path_Pk(A);
        path_desc = "P_k corner " + format_complex(A);
    }
    std::vector<BorelFn> init;
    for (const auto& k : t1.init) init.push_back(make_init(k, t1.a));

    struct Job {
        cplx eps, t;
        LaplaceResult r;
        std::string error;
    };
    std::vector<Job> jobs;
    for (cplx t : ts)
        for (cplx e : eps) jobs.push_back({e, t, {}, {}});
    parallel_for(jobs.size(), rc.effective_workers(), [&](std::size_t i) {
        try {
            auto w = make_w_evaluator(t1.spec, init, jobs[i].eps, t1.beta_max, z);
            jobs[i].r = laplace_eval(w, path, jobs[i].eps, jobs[i].t, t1.laplace);
        } catch (const std::exception& ex) {
            jobs[i].error = ex.what();
        }
    });
    std::ostringstream os;
    os << "job,re_eps,im_eps,re_t,im_t,re_value,im_value,log_scale,error\n";
    int failed = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& jb = jobs[i];
        if (!jb.error.empty()) {
            ++failed;
            std::cerr << "laplace: job " << i << " rejected: " << jb.error << "\n";
            continue;
        }
        os << i << ',' << num(jb.eps.real()) << ',' << num(jb.eps.imag()) << ',' << num(jb.t.real()) << ','
           << num(jb.t.imag()) << ',' << num(jb.r.value.m.real()) << ',' << num(jb.r.value.m.imag()) << ','
           << num(jb.r.value.e) << ',' << num(jb.r.error) << '\n';
    }
    Output out("laplace", o, rc);
    out.write("laplace.csv", os.str());
    out.finish(failed == 0);
    std::cout << "laplace: " << jobs.size() - failed << " of " << jobs.size() << " jobs on " << path_desc << "\n";
    return failed == 0 ? kOk : kViolation;
}

// classify

int cmd_classify(const Options& o) {
    RunConfig rc = load(o);
    const json& j = rc.block("classify");
    reject_unknown(j, {"input", "mode", "flatness", "gevrey", "expect"}, "classify");
    if (!j.contains("input")) throw ConfigError("classify.input: path to a sample CSV is required");
    fs::path input = j.at("input").get<std::string>();
    if (input.is_relative()) input = rc.base_dir / input;
    std::ifstream is(input);
    if (!is) throw ConfigError("cannot open sample file " + input.string());
    SectorSample s = read_sample_csv(is);
    std::string mode = j.value("mode", "flatness");
    std::string result, text;
    json report = {{"input", input.filename().string()}, {"points", s.eps.size()}, {"mode", mode}};
    if (mode == "flatness") {
        auto fit = flatness_classify(s, flatness_options(j.contains("flatness") ? j.at("flatness") : json()));
        result = to_string(fit.cls);
        report.update({{"class", result}, {"K", fit.K}, {"M", fit.M}, {"L", fit.L}, {"coef", fit.coef},
                       {"se", fit.se}, {"used", fit.used}, {"clipped", fit.clipped}, {"diagnostic", fit.diagnostic}});
        text = describe(fit);
    } else if (mode == "gevrey") {
        const json g = j.contains("gevrey") ? j.at("gevrey") : json::object();
        reject_unknown(g, {"K", "level", "N_max", "max_spread", "max_drift"}, "classify.gevrey");
        auto ex = extract_coeffs(s, get_int(g, "K", 12), get(g, "max_spread", 1e-2));
        std::string lv = g.value("level", "1");
        GevreyLevel level = lv == "1" ? GevreyLevel::One : lv == "1+" ? GevreyLevel::OnePlus
                                                                      : throw ConfigError("classify.gevrey.level: 1 or 1+");
        auto fit = gevrey_check(s, ex.a, level, get_int(g, "N_max", -1), get(g, "max_drift", 0.2));
        result = to_string(fit.cls);
        json coeffs = json::array();
        for (cplx a : ex.a) coeffs.push_back(format_complex(a));
        report.update({{"class", result}, {"passes", fit.passes}, {"C", fit.C}, {"M", fit.M}, {"drift", fit.drift},
                       {"coefficients", coeffs}, {"diagnostic", fit.diagnostic}});
        text = describe(fit);
    } else {
        throw ConfigError("classify.mode: flatness or gevrey");
    }
    bool pass = true;
    if (j.contains("expect")) {
        pass = j.at("expect").get<std::string>() == result;
        report["expect"] = j.at("expect");
    }
    Output out("classify", o, rc);
    out.write("classify.json", report.dump(2) + "\n");
    out.write("classify.txt", text + "\n");
    out.finish(pass);
    std::cout << result << "\n";
    return pass ? kOk : kViolation;
}

// bfi

int cmd_bfi(const Options& o) {
    RunConfig rc = load(o);
    BfiCase c = bfi_config(rc);
    double limit = get(rc.block("bfi"), "max_residual", 1e-8);
    auto rep = bfi_residuals(c, rc.effective_workers());
    std::ostringstream os;
    os << "re_s,im_s,re_h_s,im_h_s,re_h_s1,im_h_s1,residual\n";
    for (const auto& r : rep.rows)
        os << num(r.s.real()) << ',' << num(r.s.imag()) << ',' << num(r.h_s.real()) << ',' << num(r.h_s.imag()) << ','
           << num(r.h_s1.real()) << ',' << num(r.h_s1.imag()) << ',' << num(r.residual) << '\n';
    bool pass = rep.max_residual < limit;
    Output out("bfi", o, rc);
    out.write("bfi.csv", os.str());
    out.write("bfi_report.txt", describe(rep) + "\nmax residual " + num(rep.max_residual) + (pass ? " ok" : " exceeds ") +
                                    (pass ? "" : num(limit)) + "\n");
    out.finish(pass);
    std::cout << "bfi: max residual " << num(rep.max_residual) << "\n";
    return pass ? kOk : kViolation;
}

// theorem1 / theorem2

int cmd_theorem1(const Options& o) {
    RunConfig rc = load(o);
    auto rep = run_theorem1_desk(theorem1_config(rc));
    Output out("theorem1", o, rc);
    std::ostringstream pairs;
    pairs << "pair,kind,arg_eps,expected,class,K,M,L,stable,pass\n";
    for (const auto& p : rep.pairs) {
        pairs << p.name << ',' << p.kind << ',' << num(p.arg_eps) << ',' << to_string(p.expected) << ','
              << to_string(p.fit.cls) << ',' << num(p.fit.K) << ',' << num(p.fit.M) << ',' << num(p.fit.L) << ','
              << (p.stable ? 1 : 0) << ',' << (p.pass ? 1 : 0) << '\n';
        std::ostringstream smp;
        write_sample_csv(smp, p.sample);
        std::string file = "sample_" + p.name + ".csv";
        for (char& ch : file)
            if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '.' && ch != '_' && ch != '-') ch = '_';
        out.write(file, smp.str());
    }
    std::ostringstream sectors;
    sectors << "sector,re_eps,im_eps,re_value,im_value,log_scale,error\n";
    for (const auto& s : rep.sectors)
        sectors << s.sector << ',' << num(s.eps.real()) << ',' << num(s.eps.imag()) << ',' << num(s.u.m.real()) << ','
                << num(s.u.m.imag()) << ',' << num(s.u.e) << ',' << num(s.error) << '\n';
    out.write("pairs.csv", pairs.str());
    out.write("sectors.csv", sectors.str());
    out.write("theorem1_report.txt", describe(rep) + "\n");
    out.finish(rep.all_pass);
    std::cout << "theorem1: " << (rep.all_pass ? "pass" : "fail") << "\n";
    if (!rep.all_pass) std::cerr << rep.diagnostic << "\n";
    return rep.all_pass ? kOk : kViolation;
}

int cmd_theorem2(const Options& o) {
    RunConfig rc = load(o);
    auto rep = run_theorem2_desk(theorem2_config(rc));
    std::ostringstream os;
    os << "term,d,l1,step,rel_error,observed_order,pass\n";
    for (const auto& c : rep.checks)
        for (std::size_t i = 0; i < c.steps.size(); ++i)
            os << c.term << ',' << c.d << ',' << c.l1 << ',' << num(c.steps[i]) << ',' << num(c.rel_errors[i]) << ','
               << num(c.observed_order) << ',' << (c.pass ? 1 : 0) << '\n';
    Output out("theorem2", o, rc);
    out.write("identity.csv", os.str());
    out.write("theorem2_report.txt", describe(rep) + "\n");
    out.finish(rep.all_pass);
    std::cout << "theorem2: " << (rep.all_pass ? "pass" : "fail") << "\n";
    if (!rep.all_pass) std::cerr << rep.diagnostic << "\n";
    return rep.all_pass ? kOk : kViolation;
}

// norms

int cmd_norms(const Options& o) {
    RunConfig rc = load(o);
    const json& j = rc.block("norms");
    reject_unknown(j, {"eps", "beta_max", "strip", "init", "a", "grid", "kinds", "params", "contraction"}, "norms");
    const ProblemSpec1 spec = rc.problem1 ? *rc.problem1 : desk_theorem1_config().spec;
    const json pj = j.contains("params") ? j.at("params") : json::object();
    reject_unknown(pj, {"sigma1", "sigma2", "sigma3", "varsigma2", "varsigma3", "delta", "delta1", "M"}, "norms.params");
    NormParams p;
    p.sigma1 = get(pj, "sigma1", p.sigma1);
    p.sigma2 = get(pj, "sigma2", p.sigma2);
    p.sigma3 = get(pj, "sigma3", p.sigma3);
    p.varsigma2 = get(pj, "varsigma2", p.varsigma2);
    p.varsigma3 = get(pj, "varsigma3", p.varsigma3);
    p.delta = get(pj, "delta", p.delta);
    p.delta1 = get(pj, "delta1", p.delta1);
    p.eps = j.contains("eps") ? parse_complex(j.at("eps"), "norms.eps") : cplx(0.1, 0.0);
    p.w = WeightSeq(spec.b, get(pj, "M", -1.0));

    std::vector<std::string> kinds = j.contains("kinds") ? string_list(j.at("kinds"), "norms.kinds")
                                                         : std::vector<std::string>{"sed"};
    json rj = j;
    rj.erase("kinds");
    rj.erase("params");
    rj.erase("contraction");
    std::ostringstream norms;
    norms << "kind,domain,value,log_value,remainder,divergent\n";
    std::vector<cplx> sed_nodes;
    for (const auto& name : kinds) {
        NormKind kind = norm_kind_from_string(name);
        auto g = run_recursion(rc, rj, tag_for(kind));
        if (kind == NormKind::SED) sed_nodes = g.nodes;
        auto sn = series_norm(g.table, kind, p);
        norms << to_string(kind) << ',' << to_string(g.tag) << ',' << num(sn.value) << ',' << num(sn.log_value) << ','
              << num(sn.remainder) << ',' << (sn.divergent ? 1 : 0) << '\n';
    }

    bool pass = true;
    std::ostringstream ratios;
    json summary = json::object();
    if (j.contains("contraction")) {
        const json& cj = j.at("contraction");
        reject_unknown(cj, {"trials", "R", "target", "beta_max"}, "norms.contraction");
        ContractionOptions co;
        co.seed = rc.seed;
        co.beta_max = get_int(cj, "beta_max", co.beta_max);
        co.nodes = sed_nodes;
        int trials = get_int(cj, "trials", 50);
        double target = get(cj, "target", 0.5);
        auto cr = contraction_check(spec, p, p.eps, get(cj, "R", 1.0), trials, co);
        ratios << "trial,ratio\n";
        for (std::size_t i = 0; i < cr.ratios.size(); ++i) ratios << i << ',' << num(cr.ratios[i]) << '\n';
        pass = !cr.divergent && cr.max_ratio <= target;
        summary = {{"trials", cr.trials}, {"max_ratio", cr.max_ratio}, {"target", target}, {"divergent", cr.divergent}};
        std::cout << "norms: contraction max ratio " << num(cr.max_ratio) << " over " << cr.trials << " trials\n";
    }
    Output out("norms", o, rc);
    out.write("norms.csv", norms.str());
    if (!summary.empty()) {
        out.write("contraction.csv", ratios.str());
        out.write("contraction.json", summary.dump(2) + "\n");
    }
    out.finish(pass);
    return pass ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"borelkit: Borel-Laplace toolkit for singularly perturbed Cauchy problems"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    Options o;
    struct Cmd {
        const char* name;
        const char* help;
        int (*fn)(const Options&);
    };
    const Cmd cmds[] = {
        {"validate", "check strip, covering and problem blocks", cmd_validate},
        {"recurse", "coefficient recursion on a strip grid", cmd_recurse},
        {"laplace", "Laplace transforms along a path for a list of eps and t", cmd_laplace},
        {"classify", "flatness or Gevrey classification of a sample CSV", cmd_classify},
        {"bfi", "difference equation solved by a Borel-Fourier integral", cmd_bfi},
        {"theorem1", "flatness of neighbouring differences for the first problem", cmd_theorem1},
        {"theorem2", "operator identity for the second problem", cmd_theorem2},
        {"norms", "series norms and contraction check", cmd_norms},
    };
    std::vector<std::pair<CLI::App*, int (*)(const Options&)>> subs;
    for (const auto& c : cmds) {
        CLI::App* s = app.add_subcommand(c.name, c.help);
        s->add_option("--config,-c", o.config, "JSON configuration file")->required();
        s->add_option("--out,-o", o.out, "output directory")->capture_default_str();
        s->add_option("--seed", o.seed, "override the configured seed");
        s->add_option("--workers", o.workers, "worker threads (0 = machine parallelism)");
        s->add_option("--tol", o.tol, "relative quadrature tolerance");
        subs.emplace_back(s, c.fn);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kBadInput;
    }
    for (auto& [s, fn] : subs) {
        if (!s->parsed()) continue;
        try {
            return fn(o);
        } catch (const ConfigError& e) {
            std::cerr << "borelkit " << s->get_name() << ": " << e.what() << "\n";
            return kBadInput;
        } catch (const nlohmann::json::exception& e) {
            std::cerr << "borelkit " << s->get_name() << ": bad configuration value: " << e.what() << "\n";
            return kBadInput;
        } catch (const DomainError& e) {
            std::cerr << "borelkit " << s->get_name() << ": " << e.what() << "\n";
            return kBadInput;
        } catch (const std::exception& e) {
            std::cerr << "borelkit " << s->get_name() << ": " << e.what() << "\n";
            return kBadInput;
        }
    }
    return kBadInput;
}
