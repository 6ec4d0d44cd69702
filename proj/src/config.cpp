#include "borelkit/config.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace borelkit {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) throw ConfigError(where + ": unknown key '" + k + "'");
}

double get_num(const json& j, const std::string& key, double dflt, const std::string& where) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& key, int dflt, const std::string& where) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
    return j.at(key).get<int>();
}

bool get_bool(const json& j, const std::string& key, bool dflt, const std::string& where) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_boolean()) throw ConfigError(where + "." + key + ": expected true or false");
    return j.at(key).get<bool>();
}

std::vector<cplx> get_complex_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected a list");
    std::vector<cplx> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_complex(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<std::string> get_string_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected a list of strings");
    std::vector<std::string> out;
    for (const auto& x : j) {
        if (!x.is_string()) throw ConfigError(where + ": expected a list of strings");
        out.push_back(x.get<std::string>());
    }
    return out;
}

std::vector<int> get_triple(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) throw ConfigError(where + ": expected three integers");
    std::vector<int> out;
    for (const auto& x : j) {
        if (!x.is_number_integer() || x.get<int>() < 0) throw ConfigError(where + ": expected nonnegative integers");
        out.push_back(x.get<int>());
    }
    return out;
}

std::vector<cplx> parse_poly(const json& j, const std::string& where) {
    if (j.contains("P") && j.contains("P_roots")) throw ConfigError(where + ": give either P or P_roots");
    if (j.contains("P")) return get_complex_list(j.at("P"), where + ".P");
    if (j.contains("P_roots")) return poly_from_roots(get_complex_list(j.at("P_roots"), where + ".P_roots"));
    return {1.0};
}

Strip parse_strip(const json& j, StripKind kind, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(where + ": expected [im_lo, im_hi]");
    return {j[0].get<double>(), j[1].get<double>(), kind};
}

BoundedSector parse_sector(const json& j, const std::string& where) {
    if (!j.is_array() || (j.size() != 2 && j.size() != 3)) throw ConfigError(where + ": expected [angle_lo, angle_hi, radius]");
    for (const auto& x : j)
        if (!x.is_number()) throw ConfigError(where + ": expected numbers");
    return {j[0].get<double>(), j[1].get<double>(), j.size() == 3 ? j[2].get<double>() : 1.0};
}

StripFamily parse_strips(const json& j) {
    const std::string w = "strips";
    if (j.contains("worked")) {
        check_keys(j, {"worked"}, w);
        const json& p = j.at("worked");
        check_keys(p, {"n", "eta", "eta1"}, w + ".worked");
        return worked_strip_family(get_int(p, "n", 1, w), get_num(p, "eta", 0.1, w), get_num(p, "eta1", 0.05, w));
    }
    check_keys(j, {"n", "H", "J"}, w);
    StripFamily f;
    f.n = get_int(j, "n", 1, w);
    if (!j.contains("H") || !j.contains("J")) throw ConfigError(w + ": need H and J lists");
    for (std::size_t i = 0; i < j.at("H").size(); ++i) f.H.push_back(parse_strip(j.at("H")[i], StripKind::H, w + ".H"));
    for (std::size_t i = 0; i < j.at("J").size(); ++i) f.J.push_back(parse_strip(j.at("J")[i], StripKind::J, w + ".J"));
    return f;
}

GoodCovering parse_covering(const json& j) {
    const std::string w = "covering";
    if (j.contains("example")) {
        check_keys(j, {"example"}, w);
        check_keys(j.at("example"), {"radius"}, w + ".example");
        return example_good_covering(get_num(j.at("example"), "radius", 1.0, w));
    }
    check_keys(j, {"n", "hj", "s"}, w);
    GoodCovering g;
    g.n = get_int(j, "n", 1, w);
    if (!j.contains("hj") || !j.contains("s")) throw ConfigError(w + ": need hj and s lists");
    for (const auto& x : j.at("hj")) g.hj.push_back(parse_sector(x, w + ".hj"));
    for (const auto& x : j.at("s")) g.s.push_back(parse_sector(x, w + ".s"));
    return g;
}

ProblemSpec1 parse_problem1(const json& j) {
    const std::string w = "problem1";
    check_keys(j, {"S", "b", "xi", "P", "P_roots", "A"}, w);
    ProblemSpec1 s;
    s.S = get_int(j, "S", 1, w);
    s.b = get_num(j, "b", 2.0, w);
    s.xi = get_num(j, "xi", 1.0, w);
    s.P = parse_poly(j, w);
    if (j.contains("A")) {
        if (!j.at("A").is_array()) throw ConfigError(w + ".A: expected a list");
        for (std::size_t i = 0; i < j.at("A").size(); ++i) {
            const json& t = j.at("A")[i];
            std::string wi = w + ".A[" + std::to_string(i) + "]";
            check_keys(t, {"k", "c"}, wi);
            if (!t.contains("k")) throw ConfigError(wi + ": need k = [k0, k1, k2]");
            auto k = get_triple(t.at("k"), wi + ".k");
            Term1 term{k[0], k[1], k[2], {}};
            if (t.contains("c")) term.c.constant = get_complex_list(t.at("c"), wi + ".c");
            s.A.push_back(term);
        }
    }
    return s;
}

ProblemSpec2 parse_problem2(const json& j) {
    const std::string w = "problem2";
    check_keys(j, {"S_B", "b", "P", "P_roots", "B"}, w);
    ProblemSpec2 s;
    s.S_B = get_int(j, "S_B", 1, w);
    s.b = get_num(j, "b", 2.0, w);
    s.P = parse_poly(j, w);
    if (j.contains("B")) {
        if (!j.at("B").is_array()) throw ConfigError(w + ".B: expected a list");
        for (std::size_t i = 0; i < j.at("B").size(); ++i) {
            const json& t = j.at("B")[i];
            std::string wi = w + ".B[" + std::to_string(i) + "]";
            check_keys(t, {"l", "d"}, wi);
            if (!t.contains("l")) throw ConfigError(wi + ": need l = [l0, l1, l2]");
            auto l = get_triple(t.at("l"), wi + ".l");
            Term2 term{l[0], l[1], l[2], {}};
            if (t.contains("d")) term.d.constant = get_complex_list(t.at("d"), wi + ".d");
            s.B.push_back(term);
        }
    }
    return s;
}

const std::set<std::string> kTopKeys{"name",     "seed",     "workers", "tol",  "strips",  "covering",
                                      "problem1", "problem2", "theorem1", "theorem2", "bfi", "recurse",
                                      "laplace",  "classify", "norms"};

}  // namespace

cplx parse_complex(const json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_string()) throw ConfigError(where + ": expected \"re,im\" or a number");
    std::string s = j.get<std::string>();
    auto comma = s.find(',');
    try {
        std::size_t used = 0;
        if (comma == std::string::npos) {
            double re = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument("trailing");
            return {re, 0.0};
        }
        std::string a = s.substr(0, comma), b = s.substr(comma + 1);
        double re = std::stod(a, &used);
        if (a.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("trailing");
        double im = std::stod(b, &used);
        if (b.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("trailing");
        return {re, im};
    } catch (const std::exception&) {
        throw ConfigError(where + ": cannot read complex number '" + s + "'");
    }
}

std::string format_complex(cplx z) {
    std::ostringstream os;
    os << std::setprecision(17) << z.real() << "," << z.imag();
    return os.str();
}

const json& RunConfig::block(const std::string& key) const {
    static const json empty = json::object();
    return doc.contains(key) ? doc.at(key) : empty;
}

RunConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
    check_keys(doc, kTopKeys, "config");
    RunConfig rc;
    rc.doc = doc;
    rc.base_dir = base_dir;
    if (doc.contains("name")) {
        if (!doc.at("name").is_string()) throw ConfigError("config.name: expected a string");
        rc.name = doc.at("name").get<std::string>();
    }
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned()) throw ConfigError("config.seed: expected a nonnegative integer");
        rc.seed = doc.at("seed").get<std::uint64_t>();
    }
    int workers = get_int(doc, "workers", 0, "config");
    if (workers < 0) throw ConfigError("config.workers: must be nonnegative");
    rc.workers = static_cast<unsigned>(workers);
    rc.tol = get_num(doc, "tol", rc.tol, "config");
    if (!(rc.tol > 0.0)) throw ConfigError("config.tol: must be positive");
    if (doc.contains("strips")) rc.strips = parse_strips(doc.at("strips"));
    if (doc.contains("covering")) rc.covering = parse_covering(doc.at("covering"));
    if (doc.contains("problem1")) rc.problem1 = parse_problem1(doc.at("problem1"));
    if (doc.contains("problem2")) rc.problem2 = parse_problem2(doc.at("problem2"));
    // Decode command blocks once so schema errors surface at load time.
    if (doc.contains("theorem1")) theorem1_config(rc);
    if (doc.contains("theorem2")) theorem2_config(rc);
    if (doc.contains("bfi")) bfi_config(rc);
    return rc;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_config(doc, path.parent_path());
}

std::string config_hash(const json& doc) {
    std::string text = doc.dump();  // object keys are stored sorted, so the dump is canonical
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

FlatnessOptions flatness_options(const json& j) {
    const std::string w = "flatness";
    FlatnessOptions o;
    if (j.is_null()) return o;
    check_keys(j, {"significance", "min_effect", "min_points", "min_decades"}, w);
    o.significance = get_num(j, "significance", o.significance, w);
    o.min_effect = get_num(j, "min_effect", o.min_effect, w);
    o.min_points = get_int(j, "min_points", o.min_points, w);
    o.min_decades = get_num(j, "min_decades", o.min_decades, w);
    return o;
}

Theorem1Config theorem1_config(const RunConfig& rc) {
    Theorem1Config c = desk_theorem1_config();
    if (rc.problem1) c.spec = *rc.problem1;
    if (rc.strips) c.strips = *rc.strips;
    if (rc.covering) c.covering = *rc.covering;
    c.name = rc.name;
    c.workers = rc.effective_workers();
    c.laplace.tol = rc.tol;
    const json& j = rc.block("theorem1");
    const std::string w = "theorem1";
    check_keys(j, {"init", "a", "t", "z", "beta_max", "ladder", "arc_radius", "decay_eta", "min_abs_re", "max_abs_re",
                   "directions", "flatness"},
               w);
    if (j.contains("init")) c.init = get_string_list(j.at("init"), w + ".init");
    c.a = get_num(j, "a", c.a, w);
    if (j.contains("t")) c.t = parse_complex(j.at("t"), w + ".t");
    if (j.contains("z")) c.z = parse_complex(j.at("z"), w + ".z");
    c.beta_max = get_int(j, "beta_max", c.beta_max, w);
    if (j.contains("ladder")) {
        const json& l = j.at("ladder");
        check_keys(l, {"eps_max", "n", "ratio"}, w + ".ladder");
        c.ladder.eps_max = get_num(l, "eps_max", c.ladder.eps_max, w);
        c.ladder.n = get_int(l, "n", c.ladder.n, w);
        c.ladder.ratio = get_num(l, "ratio", c.ladder.ratio, w);
    }
    c.arc_radius = get_num(j, "arc_radius", c.arc_radius, w);
    c.decay_eta = get_num(j, "decay_eta", c.decay_eta, w);
    c.min_abs_re = get_num(j, "min_abs_re", c.min_abs_re, w);
    c.max_abs_re = get_num(j, "max_abs_re", c.max_abs_re, w);
    if (j.contains("directions")) {
        if (!j.at("directions").is_array()) throw ConfigError(w + ".directions: expected a list");
        c.directions.clear();
        for (const auto& x : j.at("directions")) {
            if (!x.is_number()) throw ConfigError(w + ".directions: expected numbers");
            c.directions.push_back(x.get<double>());
        }
    }
    if (j.contains("flatness")) c.flatness = flatness_options(j.at("flatness"));
    if (static_cast<int>(c.init.size()) != c.spec.S)
        throw ConfigError(w + ".init: need one initial datum per S = " + std::to_string(c.spec.S));
    return c;
}

Theorem2Config theorem2_config(const RunConfig& rc) {
    Theorem2Config c = desk_theorem2_config();
    c.first = theorem1_config(rc);
    if (rc.problem2) c.spec = *rc.problem2;
    c.name = rc.name;
    const json& j = rc.block("theorem2");
    const std::string w = "theorem2";
    check_keys(j, {"k", "eps", "t", "z", "beta_max", "fd_step", "refinements", "init", "use_forcing", "identity_tol",
                   "halfline_factor", "grid"},
               w);
    c.k = get_int(j, "k", c.k, w);
    if (j.contains("eps")) c.eps = parse_complex(j.at("eps"), w + ".eps");
    if (j.contains("t")) c.t = parse_complex(j.at("t"), w + ".t");
    if (j.contains("z")) c.z = parse_complex(j.at("z"), w + ".z");
    c.beta_max = get_int(j, "beta_max", c.beta_max, w);
    c.fd_step = get_num(j, "fd_step", c.fd_step, w);
    c.refinements = get_int(j, "refinements", c.refinements, w);
    if (j.contains("init")) c.init = get_string_list(j.at("init"), w + ".init");
    c.use_forcing = get_bool(j, "use_forcing", c.use_forcing, w);
    c.identity_tol = get_num(j, "identity_tol", c.identity_tol, w);
    c.halfline_factor = get_num(j, "halfline_factor", c.halfline_factor, w);
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        check_keys(g, {"order", "h_max", "h_min"}, w + ".grid");
        c.grid.order = get_int(g, "order", c.grid.order, w);
        c.grid.h_max = get_num(g, "h_max", c.grid.h_max, w);
        c.grid.h_min = get_num(g, "h_min", c.grid.h_min, w);
    }
    if (c.refinements < 2) throw ConfigError(w + ".refinements: need at least 2");
    if (!c.init.empty() && static_cast<int>(c.init.size()) != c.spec.S_B)
        throw ConfigError(w + ".init: need one initial datum per S_B = " + std::to_string(c.spec.S_B));
    return c;
}

BfiCase bfi_config(const RunConfig& rc) {
    BfiCase c;
    const json& j = rc.block("bfi");
    const std::string w = "bfi";
    check_keys(j, {"a", "n", "theta", "s"}, w);
    c.a = get_num(j, "a", c.a, w);
    c.n = get_int(j, "n", c.n, w);
    c.theta = get_num(j, "theta", kPi + 2.0 * kPi * c.n, w);
    if (j.contains("s")) c.s_samples = get_complex_list(j.at("s"), w + ".s");
    try {
        c.check();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("bfi: ") + e.what());
    }
    for (cplx s : c.s_samples)
        if (!(s.real() > 0.0)) throw ConfigError("bfi.s: every sample needs Re(s) > 0");
    return c;
}

}  // namespace borelkit
