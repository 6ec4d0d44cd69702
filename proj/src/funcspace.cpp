#include "borelkit/funcspace.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "borelkit/special.hpp"

namespace borelkit {

std::string to_string(DomainTag t) {
    switch (t) {
        case DomainTag::StripH: return "strip_H";
        case DomainTag::StripJ: return "strip_J";
        case DomainTag::SectorDisc: return "sector_disc";
        case DomainTag::LShapeRH: return "lshape_RH";
        case DomainTag::LShapeRJ: return "lshape_RJ";
        case DomainTag::Path: return "path";
    }
    return "path";
}

DomainTag domain_tag_from_string(const std::string& s) {
    for (DomainTag t : {DomainTag::StripH, DomainTag::StripJ, DomainTag::SectorDisc, DomainTag::LShapeRH,
                        DomainTag::LShapeRJ, DomainTag::Path})
        if (to_string(t) == s) return t;
    throw DomainError("unknown domain tag: " + s);
}

std::string to_string(NormKind k) {
    switch (k) {
        case NormKind::SED: return "sed";
        case NormKind::SEG: return "seg";
        case NormKind::EG: return "eg";
        case NormKind::EG_RH: return "eg_rh";
        case NormKind::SEG_RJ: return "seg_rj";
    }
    return "sed";
}

NormKind norm_kind_from_string(const std::string& s) {
    for (NormKind k : {NormKind::SED, NormKind::SEG, NormKind::EG, NormKind::EG_RH, NormKind::SEG_RJ})
        if (to_string(k) == s) return k;
    throw DomainError("unknown norm kind: " + s);
}

void GridFunction::set(std::size_t i, const Scaled& s) {
    if (log_scale.empty()) {
        if (s.e == 0.0) {
            values[i] = s.m;
            return;
        }
        log_scale.assign(nodes.size(), 0.0);
    }
    values[i] = s.m;
    log_scale[i] = s.e;
}

void GridFunction::check() const {
    if (values.size() != nodes.size()) throw DomainError("GridFunction: nodes and values differ in length");
    if (!log_scale.empty() && log_scale.size() != nodes.size())
        throw DomainError("GridFunction: log_scale length mismatch");
}

GridFunction GridFunction::sample(DomainTag tag, const std::vector<cplx>& nodes, const BorelFn& f, double spacing) {
    GridFunction g = zeros(tag, nodes, spacing);
    for (std::size_t i = 0; i < nodes.size(); ++i) g.set(i, f(nodes[i]));
    return g;
}

GridFunction GridFunction::zeros(DomainTag tag, const std::vector<cplx>& nodes, double spacing) {
    GridFunction g;
    g.tag = tag;
    g.nodes = nodes;
    g.values.assign(nodes.size(), cplx(0.0, 0.0));
    g.spacing = spacing;
    return g;
}

void CoeffTable::check() const {
    if (entries.empty()) throw DomainError("CoeffTable: no entries");
    for (const auto& e : entries) {
        e.check();
        if (e.nodes != entries[0].nodes) throw DomainError("CoeffTable: entries do not share a node set");
    }
}

double weight_exponent(NormKind kind, const NormParams& p, int beta, double abs_tau) {
    const double ae = std::abs(p.eps);
    const double r = p.w.r(beta);
    double e = -(p.sigma1 / ae) * r * abs_tau;
    switch (kind) {
        case NormKind::SED: e += p.sigma2 * p.w.s(beta) * std::exp(p.sigma3 * abs_tau); break;
        case NormKind::SEG:
        case NormKind::SEG_RJ: e -= p.varsigma2 * r * std::exp(p.varsigma3 * abs_tau); break;
        case NormKind::EG:
        case NormKind::EG_RH: break;
    }
    return e;
}

NormEstimate weighted_norm(const GridFunction& v, int beta, NormKind kind, const NormParams& p) {
    v.check();
    if (beta < 0) throw DomainError("norm: beta must be nonnegative");
    NormEstimate out;
    out.grid_spacing = v.spacing;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v.values[i] == cplx(0.0, 0.0)) continue;
        double at = std::abs(v.nodes[i]);
        if (at == 0.0) throw DomainError("norm: nonzero value at tau = 0");
        double l = std::log(std::abs(v.values[i])) + v.exponent(i) - std::log(at) + weight_exponent(kind, p, beta, at);
        if (l > out.log_value) {
            out.log_value = l;
            out.argmax = static_cast<long>(i);
        }
    }
    out.value = out.log_value == -INFINITY ? 0.0 : std::exp(out.log_value);
    return out;
}

namespace {
void require_tag(const GridFunction& v, std::initializer_list<DomainTag> ok, const char* what) {
    for (DomainTag t : ok)
        if (v.tag == t) return;
    throw DomainError(std::string(what) + ": grid function has domain tag " + to_string(v.tag));
}
}  // namespace

NormEstimate sed_norm(const GridFunction& v, int beta, const NormParams& p) {
    require_tag(v, {DomainTag::StripH}, "sed_norm");
    return weighted_norm(v, beta, NormKind::SED, p);
}
NormEstimate seg_norm(const GridFunction& v, int beta, const NormParams& p) {
    require_tag(v, {DomainTag::StripJ}, "seg_norm");
    return weighted_norm(v, beta, NormKind::SEG, p);
}
NormEstimate eg_norm(const GridFunction& v, int beta, const NormParams& p) {
    require_tag(v, {DomainTag::SectorDisc}, "eg_norm");
    return weighted_norm(v, beta, NormKind::EG, p);
}
NormEstimate eg_rh_norm(const GridFunction& v, int beta, const NormParams& p) {
    require_tag(v, {DomainTag::LShapeRH}, "eg_rh_norm");
    return weighted_norm(v, beta, NormKind::EG_RH, p);
}
NormEstimate seg_rj_norm(const GridFunction& v, int beta, const NormParams& p) {
    require_tag(v, {DomainTag::LShapeRJ}, "seg_rj_norm");
    return weighted_norm(v, beta, NormKind::SEG_RJ, p);
}

SeriesNorm series_norm(const CoeffTable& tab, NormKind kind, const NormParams& p) {
    tab.check();
    if (!(p.delta > 0.0)) throw DomainError("series_norm: delta must be positive");
    SeriesNorm out;
    out.beta_max = tab.beta_max();
    std::vector<double> lt;
    for (int b = 0; b <= tab.beta_max(); ++b) {
        NormEstimate n = weighted_norm(tab.entries[static_cast<std::size_t>(b)], b, kind, p);
        lt.push_back(n.log_value + b * std::log(p.delta) - log_factorial(b));
    }
    double lmax = *std::max_element(lt.begin(), lt.end());
    if (lmax == -INFINITY) return out;
    double s = 0.0;
    for (double l : lt) s += std::exp(l - lmax);
    out.log_value = lmax + std::log(s);
    out.value = std::exp(out.log_value);
    if (lt.size() >= 2) {
        double last = lt.back(), prev = lt[lt.size() - 2];
        if (last == -INFINITY) {
            out.remainder = 0.0;
        } else if (prev == -INFINITY) {
            out.remainder = std::exp(last);
        } else {
            double q = std::exp(last - prev);
            if (q >= 1.0) {
                out.divergent = true;
                out.remainder = INFINITY;
            } else {
                out.remainder = std::exp(last) * q / (1.0 - q);
            }
        }
    }
    return out;
}

namespace {

Scaled lerp(const Scaled& a, const Scaled& b, double s) {
    double ref = std::max(a.is_zero() ? -INFINITY : a.e, b.is_zero() ? -INFINITY : b.e);
    if (ref == -INFINITY) return {};
    cplx va = a.is_zero() ? cplx(0.0) : a.m * std::exp(a.e - ref);
    cplx vb = b.is_zero() ? cplx(0.0) : b.m * std::exp(b.e - ref);
    return {(1.0 - s) * va + s * vb, ref};
}

}  // namespace

AssembleResult assemble(const CoeffTable& tab, cplx tau, cplx z, const AssembleOptions& opt) {
    tab.check();
    if (!(std::abs(z) < opt.z_radius)) throw DomainError("assemble: |z| must be below delta * delta1");
    const auto& nodes = tab.nodes();
    AssembleResult out;
    // Locate tau: exact node, segment between consecutive path nodes, or nearest area node.
    long exact = -1, seg = -1;
    double seg_s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] == tau) {
            exact = static_cast<long>(i);
            break;
        }
    if (exact < 0 && tab.tag() == DomainTag::Path) {
        double best = INFINITY;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            cplx d = nodes[i + 1] - nodes[i];
            double len2 = std::norm(d);
            if (len2 == 0.0) continue;
            double s = std::real((tau - nodes[i]) * std::conj(d)) / len2;
            if (s < 0.0 || s > 1.0) continue;
            double dist = std::abs(nodes[i] + s * d - tau);
            if (dist < best) best = dist, seg = static_cast<long>(i), seg_s = s;
        }
        if (seg < 0 || best > opt.on_path_tol * std::max(1.0, std::abs(tau)))
            throw DomainError("assemble: tau is not on the sampled path");
    }
    if (exact < 0 && seg < 0) {
        double best = INFINITY;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            double d = std::abs(nodes[i] - tau);
            if (d < best) best = d, exact = static_cast<long>(i);
        }
        double sp = tab.entries[0].spacing;
        if (exact < 0 || (sp > 0.0 && best > 2.0 * sp)) throw DomainError("assemble: tau outside the represented domain");
        out.nearest_node = true;
        out.resolution = best;
    }
    Scaled acc;
    const double lz = std::log(std::abs(z));
    const double phz = std::arg(z);
    for (int b = 0; b <= tab.beta_max(); ++b) {
        const GridFunction& g = tab.entries[static_cast<std::size_t>(b)];
        Scaled v = exact >= 0 ? g.at(static_cast<std::size_t>(exact))
                              : lerp(g.at(static_cast<std::size_t>(seg)), g.at(static_cast<std::size_t>(seg + 1)), seg_s);
        if (v.is_zero()) continue;
        if (b == 0) {
            acc = acc + v;
            continue;
        }
        if (z == cplx(0.0)) continue;
        Scaled zb{std::polar(1.0, b * phz), b * lz - log_factorial(b)};
        acc = acc + v * zb;
    }
    out.value = acc;
    return out;
}

CoeffTable multiply_series(const std::vector<cplx>& c, const CoeffTable& v) {
    v.check();
    CoeffTable out;
    for (int b = 0; b <= v.beta_max(); ++b) {
        GridFunction g = GridFunction::zeros(v.tag(), v.nodes(), v.entries[0].spacing);
        for (std::size_t i = 0; i < g.size(); ++i) {
            Scaled acc;
            for (int b1 = 0; b1 <= b && b1 < static_cast<int>(c.size()); ++b1) {
                if (c[static_cast<std::size_t>(b1)] == cplx(0.0)) continue;
                acc = acc + v.entries[static_cast<std::size_t>(b - b1)].at(i) * (binomial(b, b1) * c[static_cast<std::size_t>(b1)]);
            }
            g.set(i, acc);
        }
        out.entries.push_back(std::move(g));
    }
    return out;
}

std::vector<cplx> strip_grid(const Strip& s, double re_min, int n_re, int n_im, double re_near) {
    if (!(re_min < 0.0) || n_re < 2 || n_im < 2) throw DomainError("strip_grid: bad grid parameters");
    std::vector<cplx> out;
    std::vector<double> res{0.0};
    for (int i = 0; i < n_re - 1; ++i) res.push_back(-re_near * std::pow(-re_min / re_near, i / double(n_re - 2)));
    for (double re : res)
        for (int j = 0; j < n_im; ++j) {
            cplx t(re, s.im_lo + (s.im_hi - s.im_lo) * j / double(n_im - 1));
            if (t != cplx(0.0)) out.push_back(t);
        }
    return out;
}

std::vector<cplx> sector_disc_grid(const UnboundedSector& s, double r, double r_max, int n_r, int n_theta) {
    if (!(r > 0.0 && r_max > r) || n_r < 2 || n_theta < 2) throw DomainError("sector_disc_grid: bad grid parameters");
    std::vector<cplx> out;
    const double r0 = 1e-3 * r;
    for (int i = 0; i < n_r; ++i) {
        double rad = r0 * std::pow(r / r0, i / double(n_r - 1));
        for (int j = 0; j < 2 * n_theta; ++j) out.push_back(std::polar(rad, 2 * kPi * j / (2.0 * n_theta)));
    }
    for (int i = 1; i < n_r; ++i) {
        double rad = r * std::pow(r_max / r, i / double(n_r - 1));
        for (int j = 0; j < n_theta; ++j)
            out.push_back(std::polar(rad, s.direction - s.half_aperture + 2 * s.half_aperture * j / double(n_theta - 1)));
    }
    return out;
}

std::vector<cplx> lshape_grid(const LShape& d, double re_min, int n_re, int n_im) {
    std::vector<cplx> out = strip_grid(d.strip, re_min, n_re, n_im);
    for (int i = 0; i < n_re; ++i)
        for (int j = 0; j < n_im; ++j) {
            cplx t(d.upsilon * i / double(n_re - 1), d.rect_im_lo + (d.rect_im_hi - d.rect_im_lo) * j / double(n_im - 1));
            if (t != cplx(0.0) && !d.strip.contains(t)) out.push_back(t);
        }
    return out;
}

void write_coeff_table(std::ostream& os, const CoeffTable& tab) {
    tab.check();
    os << std::setprecision(17);
    os << "# borelkit coeff table v1\n";
    os << "domain " << to_string(tab.tag()) << "\n";
    os << "beta_max " << tab.beta_max() << "\n";
    os << "spacing " << tab.entries[0].spacing << "\n";
    os << "nodes " << tab.nodes().size() << "\n";
    for (const auto& n : tab.nodes()) os << n.real() << " " << n.imag() << "\n";
    os << "# beta node re im log_scale\n";
    for (int b = 0; b <= tab.beta_max(); ++b) {
        const auto& g = tab.entries[static_cast<std::size_t>(b)];
        for (std::size_t i = 0; i < g.size(); ++i)
            os << b << " " << i << " " << g.values[i].real() << " " << g.values[i].imag() << " " << g.exponent(i) << "\n";
    }
}

namespace {
std::string next_line(std::istream& is) {
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        return line;
    }
    throw DomainError("read_coeff_table: unexpected end of input");
}
double parse_double(const std::string& s) {
    // strtod accepts inf/nan spellings written by the stream.
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw DomainError("read_coeff_table: bad number " + s);
    return v;
}
}  // namespace

CoeffTable read_coeff_table(std::istream& is) {
    std::string key;
    std::istringstream l1(next_line(is));
    std::string tag;
    l1 >> key >> tag;
    if (key != "domain") throw DomainError("read_coeff_table: expected domain line");
    std::istringstream l2(next_line(is));
    int bmax = 0;
    l2 >> key >> bmax;
    if (key != "beta_max" || bmax < 0) throw DomainError("read_coeff_table: expected beta_max line");
    std::istringstream l3(next_line(is));
    std::string sp;
    l3 >> key >> sp;
    if (key != "spacing") throw DomainError("read_coeff_table: expected spacing line");
    std::istringstream l4(next_line(is));
    std::size_t n = 0;
    l4 >> key >> n;
    if (key != "nodes") throw DomainError("read_coeff_table: expected nodes line");
    std::vector<cplx> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::istringstream ln(next_line(is));
        std::string a, b;
        ln >> a >> b;
        nodes[i] = {parse_double(a), parse_double(b)};
    }
    CoeffTable tab;
    for (int b = 0; b <= bmax; ++b) tab.entries.push_back(GridFunction::zeros(domain_tag_from_string(tag), nodes, parse_double(sp)));
    for (std::size_t r = 0; r < n * static_cast<std::size_t>(bmax + 1); ++r) {
        std::istringstream ln(next_line(is));
        int b;
        std::size_t i;
        std::string re, im, ls;
        ln >> b >> i >> re >> im >> ls;
        if (b < 0 || b > bmax || i >= n) throw DomainError("read_coeff_table: row index out of range");
        tab.entries[static_cast<std::size_t>(b)].set(i, {{parse_double(re), parse_double(im)}, parse_double(ls)});
    }
    return tab;
}

}  // namespace borelkit
