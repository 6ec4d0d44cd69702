#include "borelkit/asymptotics.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "borelkit/linalg.hpp"
#include "borelkit/special.hpp"

namespace borelkit {

void SectorSample::check() const {
    if (eps.size() != values.size()) throw DomainError("SectorSample: eps and values differ in length");
    for (cplx e : eps)
        if (e == cplx(0.0) || !std::isfinite(std::abs(e))) throw DomainError("SectorSample: eps must be finite and nonzero");
}

double SectorSample::decades() const {
    if (eps.empty()) return 0.0;
    double lo = INFINITY, hi = 0.0;
    for (cplx e : eps) {
        lo = std::min(lo, std::abs(e));
        hi = std::max(hi, std::abs(e));
    }
    return std::log10(hi / lo);
}

std::vector<cplx> geometric_ladder(double eps_max, int n, double ratio, double arg) {
    if (!(eps_max > 0.0) || n < 1 || !(ratio > 0.0 && ratio < 1.0)) throw DomainError("geometric_ladder: bad parameters");
    std::vector<cplx> out;
    for (int j = 0; j < n; ++j) out.push_back(std::polar(eps_max * std::pow(ratio, j), arg));
    return out;
}

std::vector<cplx> sector_ladder(const BoundedSector& s, double eps_max, int n, int n_angles, double ratio,
                                double fraction) {
    if (n_angles < 1 || !(fraction > 0.0 && fraction < 1.0)) throw DomainError("sector_ladder: bad parameters");
    std::vector<cplx> out;
    double half = 0.5 * fraction * s.aperture();
    for (int j = 0; j < n; ++j) {
        double a = s.bisector();
        if (n_angles > 1) a += -half + 2.0 * half * (j % n_angles) / (n_angles - 1);
        out.push_back(std::polar(eps_max * std::pow(ratio, j), a));
    }
    return out;
}

SectorSample sample_function(const std::vector<cplx>& eps, const std::function<Scaled(cplx)>& f,
                             const BoundedSector& sector) {
    SectorSample s;
    s.eps = eps;
    s.sector = sector;
    for (cplx e : eps) s.values.push_back(f(e));
    return s;
}

namespace {

std::vector<std::size_t> by_decreasing_modulus(const SectorSample& s) {
    std::vector<std::size_t> idx(s.eps.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return std::abs(s.eps[a]) > std::abs(s.eps[b]); });
    return idx;
}

}  // namespace

namespace {

// Monomial coefficients of the interpolating polynomial through (x_i, y_i) (Newton form expanded).
std::vector<cplx> interpolating_coeffs(const cplx* x, const cplx* y, std::size_t n) {
    std::vector<cplx> dd(y, y + n);
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (x[i] - x[i - j]);
    std::vector<cplx> c(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        // c <- c (e - x_i) + dd_i
        for (std::size_t k = n - 1; k > 0; --k) c[k] = c[k - 1] - x[i] * c[k];
        c[0] = dd[i] - x[i] * c[0];
    }
    return c;
}

}  // namespace

ExtractResult extract_coeffs(const SectorSample& s, int K, double max_spread) {
    s.check();
    if (K < 0) throw DomainError("extract_coeffs: K must be nonnegative");
    const std::size_t need = 3 * static_cast<std::size_t>(K + 1);
    if (s.eps.size() < need) throw DomainError("extract_coeffs: need at least 3 (K + 1) sample points");
    auto idx = by_decreasing_modulus(s);
    const std::size_t n = idx.size();
    std::vector<cplx> e(n), f(n);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = s.eps[idx[j]];
        f[j] = s.values[idx[j]].value();
    }
    const std::size_t Ku = static_cast<std::size_t>(K);
    // coef[d][st]: coefficients of the degree-d interpolant through points st..st+d.
    const std::size_t dmax = std::min(n - 2, Ku + 9);
    std::vector<std::vector<std::vector<cplx>>> coef(dmax + 1);
    for (std::size_t d = Ku + 1; d <= dmax; ++d)
        for (std::size_t st = 0; st + d < n; ++st) coef[d].push_back(interpolating_coeffs(&e[st], &f[st], d + 1));
    ExtractResult out;
    for (std::size_t k = 0; k <= Ku; ++k) {
        double best = INFINITY;
        cplx best_val = 0.0;
        for (std::size_t d = Ku + 1; d < dmax; ++d)
            for (std::size_t st = 0; st + 1 < coef[d].size() && st < coef[d + 1].size(); ++st) {
                cplx v = coef[d][st][k];
                double score = std::max(std::abs(v - coef[d][st + 1][k]), std::abs(v - coef[d + 1][st][k]));
                if (score < best) {
                    best = score;
                    best_val = v;
                }
            }
        if (!std::isfinite(best)) {
            out.truncated = true;
            break;
        }
        out.a.push_back(best_val);
        out.spread.push_back(best);
        if (best > max_spread * std::max(1.0, std::abs(best_val))) {
            out.truncated = true;
            break;
        }
    }
    return out;
}

std::string to_string(GevreyClass c) {
    switch (c) {
        case GevreyClass::Gevrey1: return "gevrey-1";
        case GevreyClass::Gevrey1Plus: return "gevrey-1+";
        case GevreyClass::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

double gevrey_log_weight(GevreyLevel level, int N) {
    if (N < 1) throw DomainError("gevrey_log_weight: N must be positive");
    if (level == GevreyLevel::One) return N * (std::log(static_cast<double>(N)) - 1.0);
    if (N < 2) throw DomainError("gevrey_log_weight: level 1+ needs N >= 2");
    return N * (std::log(static_cast<double>(N)) - std::log(std::log(static_cast<double>(N))));
}

GevreyFit gevrey_check(const SectorSample& s, const std::vector<cplx>& a, GevreyLevel level, int N_max,
                       double max_drift) {
    s.check();
    GevreyFit fit;
    fit.level = level;
    const int N_min = level == GevreyLevel::One ? 1 : 2;
    if (N_max < 0) N_max = static_cast<int>(a.size());
    N_max = std::min<int>(N_max, static_cast<int>(a.size()));
    for (int N = N_min; N <= N_max; ++N) {
        double best = -INFINITY;
        int used = 0;
        for (std::size_t j = 0; j < s.eps.size(); ++j) {
            cplx e = s.eps[j], f = s.values[j].value();
            cplx r = f, p = 1.0;
            double mag = std::abs(f);
            for (int k = 0; k < N; ++k) {
                r -= a[static_cast<std::size_t>(k)] * p;
                mag += std::abs(a[static_cast<std::size_t>(k)] * p);
                p *= e;
            }
            // Roundoff floor of the partial sum.
            if (!(std::abs(r) > 1e-12 * mag)) continue;
            ++used;
            best = std::max(best, std::log(std::abs(r)) - gevrey_log_weight(level, N) - N * std::log(std::abs(e)));
        }
        if (used == 0) continue;
        fit.N.push_back(N);
        fit.log_ratio.push_back(best);
        fit.used_points.push_back(used);
    }
    if (fit.N.size() < 5) {
        fit.diagnostic = "fewer than five orders N have remainders above the roundoff floor";
        return fit;
    }
    // Growth rates fitted separately on the lower and upper halves of the N range.
    auto slope = [&](std::size_t from, std::size_t to) {
        std::vector<std::vector<double>> rows;
        std::vector<double> y;
        for (std::size_t i = from; i < to; ++i) {
            rows.push_back({1.0, static_cast<double>(fit.N[i])});
            y.push_back(fit.log_ratio[i]);
        }
        return lstsq(rows, y).coef[1];
    };
    const std::size_t n = fit.N.size(), mid = n / 2;
    double logM_lo = slope(0, mid + 1), logM_hi = slope(mid, n);
    fit.M_lower = std::exp(logM_lo);
    fit.M_upper = std::exp(logM_hi);
    fit.drift = fit.M_upper / fit.M_lower - 1.0;
    double logM = std::max(logM_lo, logM_hi);
    // Envelope constant with the larger rate.
    double logC = -INFINITY;
    for (std::size_t i = 0; i < fit.N.size(); ++i) logC = std::max(logC, fit.log_ratio[i] - fit.N[i] * logM);
    fit.M = std::exp(logM);
    fit.C = std::exp(logC);
    fit.passes = fit.drift < max_drift;
    if (fit.passes) {
        fit.cls = level == GevreyLevel::One ? GevreyClass::Gevrey1 : GevreyClass::Gevrey1Plus;
    } else {
        std::ostringstream os;
        os << "growth rate drifts by " << fit.drift << " over the top half of N";
        fit.diagnostic = os.str();
    }
    return fit;
}

std::string to_string(FlatClass c) {
    switch (c) {
        case FlatClass::ExpFlat: return "exp-flat";
        case FlatClass::SuperExpFlat: return "superexp-flat";
        case FlatClass::NotFlat: return "not-flat";
        case FlatClass::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

// Largest change of the fit on the sample attributable to column j beyond the other columns.
double effect_size(const std::vector<std::vector<double>>& rows, std::size_t j, double coef) {
    std::vector<std::vector<double>> others;
    std::vector<double> col;
    for (const auto& r : rows) {
        std::vector<double> o;
        for (std::size_t k = 0; k < r.size(); ++k)
            if (k != j) o.push_back(r[k]);
        others.push_back(o);
        col.push_back(r[j]);
    }
    LstsqResult p = lstsq(others, col);
    double m = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) m = std::max(m, std::abs(coef * (col[i] - p.fitted[i])));
    return m;
}

}  // namespace

FlatnessFit flatness_classify(const SectorSample& s, const FlatnessOptions& opt) {
    s.check();
    FlatnessFit fit;
    std::vector<std::vector<double>> rows, reduced;
    std::vector<double> y;
    double lo = INFINITY, hi = 0.0;
    for (std::size_t j = 0; j < s.eps.size(); ++j) {
        double l = s.values[j].log_abs();
        if (!std::isfinite(l)) {
            ++fit.clipped;
            continue;
        }
        double x = 1.0 / std::abs(s.eps[j]);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
        rows.push_back({1.0, x, x * std::log(x), std::log(x)});
        reduced.push_back({1.0, x, std::log(x)});
        y.push_back(l);
    }
    fit.used = static_cast<int>(y.size());
    if (fit.used < opt.min_points) {
        fit.diagnostic = "fewer than " + std::to_string(opt.min_points) + " usable points";
        return fit;
    }
    if (std::log10(hi / lo) < opt.min_decades) {
        fit.diagnostic = "eps ladder spans less than " + std::to_string(opt.min_decades) + " decade(s)";
        return fit;
    }
    LstsqResult full = lstsq(rows, y);
    fit.coef = full.coef;
    fit.se = full.se;
    fit.rms_residual = std::sqrt(full.rss / fit.used);
    double c1 = full.coef[1], c2 = full.coef[2];
    fit.effect_superexp = effect_size(rows, 2, c2);
    bool sig2 = std::abs(c2) > opt.significance * full.se[2];
    if (c2 < 0.0 && sig2 && fit.effect_superexp >= opt.min_effect) {
        fit.cls = FlatClass::SuperExpFlat;
        fit.M = -c2;
        fit.L = std::exp(c1 / c2);
        fit.K = std::exp(full.coef[0]);
        if (!(fit.L > 1.0)) fit.diagnostic = "fitted L <= 1";
        return fit;
    }
    LstsqResult red = lstsq(reduced, y);
    double r1 = red.coef[1];
    fit.effect_exp = effect_size(reduced, 1, r1);
    bool sig1 = std::abs(r1) > opt.significance * red.se[1];
    if (r1 < 0.0 && sig1 && fit.effect_exp >= opt.min_effect) {
        fit.cls = FlatClass::ExpFlat;
        fit.M = -r1;
        fit.K = std::exp(red.coef[0]);
        fit.coef = red.coef;
        fit.se = red.se;
        fit.coef.insert(fit.coef.begin() + 2, 0.0);
        fit.se.insert(fit.se.begin() + 2, 0.0);
        fit.rms_residual = std::sqrt(red.rss / fit.used);
        return fit;
    }
    fit.cls = FlatClass::NotFlat;
    return fit;
}

void write_sample_csv(std::ostream& os, const SectorSample& s) {
    s.check();
    os << "re_eps,im_eps,re_value,im_value,log_scale\n";
    os << std::setprecision(17);
    for (std::size_t j = 0; j < s.eps.size(); ++j)
        os << s.eps[j].real() << ',' << s.eps[j].imag() << ',' << s.values[j].m.real() << ',' << s.values[j].m.imag()
           << ',' << s.values[j].e << '\n';
}

SectorSample read_sample_csv(std::istream& is) {
    SectorSample s;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line.find_first_not_of("0123456789+-.eE, \tinfa") != std::string::npos) continue;  // header
        std::vector<double> cols;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                cols.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw DomainError("read_sample_csv: bad number on line " + std::to_string(lineno));
            }
        }
        if (cols.size() != 4 && cols.size() != 5)
            throw DomainError("read_sample_csv: expected 4 or 5 columns on line " + std::to_string(lineno));
        s.eps.emplace_back(cols[0], cols[1]);
        s.values.push_back({cplx(cols[2], cols[3]), cols.size() == 5 ? cols[4] : 0.0});
    }
    s.check();
    return s;
}

std::string describe(const FlatnessFit& f) {
    std::ostringstream os;
    os << std::setprecision(10);
    os << "class=" << to_string(f.cls) << "\nK=" << f.K << "\nM=" << f.M << "\nL=" << f.L << "\nused=" << f.used
       << "\nclipped=" << f.clipped << "\nrms_residual=" << f.rms_residual
       << "\neffect_superexp=" << f.effect_superexp << "\neffect_exp=" << f.effect_exp << "\ncoef=";
    for (std::size_t i = 0; i < f.coef.size(); ++i) os << (i ? ";" : "") << f.coef[i];
    os << "\nse=";
    for (std::size_t i = 0; i < f.se.size(); ++i) os << (i ? ";" : "") << f.se[i];
    os << "\ndiagnostic=" << f.diagnostic << "\n";
    return os.str();
}

std::string describe(const GevreyFit& f) {
    std::ostringstream os;
    os << std::setprecision(10);
    os << "level=" << (f.level == GevreyLevel::One ? "1" : "1+") << "\nclass=" << to_string(f.cls)
       << "\npasses=" << (f.passes ? "true" : "false") << "\nC=" << f.C << "\nM=" << f.M << "\ndrift=" << f.drift
       << "\nprofile=";
    for (std::size_t i = 0; i < f.N.size(); ++i) os << (i ? ";" : "") << f.N[i] << ":" << f.log_ratio[i];
    os << "\ndiagnostic=" << f.diagnostic << "\n";
    return os.str();
}

}  // namespace borelkit

namespace borelkit {

Scaled euler_function(cplx eps) {
    if (eps == cplx(0.0) || (eps.imag() == 0.0 && eps.real() < 0.0))
        throw DomainError("euler_function: eps must be nonzero and off the negative axis");
    cplx z = 1.0 / eps;
    // exp(z) E1(z) = 1 / (z + 1 - 1 / (z + 3 - 4 / (z + 5 - ...))), evaluated backward.
    const int depth = 4000;
    cplx t = z + (2.0 * depth + 1.0);
    for (int k = depth - 1; k >= 0; --k) t = z + (2.0 * k + 1.0) - static_cast<double>(k + 1) * (k + 1) / t;
    return Scaled::from(z / t);
}

cplx euler_coeff(int k) { return (k % 2 ? -1.0 : 1.0) * factorial(k); }

cplx gevrey1plus_coeff(int k) {
    if (k == 0) return 1.0;
    return std::pow(k / std::log(static_cast<double>(k + 2)), k);
}

Scaled gevrey1plus_function(cplx eps) {
    cplx sum = 0.0, p = 1.0;
    double prev = INFINITY;
    for (int k = 0; k < 400; ++k) {
        cplx term = gevrey1plus_coeff(k) * p;
        if (std::abs(term) >= prev && k > 0) break;
        prev = std::abs(term);
        sum += term;
        p *= eps;
    }
    return Scaled::from(sum);
}

}  // namespace borelkit
