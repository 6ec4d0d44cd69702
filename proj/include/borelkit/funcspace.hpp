#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "borelkit/geometry.hpp"
#include "borelkit/support.hpp"
#include "borelkit/weights.hpp"

namespace borelkit {

enum class DomainTag { StripH, StripJ, SectorDisc, LShapeRH, LShapeRJ, Path };

std::string to_string(DomainTag t);
DomainTag domain_tag_from_string(const std::string& s);

/// One Borel-plane function sampled on nodes. Node i holds values[i] * exp(log_scale[i]);
/// an empty log_scale means all exponents are zero.
struct GridFunction {
    DomainTag tag = DomainTag::Path;
    std::vector<cplx> nodes;
    std::vector<cplx> values;
    std::vector<double> log_scale;
    double spacing = 0.0;  ///< grid resolution reported with norm estimates

    std::size_t size() const { return nodes.size(); }
    double exponent(std::size_t i) const { return log_scale.empty() ? 0.0 : log_scale[i]; }
    Scaled at(std::size_t i) const { return {values[i], exponent(i)}; }
    void set(std::size_t i, const Scaled& s);
    void check() const;

    static GridFunction sample(DomainTag tag, const std::vector<cplx>& nodes, const BorelFn& f, double spacing = 0.0);
    static GridFunction zeros(DomainTag tag, const std::vector<cplx>& nodes, double spacing = 0.0);
};

/// Entry beta stores v_beta of the series sum v_beta z^beta / beta!.
struct CoeffTable {
    std::vector<GridFunction> entries;

    int beta_max() const { return static_cast<int>(entries.size()) - 1; }
    const std::vector<cplx>& nodes() const { return entries.at(0).nodes; }
    DomainTag tag() const { return entries.at(0).tag; }
    void check() const;
};

enum class NormKind { SED, SEG, EG, EG_RH, SEG_RJ };

std::string to_string(NormKind k);
NormKind norm_kind_from_string(const std::string& s);

struct NormParams {
    double sigma1 = 1.0;
    double sigma2 = 1.0;
    double sigma3 = 1.0;
    double varsigma2 = 1.0;
    double varsigma3 = 1.0;
    double delta = 0.5;
    double delta1 = 0.5;
    cplx eps{0.1, 0.0};
    WeightSeq w;
};

/// Exponent of the weight multiplying |v|/|tau| for the given norm.
double weight_exponent(NormKind kind, const NormParams& p, int beta, double abs_tau);

struct NormEstimate {
    double value = 0.0;       ///< may be inf when out of double range
    double log_value = -INFINITY;
    double grid_spacing = 0.0;
    long argmax = -1;
};

NormEstimate weighted_norm(const GridFunction& v, int beta, NormKind kind, const NormParams& p);
NormEstimate sed_norm(const GridFunction& v, int beta, const NormParams& p);
NormEstimate seg_norm(const GridFunction& v, int beta, const NormParams& p);
NormEstimate eg_norm(const GridFunction& v, int beta, const NormParams& p);
NormEstimate eg_rh_norm(const GridFunction& v, int beta, const NormParams& p);
NormEstimate seg_rj_norm(const GridFunction& v, int beta, const NormParams& p);

struct SeriesNorm {
    double value = 0.0;
    double log_value = -INFINITY;
    double remainder = 0.0;  ///< last-term ratio estimate of the omitted tail
    bool divergent = false;
    int beta_max = 0;
    bool z_truncated = true;
};

SeriesNorm series_norm(const CoeffTable& tab, NormKind kind, const NormParams& p);

struct AssembleOptions {
    double z_radius = INFINITY;  ///< delta * delta1; |z| must stay below it
    double on_path_tol = 1e-9;
};

struct AssembleResult {
    Scaled value;
    bool nearest_node = false;  ///< area grid lookup (resolution warning)
    double resolution = 0.0;
};

/// sum_beta v_beta(tau) z^beta / beta!, interpolating in tau.
AssembleResult assemble(const CoeffTable& tab, cplx tau, cplx z, const AssembleOptions& opt = {});

/// Product of the series sum c_beta z^beta / beta! (tau independent) with a table.
CoeffTable multiply_series(const std::vector<cplx>& c, const CoeffTable& v);

/// Rectangular (Re, Im) grid on a strip, Re geometrically stretched toward 0.
std::vector<cplx> strip_grid(const Strip& s, double re_min, int n_re, int n_im, double re_near = 1e-3);
/// Polar grid on S_d union D(0, r), radii up to r_max.
std::vector<cplx> sector_disc_grid(const UnboundedSector& s, double r, double r_max, int n_r, int n_theta);
/// Strip part plus rectangle part of an L-shape.
std::vector<cplx> lshape_grid(const LShape& d, double re_min, int n_re, int n_im);

/// Columnar text: header (domain tag, nodes), then rows "beta node re im log_scale".
void write_coeff_table(std::ostream& os, const CoeffTable& tab);
CoeffTable read_coeff_table(std::istream& is);

}  // namespace borelkit
