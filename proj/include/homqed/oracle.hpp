// oracle.hpp: brute-force validation of the exact two-photon path.
//
// The grid oracle transcribes the packet, the one-photon amplitudes and the
// bound term independently of single_photon/two_photon/quadrature and sums
// them with midpoint rules on a uniform (k, k') lattice. Only the core
// parameter types are shared.

#pragma once

#include <string>
#include <vector>

#include "homqed/analytic.hpp"
#include "homqed/core.hpp"
#include "homqed/two_photon.hpp"

namespace homqed::oracle {

struct GridOptions {
    double spacing{0.0};  // 0: default_grid_spacing(Γ)
    double extent{0.0};   // half-width of the relative-momentum range; 0: default
    bool include_interaction{true};
};

double default_grid_spacing(double gamma);
double default_grid_extent(double gamma);

/// Midpoint Riemann sums for the Gaussian packet of `params`.
ProbabilityTable grid_probability(const ModelParams& params, const GridOptions& options = {});

/// Bound-term T-matrix element at (k, k') by a midpoint sum over the relative
/// momentum of the incoming pair.
cplx grid_interaction_amplitude(double k, double k_prime, const ModelParams& params,
                                double spacing = 1e-3);

struct GridConvergence {
    double max_change{0.0};
    bool converged{false};
};

/// Compares the grid table with one at half the spacing and twice the extent.
GridConvergence grid_convergence(const ModelParams& params, const GridOptions& options = {},
                                 double tolerance = 1e-6);

struct OracleReport {
    std::string quantity;
    double gamma{0.0};
    double delay{0.0};
    double center{0.0};
    Geometry geometry{Geometry::hom_split};
    double oracle_value{0.0};  // reference value
    double main_value{0.0};    // value under test
    double abs_deviation{0.0};
    double rel_deviation{0.0};
    double tolerance{0.0};
    bool relative{false};  // tolerance applies to rel_deviation
    bool pass{false};
};

OracleReport make_report(std::string quantity, const ModelParams& params, double oracle_value,
                         double main_value, double tolerance, bool relative);

/// Oracle vs main path on every entry (and the antibunching aggregate) of one
/// parameter point, absolute tolerance.
std::vector<OracleReport> compare_with_main(const ModelParams& params, double tolerance = 1e-4,
                                            const TwoPhotonOptions& options = {});

/// Parameter points used for oracle equivalence and unitarity scans.
std::vector<ModelParams> standard_sweep_grid();

enum class FactorVerdict { direct, splitting_formula, inconclusive };
std::string to_string(FactorVerdict v);

struct FactorAdjudication {
    double gamma{0.0};
    double exact_delta{0.0};  // δP_HOM from the exact path, balanced, Δ = 0
    double zeta{0.0};         // e^{-Δ²}/(√π Γ)
    double dev_direct{0.0};   // |δP/ζ - 1|
    double dev_splitting{0.0};  // |δP/(ζ/2) - 1|
    FactorVerdict verdict{FactorVerdict::inconclusive};
};

/// Picks the reading closer to the exact value when it lies within 25%.
FactorAdjudication adjudicate(double gamma, double exact_delta);

struct FactorAudit {
    std::vector<FactorAdjudication> points;
    std::vector<OracleReport> reports;
    double slope{0.0};  // least-squares d ln δP / d ln Γ over Γ ∈ [5, 50]
    FactorVerdict verdict{FactorVerdict::inconclusive};  // at the largest Γ
};

/// Γ entries must be ≥ 2. Reports compare the exact δP_HOM with ζ at
/// tolerance 3% for Γ ≥ 20, 15% below, and the slope with -1 ± 0.05.
FactorAudit factor_audit(const std::vector<double>& gammas, const TwoPhotonOptions& options = {});

/// Least-squares slope of ln y against ln x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace homqed::oracle
