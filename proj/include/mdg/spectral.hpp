#pragma once

// Fourier transform of a centrally symmetric weight function on Z^2,
//
//     w^(u) = sum_x w(x) exp(2 pi i u.x),   u in (R/Z)^2,
//
// evaluated at exact rational torus points, plus everything derived from it:
// circulant spectra of quotient Cayley graphs, torus-infimum estimates, the
// ratio bound -inf/(sup - inf) and the resulting chromatic lower bound.
//
// Support coordinates are huge, so every phase u.x is reduced modulo the
// denominator of u in exact integer arithmetic before it touches a double.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mdg/arith.hpp"
#include "mdg/generators.hpp"

namespace mdg {

/// The rational point (z1/N, z2/N) of (R/Z)^2, kept canonical: 0 <= z < N.
class TorusPoint {
public:
    /// Reduces z modulo N. Throws InvalidArgument unless N >= 1.
    static TorusPoint make(std::int64_t z1, std::int64_t z2, std::int64_t denominator);
    static TorusPoint origin() { return make(0, 0, 1); }

    std::int64_t z1() const { return z1_; }
    std::int64_t z2() const { return z2_; }
    std::int64_t denominator() const { return n_; }

    /// Same point with the fraction reduced by gcd(z1, z2, N).
    TorusPoint reduced() const;

    double u1() const { return static_cast<double>(z1_) / static_cast<double>(n_); }
    double u2() const { return static_cast<double>(z2_) / static_cast<double>(n_); }

    /// Lexicographic order on (u1, u2) as exact rationals.
    friend bool lex_less(const TorusPoint& a, const TorusPoint& b);
    friend bool operator==(const TorusPoint&, const TorusPoint&) = default;

private:
    TorusPoint(std::int64_t z1, std::int64_t z2, std::int64_t n) : z1_(z1), z2_(z2), n_(n) {}
    std::int64_t z1_;
    std::int64_t z2_;
    std::int64_t n_;
};

/// Support residues modulo a fixed denominator N with double weights. Built
/// once per denominator so repeated evaluations are pure machine arithmetic.
/// Residues r and -r are folded into one entry, which is exact because only
/// the cosine of each phase is ever taken.
class PhaseTable {
public:
    PhaseTable(std::span<const WeightedPoint> support, std::int64_t denominator);

    std::int64_t denominator() const { return n_; }

    /// w^(z/N). z may be any integers; it is reduced mod N.
    double evaluate(std::int64_t z1, std::int64_t z2) const;

    /// w^((z1, z2)/N) for every z2 in [0, N), written to row (size N).
    /// Phases advance incrementally, so a row costs one add per entry and column.
    void evaluate_row(std::int64_t z1, std::span<double> row) const;

    /// Entries after folding x with -x (cos is even) and merging collisions.
    std::size_t folded_size() const { return entries_.size(); }

private:
    struct Entry {
        std::int64_t x;
        std::int64_t y;
        double weight;
    };
    std::int64_t n_;
    std::vector<Entry> entries_;
    std::vector<double> cos_table_;  // cos(2 pi r / N) for r < N, when N is small
};

double fourier_at(std::span<const WeightedPoint> support, const TorusPoint& u);
double fourier_at(const WeightedGeneratorSet& w, const TorusPoint& u);

/// Eigenvalues lambda_z = w^(z/m) of the circulant B_{u,v} = w(u - v) on
/// Z_m^2, indexed by z1*m + z2. Throws DegenerateQuotient if a support vector
/// is = (0,0) mod m. Generators that collide mod m are merged additively.
std::vector<double> circulant_spectrum(std::span<const WeightedPoint> support, std::int64_t m);
std::vector<double> circulant_spectrum(const WeightedGeneratorSet& w, std::int64_t m);

// ---------------------------------------------------------------------------
// Torus infimum

struct RefinementConfig {
    int levels = 12;            ///< number of refinement rounds after the grid
    std::int64_t factor = 2;    ///< denominator multiplier per round
    int radius = 2;             ///< coordinate-descent step range per axis
    int starts = 64;            ///< best grid points to refine from
    bool certify = false;
    double target_separation = 0.0;  ///< certified iff Lipschitz slack < this
    double max_slack = 1.0;          ///< slack above this: certification infeasible
    unsigned threads = 1;
};

enum class CertificationStatus {
    NotRequested,
    Certified,
    InsufficientSeparation,  ///< slack computed but not below the target
    Infeasible,              ///< slack above max_slack (CertificationInfeasible)
};

struct InfimumEstimate {
    double value = 0.0;        ///< best value found (an upper bound on the true inf)
    TorusPoint argmin = TorusPoint::origin();
    double grid_min = 0.0;
    TorusPoint grid_argmin = TorusPoint::origin();
    bool certified = false;
    CertificationStatus status = CertificationStatus::NotRequested;
    std::optional<double> lipschitz_bound;      ///< L = 2 pi sum |w(x)| |x|_1
    std::optional<double> certified_lower_bound;  ///< grid_min - L / (2N)
};

/// Lipschitz constant of w^ with respect to the sup norm on the torus.
double lipschitz_constant(std::span<const WeightedPoint> support);

InfimumEstimate estimate_infimum(std::span<const WeightedPoint> support, std::int64_t grid_n,
                                 const RefinementConfig& config = {});
InfimumEstimate estimate_infimum(const WeightedGeneratorSet& w, std::int64_t grid_n,
                                 const RefinementConfig& config = {});

// ---------------------------------------------------------------------------
// Ratio bound and chromatic number

/// -inf / (sup - inf). Throws VacuousBound unless inf < 0 < sup.
double ratio_bound(double sup, double inf);
Rational ratio_bound(const Rational& sup, const Rational& inf);

struct ChiBound {
    std::int64_t value = 1;
    bool heuristic = false;
};

/// ceil(1/alpha) for an exact rational alpha in (0, 1].
ChiBound chi_lower_bound(const Rational& alpha);

/// ceil(1/(alpha + margin)) for a floating alpha; a positive margin marks the
/// result heuristic. A 1e-9 guard absorbs rounding at integer reciprocals.
ChiBound chi_lower_bound(double alpha, double margin);

struct SpectralCertificate {
    ModularDistanceParams params;
    std::int64_t n = 0;
    std::int64_t grid_n = 0;
    Rational sup_value;               ///< = 2k, exactly
    InfimumEstimate infimum;
    double alpha_ratio_bound = 1.0;
    double safety_margin = 0.01;
    ChiBound chi;
};

/// Full pipeline for one (params, n): weight function, infimum estimate,
/// ratio bound and chromatic bound. A certified infimum is used as-is; an
/// uncertified one gets the safety margin and a heuristic label.
SpectralCertificate make_certificate(const ModularDistanceParams& params, std::int64_t n,
                                     std::int64_t grid_n, const RefinementConfig& config = {},
                                     double safety_margin = 0.01);

ChiBound chi_lower_bound(const SpectralCertificate& cert);

// ---------------------------------------------------------------------------
// Kernel diagnostics

/// (1/(n+1)) sum_{j<n} ((n-j)/n) cos(2 pi (jq+1) theta). Equals 1/2 at theta = 0.
double fejer_kernel(std::int64_t n, std::int64_t q, double theta);

/// (1 - cos l) / l^2, or its limit 1/2 at l = 0 when allow_limit is set.
double integral_comparison(double ell, bool allow_limit = false);

}  // namespace mdg
