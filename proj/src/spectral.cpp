#include "mdg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <thread>

#include "mdg/errors.hpp"

namespace mdg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::int64_t kCosTableLimit = std::int64_t{1} << 16;
constexpr std::int64_t kMaxDenominator = std::int64_t{1} << 40;

std::int64_t mulmod_add(std::int64_t a, std::int64_t x, std::int64_t b, std::int64_t y, std::int64_t n) {
    const __int128 s = static_cast<__int128>(a) * x + static_cast<__int128>(b) * y;
    auto r = static_cast<std::int64_t>(s % n);
    return r < 0 ? r + n : r;
}

// cos(2 pi r / n) for 0 <= r < n, folded into [0, n/2] so the argument stays small.
double phase_cos(std::int64_t r, std::int64_t n) {
    if (2 * r > n) r = n - r;
    return std::cos(kTwoPi * static_cast<double>(r) / static_cast<double>(n));
}

// Runs body(row) for row in [0, rows) on up to `threads` workers. Each row is
// processed independently, so results do not depend on the thread count.
template <typename Body>
void for_each_row(std::int64_t rows, unsigned threads, Body&& body) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::int64_t>(rows, 1))));
    if (threads == 1) {
        for (std::int64_t r = 0; r < rows; ++r) body(r);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (std::int64_t r = t; r < rows; r += threads) body(r);
        });
}

struct GridHit {
    double value;
    std::int64_t z1;
    std::int64_t z2;
};

bool hit_less(const GridHit& a, const GridHit& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.z1 != b.z1 ? a.z1 < b.z1 : a.z2 < b.z2;
}

struct Candidate {
    double value;
    TorusPoint point;
};

bool better(const Candidate& a, const Candidate& b) {
    if (a.value != b.value) return a.value < b.value;
    return lex_less(a.point.reduced(), b.point.reduced());
}

}  // namespace

// ---------------------------------------------------------------------------
// TorusPoint

TorusPoint TorusPoint::make(std::int64_t z1, std::int64_t z2, std::int64_t denominator) {
    if (denominator < 1) throw InvalidArgument("torus point denominator must be positive");
    auto canon = [denominator](std::int64_t z) {
        z %= denominator;
        return z < 0 ? z + denominator : z;
    };
    return TorusPoint(canon(z1), canon(z2), denominator);
}

TorusPoint TorusPoint::reduced() const {
    const std::int64_t g = std::gcd(std::gcd(z1_, z2_), n_);
    return TorusPoint(z1_ / g, z2_ / g, n_ / g);
}

bool lex_less(const TorusPoint& a, const TorusPoint& b) {
    const __int128 l1 = static_cast<__int128>(a.z1_) * b.n_;
    const __int128 r1 = static_cast<__int128>(b.z1_) * a.n_;
    if (l1 != r1) return l1 < r1;
    return static_cast<__int128>(a.z2_) * b.n_ < static_cast<__int128>(b.z2_) * a.n_;
}

// ---------------------------------------------------------------------------
// Evaluation

PhaseTable::PhaseTable(std::span<const WeightedPoint> support, std::int64_t denominator) : n_(denominator) {
    if (denominator < 1) throw InvalidArgument("phase table denominator must be positive");
    std::map<std::pair<std::int64_t, std::int64_t>, Rational> folded;
    for (const auto& p : support) {
        const std::int64_t x = mod_floor(p.x.x, n_);
        const std::int64_t y = mod_floor(p.x.y, n_);
        const std::pair<std::int64_t, std::int64_t> pos{x, y};
        const std::pair<std::int64_t, std::int64_t> neg{(n_ - x) % n_, (n_ - y) % n_};
        folded[std::min(pos, neg)] += p.weight;
    }
    entries_.reserve(folded.size());
    for (const auto& [r, w] : folded) entries_.push_back({r.first, r.second, to_double(w)});
    if (n_ <= kCosTableLimit) {
        cos_table_.resize(static_cast<std::size_t>(n_));
        for (std::int64_t r = 0; r < n_; ++r) cos_table_[static_cast<std::size_t>(r)] = phase_cos(r, n_);
    }
}

double PhaseTable::evaluate(std::int64_t z1, std::int64_t z2) const {
    double acc = 0.0;
    for (const auto& e : entries_) {
        const std::int64_t r = mulmod_add(z1, e.x, z2, e.y, n_);
        acc += e.weight * (cos_table_.empty() ? phase_cos(r, n_) : cos_table_[static_cast<std::size_t>(r)]);
    }
    return acc;
}

void PhaseTable::evaluate_row(std::int64_t z1, std::span<double> row) const {
    if (static_cast<std::int64_t>(row.size()) != n_) throw InvalidArgument("evaluate_row: row size must equal N");
    std::fill(row.begin(), row.end(), 0.0);
    for (const auto& e : entries_) {
        std::int64_t r = mulmod_add(z1, e.x, 0, 0, n_);
        for (auto& out : row) {
            out += e.weight * (cos_table_.empty() ? phase_cos(r, n_) : cos_table_[static_cast<std::size_t>(r)]);
            r += e.y;
            if (r >= n_) r -= n_;
        }
    }
}

double fourier_at(std::span<const WeightedPoint> support, const TorusPoint& u) {
    return PhaseTable(support, u.denominator()).evaluate(u.z1(), u.z2());
}

double fourier_at(const WeightedGeneratorSet& w, const TorusPoint& u) { return fourier_at(w.points(), u); }

std::vector<double> circulant_spectrum(std::span<const WeightedPoint> support, std::int64_t m) {
    if (m < 2) throw InvalidArgument("quotient modulus must be at least 2");
    for (const auto& p : support)
        if (mod_floor(p.x.x, m) == 0 && mod_floor(p.x.y, m) == 0)
            throw DegenerateQuotient("generator (" + to_decimal_string(p.x.x) + ", " + to_decimal_string(p.x.y) +
                                     ") is 0 mod " + std::to_string(m));
    const PhaseTable table(support, m);
    std::vector<double> lambda(static_cast<std::size_t>(m * m));
    for (std::int64_t z1 = 0; z1 < m; ++z1)
        for (std::int64_t z2 = 0; z2 < m; ++z2) lambda[static_cast<std::size_t>(z1 * m + z2)] = table.evaluate(z1, z2);
    return lambda;
}

std::vector<double> circulant_spectrum(const WeightedGeneratorSet& w, std::int64_t m) {
    return circulant_spectrum(w.points(), m);
}

// ---------------------------------------------------------------------------
// Infimum search

double lipschitz_constant(std::span<const WeightedPoint> support) {
    double total = 0.0;
    for (const auto& p : support) {
        const Rational l1 = Rational(abs(p.x.x) + abs(p.x.y));
        total += std::abs(to_double(p.weight)) * to_double(l1);
    }
    return kTwoPi * total;
}

InfimumEstimate estimate_infimum(std::span<const WeightedPoint> support, std::int64_t grid_n,
                                 const RefinementConfig& config) {
    if (grid_n < 2) throw InvalidArgument("grid resolution must be at least 2");
    if (config.factor < 2) throw InvalidArgument("refinement factor must be at least 2");
    if (config.levels < 0 || config.radius < 1 || config.starts < 1)
        throw InvalidArgument("refinement levels, radius and starts must be positive");

    InfimumEstimate out;

    // Grid pass. w^(-u) = w^(u), and for 0 < z1 < N/2 the lexicographically
    // smaller of u and -u is in the lower half, so rows 0..N/2 suffice.
    const PhaseTable grid(support, grid_n);
    const std::int64_t rows = grid_n / 2 + 1;
    const auto keep = static_cast<std::size_t>(config.starts);
    std::vector<std::vector<GridHit>> per_row(static_cast<std::size_t>(rows));
    for_each_row(rows, config.threads, [&](std::int64_t z1) {
        std::vector<double> row(static_cast<std::size_t>(grid_n));
        grid.evaluate_row(z1, row);
        std::vector<GridHit> hits;
        hits.reserve(row.size());
        for (std::int64_t z2 = 0; z2 < grid_n; ++z2) hits.push_back({row[static_cast<std::size_t>(z2)], z1, z2});
        const auto top = std::min(keep, hits.size());
        std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(top), hits.end(), hit_less);
        hits.resize(top);
        per_row[static_cast<std::size_t>(z1)] = std::move(hits);
    });
    std::vector<GridHit> starts;
    for (auto& r : per_row) starts.insert(starts.end(), r.begin(), r.end());
    const auto top = std::min(keep, starts.size());
    std::partial_sort(starts.begin(), starts.begin() + static_cast<std::ptrdiff_t>(top), starts.end(), hit_less);
    starts.resize(top);

    out.grid_min = starts.front().value;
    out.grid_argmin = TorusPoint::make(starts.front().z1, starts.front().z2, grid_n).reduced();

    // Refinement: coordinate descent over successively finer denominators.
    std::vector<PhaseTable> tables;
    std::int64_t den = grid_n;
    for (int level = 0; level < config.levels; ++level) {
        if (den > kMaxDenominator / config.factor) break;
        den *= config.factor;
        tables.emplace_back(support, den);
    }

    std::vector<Candidate> refined(starts.size(), Candidate{0.0, TorusPoint::origin()});
    for_each_row(static_cast<std::int64_t>(starts.size()), config.threads, [&](std::int64_t s) {
        const GridHit& start = starts[static_cast<std::size_t>(s)];
        std::int64_t z1 = start.z1;
        std::int64_t z2 = start.z2;
        double best = start.value;
        for (const auto& table : tables) {
            z1 *= config.factor;
            z2 *= config.factor;
            for (int iter = 0; iter < 100000; ++iter) {
                double step_best = best;
                std::int64_t n1 = z1, n2 = z2;
                for (int axis = 0; axis < 2; ++axis)
                    for (int d = -config.radius; d <= config.radius; ++d) {
                        if (d == 0) continue;
                        const std::int64_t c1 = axis == 0 ? z1 + d : z1;
                        const std::int64_t c2 = axis == 1 ? z2 + d : z2;
                        const double v = table.evaluate(c1, c2);
                        if (v < step_best) {
                            step_best = v;
                            n1 = c1;
                            n2 = c2;
                        }
                    }
                if (step_best >= best) break;
                best = step_best;
                z1 = n1;
                z2 = n2;
            }
        }
        const std::int64_t final_den = tables.empty() ? grid_n : tables.back().denominator();
        refined[static_cast<std::size_t>(s)] = Candidate{best, TorusPoint::make(z1, z2, final_den).reduced()};
    });

    Candidate best{out.grid_min, out.grid_argmin};
    for (const auto& c : refined)
        if (better(c, best)) best = c;
    out.value = best.value;
    out.argmin = best.point.reduced();

    if (config.certify) {
        const double lip = lipschitz_constant(support);
        const double slack = lip / (2.0 * static_cast<double>(grid_n));
        out.lipschitz_bound = lip;
        if (slack > config.max_slack) {
            out.status = CertificationStatus::Infeasible;
        } else {
            out.certified_lower_bound = out.grid_min - slack;
            out.certified = config.target_separation > slack;
            out.status = out.certified ? CertificationStatus::Certified : CertificationStatus::InsufficientSeparation;
        }
    }
    return out;
}

InfimumEstimate estimate_infimum(const WeightedGeneratorSet& w, std::int64_t grid_n, const RefinementConfig& config) {
    return estimate_infimum(w.points(), grid_n, config);
}

// ---------------------------------------------------------------------------
// Ratio and chromatic bounds

double ratio_bound(double sup, double inf) {
    if (!(inf < 0.0)) throw VacuousBound("ratio bound needs a negative infimum");
    if (!(sup > 0.0)) throw VacuousBound("ratio bound needs a positive supremum");
    return -inf / (sup - inf);
}

Rational ratio_bound(const Rational& sup, const Rational& inf) {
    if (inf >= 0) throw VacuousBound("ratio bound needs a negative infimum");
    if (sup <= 0) throw VacuousBound("ratio bound needs a positive supremum");
    return -inf / (sup - inf);
}

ChiBound chi_lower_bound(const Rational& alpha) {
    if (alpha <= 0 || alpha > 1) throw InvalidArgument("independence ratio bound must lie in (0, 1]");
    const BigInt num = boost::multiprecision::numerator(alpha);
    const BigInt den = boost::multiprecision::denominator(alpha);
    const BigInt ceil = (den + num - 1) / num;
    return ChiBound{static_cast<std::int64_t>(ceil), false};
}

ChiBound chi_lower_bound(double alpha, double margin) {
    if (!(alpha > 0.0) || alpha > 1.0) throw InvalidArgument("independence ratio bound must lie in (0, 1]");
    if (margin < 0.0) throw InvalidArgument("safety margin must be non-negative");
    const double padded = std::min(1.0, alpha + margin);
    const auto value = static_cast<std::int64_t>(std::ceil(1.0 / padded - 1e-9));
    return ChiBound{std::max<std::int64_t>(1, value), margin > 0.0};
}

ChiBound chi_lower_bound(const SpectralCertificate& cert) {
    return chi_lower_bound(cert.alpha_ratio_bound, cert.infimum.certified ? 0.0 : cert.safety_margin);
}

SpectralCertificate make_certificate(const ModularDistanceParams& params, std::int64_t n, std::int64_t grid_n,
                                     const RefinementConfig& config, double safety_margin) {
    const auto w = weight_function(params, n);
    SpectralCertificate cert{params, n, grid_n, w.total_weight(), {}, 1.0, safety_margin, {}};
    cert.infimum = estimate_infimum(w, grid_n, config);
    const double inf = cert.infimum.certified ? *cert.infimum.certified_lower_bound : cert.infimum.value;
    cert.alpha_ratio_bound = ratio_bound(to_double(cert.sup_value), inf);
    cert.chi = chi_lower_bound(cert);
    return cert;
}

// ---------------------------------------------------------------------------
// Kernel diagnostics

double fejer_kernel(std::int64_t n, std::int64_t q, double theta) {
    if (n < 1 || q < 1) throw InvalidArgument("fejer_kernel: n and q must be positive");
    // Integer-weighted sum divided once at the end: exact 1/2 at theta = 0.
    double acc = 0.0;
    for (std::int64_t j = 0; j < n; ++j) {
        const double phase = std::fmod(static_cast<double>(j * q + 1) * theta, 1.0);
        acc += static_cast<double>(n - j) * std::cos(kTwoPi * phase);
    }
    return acc / (static_cast<double>(n) * static_cast<double>(n + 1));
}

double integral_comparison(double ell, bool allow_limit) {
    if (ell == 0.0) {
        if (allow_limit) return 0.5;
        throw InvalidArgument("integral_comparison: ell must be nonzero");
    }
    // 1 - cos l = 2 sin^2(l/2): no cancellation near 0, never negative.
    const double s = std::sin(0.5 * ell) / ell;
    return 2.0 * s * s;
}

}  // namespace mdg
