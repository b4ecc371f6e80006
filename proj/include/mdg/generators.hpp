#pragma once

// Generating sets of the modular-distance Cayley graphs on Z^2.
//
//   D      = { ±(q^(2k+t) - q^(2k-t), -p q^t - 2 q^(2k)) : t = 0..2k-1 }
//   C      = union over j >= 0 of (jq+1) D
//   C_n    = union over j <  n of (jq+1) D
//   w_n(c) = (n-j) / (n(n+1))   for c in (jq+1) D
//
// Every vector of C is at Euclidean distance = p (mod q) under the embedding
// in embedding.hpp, and the Cayley graph G(Z^2, C) is triangle-free.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mdg/arith.hpp"

namespace mdg {

/// The triple (p, q, k). Construct through make(), which enforces
/// 0 < p < q, gcd(p, q) = 1 and k >= 1.
class ModularDistanceParams {
public:
    static ModularDistanceParams make(std::int64_t p, std::int64_t q, std::int64_t k);

    std::int64_t p() const { return p_; }
    std::int64_t q() const { return q_; }
    std::int64_t k() const { return k_; }

    /// Number of atoms in D, i.e. 4k.
    std::size_t atom_count() const { return static_cast<std::size_t>(4 * k_); }

    friend bool operator==(const ModularDistanceParams&, const ModularDistanceParams&) = default;

private:
    ModularDistanceParams(std::int64_t p, std::int64_t q, std::int64_t k) : p_(p), q_(q), k_(k) {}
    std::int64_t p_;
    std::int64_t q_;
    std::int64_t k_;
};

/// One element ±T_t of D.
struct GeneratorAtom {
    int t = 0;
    int sign = 1;
    Vec2 vector;

    friend bool operator==(const GeneratorAtom&, const GeneratorAtom&) = default;
};

/// (scale*q + 1) * atom, an element of C.
struct ScaledGenerator {
    GeneratorAtom atom;
    std::int64_t scale = 0;
    Vec2 vector;

    friend bool operator==(const ScaledGenerator&, const ScaledGenerator&) = default;
};

/// A support vector with its weight. Spectral and quotient code consume
/// plain spans of these so they also work on hand-built test sets.
struct WeightedPoint {
    Vec2 x;
    Rational weight;
};

/// C_n together with w_n. Entry order: scale ascending, then t ascending,
/// then + before -.
class WeightedGeneratorSet {
public:
    WeightedGeneratorSet(ModularDistanceParams params, std::int64_t n,
                         std::vector<ScaledGenerator> generators, std::vector<Rational> weights);

    const ModularDistanceParams& params() const { return params_; }
    std::int64_t n() const { return n_; }
    const std::vector<ScaledGenerator>& generators() const { return generators_; }
    const std::vector<Rational>& weights() const { return weights_; }
    std::size_t size() const { return generators_.size(); }

    std::vector<WeightedPoint> points() const;
    Rational total_weight() const;

    /// Weight of x, or nullopt if x is outside the support.
    std::optional<Rational> weight_of(const Vec2& x) const;

    /// x in support implies -x in support with the same weight.
    bool is_centrally_symmetric() const;

private:
    ModularDistanceParams params_;
    std::int64_t n_;
    std::vector<ScaledGenerator> generators_;
    std::vector<Rational> weights_;
};

/// The single atom (t, sign), computed directly from the closed form.
GeneratorAtom make_atom(const ModularDistanceParams& params, int t, int sign);

/// All 4k atoms of D ordered by t ascending, + before -.
std::vector<GeneratorAtom> base_generators(const ModularDistanceParams& params);

/// The 4kn vectors of C_n, ordered by scale, then atom order.
std::vector<ScaledGenerator> truncated_generators(const ModularDistanceParams& params, std::int64_t n);

WeightedGeneratorSet weight_function(const ModularDistanceParams& params, std::int64_t n);

/// The weight (n-j)/(n(n+1)) carried by every scale-j generator.
Rational scale_weight(std::int64_t n, std::int64_t j);

/// Exact membership in the infinite set C: v = (jq+1) d for some d in D, j >= 0.
/// Returns the matching decomposition when it exists.
std::optional<ScaledGenerator> decompose_in_c(const ModularDistanceParams& params, const Vec2& v);
bool in_c(const ModularDistanceParams& params, const Vec2& v);

// ---------------------------------------------------------------------------
// Triangle-freeness

enum class TriangleMethod { BruteForce, ValuationArgument };
enum class Verdict { Pass, Fail };

/// c1 + c2 = c3 with c1, c2 in the scanned truncation and c3 in C.
struct TriangleWitness {
    Vec2 c1;
    Vec2 c2;
    Vec2 c3;
};

struct TriangleFreenessCertificate {
    ModularDistanceParams params;
    std::int64_t max_scale = 0;   ///< scales 0..max_scale-1 were scanned
    std::size_t atom_count = 0;   ///< |D|
    std::size_t scanned_vectors = 0;
    TriangleMethod method = TriangleMethod::BruteForce;
    Verdict verdict = Verdict::Pass;
    std::optional<TriangleWitness> witness;
};

/// First pair (in scan order) with c1 + c2 accepted by `member`, or nullopt.
/// Generic core of the brute-force check; works on any finite set.
template <typename Membership>
std::optional<TriangleWitness> find_sum_in(std::span<const Vec2> set, Membership&& member) {
    for (std::size_t a = 0; a < set.size(); ++a) {
        for (std::size_t b = a; b < set.size(); ++b) {
            Vec2 s = set[a] + set[b];
            if (s.is_zero()) continue;
            if (member(s)) return TriangleWitness{set[a], set[b], std::move(s)};
        }
    }
    return std::nullopt;
}

/// Scans every pair from C_{max_scale} and tests the sum against the exact
/// infinite-set membership oracle.
TriangleFreenessCertificate triangle_free_check_bruteforce(const ModularDistanceParams& params,
                                                           std::int64_t max_scale);

/// Same scan, but the candidate atom for each sum is read off the q-adic
/// valuation of its second coordinate: (jq+1) T_t has y-valuation exactly t,
/// so only ±T_t needs an exact-division test.
TriangleFreenessCertificate triangle_free_check_valuation(const ModularDistanceParams& params,
                                                         std::int64_t max_scale);

/// Re-checks a witness: c1 + c2 = c3 and all three lie in C.
bool witness_is_valid(const ModularDistanceParams& params, const TriangleWitness& w);

// ---------------------------------------------------------------------------
// Integer relation among three atoms

struct IntegerRelation {
    BigInt s1;
    BigInt s2;
    BigInt s3;
};

/// Primitive relation s1 T1 + s2 T2 + s3 T3 = 0 among three +1 atoms with
/// strictly increasing t, normalised so the first nonzero coefficient is
/// positive. Throws VerificationFailure unless q | s1, q | s3, gcd(q, s2) = 1.
IntegerRelation integer_relation_divisibility(const ModularDistanceParams& params,
                                              const GeneratorAtom& a1, const GeneratorAtom& a2,
                                              const GeneratorAtom& a3);

}  // namespace mdg
