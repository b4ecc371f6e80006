#pragma once

// Finite quotients G(Z_m^2, S) of the Cayley graphs, with exact independence
// numbers and the spectral ratio-bound comparison
//
//     alpha / m^2  <=  -lambda_min / (lambda_max - lambda_min)
//
// for the weighted circulant B_{u,v} = w(u - v).
//
// Quotients may contain triangles even though G(Z^2, C) does not: reducing
// mod m can create new additive relations among generators.

#include <cstdint>
#include <optional>
#include <vector>

#include "mdg/arith.hpp"
#include "mdg/generators.hpp"

namespace mdg {

/// Element of Z_m^2, components in [0, m).
struct Residue {
    std::int64_t a = 0;
    std::int64_t b = 0;

    friend auto operator<=>(const Residue&, const Residue&) = default;
};

/// Several distinct generators landing on the same residue.
struct Collision {
    Residue residue;
    std::size_t multiplicity = 0;
};

class QuotientCayleyGraph {
public:
    /// Reduces the support of w mod m. Collisions merge weights additively.
    /// Throws DegenerateQuotient if any generator is = (0,0) mod m.
    static QuotientCayleyGraph from_weighted_set(const WeightedGeneratorSet& w, std::int64_t m);

    /// Hand-built connection set. Must be nonempty, avoid 0, and be closed
    /// under negation with symmetric weights; duplicates merge additively.
    static QuotientCayleyGraph from_connection_set(std::int64_t m,
                                                   const std::vector<std::pair<Residue, Rational>>& weighted);

    std::int64_t modulus() const { return m_; }
    std::size_t vertex_count() const { return static_cast<std::size_t>(m_ * m_); }
    std::size_t degree() const { return connection_.size(); }

    /// Sorted lexicographically; weights_ is parallel.
    const std::vector<Residue>& connection_set() const { return connection_; }
    const std::vector<Rational>& weights() const { return weights_; }
    const std::vector<Collision>& collisions() const { return collisions_; }

    bool contains(Residue r) const;
    bool adjacent(Residue u, Residue v) const;

    std::size_t index(Residue r) const { return static_cast<std::size_t>(r.a * m_ + r.b); }
    Residue vertex(std::size_t i) const;

    /// Merged weights as support points, for the circulant spectrum.
    std::vector<WeightedPoint> weighted_residues() const;

private:
    QuotientCayleyGraph(std::int64_t m, std::vector<Residue> connection, std::vector<Rational> weights,
                        std::vector<Collision> collisions);

    std::int64_t m_;
    std::vector<Residue> connection_;
    std::vector<Rational> weights_;
    std::vector<Collision> collisions_;
    std::vector<char> member_;
};

QuotientCayleyGraph build_quotient(const WeightedGeneratorSet& w, std::int64_t m);

struct IndependenceReport {
    std::int64_t m = 0;
    std::vector<Residue> connection_set;
    std::size_t collisions = 0;
    std::int64_t alpha = 0;
    Rational density;
    std::vector<Residue> witness;  ///< sorted lexicographically
    std::optional<double> lambda_min;
    std::optional<double> lambda_max;
    std::optional<double> spectral_ratio;
    std::optional<bool> dominance_ok;
};

inline constexpr std::size_t kDefaultVertexCap = 100;
/// Hard ceiling of the bitset solver, regardless of the configured cap.
inline constexpr std::size_t kSolverCapacity = 256;

/// Exact maximum independent set by branch-and-bound with greedy clique-cover
/// bounds. Throws InstanceTooLarge when m^2 exceeds vertex_cap.
IndependenceReport independence_number_exact(const QuotientCayleyGraph& g,
                                             std::size_t vertex_cap = kDefaultVertexCap);

/// Exact alpha plus the circulant spectrum of the merged weights; sets
/// dominance_ok to (density <= ratio + 1e-9).
IndependenceReport spectral_dominance_check(const QuotientCayleyGraph& g,
                                            std::size_t vertex_cap = kDefaultVertexCap);
IndependenceReport spectral_dominance_check(const WeightedGeneratorSet& w, std::int64_t m,
                                            std::size_t vertex_cap = kDefaultVertexCap);

bool is_independent(const QuotientCayleyGraph& g, const std::vector<Residue>& set);

/// Three connection-set elements s1 + s2 = s3, i.e. a triangle {0, s1, s3}.
struct QuotientTriangle {
    Residue s1;
    Residue s2;
    Residue s3;
};
std::optional<QuotientTriangle> find_triangle(const QuotientCayleyGraph& g);

}  // namespace mdg
