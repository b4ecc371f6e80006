#pragma once

// Plane realisation of G(Z^2, C): the lattice map h(x, y) = x e1 + y e2 with
//
//     e1 = (1, 0),   e2 = (p / (2 q^(2k)), sqrt(1 - p^2 / (4 q^(4k)))).
//
// e2 is irrational, but |h(u) - h(v)|^2 is the rational quadratic form
//
//     Q(dx, dy) = dx^2 + dy^2 + (p / q^(2k)) dx dy,
//
// so every distance check here runs in exact arithmetic. For c = (jq+1) T_l
// the form evaluates to ((jq+1)(q^(2k+l) + q^(2k-l) + p))^2.

#include <cstdint>
#include <utility>
#include <vector>

#include "mdg/arith.hpp"
#include "mdg/generators.hpp"

namespace mdg {

/// The Gram form Q together with the parameters that define it.
class EmbeddingForm {
public:
    explicit EmbeddingForm(const ModularDistanceParams& params);

    const ModularDistanceParams& params() const { return params_; }
    /// Cross-term coefficient p / q^(2k).
    const Rational& cross_coefficient() const { return cross_; }

    Rational operator()(const Vec2& delta) const;

private:
    ModularDistanceParams params_;
    Rational cross_;
};

struct EdgeDistanceReport {
    ScaledGenerator generator;
    Rational squared_distance;
    BigInt distance;
    std::int64_t residue = 0;
    bool pass = false;
};

Rational squared_distance(const ModularDistanceParams& params, const Vec2& delta);

/// (jq+1) (q^(2k+l) + q^(2k-l) + p) for l = atom.t, j = scale.
BigInt expected_distance(const ModularDistanceParams& params, const GeneratorAtom& atom, std::int64_t scale);

/// Checks one generator: Q(vector) must be the square of an integer equal to
/// expected_distance(atom, scale), and that integer must be = p (mod q).
/// Throws VerificationFailure with both values otherwise.
EdgeDistanceReport verify_generator(const ModularDistanceParams& params, const ScaledGenerator& generator);

/// verify_generator over all of C_n, in generator order. Stops at the first
/// failure by throwing.
std::vector<EdgeDistanceReport> verify_embedding(const ModularDistanceParams& params, std::int64_t n);

/// Floating-point h(lattice_point); for export only, never for verification.
std::pair<double, double> embed_point(const ModularDistanceParams& params, const Vec2& lattice_point);

}  // namespace mdg
