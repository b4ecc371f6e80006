#include "mdg/embedding.hpp"

#include <cmath>
#include <sstream>

#include "mdg/errors.hpp"

namespace mdg {

EmbeddingForm::EmbeddingForm(const ModularDistanceParams& params)
    : params_(params), cross_(Rational(BigInt(params.p()), ipow(params.q(), static_cast<unsigned>(2 * params.k())))) {}

Rational EmbeddingForm::operator()(const Vec2& delta) const {
    return Rational(delta.x * delta.x + delta.y * delta.y) + cross_ * Rational(delta.x * delta.y);
}

Rational squared_distance(const ModularDistanceParams& params, const Vec2& delta) {
    return EmbeddingForm(params)(delta);
}

BigInt expected_distance(const ModularDistanceParams& params, const GeneratorAtom& atom, std::int64_t scale) {
    if (scale < 0) throw InvalidArgument("expected_distance: scale must be non-negative");
    const auto k2 = static_cast<unsigned>(2 * params.k());
    const auto l = static_cast<unsigned>(atom.t);
    if (atom.t < 0 || l >= k2) throw InvalidArgument("expected_distance: atom index outside [0, 2k-1]");
    const std::int64_t q = params.q();
    return (BigInt(scale) * q + 1) * (ipow(q, k2 + l) + ipow(q, k2 - l) + params.p());
}

namespace {

[[noreturn]] void fail(const ScaledGenerator& g, const Rational& sq, const BigInt& expected, const char* why) {
    std::ostringstream msg;
    msg << "embedding check failed for generator (" << g.vector.x << ", " << g.vector.y << ") [t=" << g.atom.t
        << ", sign=" << g.atom.sign << ", j=" << g.scale << "]: " << why << "; squared distance "
        << to_fraction_string(sq) << ", expected distance " << expected;
    throw VerificationFailure(msg.str());
}

}  // namespace

EdgeDistanceReport verify_generator(const ModularDistanceParams& params, const ScaledGenerator& generator) {
    const Rational sq = squared_distance(params, generator.vector);
    const BigInt expected = expected_distance(params, generator.atom, generator.scale);

    const auto num_root = exact_sqrt(boost::multiprecision::numerator(sq));
    const auto den_root = exact_sqrt(boost::multiprecision::denominator(sq));
    if (!num_root || !den_root) fail(generator, sq, expected, "squared distance is not a perfect square");
    if (*den_root != 1) fail(generator, sq, expected, "distance is not an integer");
    if (*num_root != expected) fail(generator, sq, expected, "distance differs from the closed form");

    const std::int64_t residue = mod_floor(*num_root, params.q());
    if (residue != params.p()) fail(generator, sq, expected, "distance is not = p (mod q)");

    return EdgeDistanceReport{generator, sq, *num_root, residue, true};
}

std::vector<EdgeDistanceReport> verify_embedding(const ModularDistanceParams& params, std::int64_t n) {
    std::vector<EdgeDistanceReport> reports;
    for (const auto& g : truncated_generators(params, n)) reports.push_back(verify_generator(params, g));
    return reports;
}

std::pair<double, double> embed_point(const ModularDistanceParams& params, const Vec2& lattice_point) {
    const double q2k = std::pow(static_cast<double>(params.q()), static_cast<double>(2 * params.k()));
    const double p = static_cast<double>(params.p());
    const double e2x = p / (2.0 * q2k);
    const double e2y = std::sqrt(1.0 - (p * p) / (4.0 * q2k * q2k));
    const double x = lattice_point.x.convert_to<double>();
    const double y = lattice_point.y.convert_to<double>();
    return {x + y * e2x, y * e2y};
}

}  // namespace mdg
