#include "mdg/quotient.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>

#include "mdg/errors.hpp"
#include "mdg/spectral.hpp"

namespace mdg {

namespace {

constexpr double kDominanceTolerance = 1e-9;

Residue reduce(const Vec2& x, std::int64_t m) { return {mod_floor(x.x, m), mod_floor(x.y, m)}; }

Residue negate(Residue r, std::int64_t m) { return {(m - r.a) % m, (m - r.b) % m}; }

// Fixed-capacity vertex bitset for the branch-and-bound.
class VertexSet {
public:
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool empty() const {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
    }
    std::size_t first() const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
        return kSolverCapacity;
    }
    std::size_t count_common(const VertexSet& o) const {
        std::size_t c = 0;
        for (std::size_t k = 0; k < words_.size(); ++k) c += static_cast<std::size_t>(std::popcount(words_[k] & o.words_[k]));
        return c;
    }
    std::size_t next(std::size_t i) const {
        for (std::size_t k = i >> 6; k < words_.size(); ++k) {
            std::uint64_t w = words_[k];
            if (k == (i >> 6)) w &= ~std::uint64_t{0} << (i & 63);
            if (w) return k * 64 + static_cast<std::size_t>(std::countr_zero(w));
        }
        return kSolverCapacity;
    }
    VertexSet& operator&=(const VertexSet& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }
    VertexSet without(const VertexSet& o) const {
        VertexSet r = *this;
        for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] &= ~o.words_[k];
        return r;
    }

private:
    std::array<std::uint64_t, kSolverCapacity / 64> words_{};
};

// Maximum independent set. Vertices of degree at most one are taken
// outright; otherwise branches on a vertex of maximum degree, pruning with a
// greedy clique-cover bound.
class MisSolver {
public:
    explicit MisSolver(std::vector<VertexSet> adjacency) : adj_(std::move(adjacency)) {}

    std::vector<std::size_t> solve(std::size_t root, VertexSet candidates) {
        current_ = {root};
        best_ = current_;
        expand(candidates);
        return best_;
    }

private:
    void expand(VertexSet p) {
        const std::size_t depth = current_.size();
        take_low_degree(p);
        if (p.empty()) {
            if (current_.size() > best_.size()) best_ = current_;
        } else {
            branch(p);
        }
        current_.resize(depth);
    }

    void take_low_degree(VertexSet& p) {
        for (std::size_t v = p.first(); v < kSolverCapacity;) {
            if (p.count_common(adj_[v]) <= 1) {
                current_.push_back(v);
                p = p.without(adj_[v]);
                p.reset(v);
                v = p.first();
            } else {
                v = p.next(v + 1);
            }
        }
    }

    std::size_t cover_bound(VertexSet rest) const {
        std::size_t cliques = 0;
        while (!rest.empty()) {
            ++cliques;
            VertexSet cand = rest;
            while (!cand.empty()) {
                const std::size_t v = cand.first();
                rest.reset(v);
                cand.reset(v);
                cand &= adj_[v];
            }
        }
        return cliques;
    }

    void branch(VertexSet p) {
        if (current_.size() + cover_bound(p) <= best_.size()) return;
        std::size_t pivot = p.first();
        std::size_t degree = 0;
        for (std::size_t v = pivot; v < kSolverCapacity; v = p.next(v + 1)) {
            const std::size_t d = p.count_common(adj_[v]);
            if (d > degree) {
                degree = d;
                pivot = v;
            }
        }
        current_.push_back(pivot);
        VertexSet taken = p.without(adj_[pivot]);
        taken.reset(pivot);
        expand(taken);
        current_.pop_back();
        p.reset(pivot);
        expand(p);
    }

    std::vector<VertexSet> adj_;
    std::vector<std::size_t> current_;
    std::vector<std::size_t> best_;
};

}  // namespace

// ---------------------------------------------------------------------------
// QuotientCayleyGraph

QuotientCayleyGraph::QuotientCayleyGraph(std::int64_t m, std::vector<Residue> connection,
                                         std::vector<Rational> weights, std::vector<Collision> collisions)
    : m_(m),
      connection_(std::move(connection)),
      weights_(std::move(weights)),
      collisions_(std::move(collisions)),
      member_(static_cast<std::size_t>(m * m), 0) {
    for (const auto& r : connection_) member_[index(r)] = 1;
}

QuotientCayleyGraph QuotientCayleyGraph::from_weighted_set(const WeightedGeneratorSet& w, std::int64_t m) {
    if (m < 2) throw InvalidArgument("quotient modulus must be at least 2");
    std::map<Residue, std::pair<Rational, std::size_t>> merged;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Vec2& x = w.generators()[i].vector;
        const Residue r = reduce(x, m);
        if (r.a == 0 && r.b == 0)
            throw DegenerateQuotient("generator (" + to_decimal_string(x.x) + ", " + to_decimal_string(x.y) +
                                     ") is 0 mod " + std::to_string(m));
        auto& slot = merged[r];
        slot.first += w.weights()[i];
        ++slot.second;
    }
    std::vector<Residue> connection;
    std::vector<Rational> weights;
    std::vector<Collision> collisions;
    for (const auto& [r, entry] : merged) {
        connection.push_back(r);
        weights.push_back(entry.first);
        if (entry.second > 1) collisions.push_back({r, entry.second});
    }
    return QuotientCayleyGraph(m, std::move(connection), std::move(weights), std::move(collisions));
}

QuotientCayleyGraph QuotientCayleyGraph::from_connection_set(
    std::int64_t m, const std::vector<std::pair<Residue, Rational>>& weighted) {
    if (m < 2) throw InvalidArgument("quotient modulus must be at least 2");
    if (weighted.empty()) throw InvalidArgument("connection set must be nonempty");
    std::map<Residue, Rational> merged;
    for (const auto& [r, wt] : weighted) {
        const Residue c{((r.a % m) + m) % m, ((r.b % m) + m) % m};
        if (c.a == 0 && c.b == 0) throw InvalidArgument("connection set must not contain (0,0)");
        merged[c] += wt;
    }
    for (const auto& [r, wt] : merged) {
        auto it = merged.find(negate(r, m));
        if (it == merged.end() || it->second != wt)
            throw InvalidArgument("connection set must be closed under negation with symmetric weights");
    }
    std::vector<Residue> connection;
    std::vector<Rational> weights;
    for (const auto& [r, wt] : merged) {
        connection.push_back(r);
        weights.push_back(wt);
    }
    return QuotientCayleyGraph(m, std::move(connection), std::move(weights), {});
}

bool QuotientCayleyGraph::contains(Residue r) const {
    return r.a >= 0 && r.a < m_ && r.b >= 0 && r.b < m_ && member_[index(r)];
}

bool QuotientCayleyGraph::adjacent(Residue u, Residue v) const {
    return contains({((u.a - v.a) % m_ + m_) % m_, ((u.b - v.b) % m_ + m_) % m_});
}

Residue QuotientCayleyGraph::vertex(std::size_t i) const {
    const auto s = static_cast<std::int64_t>(i);
    return {s / m_, s % m_};
}

std::vector<WeightedPoint> QuotientCayleyGraph::weighted_residues() const {
    std::vector<WeightedPoint> out;
    out.reserve(connection_.size());
    for (std::size_t i = 0; i < connection_.size(); ++i)
        out.push_back({Vec2{connection_[i].a, connection_[i].b}, weights_[i]});
    return out;
}

QuotientCayleyGraph build_quotient(const WeightedGeneratorSet& w, std::int64_t m) {
    return QuotientCayleyGraph::from_weighted_set(w, m);
}

// ---------------------------------------------------------------------------
// Independence

bool is_independent(const QuotientCayleyGraph& g, const std::vector<Residue>& set) {
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (set[i] == set[j] || g.adjacent(set[i], set[j])) return false;
    return true;
}

IndependenceReport independence_number_exact(const QuotientCayleyGraph& g, std::size_t vertex_cap) {
    const std::size_t n = g.vertex_count();
    if (n > vertex_cap || n > kSolverCapacity)
        throw InstanceTooLarge("quotient has " + std::to_string(n) + " vertices; cap is " +
                               std::to_string(std::min(vertex_cap, kSolverCapacity)));

    std::vector<VertexSet> adjacency(n);
    for (std::size_t u = 0; u < n; ++u)
        for (const auto& s : g.connection_set()) {
            const Residue ru = g.vertex(u);
            const Residue rv{(ru.a + s.a) % g.modulus(), (ru.b + s.b) % g.modulus()};
            adjacency[u].set(g.index(rv));
        }

    // Translations are automorphisms, so some maximum independent set
    // contains vertex 0.
    VertexSet candidates;
    for (std::size_t v = 1; v < n; ++v) candidates.set(v);
    candidates = candidates.without(adjacency[0]);

    MisSolver solver(std::move(adjacency));
    const auto best = solver.solve(0, candidates);

    IndependenceReport report;
    report.m = g.modulus();
    report.connection_set = g.connection_set();
    report.collisions = g.collisions().size();
    for (auto v : best) report.witness.push_back(g.vertex(v));
    std::sort(report.witness.begin(), report.witness.end());
    report.alpha = static_cast<std::int64_t>(report.witness.size());
    report.density = Rational(BigInt(report.alpha), BigInt(static_cast<std::int64_t>(n)));
    return report;
}

IndependenceReport spectral_dominance_check(const QuotientCayleyGraph& g, std::size_t vertex_cap) {
    IndependenceReport report = independence_number_exact(g, vertex_cap);
    const auto lambda = circulant_spectrum(g.weighted_residues(), g.modulus());
    const auto [lo, hi] = std::minmax_element(lambda.begin(), lambda.end());
    report.lambda_min = *lo;
    report.lambda_max = *hi;
    report.spectral_ratio = ratio_bound(*hi, *lo);
    report.dominance_ok = to_double(report.density) <= *report.spectral_ratio + kDominanceTolerance;
    return report;
}

IndependenceReport spectral_dominance_check(const WeightedGeneratorSet& w, std::int64_t m, std::size_t vertex_cap) {
    return spectral_dominance_check(build_quotient(w, m), vertex_cap);
}

std::optional<QuotientTriangle> find_triangle(const QuotientCayleyGraph& g) {
    const std::int64_t m = g.modulus();
    for (const auto& s1 : g.connection_set())
        for (const auto& s2 : g.connection_set()) {
            const Residue s3{(s1.a + s2.a) % m, (s1.b + s2.b) % m};
            if (g.contains(s3)) return QuotientTriangle{s1, s2, s3};
        }
    return std::nullopt;
}

}  // namespace mdg
