// Acceptance suite. Prints one PASS/FAIL line per criterion; exits nonzero if
// any selected criterion fails. Usage: acceptance [criterion ...]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mdg/cli.hpp"
#include "mdg/embedding.hpp"
#include "mdg/errors.hpp"
#include "mdg/generators.hpp"
#include "mdg/quotient.hpp"
#include "mdg/spectral.hpp"
#include "oracles.hpp"

using namespace mdg;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::vector<ModularDistanceParams> sweep_params(std::int64_t max_k) {
    std::vector<ModularDistanceParams> out;
    for (std::int64_t q = 2; q <= 5; ++q)
        for (std::int64_t p = 1; p < q; ++p)
            if (std::gcd(p, q) == 1)
                for (std::int64_t k = 1; k <= max_k; ++k) out.push_back(ModularDistanceParams::make(p, q, k));
    return out;
}

std::string fmt(double x, int prec = 6) {
    std::ostringstream s;
    s.precision(prec);
    s << std::fixed << x;
    return s.str();
}

std::string sci(double x) {
    std::ostringstream s;
    s.precision(2);
    s << std::scientific << x;
    return s.str();
}

// 1. Exact embedding verification.
Outcome embedding_sweep() {
    Outcome o;
    std::size_t checked = 0;
    for (const auto& params : sweep_params(3))
        for (std::int64_t n = 1; n <= 8; ++n) {
            std::vector<EdgeDistanceReport> reports;
            try {
                reports = verify_embedding(params, n);
            } catch (const VerificationFailure& e) {
                o.pass = false;
                o.detail = e.what();
                return o;
            }
            if (reports.size() != static_cast<std::size_t>(4 * params.k() * n)) o.pass = false;
            // Integer form of the Gram identity: 4 q^(2k) Q = 4 q^(2k)(x^2 + y^2) + 4 p x y.
            const BigInt q2k = ipow(params.q(), static_cast<unsigned>(2 * params.k()));
            for (const auto& r : reports) {
                const auto& x = r.generator.vector;
                const BigInt lhs = 4 * q2k * (x.x * x.x + x.y * x.y) + 4 * params.p() * x.x * x.y;
                const BigInt d = expected_distance(params, r.generator.atom, r.generator.scale);
                const bool ok = lhs == 4 * q2k * d * d && r.distance == d && mod_floor(d, params.q()) == params.p();
                if (!ok) {
                    o.pass = false;
                    o.detail = "mismatch at (" + to_decimal_string(x.x) + ", " + to_decimal_string(x.y) + ")";
                    return o;
                }
                ++checked;
            }
        }
    o.detail = std::to_string(checked) + " generator checks, zero tolerance";
    return o;
}

// 2. Total-weight identity.
Outcome total_weight_sweep() {
    Outcome o;
    std::size_t checked = 0;
    for (const auto& params : sweep_params(3))
        for (std::int64_t n = 1; n <= 8; ++n) {
            const auto w = weight_function(params, n);
            Rational independent = 0;
            for (std::int64_t j = 0; j < n; ++j) independent += Rational(4 * params.k() * (n - j), n * (n + 1));
            if (w.total_weight() != 2 * params.k() || independent != 2 * params.k()) {
                o.pass = false;
                o.detail = "total weight " + to_fraction_string(w.total_weight()) + " for n=" + std::to_string(n);
                return o;
            }
            ++checked;
        }
    o.detail = std::to_string(checked) + " (p,q,k,n) tuples equal 2k exactly";
    return o;
}

// 3. Circulant spectrum against a dense eigensolver.
Outcome circulant_oracle() {
    Outcome o;
    double worst = 0.0;
    std::vector<std::string> skipped;
    std::size_t compared = 0;
    for (std::int64_t n : {1, 2})
        for (std::int64_t m : {3, 5, 6}) {
            const auto w = weight_function(ModularDistanceParams::make(1, 2, 1), n);
            std::vector<double> spec;
            try {
                spec = circulant_spectrum(w, m);
            } catch (const DegenerateQuotient&) {
                skipped.push_back("n=" + std::to_string(n) + ",m=" + std::to_string(m));
                continue;
            }
            std::sort(spec.begin(), spec.end());
            const auto pts = w.points();
            const auto dense = oracle::dense_spectrum(pts, m);
            for (std::size_t i = 0; i < spec.size(); ++i) worst = std::max(worst, std::abs(spec[i] - dense[i]));
            ++compared;
        }
    o.pass = compared > 0 && worst <= 1e-9;
    o.detail = std::to_string(compared) + " spectra, max deviation " + sci(worst) + " (skipped degenerate:";
    for (const auto& s : skipped) o.detail += " " + s;
    o.detail += ")";
    return o;
}

// 4. Ratio-bound dominance.
Outcome dominance_sweep() {
    Outcome o;
    std::size_t instances = 0;
    std::size_t exhaustive = 0;
    double tightest = 1.0;
    auto check = [&](const QuotientCayleyGraph& g, const std::string& label) {
        const auto r = spectral_dominance_check(g);
        ++instances;
        tightest = std::min(tightest, *r.spectral_ratio - to_double(r.density));
        if (!r.dominance_ok.value_or(false) || !is_independent(g, r.witness) ||
            static_cast<std::int64_t>(r.witness.size()) != r.alpha) {
            o.pass = false;
            o.detail = "dominance fails for " + label;
        }
        if (g.vertex_count() <= 25) {
            ++exhaustive;
            if (oracle::exhaustive_alpha(g) != r.alpha) {
                o.pass = false;
                o.detail = "branch-and-bound disagrees with exhaustive search for " + label;
            }
        }
    };
    for (const auto& params : sweep_params(3))
        for (std::int64_t n = 1; n <= 3; ++n) {
            const auto w = weight_function(params, n);
            for (std::int64_t m = 2; m * m <= 100; ++m) {
                std::optional<QuotientCayleyGraph> g;
                try {
                    g = build_quotient(w, m);
                } catch (const DegenerateQuotient&) {
                    continue;
                }
                check(*g, "p=" + std::to_string(params.p()) + " q=" + std::to_string(params.q()) +
                             " k=" + std::to_string(params.k()) + " n=" + std::to_string(n) + " m=" + std::to_string(m));
            }
        }
    std::mt19937_64 rng(20260101);
    for (int trial = 0; trial < 200; ++trial) {
        const std::int64_t m = 2 + trial % 9;
        check(QuotientCayleyGraph::from_connection_set(m, oracle::random_connection_set(m, rng)),
              "random trial " + std::to_string(trial));
    }
    if (o.pass)
        o.detail = std::to_string(instances) + " quotients (" + std::to_string(exhaustive) +
                   " cross-checked exhaustively), min slack " + sci(tightest);
    return o;
}

// 5. Triangle-freeness and relation divisibility.
Outcome triangle_sweep() {
    Outcome o;
    std::size_t scans = 0;
    std::size_t triples = 0;
    for (const auto& params : sweep_params(3)) {
        for (std::int64_t s = 1; s <= 4; ++s) {
            const auto a = triangle_free_check_bruteforce(params, s);
            const auto b = triangle_free_check_valuation(params, s);
            scans += 2;
            if (a.verdict != Verdict::Pass || b.verdict != Verdict::Pass) {
                o.pass = false;
                o.detail = "triangle found for p=" + std::to_string(params.p()) + " q=" + std::to_string(params.q()) +
                           " k=" + std::to_string(params.k());
                return o;
            }
        }
        const auto atoms = base_generators(params);
        for (int t1 = 0; t1 < 2 * params.k(); ++t1)
            for (int t2 = t1 + 1; t2 < 2 * params.k(); ++t2)
                for (int t3 = t2 + 1; t3 < 2 * params.k(); ++t3) {
                    const auto& a1 = atoms[static_cast<std::size_t>(2 * t1)];
                    const auto& a2 = atoms[static_cast<std::size_t>(2 * t2)];
                    const auto& a3 = atoms[static_cast<std::size_t>(2 * t3)];
                    ++triples;
                    try {
                        const auto r = integer_relation_divisibility(params, a1, a2, a3);
                        const BigInt q = params.q();
                        const bool ok = (r.s1 * a1.vector + r.s2 * a2.vector + r.s3 * a3.vector).is_zero() &&
                                        r.s1 % q == 0 && r.s3 % q == 0 && gcd(r.s2, q) == 1;
                        if (!ok) throw VerificationFailure("relation check");
                    } catch (const VerificationFailure& e) {
                        o.pass = false;
                        o.detail = e.what();
                        return o;
                    }
                }
    }
    o.detail = std::to_string(scans) + " sumset scans (two routes, max_scale 1..4), " + std::to_string(triples) +
               " relation triples";
    return o;
}

// 6. Fejer-kernel diagnostics.
Outcome fejer_checks() {
    Outcome o;
    for (std::int64_t q : {2, 3, 5})
        for (std::int64_t n = 1; n <= 64; ++n)
            if (fejer_kernel(n, q, 0.0) != 0.5) {
                o.pass = false;
                o.detail = "kernel at 0 is not 1/2 for n=" + std::to_string(n);
                return o;
            }
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> ell(-1000.0, 1000.0);
    double min_cmp = 1.0;
    for (int i = 0; i < 10000; ++i) {
        double l = ell(rng);
        if (l == 0.0) l = 1.0;
        min_cmp = std::min(min_cmp, integral_comparison(l));
    }
    if (min_cmp < 0.0) o.pass = false;

    const std::int64_t n = 256;
    double worst = 0.0;
    std::uniform_real_distribution<double> small(1e-6, 1.0);
    for (std::int64_t q : {2, 3, 5})
        for (int i = 0; i < 500; ++i) {
            const double theta = small(rng) * 8.0 / static_cast<double>(n * q);
            const double l = 2.0 * std::numbers::pi * static_cast<double>(n * q) * theta;
            worst = std::max(worst, std::abs(fejer_kernel(n, q, theta) - integral_comparison(l)));
        }
    if (worst > 0.05) o.pass = false;
    o.detail = "kernel(0) = 1/2 for 192 (n,q); min comparison " + fmt(min_cmp, 9) +
               " over 1e4 samples; max |kernel - comparison| at n=256 " + fmt(worst, 6);
    return o;
}

// 7. Chromatic-bound trend.
Outcome chromatic_trend() {
    Outcome o;
    RefinementConfig refine;
    refine.starts = 64;
    refine.threads = std::max(1u, std::thread::hardware_concurrency());
    const std::int64_t grid = 4096;
    const std::vector<std::int64_t> sweep{4, 8, 16, 32};
    const double margin = 0.01;
    std::ostringstream detail;
    for (std::int64_t k : {1, 2}) {
        const auto params = ModularDistanceParams::make(1, 2, k);
        const double target = 1.0 / static_cast<double>(k + 1);
        std::vector<double> excess;
        double best_alpha = 1.0;
        std::int64_t best_chi = 1;
        detail << "k=" << k << ":";
        for (const auto n : sweep) {
            const auto cert = make_certificate(params, n, grid, refine, margin);
            const double below = -2.0 - cert.infimum.value;
            excess.push_back(below > 1e-9 ? below : 0.0);
            best_alpha = std::min(best_alpha, cert.alpha_ratio_bound);
            best_chi = std::max(best_chi, cert.chi.value);
            detail << " n=" << n << " inf=" << fmt(cert.infimum.value, 4) << " alpha=" << fmt(cert.alpha_ratio_bound, 4);
        }
        bool shrinking = true;
        for (std::size_t i = 1; i < excess.size(); ++i) shrinking = shrinking && excess[i] <= excess[i - 1] + 1e-12;
        shrinking = shrinking && (excess.back() < excess.front() || excess.back() == 0.0);
        const bool ratio_ok = best_alpha <= target + 0.1;
        const bool chi_ok = best_chi >= k + 1;
        detail << " | (a) " << (shrinking ? "ok" : "FAIL") << " (b) best alpha " << fmt(best_alpha, 4)
               << (ratio_ok ? " <= " : " > ") << fmt(target + 0.1, 4) << ", chi " << best_chi
               << (chi_ok ? " >= " : " < ") << k + 1 << "; ";
        o.pass = o.pass && shrinking && ratio_ok && chi_ok;
    }
    o.detail = detail.str();
    return o;
}

// 8. Determinism of the report command.
Outcome report_determinism() {
    Outcome o;
    cli::ExperimentConfig c;
    c.n = 3;
    c.n_sweep = {2, 4, 8};
    c.grid = 256;
    c.moduli = {3, 5, 7};
    c.threads = 1;
    const auto a = cli::cmd_report(c);
    c.threads = 4;
    const auto b = cli::cmd_report(c);
    c.threads = 1;
    const auto d = cli::cmd_report(c);
    o.pass = !a.output.empty() && a.output == b.output && a.output == d.output;
    o.detail = std::to_string(a.output.size()) + " bytes, three runs (1, 4, 1 threads) " +
               (o.pass ? "byte-identical" : "differ");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"exact embedding verification", embedding_sweep},
        {"total-weight identity", total_weight_sweep},
        {"circulant oracle equivalence", circulant_oracle},
        {"ratio-bound dominance", dominance_sweep},
        {"triangle-freeness", triangle_sweep},
        {"Fejer-kernel diagnostics", fejer_checks},
        {"chromatic-bound trend", chromatic_trend},
        {"report determinism", report_determinism},
    };
    std::set<std::size_t> selected;
    for (int i = 1; i < argc; ++i) {
        const long c = std::strtol(argv[i], nullptr, 10);
        if (c < 1 || c > static_cast<long>(criteria.size())) {
            std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
            return 2;
        }
        selected.insert(static_cast<std::size_t>(c));
    }
    if (selected.empty())
        for (std::size_t i = 1; i <= criteria.size(); ++i) selected.insert(i);

    bool all = true;
    for (const auto i : selected) {
        const auto& [name, fn] = criteria[i - 1];
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %zu %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i, name.c_str(), o.detail.c_str(), dt);
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
