#include "mdg/serialize.hpp"

#include <sstream>

#include "mdg/errors.hpp"

namespace mdg {

namespace {

Json vec_json(const Vec2& v) { return Json::array({to_decimal_string(v.x), to_decimal_string(v.y)}); }

Json residue_json(const Residue& r) { return Json::array({r.a, r.b}); }

Json residues_json(const std::vector<Residue>& rs) {
    Json out = Json::array();
    for (const auto& r : rs) out.push_back(residue_json(r));
    return out;
}

}  // namespace

std::string to_string(CertificationStatus s) {
    switch (s) {
        case CertificationStatus::NotRequested: return "not-requested";
        case CertificationStatus::Certified: return "certified";
        case CertificationStatus::InsufficientSeparation: return "insufficient-separation";
        case CertificationStatus::Infeasible: return "infeasible";
    }
    return "unknown";
}

Json to_json(const WeightedGeneratorSet& w) {
    Json doc;
    doc["p"] = w.params().p();
    doc["q"] = w.params().q();
    doc["k"] = w.params().k();
    doc["n"] = w.n();
    Json entries = Json::array();
    for (std::size_t i = 0; i < w.size(); ++i) {
        Json e;
        e["x"] = vec_json(w.generators()[i].vector);
        e["w"] = to_fraction_string(w.weights()[i]);
        entries.push_back(std::move(e));
    }
    doc["entries"] = std::move(entries);
    return doc;
}

Json to_json(const TorusPoint& u) {
    Json doc;
    doc["z"] = Json::array({u.z1(), u.z2()});
    doc["N"] = u.denominator();
    return doc;
}

Json to_json(const SpectralCertificate& cert) {
    const auto& inf = cert.infimum;
    Json doc;
    doc["p"] = cert.params.p();
    doc["q"] = cert.params.q();
    doc["k"] = cert.params.k();
    doc["n"] = cert.n;
    doc["grid"] = cert.grid_n;
    doc["sup"] = to_fraction_string(cert.sup_value);
    doc["inf_estimate"] = inf.value;
    doc["inf_argmin"] = to_json(inf.argmin);
    doc["grid_min"] = inf.grid_min;
    doc["certified"] = inf.certified;
    doc["certification"] = to_string(inf.status);
    if (inf.lipschitz_bound) doc["lipschitz_bound"] = *inf.lipschitz_bound;
    if (inf.certified_lower_bound) doc["certified_lower_bound"] = *inf.certified_lower_bound;
    doc["alpha_ratio_bound"] = cert.alpha_ratio_bound;
    doc["safety_margin"] = cert.safety_margin;
    doc["chi_lower_bound"] = cert.chi.value;
    doc["chi_label"] = cert.chi.heuristic ? "heuristic" : "certified";
    return doc;
}

Json to_json(const TriangleFreenessCertificate& cert) {
    Json doc;
    doc["p"] = cert.params.p();
    doc["q"] = cert.params.q();
    doc["k"] = cert.params.k();
    doc["max_scale"] = cert.max_scale;
    doc["atom_count"] = cert.atom_count;
    doc["scanned_vectors"] = cert.scanned_vectors;
    doc["method"] = cert.method == TriangleMethod::BruteForce ? "brute-force" : "valuation-argument";
    doc["verdict"] = cert.verdict == Verdict::Pass ? "pass" : "fail";
    if (cert.witness) {
        Json w;
        w["c1"] = vec_json(cert.witness->c1);
        w["c2"] = vec_json(cert.witness->c2);
        w["c3"] = vec_json(cert.witness->c3);
        doc["witness"] = std::move(w);
    } else {
        doc["witness"] = nullptr;
    }
    return doc;
}

Json to_json(const IndependenceReport& report) {
    Json doc;
    doc["m"] = report.m;
    doc["vertices"] = report.m * report.m;
    doc["connection_set"] = residues_json(report.connection_set);
    doc["collisions"] = report.collisions;
    doc["alpha"] = report.alpha;
    doc["density"] = to_fraction_string(report.density);
    doc["witness"] = residues_json(report.witness);
    if (report.lambda_min) doc["lambda_min"] = *report.lambda_min;
    if (report.lambda_max) doc["lambda_max"] = *report.lambda_max;
    if (report.spectral_ratio) doc["spectral_ratio"] = *report.spectral_ratio;
    if (report.dominance_ok) doc["dominance_ok"] = *report.dominance_ok;
    return doc;
}

Json to_json(const EdgeDistanceReport& r) {
    Json doc;
    doc["t"] = r.generator.atom.t;
    doc["sign"] = r.generator.atom.sign;
    doc["j"] = r.generator.scale;
    doc["x"] = vec_json(r.generator.vector);
    doc["squared_distance"] = to_fraction_string(r.squared_distance);
    doc["distance"] = to_decimal_string(r.distance);
    doc["residue"] = r.residue;
    doc["pass"] = r.pass;
    return doc;
}

std::string to_csv(const WeightedGeneratorSet& w) {
    std::ostringstream out;
    out << "t,sign,j,x,y,w\n";
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto& g = w.generators()[i];
        out << g.atom.t << ',' << g.atom.sign << ',' << g.scale << ',' << g.vector.x << ',' << g.vector.y << ','
            << to_fraction_string(w.weights()[i]) << '\n';
    }
    return out.str();
}

std::string to_csv(const std::vector<EdgeDistanceReport>& reports) {
    std::ostringstream out;
    out << "t,sign,j,x,y,distance,residue,pass\n";
    for (const auto& r : reports) {
        const auto& g = r.generator;
        out << g.atom.t << ',' << g.atom.sign << ',' << g.scale << ',' << g.vector.x << ',' << g.vector.y << ','
            << r.distance << ',' << r.residue << ',' << (r.pass ? "true" : "false") << '\n';
    }
    return out.str();
}

Rational parse_fraction(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        const BigInt den(s.substr(slash + 1));
        if (den == 0) throw InvalidArgument("zero denominator in fraction '" + s + "'");
        return Rational(BigInt(s.substr(0, slash)), den);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const InvalidArgument*>(&e)) throw;
        throw InvalidArgument("malformed fraction '" + s + "'");
    }
}

ParsedGeneratorSet parse_generator_set(const Json& doc) {
    try {
        const auto params = ModularDistanceParams::make(doc.at("p").get<std::int64_t>(), doc.at("q").get<std::int64_t>(),
                                                        doc.at("k").get<std::int64_t>());
        ParsedGeneratorSet out{params, doc.at("n").get<std::int64_t>(), {}};
        for (const auto& e : doc.at("entries")) {
            const auto& x = e.at("x");
            out.entries.push_back({Vec2{BigInt(x.at(0).get<std::string>()), BigInt(x.at(1).get<std::string>())},
                                   parse_fraction(e.at("w").get<std::string>())});
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed generator-set document: ") + e.what());
    }
}

}  // namespace mdg
