#include "logcap/io.hpp"

#include <cstdio>
#include <fstream>

#include "logcap/errors.hpp"
#include "logcap/rational.hpp"

namespace logcap::io {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

GaussianRational scalar_from_json(const json& j, const char* what) {
    if (j.is_string()) return parse_gaussian_rational(j.get<std::string>());
    if (j.is_number_integer()) return GaussianRational(Rational(j.get<long>()));
    if (j.is_number_unsigned()) return GaussianRational(Rational(static_cast<unsigned long>(j.get<unsigned long long>())));
    if (j.is_number_float()) return GaussianRational(rational_from_double(j.get<double>()));
    throw input_error(std::string(what) + ": expected a rational string or number");
}

json coeff_strings(const RationalPoly& p) {
    json out = json::array();
    for (const auto& c : p.coeffs()) out.push_back(format_gaussian_rational(c));
    return out;
}

json complex_pairs(const std::vector<std::complex<double>>& zs) {
    json out = json::array();
    for (auto z : zs) out.push_back(json::array({z.real(), z.imag()}));
    return out;
}

}  // namespace

json to_json(const BandSet& set) { return json(set.endpoints()); }

BandSet band_set_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw input_error("band set JSON must be a non-empty array of endpoints");
    std::vector<double> endpoints;
    endpoints.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number()) throw input_error("band set endpoints must be numbers");
        endpoints.push_back(e.get<double>());
    }
    return BandSet(std::move(endpoints));
}

json to_json(const RationalPoly& p) { return coeff_strings(p); }

RationalPoly poly_from_json(const json& j) {
    if (!j.is_array()) throw input_error("polynomial JSON must be an array of coefficients");
    std::vector<GaussianRational> coeffs;
    coeffs.reserve(j.size());
    for (const auto& c : j) coeffs.push_back(scalar_from_json(c, "polynomial coefficient"));
    return RationalPoly(std::move(coeffs));
}

json to_json(const GaussianIntPoly& p) { return coeff_strings(p.to_rational()); }

json to_json(const PeriodicJacobi& j) {
    json a = json::array();
    json b = json::array();
    for (const auto& v : j.diag()) a.push_back(format_gaussian_rational(v));
    for (const auto& v : j.offdiag()) b.push_back(format_gaussian_rational(v));
    return json{{"r", j.period()}, {"a", a}, {"b", b}};
}

PeriodicJacobi jacobi_from_json(const json& j) {
    if (!j.is_object() || !j.contains("a") || !j.contains("b"))
        throw input_error("Jacobi JSON must be an object with \"a\" and \"b\" arrays");
    if (!j["a"].is_array() || !j["b"].is_array())
        throw input_error("Jacobi \"a\" and \"b\" must be arrays");
    std::vector<GaussianRational> diag;
    std::vector<GaussianRational> offdiag;
    for (const auto& v : j["a"]) diag.push_back(scalar_from_json(v, "Jacobi diagonal entry"));
    for (const auto& v : j["b"]) offdiag.push_back(scalar_from_json(v, "Jacobi off-diagonal entry"));
    if (j.contains("r") && j["r"].get<std::size_t>() != diag.size())
        throw input_error("Jacobi \"r\" disagrees with the entry count");
    return PeriodicJacobi(std::move(diag), std::move(offdiag));
}

json to_json(const LiftCertificate& cert) {
    json lambdas = json::array();
    for (const auto& row : cert.lambdas) {
        json jrow = json::array();
        for (const auto& l : row) jrow.push_back(format_gaussian_rational(l));
        lambdas.push_back(std::move(jrow));
    }
    return json{{"params",
                 {{"k_deg", cert.params.k_deg},
                  {"denom", cert.params.denom.get_str()},
                  {"a", cert.params.a},
                  {"c", cert.params.c},
                  {"r2", cert.params.r2}}},
                {"gamma", to_json(cert.gamma)},
                {"lambdas", std::move(lambdas)},
                {"rouche_margin", cert.rouche_margin},
                {"analytic_margin", cert.analytic_margin},
                {"below_half", cert.below_half},
                {"certified", cert.certified},
                {"roots", complex_pairs(cert.roots)},
                {"zero_counts", cert.zero_counts}};
}

json to_json(const PipelineEntry& entry) {
    return json{{"n", entry.n},
                {"degree", entry.degree},
                {"a", entry.a},
                {"c", entry.c},
                {"lifted", entry.lifted},
                {"certified", entry.certified},
                {"rouche_margin", entry.rouche_margin},
                {"moment_distance", entry.moment_distance},
                {"capacity_estimate", entry.capacity_estimate},
                {"gamma", to_json(entry.gamma)},
                {"roots", complex_pairs(entry.roots)},
                {"zero_counts", entry.zero_counts}};
}

json to_json(const PipelineResult& result) {
    json entries = json::array();
    for (const auto& e : result.entries) entries.push_back(to_json(e));
    return json{{"set", to_json(result.set)},
                {"p", to_json(result.p)},
                {"modulus", format_gaussian_rational(result.modulus)},
                {"capacity", result.capacity},
                {"r2", result.r2},
                {"entries", std::move(entries)}};
}

json to_json(const VolumeEstimate& est) {
    // -inf (zero hits) serializes as null; the zero_hits flag disambiguates.
    return json{{"volume", est.volume},       {"normalized_log", est.normalized_log},
                {"box_volume", est.box_volume}, {"hits", est.hits},
                {"samples", est.samples},     {"zero_hits", est.zero_hits}};
}

json to_json(const CoeffBox& box) { return json{{"n", box.n}, {"bounds", box.bounds}}; }

std::string to_csv(const DiscreteMeasure& mu) {
    std::string out = "re,im,weight\n";
    for (const auto& atom : mu.atoms()) {
        out += fmt_double(atom.point.real());
        out += ',';
        out += fmt_double(atom.point.imag());
        out += ',';
        out += fmt_double(atom.weight);
        out += '\n';
    }
    return out;
}

std::string diagnostics_csv(const PipelineResult& result) {
    std::string out = "degree,rouche_margin,moment_distance,capacity_estimate\n";
    for (const auto& e : result.entries) {
        out += std::to_string(e.degree);
        out += ',';
        out += fmt_double(e.rouche_margin);
        out += ',';
        out += fmt_double(e.moment_distance);
        out += ',';
        out += fmt_double(e.capacity_estimate);
        out += '\n';
    }
    return out;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw input_error("invalid JSON in " + path.string() + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write " + path.string());
    out << text;
}

}  // namespace logcap::io
