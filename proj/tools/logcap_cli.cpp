// Command-line surface: every module behind one binary with JSON/CSV output.
// Exit codes: 0 success, 2 invalid input, 3 computation refused, 4 budget
// exceeded, 1 internal/convergence failure. Identical argv + seed produce
// byte-identical output files.

#include <CLI11.hpp>

#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "logcap/calibration.hpp"
#include "logcap/chebyshev.hpp"
#include "logcap/diophantine.hpp"
#include "logcap/errors.hpp"
#include "logcap/integerize.hpp"
#include "logcap/io.hpp"
#include "logcap/jacobi.hpp"
#include "logcap/measure.hpp"
#include "logcap/parallel.hpp"
#include "logcap/poly.hpp"
#include "logcap/potential.hpp"
#include "logcap/rational.hpp"
#include "logcap/sets.hpp"

namespace {

using json = nlohmann::json;
using namespace logcap;

struct Common {
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string output_dir = ".";
    std::string format = "json";
    bool require_certified = false;
};

struct SetInput {
    std::vector<double> interval;
    std::vector<double> bands;
    std::string path;
};

struct Emitted {
    std::vector<std::string> files;
};

void add_set_options(CLI::App* cmd, SetInput& in) {
    cmd->add_option("--interval", in.interval, "Interval endpoints a b")->expected(2);
    cmd->add_option("--bands", in.bands, "Band endpoints e1 ... e2r")->expected(-2);
    cmd->add_option("--input", in.path, "JSON file with an endpoint array");
}

BandSet resolve_set(const SetInput& in) {
    int sources = !in.interval.empty() + !in.bands.empty() + !in.path.empty();
    if (sources != 1)
        throw input_error("give the set exactly one way: --interval, --bands or --input");
    if (!in.interval.empty()) return BandSet::interval(in.interval[0], in.interval[1]);
    if (!in.bands.empty()) return BandSet(in.bands);
    return io::band_set_from_json(io::read_json_file(in.path));
}

std::filesystem::path emit(const Common& common, const std::string& name, const std::string& text,
                           Emitted& out) {
    std::filesystem::path path = std::filesystem::path(common.output_dir) / name;
    io::write_text_file(path, text);
    out.files.push_back(path.string());
    return path;
}

void emit_json(const Common& common, const std::string& name, const json& j, Emitted& out) {
    emit(common, name, j.dump(2) + "\n", out);
}

void print_summary(const std::string& subcommand, const Emitted& out, json extra) {
    extra["subcommand"] = subcommand;
    extra["outputs"] = out.files;
    std::cout << extra.dump() << "\n";
}

FeketeOptions fekete_options(const Common& common) {
    FeketeOptions opts;
    opts.seed = common.seed;
    return opts;
}

json points_json(const std::vector<std::complex<double>>& pts) {
    json out = json::array();
    for (auto z : pts) out.push_back(json::array({z.real(), z.imag()}));
    return out;
}

// --- subcommand handlers ----------------------------------------------------

int run_capacity(const Common& common, const SetInput& in, const std::string& scheme, int n) {
    const BandSet set = resolve_set(in);
    CapacityScheme s = CapacityScheme::fekete_extrapolation;
    if (scheme == "robin") s = CapacityScheme::robin_constant;
    else if (scheme != "fekete") throw input_error("--scheme must be fekete or robin");
    const CapacityEstimate est = capacity_estimate(set, s, n, fekete_options(common));
    json j{{"set", io::to_json(set)},
           {"scheme", scheme == "robin" ? "robin_constant" : "fekete_extrapolation"},
           {"n_used", est.n_used},
           {"value", est.value},
           {"error_bound", est.error_bound ? json(*est.error_bound) : json(nullptr)}};
    Emitted out;
    emit_json(common, "capacity.json", j, out);
    print_summary("capacity", out, {{"value", est.value}});
    return 0;
}

int run_fekete(const Common& common, const SetInput& in, int n) {
    const BandSet set = resolve_set(in);
    const FeketeResult fr = fekete_points(set, n, fekete_options(common));
    json j{{"set", io::to_json(set)},
           {"n", n},
           {"points", points_json(fr.points)},
           {"log_pairwise_product", fr.log_pairwise_product},
           {"d_n", fr.d_n}};
    Emitted out;
    emit_json(common, "fekete.json", j, out);
    if (common.format == "csv")
        emit(common, "fekete_points.csv", io::to_csv(DiscreteMeasure::uniform(fr.points)), out);
    print_summary("fekete", out, {{"d_n", fr.d_n}});
    return 0;
}

int run_chebyshev(const Common& common, const SetInput& in, int n) {
    const BandSet set = resolve_set(in);
    const RationalPoly t = remez_union(set, n);
    const EquioscillationReport rep = equioscillation_check(t, set, 60 * n + 11);
    json j{{"set", io::to_json(set)},
           {"degree", n},
           {"coeffs", io::to_json(t)},
           {"norm", rep.norm},
           {"alternation_count", rep.alternation_count},
           {"alternation_points", rep.alternation_points},
           {"zeros", rep.zeros}};
    Emitted out;
    emit_json(common, "chebyshev.json", j, out);
    print_summary("chebyshev", out, {{"norm", rep.norm}});
    return 0;
}

PeriodicJacobi jacobi_from_cli(const std::string& inline_json, const std::string& path) {
    if (inline_json.empty() == path.empty())
        throw input_error("give the matrix exactly one way: --json or --input");
    if (!inline_json.empty()) {
        json j;
        try {
            j = json::parse(inline_json);
        } catch (const json::parse_error& e) {
            throw input_error(std::string("invalid --json: ") + e.what());
        }
        return io::jacobi_from_json(j);
    }
    return io::jacobi_from_json(io::read_json_file(path));
}

int run_jacobi(const Common& common, const std::string& inline_json, const std::string& path) {
    const PeriodicJacobi j = jacobi_from_cli(inline_json, path);
    const NaimanResult nr = naiman_polynomial(j);
    const BandSpectrum sp = spectrum_bands(j);
    json out_json{{"r", j.period()},
                  {"a", io::to_json(j)["a"]},
                  {"b", io::to_json(j)["b"]},
                  {"naiman", io::to_json(nr.p)},
                  {"modulus", format_gaussian_rational(nr.b)},
                  {"bands", io::to_json(sp.bands)},
                  {"touch_points", sp.touch_points},
                  {"capacity", jacobi_capacity(j)}};
    Emitted out;
    emit_json(common, "jacobi.json", out_json, out);
    print_summary("jacobi", out,
                  {{"capacity", jacobi_capacity(j)}, {"bands", io::to_json(sp.bands)}});
    return 0;
}

int run_calibrate(const Common& common, const SetInput& in, int m) {
    const BandSet set = resolve_set(in);
    const CalibrateResult cr = calibrate(set, m);
    json j{{"input_set", io::to_json(set)},
           {"bands", io::to_json(cr.set)},
           {"m", cr.m},
           {"k", cr.k},
           {"max_inflation", cr.max_inflation},
           {"omega", cr.data.omega},
           {"lambda", cr.data.lambda}};
    Emitted out;
    emit_json(common, "calibrate.json", j, out);
    print_summary("calibrate", out, {{"m", cr.m}, {"max_inflation", cr.max_inflation}});
    return 0;
}

RationalPoly poly_from_cli(const std::vector<std::string>& coeffs, const std::string& path) {
    if (coeffs.empty() == path.empty())
        throw input_error("give the polynomial exactly one way: --coeffs or --input");
    if (!coeffs.empty()) {
        std::vector<GaussianRational> c;
        c.reserve(coeffs.size());
        for (const auto& s : coeffs) c.push_back(parse_gaussian_rational(s));
        return RationalPoly(std::move(c));
    }
    return io::poly_from_json(io::read_json_file(path));
}

int run_lift(const Common& common, const std::vector<std::string>& coeffs,
             const std::string& path, int a, int c, double r2) {
    const RationalPoly p = poly_from_cli(coeffs, path);
    LiftCertificate cert = integer_lift(p, a, c);
    if (r2 > 1.0) {
        cert = rouche_certify(p, std::move(cert), r2);
        if (cert.certified) cert = zero_localization(std::move(cert), p, r2);
    }
    Emitted out;
    emit_json(common, "lift.json", io::to_json(cert), out);
    if (common.require_certified && !cert.certified)
        throw refusal_error("lift not certified at r2 = " + std::to_string(r2));
    print_summary("lift", out,
                  {{"certified", cert.certified}, {"rouche_margin", cert.rouche_margin}});
    return 0;
}

int run_pipeline(const Common& common, const SetInput& in, const std::string& jacobi_json,
                 int degree_budget, unsigned long denom_bound, double r2) {
    int set_sources = !in.interval.empty() + !in.bands.empty() + !in.path.empty();
    if (!jacobi_json.empty() && set_sources > 0)
        throw input_error("give either a band set or --jacobi, not both");
    PipelineResult pr = jacobi_json.empty()
                            ? pipeline(resolve_set(in), degree_budget, denom_bound, r2)
                            : pipeline(io::jacobi_from_json(json::parse(jacobi_json)),
                                       degree_budget, r2);
    Emitted out;
    emit_json(common, "pipeline.json", io::to_json(pr), out);
    emit(common, "diagnostics.csv", io::diagnostics_csv(pr), out);
    bool all_certified = true;
    for (const auto& e : pr.entries) all_certified = all_certified && e.certified;
    if (common.require_certified && !all_certified)
        throw refusal_error("pipeline produced uncertified entries");
    print_summary("pipeline", out,
                  {{"entries", pr.entries.size()},
                   {"capacity", pr.capacity},
                   {"all_certified", all_certified}});
    return 0;
}

CoeffBox box_from_cli(int n, const std::vector<long>& bounds, double radius) {
    if (bounds.empty()) return CoeffBox::from_radius(n, radius);
    CoeffBox box;
    box.n = n;
    box.bounds = bounds;
    return box;
}

int run_search(const Common& common, const SetInput& in, int n, const std::vector<long>& bounds) {
    const BandSet set = resolve_set(in);
    const double radius = std::max(std::abs(set.min()), std::abs(set.max()));
    const CoeffBox box = box_from_cli(n, bounds, radius);
    const auto entries = small_norm_search(set, n, box);
    json list = json::array();
    for (const auto& e : entries) list.push_back({{"coeffs", e.coeffs}, {"sup", e.sup}});
    json j{{"set", io::to_json(set)}, {"n", n}, {"box", io::to_json(box)}, {"entries", list}};
    Emitted out;
    emit_json(common, "search.json", j, out);
    print_summary("search", out, {{"entries", entries.size()}});
    return 0;
}

int run_enumerate(const Common& common, const SetInput& in, double disk, int n) {
    int set_sources = !in.interval.empty() + !in.bands.empty() + !in.path.empty();
    if ((disk > 0.0) == (set_sources > 0))
        throw input_error("give either --disk or a band set");
    json j{{"n", n}};
    std::vector<GaussianIntPoly> polys;
    if (disk > 0.0) {
        polys = totally_in_enumerate(disk, n);
        j["disk_radius"] = disk;
    } else {
        const BandSet set = resolve_set(in);
        polys = totally_in_enumerate(set, n);
        j["set"] = io::to_json(set);
    }
    json list = json::array();
    for (const auto& p : polys) list.push_back(io::to_json(p));
    j["entries"] = list;
    Emitted out;
    emit_json(common, "enumerate.json", j, out);
    print_summary("enumerate", out, {{"entries", polys.size()}});
    return 0;
}

int run_volume(const Common& common, const SetInput& in, const std::vector<int>& degrees,
               std::uint64_t samples, const std::vector<long>& bounds) {
    const BandSet set = resolve_set(in);
    if (degrees.empty()) throw input_error("--n takes at least one degree");
    if (!bounds.empty() && degrees.size() != 1)
        throw input_error("--bounds applies to a single --n only");
    json estimates = json::array();
    std::string csv = "n,volume,normalized_log,box_volume,hits,samples\n";
    for (int n : degrees) {
        const VolumeEstimate est =
            bounds.empty() ? fn_volume_mc(set, n, samples, common.seed)
                           : fn_volume_mc(set, n, samples, common.seed, box_from_cli(n, bounds, 0));
        json e = io::to_json(est);
        e["n"] = n;
        estimates.push_back(std::move(e));
        char row[160];
        std::snprintf(row, sizeof row, "%d,%.17g,%.17g,%.17g,%llu,%llu\n", n, est.volume,
                      est.normalized_log, est.box_volume,
                      static_cast<unsigned long long>(est.hits),
                      static_cast<unsigned long long>(est.samples));
        csv += row;
    }
    json j{{"set", io::to_json(set)},
           {"samples", samples},
           {"seed", common.seed},
           {"estimates", estimates}};
    Emitted out;
    emit_json(common, "volume.json", j, out);
    if (common.format == "csv" || degrees.size() > 1) emit(common, "volume.csv", csv, out);
    print_summary("volume", out, {{"estimates", estimates.size()}});
    return 0;
}

int run_bernstein(const Common& common, const std::vector<std::string>& values) {
    if (values.size() < 2) throw input_error("--values takes the n+1 samples at v/n, n >= 1");
    std::vector<Rational> f;
    f.reserve(values.size());
    for (const auto& s : values) f.push_back(parse_rational(s));
    const int n = static_cast<int>(values.size()) - 1;
    const RationalPoly p = bernstein(f, n);
    json vals = json::array();
    for (const auto& v : f) vals.push_back(format_rational(v));
    json j{{"n", n}, {"values", vals}, {"coeffs", io::to_json(p)}};
    Emitted out;
    emit_json(common, "bernstein.json", j, out);
    print_summary("bernstein", out, {{"degree", p.degree()}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"logcap: capacities, Chebyshev polynomials and integer lifts on band sets"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--seed", common.seed, "RNG seed (default 0)");
    app.add_option("--threads", common.threads, "Worker cap (0 = hardware); never changes results");
    app.add_option("--output-dir", common.output_dir, "Directory for output files");
    app.add_option("--format", common.format, "json or csv (csv adds plot-data files)")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--require-certified", common.require_certified,
                 "Exit 3 when a lift is not certified");

    SetInput set_in;
    std::string scheme = "fekete";
    int cap_n = 64;
    auto* cap = app.add_subcommand("capacity", "Capacity estimate of a band set");
    add_set_options(cap, set_in);
    cap->add_option("--scheme", scheme, "fekete or robin");
    cap->add_option("--n", cap_n, "Fekete ladder size");

    int fekete_n = 16;
    auto* fek = app.add_subcommand("fekete", "Fekete points of a band set");
    add_set_options(fek, set_in);
    fek->add_option("--n", fekete_n, "Number of points")->required();

    int cheb_n = 4;
    auto* cheb = app.add_subcommand("chebyshev", "Monic minimal polynomial by Remez exchange");
    add_set_options(cheb, set_in);
    cheb->add_option("--n", cheb_n, "Degree")->required();

    std::string jacobi_inline;
    std::string jacobi_path;
    auto* jac = app.add_subcommand("jacobi", "Spectrum and capacity of a periodic Jacobi matrix");
    jac->add_option("--json", jacobi_inline, "Inline JSON {\"r\":..,\"a\":[..],\"b\":[..]}");
    jac->add_option("--input", jacobi_path, "JSON file with the same object");

    int cal_m = 2;
    auto* cal = app.add_subcommand("calibrate", "Calibrate a band set to rational harmonic measure");
    add_set_options(cal, set_in);
    cal->add_option("--m", cal_m, "Calibration order")->required();

    std::vector<std::string> lift_coeffs;
    std::string lift_path;
    int lift_a = 1;
    int lift_c = 2;
    double lift_r2 = 0.0;
    auto* lift = app.add_subcommand("lift", "Integer lift of a rational monic polynomial power");
    lift->add_option("--coeffs", lift_coeffs, "Coefficient strings p/q, ascending degree");
    lift->add_option("--input", lift_path, "JSON file with a coefficient array");
    lift->add_option("--a", lift_a, "Protected top block parameter");
    lift->add_option("--c", lift_c, "Power")->required();
    lift->add_option("--r2", lift_r2, "Lemniscate level for certification (> 1 to certify)");

    SetInput pipe_set;
    std::string pipe_jacobi;
    int pipe_budget = 64;
    unsigned long pipe_denom = 64;
    double pipe_r2 = 0.0;
    auto* pipe = app.add_subcommand("pipeline", "Monic integer Chebyshev pipeline on a band set");
    add_set_options(pipe, pipe_set);
    pipe->add_option("--jacobi", pipe_jacobi, "Inline Jacobi JSON instead of a band set");
    pipe->add_option("--degree-budget", pipe_budget, "Largest degree to produce");
    pipe->add_option("--denom-bound", pipe_denom, "Denominator bound for the rational model");
    pipe->add_option("--r2", pipe_r2, "Lemniscate level (0 = automatic)");

    int search_n = 2;
    std::vector<long> search_bounds;
    auto* sea = app.add_subcommand("search", "Small-sup-norm integer polynomial scan");
    add_set_options(sea, set_in);
    sea->add_option("--n", search_n, "Degree")->required();
    sea->add_option("--bounds", search_bounds, "Coefficient bounds b0 ... bn");

    double enum_disk = 0.0;
    int enum_n = 2;
    auto* enu = app.add_subcommand("enumerate", "Monic integer polynomials with all roots in K");
    add_set_options(enu, set_in);
    enu->add_option("--disk", enum_disk, "Closed disk radius instead of a band set");
    enu->add_option("--n", enum_n, "Degree")->required();

    std::vector<int> vol_n;
    std::uint64_t vol_samples = 100000;
    std::vector<long> vol_bounds;
    auto* vol = app.add_subcommand("volume", "Monte-Carlo volume of the small-norm region");
    add_set_options(vol, set_in);
    vol->add_option("--n", vol_n, "Degree(s); several values give a sweep")->required();
    vol->add_option("--samples", vol_samples, "Samples per degree (>= 10^4)");
    vol->add_option("--bounds", vol_bounds, "Explicit box bounds (single --n only)");

    std::vector<std::string> bern_values;
    auto* bern = app.add_subcommand("bernstein", "Exact Bernstein polynomial from samples");
    bern->add_option("--values", bern_values, "f(v/n) as rational strings, v = 0..n")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    set_thread_cap(common.threads);
    std::filesystem::create_directories(common.output_dir);

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        if (cap->parsed()) return run_capacity(common, set_in, scheme, cap_n);
        if (fek->parsed()) return run_fekete(common, set_in, fekete_n);
        if (cheb->parsed()) return run_chebyshev(common, set_in, cheb_n);
        if (jac->parsed()) return run_jacobi(common, jacobi_inline, jacobi_path);
        if (cal->parsed()) return run_calibrate(common, set_in, cal_m);
        if (lift->parsed())
            return run_lift(common, lift_coeffs, lift_path, lift_a, lift_c, lift_r2);
        if (pipe->parsed())
            return run_pipeline(common, pipe_set, pipe_jacobi, pipe_budget, pipe_denom, pipe_r2);
        if (sea->parsed()) return run_search(common, set_in, search_n, search_bounds);
        if (enu->parsed()) return run_enumerate(common, set_in, enum_disk, enum_n);
        if (vol->parsed()) return run_volume(common, set_in, vol_n, vol_samples, vol_bounds);
        if (bern->parsed()) return run_bernstein(common, bern_values);
        throw input_error("unknown subcommand");
    } catch (const input_error& e) {
        std::cout << json{{"subcommand", name}, {"error", e.what()}, {"kind", "input"}}.dump()
                  << "\n";
        return 2;
    } catch (const refusal_error& e) {
        std::cout << json{{"subcommand", name}, {"error", e.what()}, {"kind", "refused"}}.dump()
                  << "\n";
        return 3;
    } catch (const budget_error& e) {
        std::cout << json{{"subcommand", name}, {"error", e.what()}, {"kind", "budget"}}.dump()
                  << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cout << json{{"subcommand", name}, {"error", e.what()}, {"kind", "internal"}}.dump()
                  << "\n";
        return 1;
    }
}
