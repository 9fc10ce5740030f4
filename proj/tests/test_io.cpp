#include <doctest.h>

#include <complex>
#include <cstdio>
#include <filesystem>
#include <vector>

#include "logcap/errors.hpp"
#include "logcap/integerize.hpp"
#include "logcap/io.hpp"
#include "logcap/jacobi.hpp"
#include "logcap/measure.hpp"
#include "logcap/poly.hpp"
#include "logcap/sets.hpp"

using namespace logcap;
using nlohmann::json;

namespace {

GaussianRational grat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return GaussianRational(r);
}

}  // namespace

TEST_CASE("io: band set round trip") {
    const BandSet two({-3.0, -1.0, 1.0, 3.0});
    const json j = io::to_json(two);
    CHECK(j.dump() == "[-3.0,-1.0,1.0,3.0]");
    const BandSet back = io::band_set_from_json(j);
    CHECK(back.endpoints() == two.endpoints());

    CHECK_THROWS_AS(io::band_set_from_json(json::array()), input_error);
    CHECK_THROWS_AS(io::band_set_from_json(json::parse("[1,\"x\"]")), input_error);
    CHECK_THROWS_AS(io::band_set_from_json(json::parse("[1,2,2.5]")), input_error);
}

TEST_CASE("io: polynomial round trip keeps exact rationals") {
    const RationalPoly p({grat(-1, 2), GaussianRational(Rational(2), Rational(-3, 7)), grat(1)});
    const json j = io::to_json(p);
    CHECK(j[0] == "-1/2");
    CHECK(j[1] == "2-3/7 i");
    CHECK(j[2] == "1");
    CHECK(io::poly_from_json(j) == p);

    // Numbers are accepted on input: integers exactly, floats as dyadics.
    const RationalPoly q = io::poly_from_json(json::parse("[1, -3, 0.5]"));
    CHECK(q == RationalPoly({grat(1), grat(-3), grat(1, 2)}));

    CHECK_THROWS_AS(io::poly_from_json(json::parse("{\"a\":1}")), input_error);
    CHECK_THROWS_AS(io::poly_from_json(json::parse("[true]")), input_error);
}

TEST_CASE("io: jacobi round trip and the numeric input form") {
    const PeriodicJacobi j({grat(0), grat(1, 3)}, {grat(1), grat(15, 7)});
    const json enc = io::to_json(j);
    CHECK(enc["r"] == 2);
    CHECK(enc["a"][1] == "1/3");
    CHECK(enc["b"][1] == "15/7");
    const PeriodicJacobi back = io::jacobi_from_json(enc);
    CHECK(back.diag() == j.diag());
    CHECK(back.offdiag() == j.offdiag());

    const PeriodicJacobi num = io::jacobi_from_json(json::parse(R"({"r":2,"a":[0,0],"b":[1,2]})"));
    CHECK(num.modulus() == grat(2));

    CHECK_THROWS_AS(io::jacobi_from_json(json::parse(R"({"a":[0]})")), input_error);
    CHECK_THROWS_AS(io::jacobi_from_json(json::parse(R"({"r":3,"a":[0],"b":[1]})")), input_error);
}

TEST_CASE("io: lift certificate JSON carries exact strings") {
    const RationalPoly p({grat(-1, 2), grat(1)});
    const LiftCertificate cert = rouche_certify(p, integer_lift(p, 1, 2), 2.0);
    const json j = io::to_json(cert);
    CHECK(j["gamma"] == json::array({"0", "-1", "1"}));
    CHECK(j["lambdas"] == json::array({json::array({"-1/4"})}));
    CHECK(j["params"]["denom"] == "2");
    CHECK(j["params"]["c"] == 2);
    CHECK(j["rouche_margin"].get<double>() == doctest::Approx(1.0 / 16).epsilon(1e-12));
    CHECK(j["certified"] == true);
}

TEST_CASE("io: pipeline serialization and diagnostics csv") {
    const PipelineResult result = pipeline(BandSet::interval(-2.0, 2.0), 6);
    const json j = io::to_json(result);
    CHECK(j["set"] == json::array({-2.0, 2.0}));
    CHECK(j["capacity"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(j["entries"].size() == result.entries.size());
    CHECK(j["entries"][0]["degree"] == result.entries[0].degree);

    const std::string csv = io::diagnostics_csv(result);
    CHECK(csv.rfind("degree,rouche_margin,moment_distance,capacity_estimate\n", 0) == 0);
    const auto rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == static_cast<long>(result.entries.size()) + 1);
}

TEST_CASE("io: measure csv and file round trip") {
    const DiscreteMeasure mu = DiscreteMeasure::uniform({{1.0, 0.5}, {-1.0, -0.5}});
    const std::string csv = io::to_csv(mu);
    CHECK(csv == "re,im,weight\n1,0.5,0.5\n-1,-0.5,0.5\n");

    const auto path = std::filesystem::temp_directory_path() / "logcap_io_test.json";
    io::write_text_file(path, io::to_json(BandSet::interval(0.0, 1.0)).dump());
    const json j = io::read_json_file(path);
    CHECK(io::band_set_from_json(j).endpoints() == std::vector<double>{0.0, 1.0});
    std::filesystem::remove(path);

    CHECK_THROWS_AS(io::read_json_file("/nonexistent/nowhere.json"), input_error);
    io::write_text_file(path, "{not json");
    CHECK_THROWS_AS(io::read_json_file(path), input_error);
    std::filesystem::remove(path);
}
