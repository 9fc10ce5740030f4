#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>

#include "logcap/calibration.hpp"
#include "logcap/diophantine.hpp"
#include "logcap/integerize.hpp"
#include "logcap/jacobi.hpp"
#include "logcap/measure.hpp"
#include "logcap/poly.hpp"
#include "logcap/sets.hpp"

namespace logcap::io {

using nlohmann::json;

/// [e1, ..., e2r], ascending.
json to_json(const BandSet& set);
BandSet band_set_from_json(const json& j);

/// Coefficient strings "p/q" or "p/q+r/s i", ascending degree.
json to_json(const RationalPoly& p);
RationalPoly poly_from_json(const json& j);

/// Same string form; entries are exact integers.
json to_json(const GaussianIntPoly& p);

/// {"r": period, "a": [...], "b": [...]}; entries serialized as rational
/// strings, parsed from strings or JSON numbers (integers stay exact).
json to_json(const PeriodicJacobi& j);
PeriodicJacobi jacobi_from_json(const json& j);

json to_json(const LiftCertificate& cert);
json to_json(const PipelineEntry& entry);
json to_json(const PipelineResult& result);
json to_json(const VolumeEstimate& est);
json to_json(const CoeffBox& box);

/// CSV "re,im,weight" rows with a header line.
std::string to_csv(const DiscreteMeasure& mu);
/// CSV "degree,rouche_margin,moment_distance,capacity_estimate".
std::string diagnostics_csv(const PipelineResult& result);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace logcap::io
