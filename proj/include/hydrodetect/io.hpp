#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "hydrodetect/inverse.hpp"
#include "hydrodetect/track.hpp"

namespace hydro::io {

using json = nlohmann::json;

// Shortest round-trip decimal representation.
std::string format_double(double v);

json complex_to_json(Complex z);
Complex complex_from_json(const json &j, const std::string &what);

// {"alpha": float, "r": [re, im], "omega": float, "w0": [re, im]}
json to_json(const Configuration &cfg);
Configuration config_from_json(const json &j);

// {"c1": [re, im], "tail": [[re, im], ...]}, tail[j] = c_{-(j+1)}
json to_json(const ShapeSpec &shape);
ShapeSpec shape_from_json(const json &j);

// {"nu": [re, im], "lambdas": [[re, im], ...]}
json to_json(const MomentTable &table);
MomentTable table_from_json(const json &j);

json to_json(const DetectionResult &result);

// JSON lines, one {"t": ..., "nu": ..., "lambdas": ...} per line.
TimeSeriesMeasurement timeseries_from_jsonl(std::istream &in);
void write_timeseries_jsonl(std::ostream &out, const TimeSeriesMeasurement &data);

// Provenance header: every output records the invocation that produced it,
// embedded as a `manifest` object in JSON outputs or a leading '#' line in CSV.
struct RunManifest {
    std::string subcommand;
    json params = json::object();
    std::string version = "hydrodetect 0.1.0";

    json to_json() const;
};

void write_csv_manifest_line(std::ostream &out, const RunManifest &m);

} // namespace hydro::io
