#pragma once

#include "bredon/complex.hpp"
#include "bredon/cover.hpp"
#include "bredon/diagram_metrics.hpp"
#include "bredon/mapper.hpp"
#include "bredon/mayer_vietoris.hpp"
#include "bredon/persistence.hpp"
#include "bredon/point_cloud.hpp"
#include "bredon/protocol.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <istream>
#include <string>

namespace bredon {

inline constexpr int kSchemaVersion = 1;

struct CsvOptions {
  bool header = false;        // skip the first row (auto-detected when it is not numeric)
  bool label_column = false;  // last column holds a point label
};

/// One point per row. Throws InputError naming the line of a malformed row.
PointCloud read_csv(std::istream& in, const CsvOptions& options = {});
PointCloud read_csv(const std::filesystem::path& path, const CsvOptions& options = {});

using nlohmann::json;

json to_json(const Cover& cover);
Cover cover_from_json(const json& j);

json to_json(const Filtration& filtration);
Filtration filtration_from_json(const json& j);

json to_json(const PersistenceDiagram& diagram);
PersistenceDiagram diagram_from_json(const json& j);

json to_json(const MapperComplex& mapper);
json to_json(const MVSequenceReport& report);
json to_json(const PredicateVerdict& verdict, const StabilityOptions& options);
json to_json(const BottleneckResult& result);
json to_json(const Transcript& transcript);
json to_json(const BredonReport& report);

/// Text table of exactness flags per degree.
std::string mv_table(const MVSequenceReport& report);

json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

/// 64-bit FNV-1a of the canonical (sorted-key, compact) dump, as hex.
std::string config_digest(const json& config);

}  // namespace bredon
