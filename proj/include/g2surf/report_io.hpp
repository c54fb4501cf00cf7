#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "g2surf/acceptance.hpp"
#include "g2surf/cross7.hpp"
#include "g2surf/invariants.hpp"
#include "g2surf/planes.hpp"
#include "g2surf/surface_synth.hpp"

namespace g2surf {

/// Bumped whenever a CSV column or a JSON key changes meaning.
inline constexpr int kSchemaVersion = 1;

/// Writes to a temporary sibling and renames it over `path`. Throws
/// Error{BadConfig} when the directory is not writable.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// Header comment "# schema_version=1", a column line, then one row per grid
/// point (x fastest): x, y, phi1..phi7, F1..F7, Fp1..Fp7, Fm1..Fm7.
std::string grid_csv(const SurfaceGrid& grid);

/// Domain, sizes, mode, residuals and warnings of a synthesized grid.
nlohmann::json grid_sidecar(const SurfaceGrid& grid, const MapDescriptor& map);

nlohmann::json to_json(const IdentityReport& r);
nlohmann::json to_json(const PlaneVerdict& v);
nlohmann::json to_json(const Tolerances& t);
/// Aggregates always; per-point residual arrays only when the report kept them.
nlohmann::json to_json(const ClassReport& r);
/// Runtimes are left out so reports are byte-identical across runs.
nlohmann::json to_json(const CriterionResult& r);

/// Pretty-printed with a trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace g2surf
