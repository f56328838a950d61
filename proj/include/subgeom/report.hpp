#pragma once

#include "subgeom/analysis.hpp"
#include "subgeom/catalog.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace subgeom {

using Json = nlohmann::ordered_json;

/// Rounds to 12 significant digits so that reports are stable text.
double round12(double x);

Json identities_json(const CatalogEntry& entry, std::span<const int> grid, const Tolerances& tol,
                     const Classification& result);

Json classification_json(const CatalogEntry& entry, std::span<const int> grid, const Tolerances& tol,
                         const Classification& result);

/// One row per grid point; `identities_only` drops the recurrence columns.
std::string classification_csv(const CatalogEntry& entry, const Classification& result, bool identities_only);

/// True when every point's status equals the entry's expected status (or
/// the entry asserts no status).
bool matches_expected(const CatalogEntry& entry, const Classification& result);

} // namespace subgeom
