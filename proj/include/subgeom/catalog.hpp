#pragma once

#include "subgeom/analysis.hpp"
#include "subgeom/ambient.hpp"
#include "subgeom/jets.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace subgeom {

using ParamMap = std::map<std::string, double>;

/// Ground-truth immersion with exact jets and its known classification.
struct CatalogEntry {
    std::string id;
    std::string description;
    ImmersionChart chart;
    AmbientModel ambient;
    // Empty for generic entries whose status is not asserted.
    std::optional<RecurrenceStatus> expected_status;
    std::optional<int> expected_dim_N1;
    bool hypersurface = false;
    ParamMap params; // resolved values, defaults filled in
};

struct ParamSpec {
    std::string name;
    double default_value;
    double lo;
    double hi;
    std::string doc;
};

struct CatalogListing {
    std::string id;
    std::string description;
    double c;
    int n;
    int ambient_dim;
    std::vector<ParamSpec> params;
};

/// Builds entry `id`. Unknown ids, unknown parameter names and values
/// outside [lo, hi] raise InputError.
CatalogEntry instantiate(const std::string& id, const ParamMap& params = {});

/// All entries in a fixed order.
std::vector<CatalogListing> list_entries();

/// Fixed orthogonal matrix used to rotate low-codimension examples into a
/// larger Euclidean space (product of Givens rotations with committed angles).
Eigen::MatrixXd fixed_rotation(int dim);

} // namespace subgeom
