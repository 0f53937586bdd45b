#pragma once

#include <string_view>
#include <vector>

#include "sweepchi/domain.hpp"

namespace sweepchi {

/// Built-in validation scenes, each with a reference Euler characteristic.
[[nodiscard]] const std::vector<Scene>& catalog();

/// Catalog lookup by name; throws InvalidArgument for an unknown name.
[[nodiscard]] const Scene& catalog_scene(std::string_view name);

} // namespace sweepchi
