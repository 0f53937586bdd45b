#pragma once

#include <filesystem>
#include <string>

#include "sweepchi/domain.hpp"

namespace sweepchi {

/// JSON scene document (schema in docs/scene-format.md).
[[nodiscard]] std::string scene_to_json(const Scene& scene);

/// Parses and fully validates a scene. Malformed JSON or a schema mismatch is
/// a ParseError; a violated domain invariant is a ValidationError.
[[nodiscard]] Scene scene_from_json(const std::string& text);

[[nodiscard]] Scene load_scene(const std::filesystem::path& path);
void save_scene(const std::filesystem::path& path, const Scene& scene);

} // namespace sweepchi
