#pragma once

#include "bredon/persistence.hpp"

#include <filesystem>
#include <string>

namespace bredon {

/// Birth/death scatter above the diagonal; infinite bars sit in a marked top
/// band. Output bytes depend only on the diagram.
std::string diagram_svg(const PersistenceDiagram& diagram);

/// Throws std::runtime_error when the path cannot be written.
void render_diagram_svg(const PersistenceDiagram& diagram, const std::filesystem::path& path);

}  // namespace bredon
