#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "sqz/sweep.hpp"

namespace sqz {

/// S(r) on the left axis [0, 4], eta(r) on the right axis [0, 1], reference
/// lines at 2 and 2 sqrt 2. Rows without S (or eta) leave a gap in that
/// series. Needs at least two rows with a defined S.
std::string render_svg(std::span<const SweepRow> rows);
void emit_svg(std::span<const SweepRow> rows, const std::filesystem::path& path);

}  // namespace sqz
