#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sqz/gaussian_model.hpp"

namespace sqz {

// Squeezing matrix document: {"d": <int>, "entries": [[re, im], ...]} with
// d*d entries in row-major order.

/// Throws InputError on malformed JSON, wrong entry count or an asymmetric
/// matrix.
SqueezingSpec parse_xi_json(std::string_view text);
SqueezingSpec load_xi_file(const std::filesystem::path& path);
std::string to_xi_json(const SqueezingSpec& spec);

}  // namespace sqz
