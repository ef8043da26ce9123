#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace misdta {

/// @throws ValidationError if the file cannot be read.
std::string read_file(const std::filesystem::path& path);

/// Writes to a temporary sibling and renames it over `path`, so readers never see partial output.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Directory of the bundled fixtures (MISDTA_FIXTURE_DIR overrides the built-in location).
std::filesystem::path fixture_dir();

}  // namespace misdta
