#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

namespace pvoice {

/// Writes `content` to a sibling temp file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::ifstream open_for_reading(const std::filesystem::path& path,
                               std::ios::openmode mode = std::ios::in);

std::string read_file(const std::filesystem::path& path);

}  // namespace pvoice
