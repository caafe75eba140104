#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace spinsq {

/// Scientific notation with 9 significant digits ("7.85398163e-01"),
/// independent of the global locale. Negative zero prints as zero.
std::string format_number(double value);

/// value rounded to 9 significant digits.
double round_significant(double value);

/// Writes `content` to a sibling temporary file and renames it over `path`.
/// Throws std::filesystem::filesystem_error / std::runtime_error on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace spinsq
