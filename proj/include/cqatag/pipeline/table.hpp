#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cqatag::pipeline {

/// A rectangular text table written as CSV or Markdown.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const;
    std::string to_markdown() const;
};

/// Parses CSV produced by Table::to_csv (RFC 4180 quoting).
Table parse_csv(const std::string& text);

/// Fixed-point with `digits` decimals.
std::string fixed(double value, int digits = 2);

/// Shortest round-trip form, e.g. 90 or 92.5.
std::string compact(double value);

std::string read_file(const std::filesystem::path& path);

/// Writes through a temporary file and renames, creating parent directories.
void write_file(const std::filesystem::path& path, const std::string& content);

} // namespace cqatag::pipeline
