#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace tstdp {

/// Shortest decimal form that parses back to the same double; locale
/// independent (std::to_chars).
std::string format_number(double value);

/// Writes `content` through a temporary file in the target directory and
/// renames it into place, so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Minimal CSV assembler with a fixed column count per file.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> columns);

    /// Cells are rendered with format_number; throws std::invalid_argument on
    /// a column-count mismatch.
    void add_row(const std::vector<double>& cells);

    /// Mixed row for files with a leading label column.
    void add_row(const std::string& label, const std::vector<double>& cells);

    /// Fully pre-rendered row.
    void add_row_raw(const std::vector<std::string>& cells);

    const std::string& content() const { return content_; }
    void write(const std::filesystem::path& path) const;

private:
    std::size_t columns_;
    std::string content_;
};

} // namespace tstdp
