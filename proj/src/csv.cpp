#include "tstdp/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace tstdp {

std::string format_number(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : columns_(columns.size()) {
    if (columns.empty()) throw std::invalid_argument("CSV needs at least one column");
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) content_ += ',';
        content_ += columns[i];
    }
    content_ += '\n';
}

void CsvWriter::add_row(const std::vector<double>& cells) {
    if (cells.size() != columns_) throw std::invalid_argument("CSV row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) content_ += ',';
        content_ += format_number(cells[i]);
    }
    content_ += '\n';
}

void CsvWriter::add_row(const std::string& label, const std::vector<double>& cells) {
    if (cells.size() + 1 != columns_) throw std::invalid_argument("CSV row width mismatch");
    content_ += label;
    for (double cell : cells) {
        content_ += ',';
        content_ += format_number(cell);
    }
    content_ += '\n';
}

void CsvWriter::add_row_raw(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw std::invalid_argument("CSV row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) content_ += ',';
        content_ += cells[i];
    }
    content_ += '\n';
}

void CsvWriter::write(const std::filesystem::path& path) const {
    write_file_atomic(path, content_);
}

} // namespace tstdp
