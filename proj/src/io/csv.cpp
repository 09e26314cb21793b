#include "pmfd/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace pmfd {

std::string format_real(double v) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(len));
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), columns_(header.size()) {
    file_ = std::fopen(path.c_str(), "wb");
    if (file_ == nullptr) throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) std::fputc(',', file_);
        std::fputs(header[i].c_str(), file_);
    }
    std::fputc('\n', file_);
}

CsvWriter::~CsvWriter() {
    if (file_) std::fclose(file_);
}

void CsvWriter::row(const std::vector<std::optional<double>>& values) {
    if (values.size() != columns_) throw std::invalid_argument("csv row has the wrong column count");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) std::fputc(',', file_);
        if (values[i]) std::fputs(format_real(*values[i]).c_str(), file_);
    }
    std::fputc('\n', file_);
}

void CsvWriter::labelled_row(const std::string& label, double value) {
    std::fprintf(file_, "%s,%s\n", label.c_str(), format_real(value).c_str());
}

void CsvWriter::flush() { std::fflush(file_); }

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    CsvTable table;
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const auto comma = s.find(',', start);
            cells.push_back(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return cells;
    };
    auto number = [](const std::string& cell, double& out) {
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
        return ec == std::errc() && ptr == cell.data() + cell.size();
    };
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
    table.header = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split(line);
        std::vector<std::optional<double>> row;
        std::string label;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            double v = 0.0;
            if (cells[i].empty()) {
                row.emplace_back();
            } else if (number(cells[i], v)) {
                row.emplace_back(v);
            } else if (i == 0) {
                label = cells[i];
            } else {
                throw std::runtime_error(path.string() + ": malformed cell '" + cells[i] + "'");
            }
        }
        table.labels.push_back(label);
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace pmfd
