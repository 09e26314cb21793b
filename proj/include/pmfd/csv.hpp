#pragma once

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace pmfd {

/// Writes comma-separated rows with every real at 17 significant digits,
/// which round-trips binary64 exactly. Empty optionals become empty cells.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<std::optional<double>>& values);
    /// A row whose first cell is a label, e.g. the final "err1,<value>" line.
    void labelled_row(const std::string& label, double value);
    void flush();
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
    std::FILE* file_ = nullptr;
    std::size_t columns_;
};

std::string format_real(double v);

struct CsvTable {
    std::vector<std::string> header;
    /// Cells that parse as numbers; empty cells are nullopt. Rows whose first
    /// cell is not numeric keep it in `labels` and parse the remaining cells.
    std::vector<std::vector<std::optional<double>>> rows;
    /// One entry per row, empty for unlabelled rows.
    std::vector<std::string> labels;
};

/// Strict reader for the files CsvWriter produces. Throws std::runtime_error
/// on a malformed cell.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace pmfd
