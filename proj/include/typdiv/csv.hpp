#ifndef TYPDIV_CSV_HPP
#define TYPDIV_CSV_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace typdiv::csv {

// One parsed record. `line` is the 1-based line the record starts on,
// so errors can point at the offending row even with multi-line fields.
struct Row {
    std::vector<std::string> fields;
    std::size_t line = 0;
};

// RFC 4180 style parser: quoted fields, doubled quotes, CRLF, embedded
// separators and newlines inside quotes. Fully blank records are skipped.
std::vector<Row> parse(std::string_view text, char sep = ',');

std::string read_text_file(const std::filesystem::path& path);

// A header-indexed table. Rows are validated to have exactly as many
// fields as the header.
class Table {
public:
    static Table read(const std::filesystem::path& path, char sep = ',');
    static Table from_string(std::string_view text, std::string name, char sep = ',');

    const std::string& name() const noexcept { return name_; }
    const std::vector<std::string>& header() const noexcept { return header_; }
    const std::vector<Row>& rows() const noexcept { return rows_; }

    std::optional<std::size_t> find_column(std::string_view col) const;
    // Throws DataError when the column is missing.
    std::size_t column(std::string_view col) const;

    const std::string& field(const Row& row, std::size_t col) const;

    // "<name>:<line>" prefix for diagnostics.
    std::string where(const Row& row) const;

private:
    Table(std::string name, std::vector<Row> records);

    std::string name_;
    std::vector<std::string> header_;
    std::vector<Row> rows_;
};

} // namespace typdiv::csv

#endif
