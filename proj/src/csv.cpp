#include "typdiv/csv.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "typdiv/error.hpp"

namespace typdiv::csv {

std::vector<Row> parse(std::string_view text, char sep) {
    std::vector<Row> rows;
    // UTF-8 BOM
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    Row cur;
    cur.line = 1;
    std::string field;
    bool in_quotes = false;
    bool row_has_content = false;
    std::size_t line = 1;

    auto end_field = [&] {
        cur.fields.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        if (row_has_content || !cur.fields.empty() || !field.empty()) {
            end_field();
            // skip records that are a single empty field (blank lines)
            if (!(cur.fields.size() == 1 && cur.fields[0].empty())) rows.push_back(std::move(cur));
        }
        cur = Row{};
        cur.line = line;
        row_has_content = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            in_quotes = true;
            row_has_content = true;
        } else if (c == sep) {
            end_field();
            row_has_content = true;
        } else if (c == '\r') {
            // swallowed; bare CR is treated like part of CRLF
        } else if (c == '\n') {
            ++line;
            end_row();
        } else {
            field += c;
            row_has_content = true;
        }
    }
    end_row();
    return rows;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error reading file: " + path.string());
    return buf.str();
}

Table Table::read(const std::filesystem::path& path, char sep) {
    return from_string(read_text_file(path), path.string(), sep);
}

Table Table::from_string(std::string_view text, std::string name, char sep) {
    return Table(std::move(name), parse(text, sep));
}

Table::Table(std::string name, std::vector<Row> records) : name_(std::move(name)) {
    if (records.empty()) throw DataError(name_ + ": empty table (no header row)");
    header_ = std::move(records.front().fields);
    rows_.assign(std::make_move_iterator(records.begin() + 1), std::make_move_iterator(records.end()));
    for (const Row& r : rows_) {
        if (r.fields.size() != header_.size()) {
            throw DataError(name_ + ":" + std::to_string(r.line) + ": expected " +
                            std::to_string(header_.size()) + " fields, got " +
                            std::to_string(r.fields.size()));
        }
    }
}

std::optional<std::size_t> Table::find_column(std::string_view col) const {
    auto it = std::find(header_.begin(), header_.end(), col);
    if (it == header_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header_.begin());
}

std::size_t Table::column(std::string_view col) const {
    auto idx = find_column(col);
    if (!idx) throw DataError(name_ + ": missing required column '" + std::string(col) + "'");
    return *idx;
}

const std::string& Table::field(const Row& row, std::size_t col) const {
    return row.fields.at(col);
}

std::string Table::where(const Row& row) const {
    return name_ + ":" + std::to_string(row.line);
}

} // namespace typdiv::csv
