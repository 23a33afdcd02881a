#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace discrimlab {

// One report cell. The monostate alternative renders as an empty CSV field /
// JSON null (used e.g. for D_x when a conditional state is mixed).
struct Cell {
    std::variant<std::monostate, double, std::int64_t, bool, std::string> value;

    Cell() = default;
    Cell(double v) : value(v) {}
    Cell(std::int64_t v) : value(v) {}
    Cell(int v) : value(static_cast<std::int64_t>(v)) {}
    Cell(std::uint64_t v) : value(static_cast<std::int64_t>(v)) {}
    Cell(bool v) : value(v) {}
    Cell(std::string v) : value(std::move(v)) {}
    Cell(const char* v) : value(std::string(v)) {}
    static Cell null() { return Cell(); }
};

// Fixed-column tabular report. Rendering is byte-stable: doubles are printed
// with 12 significant digits, CSV uses '\n' line endings with a mandatory
// header, JSON is an array of flat objects in column order.
class Report {
public:
    explicit Report(std::string command, std::vector<std::string> columns);

    void add_row(std::vector<Cell> cells);

    const std::string& command() const { return command_; }
    const std::vector<std::string>& columns() const { return columns_; }
    std::size_t row_count() const { return rows_.size(); }
    const std::vector<Cell>& row(std::size_t i) const { return rows_.at(i); }

    // true when every row's "pass" column (if any) is true
    bool all_pass() const;

    std::string render_csv() const;
    std::string render_json() const;
    std::string render(const std::string& format) const;  // "csv" or "json"
    void write(const std::string& format, const std::string& path) const;

private:
    std::string command_;
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

// %.12g
std::string format_double(double v);

}  // namespace discrimlab
