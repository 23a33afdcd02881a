#include "report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace discrimlab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
    return out;
}

std::string cell_csv(const Cell& cell) {
    struct Visitor {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string& v) const { return csv_escape(v); }
    };
    return std::visit(Visitor{}, cell.value);
}

std::string cell_json(const Cell& cell) {
    struct Visitor {
        std::string operator()(std::monostate) const { return "null"; }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string& v) const { return json_escape(v); }
    };
    return std::visit(Visitor{}, cell.value);
}

}  // namespace

Report::Report(std::string command, std::vector<std::string> columns)
    : command_(std::move(command)), columns_(std::move(columns)) {
    if (columns_.empty()) throw std::invalid_argument("a report needs at least one column");
}

void Report::add_row(std::vector<Cell> cells) {
    if (cells.size() != columns_.size())
        throw std::invalid_argument("report row does not match the column schema");
    rows_.push_back(std::move(cells));
}

bool Report::all_pass() const {
    std::size_t pass_col = columns_.size();
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i] == "pass") pass_col = i;
    if (pass_col == columns_.size()) return true;
    for (const auto& row : rows_) {
        const auto* flag = std::get_if<bool>(&row[pass_col].value);
        if (flag == nullptr || !*flag) return false;
    }
    return true;
}

std::string Report::render_csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(columns_[i]);
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += cell_csv(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string Report::render_json() const {
    std::string out = "[";
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        out += (r == 0) ? "\n" : ",\n";
        out += "  {";
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (i) out += ", ";
            out += json_escape(columns_[i]);
            out += ": ";
            out += cell_json(rows_[r][i]);
        }
        out += '}';
    }
    out += rows_.empty() ? "]\n" : "\n]\n";
    return out;
}

std::string Report::render(const std::string& format) const {
    if (format == "csv") return render_csv();
    if (format == "json") return render_json();
    throw std::invalid_argument("unknown report format '" + format + "' (expected csv or json)");
}

void Report::write(const std::string& format, const std::string& path) const {
    const std::string text = render(format);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

}  // namespace discrimlab
