#include "flowcalc/report.hpp"

#include "flowcalc/error.hpp"

#include <cstdio>
#include <fstream>

namespace flowcalc {

void Report::check_new(const std::string& name) const {
    if (name.empty()) throw InvalidArgument("report row needs a name");
    if (find(name)) throw InvalidArgument("duplicate report row '" + name + "'");
}

void Report::add_provenance(std::string_view key, std::string value) {
    std::string name = "provenance." + std::string(key);
    check_new(name);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(provenance_count_), ReportRow{std::move(name), std::move(value)});
    ++provenance_count_;
}

void Report::add_real(std::string name, double value) {
    check_new(name);
    rows_.push_back({std::move(name), value});
}

void Report::add_text(std::string name, std::string value) {
    check_new(name);
    rows_.push_back({std::move(name), std::move(value)});
}

void Report::add_verdict(std::string name, bool pass, std::string_view tolerance_row) {
    check_new(name);
    const ReportRow* tol = find(tolerance_row);
    if (!tol || !std::holds_alternative<double>(tol->value)) {
        throw InvalidArgument("verdict '" + name + "' needs tolerance row '" + std::string(tolerance_row) + "'");
    }
    rows_.push_back({std::move(name), Verdict{pass, std::string(tolerance_row)}});
}

const ReportRow* Report::find(std::string_view name) const {
    for (const auto& row : rows_) {
        if (row.name == name) return &row;
    }
    return nullptr;
}

std::string Report::to_csv() const {
    std::string out = "name,value\n";
    for (const auto& row : rows_) {
        out += csv_field(row.name);
        out += ',';
        if (const auto* v = std::get_if<double>(&row.value)) out += format_real(*v);
        else if (const auto* verdict = std::get_if<Verdict>(&row.value)) out += verdict->pass ? "pass" : "fail";
        else out += csv_field(std::get<std::string>(row.value));
        out += '\n';
    }
    return out;
}

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot open '" + path + "' for writing");
    file.write(content.data(), static_cast<std::streamsize>(content.size()));
    file.close();
    if (!file) throw Error("failed writing '" + path + "'");
}

void write_report(const Report& report, const std::string& path) { write_text_file(path, report.to_csv()); }

std::string verdict_table_csv(const VerdictTable& table) {
    std::string out = "trial,field,dim,integral_residual,differential_residual,agree\n";
    for (const auto& row : table.rows) {
        out += std::to_string(row.trial) + ',' + csv_field(row.field) + ',' + std::to_string(row.dim) + ',' +
               format_real(row.integral_residual) + ',' + format_real(row.differential_residual) + ',' +
               (row.agree ? "yes" : "no") + '\n';
    }
    return out;
}

} // namespace flowcalc
