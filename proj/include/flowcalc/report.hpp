#pragma once

// Two-column `name,value` CSV reports.

#include "flowcalc/variational.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace flowcalc {

struct Verdict {
    bool pass = false;
    std::string tolerance_row; // name of the row holding the tolerance
};

struct ReportRow {
    std::string name;
    std::variant<double, Verdict, std::string> value;
};

class Report {
public:
    Report() = default;

    /// Rows named `provenance.<key>`; they always precede the body rows.
    void add_provenance(std::string_view key, std::string value);
    void add_real(std::string name, double value);
    void add_text(std::string name, std::string value);
    /// The tolerance row must already exist and hold a real.
    void add_verdict(std::string name, bool pass, std::string_view tolerance_row);

    const std::vector<ReportRow>& rows() const noexcept { return rows_; }
    const ReportRow* find(std::string_view name) const;

    std::string to_csv() const;

private:
    void check_new(const std::string& name) const;

    std::vector<ReportRow> rows_;
    std::size_t provenance_count_ = 0;
};

/// 17 significant digits ("%.17g"), round-trip exact.
std::string format_real(double value);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(std::string_view text);

/// Throws Error when the file cannot be written.
void write_report(const Report& report, const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

/// trial,field,dim,integral_residual,differential_residual,agree
std::string verdict_table_csv(const VerdictTable& table);

} // namespace flowcalc
