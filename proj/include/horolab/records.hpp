#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "horolab/checked.hpp"
#include "horolab/errors.hpp"

namespace horolab::cli {

inline constexpr const char* kVersion = "1.0.0";

// one emitted measurement; the schema is shared by every subcommand
struct ResultRecord {
    std::string op;
    std::vector<std::pair<std::string, std::string>> params;  // ordered
    std::vector<std::pair<std::string, double>> values;       // ordered
    std::optional<bool> pass;
    u64 seed = 0;
    std::string version = kVersion;
    std::string timestamp;  // empty unless stamping was requested

    bool operator==(const ResultRecord&) const = default;
};

std::string to_json_line(const ResultRecord& rec);
ResultRecord from_json_line(const std::string& line);

std::string csv_header(const std::vector<ResultRecord>& records);
std::string to_csv_row(const ResultRecord& rec, const std::vector<ResultRecord>& all);

std::string render(const std::vector<ResultRecord>& records, const std::string& format);  // "csv" | "jsonl"
void write_file(const std::string& path, const std::string& content);
std::vector<ResultRecord> read_jsonl_file(const std::string& path);

struct GoldenDiff {
    bool match = true;
    std::vector<std::string> mismatches;
};
// field-by-field comparison: params and pass exact, numeric values within
// rel_tol; provenance fields are ignored
GoldenDiff compare_golden(const std::vector<ResultRecord>& fresh, const std::vector<ResultRecord>& golden,
                          double rel_tol = 1e-9);

}  // namespace horolab::cli
