#include "horolab/records.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace horolab::cli {

using json = nlohmann::ordered_json;  // field order is part of the output contract

std::string to_json_line(const ResultRecord& rec) {
    json j;
    j["op"] = rec.op;
    json params = json::object();
    for (const auto& [k, v] : rec.params) params[k] = v;
    j["params"] = params;
    json values = json::object();
    for (const auto& [k, v] : rec.values) values[k] = v;
    j["values"] = values;
    if (rec.pass.has_value()) j["pass"] = *rec.pass;
    j["seed"] = rec.seed;
    j["version"] = rec.version;
    j["timestamp"] = rec.timestamp;
    return j.dump();
}

ResultRecord from_json_line(const std::string& line) {
    json j = json::parse(line);
    ResultRecord rec;
    rec.op = j.at("op").get<std::string>();
    for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it)
        rec.params.emplace_back(it.key(), it.value().get<std::string>());
    for (auto it = j.at("values").begin(); it != j.at("values").end(); ++it)
        rec.values.emplace_back(it.key(), it.value().get<double>());
    if (j.contains("pass")) rec.pass = j.at("pass").get<bool>();
    rec.seed = j.at("seed").get<u64>();
    rec.version = j.at("version").get<std::string>();
    rec.timestamp = j.at("timestamp").get<std::string>();
    return rec;
}

namespace {

std::vector<std::string> column_order(const std::vector<ResultRecord>& records) {
    std::vector<std::string> cols{"op"};
    std::set<std::string> seen;
    for (const auto& rec : records)
        for (const auto& [k, v] : rec.params) {
            (void)v;
            if (seen.insert("p:" + k).second) cols.push_back("p:" + k);
        }
    for (const auto& rec : records)
        for (const auto& [k, v] : rec.values) {
            (void)v;
            if (seen.insert("v:" + k).second) cols.push_back("v:" + k);
        }
    cols.push_back("pass");
    cols.push_back("seed");
    return cols;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::string csv_header(const std::vector<ResultRecord>& records) {
    std::string out;
    for (const auto& c : column_order(records)) {
        if (!out.empty()) out += ",";
        out += c;
    }
    return out;
}

std::string to_csv_row(const ResultRecord& rec, const std::vector<ResultRecord>& all) {
    std::string out;
    for (const auto& col : column_order(all)) {
        if (!out.empty()) out += ",";
        if (col == "op") out += rec.op;
        else if (col == "pass") out += rec.pass.has_value() ? (*rec.pass ? "1" : "0") : "";
        else if (col == "seed") out += std::to_string(rec.seed);
        else if (col.rfind("p:", 0) == 0) {
            for (const auto& [k, v] : rec.params)
                if ("p:" + k == col) out += v;
        } else {
            for (const auto& [k, v] : rec.values)
                if ("v:" + k == col) out += format_double(v);
        }
    }
    return out;
}

std::string render(const std::vector<ResultRecord>& records, const std::string& format) {
    std::string out;
    if (format == "jsonl") {
        for (const auto& rec : records) out += to_json_line(rec) + "\n";
        return out;
    }
    if (format == "csv") {
        out = csv_header(records) + "\n";
        for (const auto& rec : records) out += to_csv_row(rec, records) + "\n";
        return out;
    }
    throw ConfigInvalid("unknown format: " + format);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw ConfigInvalid("cannot open output file: " + path);
    f << content;
}

std::vector<ResultRecord> read_jsonl_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw GoldenMismatch("cannot open golden file: " + path);
    std::vector<ResultRecord> out;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        out.push_back(from_json_line(line));
    }
    return out;
}

GoldenDiff compare_golden(const std::vector<ResultRecord>& fresh, const std::vector<ResultRecord>& golden,
                          double rel_tol) {
    GoldenDiff diff;
    if (fresh.size() != golden.size()) {
        diff.match = false;
        diff.mismatches.push_back("record count " + std::to_string(fresh.size()) + " vs " +
                                  std::to_string(golden.size()));
        return diff;
    }
    for (std::size_t i = 0; i < fresh.size(); ++i) {
        const auto& a = fresh[i];
        const auto& b = golden[i];
        auto complain = [&](const std::string& what) {
            diff.match = false;
            diff.mismatches.push_back("record " + std::to_string(i) + ": " + what);
        };
        if (a.op != b.op) complain("op " + a.op + " vs " + b.op);
        if (a.params != b.params) complain("params differ");
        if (a.pass != b.pass) complain("pass flag differs");
        if (a.values.size() != b.values.size()) {
            complain("value count differs");
            continue;
        }
        for (std::size_t k = 0; k < a.values.size(); ++k) {
            if (a.values[k].first != b.values[k].first) {
                complain("value key " + a.values[k].first + " vs " + b.values[k].first);
                continue;
            }
            double x = a.values[k].second, y = b.values[k].second;
            double scale = std::max({1.0, std::abs(x), std::abs(y)});
            if (std::abs(x - y) > rel_tol * scale) complain("value " + a.values[k].first + " drifted");
        }
    }
    return diff;
}

}  // namespace horolab::cli
