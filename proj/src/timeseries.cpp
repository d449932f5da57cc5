#include "twprobe/timeseries.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace twprobe {

void TimeSeries::validate() const {
    if (names.empty() || names[0] != "t")
        throw NumericError("TimeSeries: first column must be named 't'");
    if (names.size() != cols.size())
        throw NumericError("TimeSeries: column name/data count mismatch");
    for (const auto& c : cols)
        if (c.size() != cols[0].size())
            throw NumericError("TimeSeries: unequal column lengths");
    const auto& t = cols[0];
    for (size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1])) throw NumericError("TimeSeries: t must be strictly increasing");
}

const std::vector<double>& TimeSeries::column(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return cols[i];
    throw std::invalid_argument("TimeSeries: no column named '" + name + "'");
}

bool operator==(const TimeSeries& a, const TimeSeries& b) {
    return a.names == b.names && a.cols == b.cols && a.metadata == b.metadata;
}

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw ConfigError("unknown output format '" + s + "' (expected csv or json)");
}

std::string format_name(OutputFormat f) {
    return f == OutputFormat::csv ? "csv" : "json";
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const TimeSeries& ts, std::ostream& out) {
    ts.validate();
    for (size_t i = 0; i < ts.names.size(); ++i) {
        if (i) out << ',';
        out << ts.names[i];
    }
    out << '\n';
    const size_t rows = ts.cols[0].size();
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < ts.cols.size(); ++c) {
            if (c) out << ',';
            out << format_double(ts.cols[c][r]);
        }
        out << '\n';
    }
}

void write_json(const TimeSeries& ts, std::ostream& out) {
    ts.validate();
    nlohmann::ordered_json j;
    nlohmann::ordered_json columns = nlohmann::ordered_json::object();
    for (size_t i = 0; i < ts.names.size(); ++i) columns[ts.names[i]] = ts.cols[i];
    j["columns"] = std::move(columns);
    j["metadata"] = ts.metadata;
    out << j.dump(2) << '\n';
}

TimeSeries read_json(std::istream& in) {
    nlohmann::ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("read_json: ") + e.what());
    }
    TimeSeries ts;
    if (!j.contains("columns") || !j["columns"].is_object())
        throw IoError("read_json: missing 'columns' object");
    for (const auto& [name, values] : j["columns"].items()) {
        ts.names.push_back(name);
        ts.cols.push_back(values.get<std::vector<double>>());
    }
    if (j.contains("metadata"))
        ts.metadata = j["metadata"].get<std::map<std::string, std::string>>();
    ts.validate();
    return ts;
}

void emit_timeseries(const TimeSeries& ts, OutputFormat format, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    if (format == OutputFormat::csv)
        write_csv(ts, out);
    else
        write_json(ts, out);
    out.flush();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

} // namespace twprobe
