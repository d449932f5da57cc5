// Sampled observables plus run metadata, with byte-stable CSV/JSON emission.
// CSV carries the data only (one header row, 17-significant-digit values);
// JSON adds the metadata object and round-trips exactly.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "twprobe/errors.hpp"

namespace twprobe {

struct TimeSeries {
    std::vector<std::string> names;           // column names, names[0] == "t"
    std::vector<std::vector<double>> cols;    // parallel to names
    std::map<std::string, std::string> metadata;

    void validate() const;  // equal column lengths, t strictly increasing
    long n_samples() const { return cols.empty() ? 0 : static_cast<long>(cols[0].size()); }
    const std::vector<double>& column(const std::string& name) const;
};

bool operator==(const TimeSeries& a, const TimeSeries& b);

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& s);
std::string format_name(OutputFormat f);

// 17 significant digits; round-trips any double exactly.
std::string format_double(double v);

void write_csv(const TimeSeries& ts, std::ostream& out);
void write_json(const TimeSeries& ts, std::ostream& out);
TimeSeries read_json(std::istream& in);

void emit_timeseries(const TimeSeries& ts, OutputFormat format, const std::filesystem::path& path);

} // namespace twprobe
