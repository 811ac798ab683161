#include "lfm/csv.hpp"

#include <fstream>
#include <sstream>

#include "lfm/errors.hpp"
#include "lfm/text.hpp"

namespace lfm {

std::string to_string(SeriesRole r) {
    switch (r) {
    case SeriesRole::LaborForce: return "labor_force";
    case SeriesRole::Unemployment: return "unemployment";
    case SeriesRole::Inflation: return "inflation";
    }
    return "unknown";
}

SeriesRole role_from_string(const std::string& s) {
    if (s == "labor_force") return SeriesRole::LaborForce;
    if (s == "unemployment") return SeriesRole::Unemployment;
    if (s == "inflation") return SeriesRole::Inflation;
    throw DataError("unknown series role '" + s +
                    "' (expected labor_force, unemployment or inflation)");
}

std::string to_string(SourceMeasure m) {
    switch (m) {
    case SourceMeasure::CPI: return "CPI";
    case SourceMeasure::DGDP: return "DGDP";
    case SourceMeasure::NAC: return "NAC";
    case SourceMeasure::USDefinition: return "US-definition";
    case SourceMeasure::AMS: return "AMS";
    case SourceMeasure::Eurostat: return "Eurostat";
    case SourceMeasure::OECD: return "OECD";
    }
    return "unknown";
}

SourceMeasure source_measure_from_string(const std::string& s) {
    if (s == "CPI") return SourceMeasure::CPI;
    if (s == "DGDP") return SourceMeasure::DGDP;
    if (s == "NAC") return SourceMeasure::NAC;
    if (s == "US-definition") return SourceMeasure::USDefinition;
    if (s == "AMS") return SourceMeasure::AMS;
    if (s == "Eurostat") return SourceMeasure::Eurostat;
    if (s == "OECD") return SourceMeasure::OECD;
    throw DataError("unknown source measure '" + s + "'");
}

Unit unit_for_role(SeriesRole r) {
    return r == SeriesRole::LaborForce ? Unit::Count : Unit::RatePerYear;
}

AnnualSeries load_series_csv(const std::string& path, Unit unit, std::string label,
                             std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");

    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    ++lineno;
    if (std::string(trim(line)) != "year,value")
        throw DataError(path + ":1: header must be exactly 'year,value'");

    struct Row {
        int year;
        bool has_value;
        double value;
    };
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = trim(line);
        if (t.empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        auto fields = split(std::string(t), ',');
        if (fields.size() != 2)
            throw DataError(where + ": expected 2 fields, got " +
                            std::to_string(fields.size()));
        Row r{};
        r.year = parse_int(fields[0], where + " year");
        auto value_text = trim(fields[1]);
        if (value_text.empty()) {
            r.has_value = false;
        } else {
            r.has_value = true;
            r.value = parse_double(value_text, where + " value");
        }
        if (!rows.empty() && r.year <= rows.back().year)
            throw DataError(where + ": years must be strictly increasing (" +
                            std::to_string(rows.back().year) + " then " +
                            std::to_string(r.year) + ")");
        rows.push_back(r);
    }
    if (rows.empty()) throw DataError(path + ": no data rows");

    // Trim empty-value rows at the edges (warn); anything left without a
    // value is interior and fatal.
    std::size_t first = 0, last = rows.size();
    while (first < last && !rows[first].has_value) {
        if (warnings)
            warnings->push_back(path + ": dropped leading empty row for year " +
                                std::to_string(rows[first].year));
        ++first;
    }
    while (last > first && !rows[last - 1].has_value) {
        if (warnings)
            warnings->push_back(path + ": dropped trailing empty row for year " +
                                std::to_string(rows[last - 1].year));
        --last;
    }
    if (first == last) throw DataError(path + ": no rows with values");

    std::vector<double> values;
    int expected = rows[first].year;
    for (std::size_t i = first; i < last; ++i) {
        if (!rows[i].has_value)
            throw DataError(path + ": interior year " + std::to_string(rows[i].year) +
                            " has no value");
        if (rows[i].year != expected)
            throw DataError(path + ": interior year " + std::to_string(expected) +
                            " is missing");
        values.push_back(rows[i].value);
        ++expected;
    }
    return AnnualSeries(rows[first].year, std::move(values), unit, std::move(label));
}

AnnualSeries load_series(const SeriesFile& f, std::vector<std::string>* warnings) {
    return load_series_csv(f.path, unit_for_role(f.role), to_string(f.role), warnings);
}

std::string series_to_csv(const AnnualSeries& s) {
    std::ostringstream out;
    out << "year,value\n";
    for (std::size_t i = 0; i < s.size(); ++i)
        out << (s.start_year() + static_cast<int>(i)) << ',' << fmt_double(s[i]) << '\n';
    return out.str();
}

void save_series_csv(const AnnualSeries& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << series_to_csv(s);
    if (!out) throw DataError("write failed for '" + path + "'");
}

} // namespace lfm
