#include "lfm/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lfm/errors.hpp"
#include "lfm/text.hpp"

namespace lfm {

const SeriesFile* CountryManifest::find_role(SeriesRole role) const {
    for (const auto& f : series)
        if (f.role == role) return &f;
    return nullptr;
}

CountryManifest parse_manifest(const std::string& text, const std::string& base_dir,
                               const std::string& name_for_errors) {
    CountryManifest m;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const std::string where = name_for_errors + ":" + std::to_string(lineno);
        auto eq = t.find('=');
        if (eq == std::string_view::npos)
            throw DataError(where + ": expected key=value");
        const std::string key{trim(t.substr(0, eq))};
        const std::string value{trim(t.substr(eq + 1))};
        if (key == "country") {
            if (!m.country.empty()) throw DataError(where + ": duplicate country=");
            if (value.empty()) throw DataError(where + ": empty country name");
            m.country = value;
        } else if (key == "series") {
            auto f = split(value, ',');
            if (f.size() != 3)
                throw DataError(where + ": series needs role,measure,path");
            SeriesFile sf;
            sf.role = role_from_string(std::string(trim(f[0])));
            sf.measure = source_measure_from_string(std::string(trim(f[1])));
            std::string p{trim(f[2])};
            if (p.empty()) throw DataError(where + ": empty series path");
            std::filesystem::path fp(p);
            if (fp.is_relative() && !base_dir.empty())
                fp = std::filesystem::path(base_dir) / fp;
            sf.path = fp.string();
            m.series.push_back(std::move(sf));
        } else if (key == "break") {
            auto comma = value.find(',');
            if (comma == std::string::npos)
                throw DataError(where + ": break needs year,note");
            int year = parse_int(value.substr(0, comma), where + " break year");
            m.known_breaks.emplace_back(year, std::string(trim(value.substr(comma + 1))));
        } else {
            throw DataError(where + ": unknown key '" + key + "'");
        }
    }
    if (m.country.empty())
        throw DataError(name_for_errors + ": manifest has no country= line");
    if (!m.find_role(SeriesRole::LaborForce))
        throw DataError(name_for_errors + ": labor_force series required");
    return m;
}

CountryManifest load_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest(buf.str(), std::filesystem::path(path).parent_path().string(), path);
}

} // namespace lfm
