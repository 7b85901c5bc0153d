#include "cavitycool/catalogue.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "cavitycool/errors.hpp"

namespace cavitycool {

namespace {

std::string strip_comment(const std::string& line) {
    return line.substr(0, line.find('#'));
}

double parse_number(const std::string& text, const std::string& context) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError("cannot parse number '" + text + "' in " + context);
    }
    return v;
}

}  // namespace

std::vector<ParticleSpecies> parse_catalogue(std::istream& in, Length wavelength) {
    std::vector<ParticleSpecies> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream tokens(strip_comment(line));
        std::map<std::string, std::string> kv;
        std::string tok;
        while (tokens >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw ConfigError("line " + std::to_string(lineno) + ": expected key=value, got '" + tok + "'");
            }
            kv[tok.substr(0, eq)] = tok.substr(eq + 1);
        }
        if (kv.empty()) continue;

        const std::string ctx = "catalogue line " + std::to_string(lineno);
        auto need = [&](const char* key) -> const std::string& {
            auto it = kv.find(key);
            if (it == kv.end()) throw ConfigError(ctx + ": missing " + key);
            return it->second;
        };
        ParticleSpecies s;
        s.label = need("label");
        s.mass = si::amu(parse_number(need("mass_amu"), ctx));
        s.chi = si::angstrom3_4pi_eps0(parse_number(need("chi_A3"), ctx));
        if (auto it = kv.find("sigma_abs_A2"); it != kv.end()) {
            s.sigma_abs = si::square_angstrom(parse_number(it->second, ctx));
        }
        if (auto it = kv.find("sigma_sca_A2"); it != kv.end()) {
            s.sigma_sca = si::square_angstrom(parse_number(it->second, ctx));
        } else {
            s.sigma_sca = rayleigh_cross_section(s.chi, wavelength);
        }
        try {
            s.validate();
        } catch (const DomainError& e) {
            throw ConfigError(ctx + ": " + e.what());
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<ParticleSpecies> load_catalogue(const std::string& path, Length wavelength) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open catalogue " + path);
    return parse_catalogue(f, wavelength);
}

const ParticleSpecies* find_species(const std::vector<ParticleSpecies>& cat, const std::string& label) {
    for (const auto& s : cat) {
        if (s.label == label) return &s;
    }
    return nullptr;
}

std::vector<ReferenceRow> parse_reference_table(std::istream& in) {
    std::vector<ReferenceRow> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream tokens(strip_comment(line));
        std::vector<std::string> cols;
        std::string tok;
        while (tokens >> tok) cols.push_back(tok);
        if (cols.empty()) continue;
        const std::string ctx = "reference line " + std::to_string(lineno);
        if (cols.size() != 5) throw ConfigError(ctx + ": expected label and four cells");

        auto cell = [&](std::string t) {
            ReferenceCell c;
            if (t == "-") return c;
            if (t.front() == '~') {
                c.approximate = true;
                t.erase(0, 1);
            }
            c.value = parse_number(t, ctx);
            return c;
        };
        rows.push_back({cols[0], cell(cols[1]), cell(cols[2]), cell(cols[3]), cell(cols[4])});
    }
    return rows;
}

std::vector<ReferenceRow> load_reference_table(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open reference table " + path);
    return parse_reference_table(f);
}

}  // namespace cavitycool
