#include "tdce/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"

namespace tdce {

namespace {

struct Field {
    std::function<void(ChannelSpec&, double)> set;
    std::function<double(const ChannelSpec&)> get;
    bool integral;
};

const std::map<std::string, Field>& fields() {
    static const std::map<std::string, Field> table = {
        {"dispersion_ps_nm_km",
         {[](ChannelSpec& s, double v) { s.dispersion_ps_nm_km = v; },
          [](const ChannelSpec& s) { return s.dispersion_ps_nm_km; }, false}},
        {"wavelength_nm",
         {[](ChannelSpec& s, double v) { s.wavelength_nm = v; },
          [](const ChannelSpec& s) { return s.wavelength_nm; }, false}},
        {"baud_rate_hz",
         {[](ChannelSpec& s, double v) { s.baud_rate_hz = v; },
          [](const ChannelSpec& s) { return s.baud_rate_hz; }, false}},
        {"samples_per_symbol",
         {[](ChannelSpec& s, double v) { s.samples_per_symbol = static_cast<int>(v); },
          [](const ChannelSpec& s) { return static_cast<double>(s.samples_per_symbol); }, true}},
        {"span_length_km",
         {[](ChannelSpec& s, double v) { s.span_length_km = v; },
          [](const ChannelSpec& s) { return s.span_length_km; }, false}},
        {"span_count",
         {[](ChannelSpec& s, double v) { s.span_count = static_cast<int>(v); },
          [](const ChannelSpec& s) { return static_cast<double>(s.span_count); }, true}},
        {"nonlinearity_w_km",
         {[](ChannelSpec& s, double v) { s.nonlinearity_w_km = v; },
          [](const ChannelSpec& s) { return s.nonlinearity_w_km; }, false}},
        {"attenuation_db_km",
         {[](ChannelSpec& s, double v) { s.attenuation_db_km = v; },
          [](const ChannelSpec& s) { return s.attenuation_db_km; }, false}},
        {"amp_noise_figure_db",
         {[](ChannelSpec& s, double v) { s.amp_noise_figure_db = v; },
          [](const ChannelSpec& s) { return s.amp_noise_figure_db; }, false}},
    };
    return table;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

void assign(ChannelSpec& spec, const std::string& key, double value, const std::string& where) {
    const auto it = fields().find(key);
    if (it == fields().end()) throw ConfigError(where + ": unknown key '" + key + "'");
    if (it->second.integral && value != static_cast<double>(static_cast<long long>(value)))
        throw ConfigError(where + ": key '" + key + "' requires an integer value");
    it->second.set(spec, value);
}

void check(const ChannelSpec& spec, const std::string& source) {
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(source + ": " + e.what());
    }
}

ChannelSpec parse_json(const std::string& text, const std::string& source) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(source + ": invalid JSON (" + e.what() + ")");
    }
    if (!j.is_object()) throw ConfigError(source + ": expected a JSON object");
    ChannelSpec spec;
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number()) throw ConfigError(source + ": key '" + key + "' must be numeric");
        assign(spec, key, value.get<double>(), source);
    }
    check(spec, source);
    return spec;
}

}  // namespace

ChannelSpec parse_channel_spec(const std::string& text, const std::string& source_name) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_json(text, source_name);

    ChannelSpec spec;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = source_name + ":" + std::to_string(lineno);
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find_first_of("=:");
        if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string raw = trim(line.substr(eq + 1));
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
        if (ec != std::errc() || ptr != raw.data() + raw.size() || raw.empty())
            throw ConfigError(where + ": value '" + raw + "' is not a number");
        assign(spec, key, value, where);
    }
    check(spec, source_name);
    return spec;
}

ChannelSpec load_channel_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open spec file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_channel_spec(buf.str(), path.string());
}

std::string format_channel_spec(const ChannelSpec& spec) {
    std::ostringstream out;
    out.precision(17);
    for (const auto& [key, field] : fields()) out << key << " = " << field.get(spec) << '\n';
    return out.str();
}

}  // namespace tdce
