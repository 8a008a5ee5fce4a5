#include "tdce/io.hpp"

#include <bit>
#include <cstring>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tdce/config.hpp"

namespace tdce::io {

static_assert(std::endian::native == std::endian::little, "waveform files assume a little-endian host");

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
    if (!out) throw ConfigError("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string taps_csv(const TapSet& taps) {
    std::string s = "index,real,imag,magnitude,phase\n";
    for (std::size_t k = 0; k < taps.size(); ++k) {
        const cplx t = taps.taps[k];
        s += std::to_string(k) + "," + fmt17(t.real()) + "," + fmt17(t.imag()) + "," + fmt17(std::abs(t)) + "," +
             fmt17(std::arg(t)) + "\n";
    }
    return s;
}

void write_taps_csv(const std::filesystem::path& path, const TapSet& taps) { write_text(path, taps_csv(taps)); }

TapSet read_taps_csv(const std::filesystem::path& path) {
    std::istringstream in(read_text(path));
    std::string line;
    TapSet t;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 || line.empty()) continue;
        std::istringstream row(line);
        std::string idx, re, im;
        if (!std::getline(row, idx, ',') || !std::getline(row, re, ',') || !std::getline(row, im, ','))
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected index,real,imag");
        try {
            if (std::stoul(idx) != t.taps.size())
                throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": tap index out of order");
            t.taps.emplace_back(std::stod(re), std::stod(im));
        } catch (const std::logic_error&) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": malformed number");
        }
    }
    if (t.taps.empty()) throw ConfigError(path.string() + ": no taps");
    return t;
}

std::string histogram_csv(const std::vector<int>& counts) {
    std::string s = "bin,lower_rad,upper_rad,count\n";
    const double w = 2.0 * kPi / static_cast<double>(counts.size());
    for (std::size_t b = 0; b < counts.size(); ++b)
        s += std::to_string(b) + "," + fmt17(w * static_cast<double>(b)) + "," + fmt17(w * static_cast<double>(b + 1)) +
             "," + std::to_string(counts[b]) + "\n";
    return s;
}

Json to_json(const ClusteredFilter& cf, const Json& metadata) {
    Json j;
    j["format"] = "tdce-clustered-filter";
    j["version"] = 1;
    j["source_filter_len"] = cf.source_filter_len();
    Json c = Json::array();
    for (const auto& v : cf.centroids) c.push_back({v.real(), v.imag()});
    j["centroids"] = c;
    j["routing"] = cf.routing;
    j["metadata"] = metadata;
    return j;
}

ClusteredFilter clustered_filter_from_json(const Json& j) {
    try {
        if (j.at("format").get<std::string>() != "tdce-clustered-filter")
            throw ConfigError("not a clustered filter file");
        if (j.at("version").get<int>() != 1) throw ConfigError("unsupported clustered filter version");
        ClusteredFilter cf;
        for (const auto& c : j.at("centroids")) {
            if (!c.is_array() || c.size() != 2) throw ConfigError("centroid must be [real, imag]");
            cf.centroids.emplace_back(c[0].get<double>(), c[1].get<double>());
        }
        cf.routing = j.at("routing").get<std::vector<std::uint32_t>>();
        if (j.at("source_filter_len").get<std::size_t>() != cf.routing.size())
            throw ConfigError("source_filter_len does not match routing length");
        cf.validate();
        return cf;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed clustered filter: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid clustered filter: ") + e.what());
    }
}

void write_clustered_filter(const std::filesystem::path& path, const ClusteredFilter& cf, const Json& metadata) {
    write_text(path, to_json(cf, metadata).dump(2) + "\n");
}

ClusteredFilter read_clustered_filter(const std::filesystem::path& path, Json* metadata) {
    Json j;
    try {
        j = Json::parse(read_text(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    auto cf = clustered_filter_from_json(j);
    if (metadata) *metadata = j.value("metadata", Json::object());
    return cf;
}

Json to_json(const ChannelSpec& spec) {
    Json j;
    j["dispersion_ps_nm_km"] = spec.dispersion_ps_nm_km;
    j["wavelength_nm"] = spec.wavelength_nm;
    j["baud_rate_hz"] = spec.baud_rate_hz;
    j["samples_per_symbol"] = spec.samples_per_symbol;
    j["span_length_km"] = spec.span_length_km;
    j["span_count"] = spec.span_count;
    j["nonlinearity_w_km"] = spec.nonlinearity_w_km;
    j["attenuation_db_km"] = spec.attenuation_db_km;
    j["amp_noise_figure_db"] = spec.amp_noise_figure_db;
    return j;
}

ChannelSpec channel_spec_from_json(const Json& j) { return parse_channel_spec(j.dump(), "<metadata>"); }

Json to_json(const LinkRun& run) {
    Json j;
    j["spec"] = to_json(run.spec);
    j["launch_power_dbm"] = run.launch_power_dbm;
    j["symbol_count"] = run.symbol_count;
    j["seed"] = run.seed;
    j["nonlinear"] = run.nonlinear;
    j["noise"] = run.noise;
    j["step_size_m"] = run.step_size_m;
    j["pulse"] = to_string(run.pulse);
    j["rolloff"] = run.rolloff;
    j["pulse_span_symbols"] = run.pulse_span_symbols;
    j["frontend_rms"] = run.frontend_rms;
    return j;
}

LinkRun link_run_from_json(const Json& j) {
    try {
        LinkRun r;
        r.spec = channel_spec_from_json(j.at("spec"));
        r.launch_power_dbm = get_or(j, "launch_power_dbm", r.launch_power_dbm);
        r.symbol_count = get_or(j, "symbol_count", r.symbol_count);
        r.seed = get_or(j, "seed", r.seed);
        r.nonlinear = get_or(j, "nonlinear", r.nonlinear);
        r.noise = get_or(j, "noise", r.noise);
        r.step_size_m = get_or(j, "step_size_m", r.step_size_m);
        if (j.contains("pulse")) r.pulse = parse_pulse_shape(j.at("pulse").get<std::string>());
        r.rolloff = get_or(j, "rolloff", r.rolloff);
        r.pulse_span_symbols = get_or(j, "pulse_span_symbols", r.pulse_span_symbols);
        r.frontend_rms = get_or(j, "frontend_rms", r.frontend_rms);
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed link description: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid link description: ") + e.what());
    }
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) { return path.string() + ".json"; }

void write_signal(const std::filesystem::path& path, const SignalBlock& block, const Json& metadata) {
    block.validate();
    std::string bytes;
    bytes.reserve(block.polarizations() * block.length() * 2 * sizeof(double));
    for (const auto& p : block.pols) {
        for (const auto& v : p) {
            const double parts[2] = {v.real(), v.imag()};
            bytes.append(reinterpret_cast<const char*>(parts), sizeof parts);
        }
    }
    write_text(path, bytes);
    Json j;
    j["format"] = "tdce-signal";
    j["version"] = 1;
    j["sample_rate_hz"] = block.sample_rate_hz;
    j["polarizations"] = block.polarizations();
    j["length"] = block.length();
    j["role"] = to_string(block.role);
    j["offset"] = block.offset;
    j["metadata"] = metadata;
    write_text(sidecar_path(path), j.dump(2) + "\n");
}

SignalBlock read_signal(const std::filesystem::path& path, Json* metadata) {
    Json j;
    try {
        j = Json::parse(read_text(sidecar_path(path)));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(sidecar_path(path).string() + ": " + e.what());
    }
    SignalBlock b;
    std::size_t pols = 0, len = 0;
    try {
        if (j.at("format").get<std::string>() != "tdce-signal") throw ConfigError("not a signal sidecar");
        b.sample_rate_hz = j.at("sample_rate_hz").get<double>();
        pols = j.at("polarizations").get<std::size_t>();
        len = j.at("length").get<std::size_t>();
        b.role = parse_role(j.at("role").get<std::string>());
        b.offset = j.at("offset").get<std::int64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(sidecar_path(path).string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(sidecar_path(path).string() + ": " + e.what());
    }
    const std::string bytes = read_text(path);
    if (bytes.size() != pols * len * 2 * sizeof(double))
        throw ConfigError(path.string() + ": size does not match sidecar");
    const char* src = bytes.data();
    b.pols.assign(pols, CVec(len));
    for (auto& p : b.pols) {
        for (auto& v : p) {
            double parts[2];
            std::memcpy(parts, src, sizeof parts);
            src += sizeof parts;
            v = {parts[0], parts[1]};
        }
    }
    try {
        b.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    if (metadata) *metadata = j.value("metadata", Json::object());
    return b;
}

std::string signal_csv(const SignalBlock& block) {
    std::string s = "pol,index,real,imag\n";
    for (std::size_t p = 0; p < block.polarizations(); ++p)
        for (std::size_t i = 0; i < block.length(); ++i)
            s += std::to_string(p) + "," + std::to_string(static_cast<std::int64_t>(i) + block.offset) + "," +
                 fmt17(block.pols[p][i].real()) + "," + fmt17(block.pols[p][i].imag()) + "\n";
    return s;
}

SymbolStream symbols_from_block(const SignalBlock& block) {
    SymbolStream s;
    for (const auto& p : block.pols) {
        s.symbols.push_back(p);
        auto& bits = s.bits.emplace_back();
        bits.reserve(p.size() * qam16::kBitsPerSymbol);
        for (const auto& v : p)
            for (auto b : qam16::demap(v)) bits.push_back(b);
    }
    return s;
}

SignalBlock block_from_symbols(const SymbolStream& s, double baud_rate_hz) {
    SignalBlock b;
    b.pols = s.symbols;
    b.sample_rate_hz = baud_rate_hz;
    b.role = SignalRole::transmitted;
    return b;
}

}  // namespace tdce::io
