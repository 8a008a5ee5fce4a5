#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "tdce/channel.hpp"
#include "tdce/clustering.hpp"
#include "tdce/qam.hpp"
#include "tdce/signal.hpp"
#include "tdce/taps.hpp"

namespace tdce::io {

using Json = nlohmann::ordered_json;

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

/// Columns: index, real, imag, magnitude, phase.
std::string taps_csv(const TapSet& taps);
void write_taps_csv(const std::filesystem::path& path, const TapSet& taps);
TapSet read_taps_csv(const std::filesystem::path& path);

/// Columns: bin, lower_rad, upper_rad, count.
std::string histogram_csv(const std::vector<int>& counts);

Json to_json(const ClusteredFilter& cf, const Json& metadata = Json::object());
ClusteredFilter clustered_filter_from_json(const Json& j);
void write_clustered_filter(const std::filesystem::path& path, const ClusteredFilter& cf,
                            const Json& metadata = Json::object());
ClusteredFilter read_clustered_filter(const std::filesystem::path& path, Json* metadata = nullptr);

Json to_json(const ChannelSpec& spec);
ChannelSpec channel_spec_from_json(const Json& j);
Json to_json(const LinkRun& run);
LinkRun link_run_from_json(const Json& j);

/// Binary waveform at `path` (per polarization, interleaved little-endian
/// float64 real/imag) plus a JSON sidecar at `path` + ".json".
void write_signal(const std::filesystem::path& path, const SignalBlock& block, const Json& metadata = Json::object());
SignalBlock read_signal(const std::filesystem::path& path, Json* metadata = nullptr);
std::filesystem::path sidecar_path(const std::filesystem::path& path);

/// Columns: pol, index, real, imag.
std::string signal_csv(const SignalBlock& block);

/// Bits are recovered from the symbols by Gray demapping.
SymbolStream symbols_from_block(const SignalBlock& block);
SignalBlock block_from_symbols(const SymbolStream& s, double baud_rate_hz);

}  // namespace tdce::io
