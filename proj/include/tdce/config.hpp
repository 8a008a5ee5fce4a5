#pragma once

#include <filesystem>
#include <string>

#include "tdce/taps.hpp"

namespace tdce {

/// Parses a ChannelSpec from text. Two syntaxes are accepted: a JSON object,
/// or `key = value` lines with `#` comments. Unknown keys and malformed
/// values raise ConfigError naming the offending line.
ChannelSpec parse_channel_spec(const std::string& text, const std::string& source_name = "<string>");

ChannelSpec load_channel_spec(const std::filesystem::path& path);

/// key = value rendering accepted by parse_channel_spec.
std::string format_channel_spec(const ChannelSpec& spec);

}  // namespace tdce
