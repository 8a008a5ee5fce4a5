#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tdce/common.hpp"

namespace tdce {

enum class SignalRole { transmitted, received, equalized };

std::string to_string(SignalRole role);
SignalRole parse_role(const std::string& text);

/// Single- or dual-polarization stream of complex samples.
///
/// `offset` is the position of samples[p][0] on the transmitted sample
/// timeline. Equalizers that return only fully-overlapped outputs advance it
/// by the filter group delay so outputs stay aligned with the transmit side.
struct SignalBlock {
    std::vector<CVec> pols;
    double sample_rate_hz = 0.0;
    SignalRole role = SignalRole::received;
    std::int64_t offset = 0;

    std::size_t polarizations() const { return pols.size(); }
    std::size_t length() const { return pols.empty() ? 0 : pols.front().size(); }

    /// Throws std::invalid_argument unless there are 1 or 2 polarizations of
    /// equal length and a positive sample rate.
    void validate() const;
};

}  // namespace tdce

namespace tdce {

/// Samples [start, start + count) of every polarization, offset adjusted.
SignalBlock slice(const SignalBlock& x, std::size_t start, std::size_t count);

}  // namespace tdce
