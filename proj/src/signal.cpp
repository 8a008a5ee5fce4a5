#include "tdce/signal.hpp"

#include <stdexcept>

namespace tdce {

std::string to_string(SignalRole role) {
    switch (role) {
        case SignalRole::transmitted: return "tx";
        case SignalRole::received: return "rx";
        case SignalRole::equalized: return "equalized";
    }
    return "unknown";
}

SignalRole parse_role(const std::string& text) {
    if (text == "tx") return SignalRole::transmitted;
    if (text == "rx") return SignalRole::received;
    if (text == "equalized") return SignalRole::equalized;
    throw std::invalid_argument("unknown signal role '" + text + "'");
}

void SignalBlock::validate() const {
    if (pols.empty() || pols.size() > 2) throw std::invalid_argument("signal must have 1 or 2 polarizations");
    for (const auto& p : pols)
        if (p.size() != pols.front().size()) throw std::invalid_argument("polarization lengths differ");
    if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("sample rate must be positive");
}

}  // namespace tdce

namespace tdce {

SignalBlock slice(const SignalBlock& x, std::size_t start, std::size_t count) {
    if (start + count > x.length()) throw std::invalid_argument("slice exceeds signal length");
    SignalBlock out;
    out.sample_rate_hz = x.sample_rate_hz;
    out.role = x.role;
    out.offset = x.offset + static_cast<std::int64_t>(start);
    for (const auto& p : x.pols)
        out.pols.emplace_back(p.begin() + static_cast<std::ptrdiff_t>(start),
                              p.begin() + static_cast<std::ptrdiff_t>(start + count));
    return out;
}

}  // namespace tdce
