#include "tdce/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <stdexcept>

namespace tdce {

FixedFormat::FixedFormat(int total, int integer) : total_bits(total), integer_bits(integer) {
    if (integer < 1 || integer > total || total > 64)
        throw std::invalid_argument("invalid fixed-point format: need 1 <= integer_bits <= total_bits <= 64");
}

double FixedFormat::resolution() const { return std::ldexp(1.0, -fraction_bits()); }
double FixedFormat::min_value() const { return -std::ldexp(1.0, integer_bits - 1); }
double FixedFormat::max_value() const { return std::ldexp(1.0, integer_bits - 1) - resolution(); }

FixedFormat FixedFormat::parse(const std::string& text) {
    static const std::regex pattern(R"(^[Qq](\d+)\.(\d+)$)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern))
        throw std::invalid_argument("fixed-point format must look like Q<int>.<frac>, got '" + text + "'");
    const int integer = std::stoi(m[1].str());
    const int frac = std::stoi(m[2].str());
    return FixedFormat(integer + frac, integer);
}

std::string FixedFormat::to_string() const {
    return "Q" + std::to_string(integer_bits) + "." + std::to_string(fraction_bits());
}

double quantize(double value, const FixedFormat& fmt) {
    if (!std::isfinite(value)) throw std::invalid_argument("cannot quantize a non-finite value");
    const int frac = fmt.fraction_bits();
    // Scaling by a power of two is exact.
    const double scaled = std::ldexp(value, frac);
    double steps = std::round(scaled);
    if (std::abs(scaled - std::trunc(scaled)) == 0.5 && std::fmod(steps, 2.0) != 0.0)
        steps -= std::copysign(1.0, scaled);
    const double q = std::ldexp(steps, -frac);
    return std::clamp(q, fmt.min_value(), fmt.max_value());
}

cplx quantize(cplx value, const FixedFormat& fmt) {
    return {quantize(value.real(), fmt), quantize(value.imag(), fmt)};
}

CVec quantize_complex_block(std::span<const cplx> values, const FixedFormat& fmt) {
    CVec out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(quantize(v, fmt));
    return out;
}

CVec maybe_quantize(std::span<const cplx> values, const std::optional<FixedFormat>& fmt) {
    if (fmt) return quantize_complex_block(values, *fmt);
    return CVec(values.begin(), values.end());
}

}  // namespace tdce
