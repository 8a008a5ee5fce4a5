#pragma once

#include <optional>
#include <span>
#include <string>

#include "tdce/common.hpp"

namespace tdce {

/// Two's-complement fixed-point format. `integer_bits` includes the sign bit.
struct FixedFormat {
    int total_bits = 16;
    int integer_bits = 1;

    FixedFormat() = default;
    FixedFormat(int total, int integer);

    int fraction_bits() const { return total_bits - integer_bits; }
    double resolution() const;
    double min_value() const;
    double max_value() const;

    /// Parses "Q<int>.<frac>", e.g. "Q5.11" -> 16 bits with 5 integer bits.
    static FixedFormat parse(const std::string& text);
    std::string to_string() const;

    friend bool operator==(const FixedFormat&, const FixedFormat&) = default;
};

/// Formats used by the equalizer designs.
inline FixedFormat tdce_default_format() { return FixedFormat(16, 5); }
inline FixedFormat fde_default_format() { return FixedFormat(16, 1); }

/// Round to nearest (ties to even) on the format's grid, then saturate.
double quantize(double value, const FixedFormat& fmt);

cplx quantize(cplx value, const FixedFormat& fmt);

CVec quantize_complex_block(std::span<const cplx> values, const FixedFormat& fmt);

/// Quantizes when a format is given, copies otherwise.
CVec maybe_quantize(std::span<const cplx> values, const std::optional<FixedFormat>& fmt);

}  // namespace tdce
