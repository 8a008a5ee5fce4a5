#include "tdce/fde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tdce {

std::string to_string(Radix r) { return r == Radix::radix2 ? "radix2" : "radix4"; }

Radix parse_radix(const std::string& text) {
    if (text == "radix2" || text == "2") return Radix::radix2;
    if (text == "radix4" || text == "4") return Radix::radix4;
    throw std::invalid_argument("radix must be radix2 or radix4, got '" + text + "'");
}

namespace {

FftPlan make_plan(const FdeConfig& cfg) {
    if (cfg.filter.size() == 0) throw std::invalid_argument("FDE filter is empty");
    if (cfg.fft_size <= cfg.filter.size())
        throw std::invalid_argument("FFT size must exceed the filter length");
    return FftPlan(cfg.fft_size);
}

}  // namespace

OverlapSaveEqualizer::OverlapSaveEqualizer(FdeConfig cfg) : cfg_(std::move(cfg)), plan_(make_plan(cfg_)) {
    // Taps are stored in window order (y[n] = sum g[k] x[n+k]); the impulse
    // response in convolution order is the reverse.
    const CVec g = maybe_quantize(cfg_.filter.taps, cfg_.fmt);
    const std::size_t m = g.size();
    response_.assign(cfg_.fft_size, cplx{});
    for (std::size_t k = 0; k < m; ++k) response_[k] = g[m - 1 - k];
    plan_.forward(response_);
}

CVec OverlapSaveEqualizer::filter(std::span<const cplx> x) const {
    const std::size_t n = cfg_.fft_size;
    const std::size_t m = cfg_.filter.size();
    if (x.size() < n) throw std::invalid_argument("input shorter than FFT size");
    const std::size_t n_out = x.size() - m + 1;
    const std::size_t step = block_step();
    const CVec xq = maybe_quantize(x, cfg_.fmt);

    CVec y(n_out);
    CVec buf(n);
    for (std::size_t start = 0; start < n_out; start += step) {
        const std::size_t avail = std::min(n, xq.size() - start);
        std::copy_n(xq.begin() + static_cast<std::ptrdiff_t>(start), avail, buf.begin());
        std::fill(buf.begin() + static_cast<std::ptrdiff_t>(avail), buf.end(), cplx{});
        plan_.forward(buf);
        for (std::size_t k = 0; k < n; ++k) buf[k] *= response_[k];
        plan_.inverse(buf);
        // Circular wrap corrupts the first M-1 samples of each block.
        const std::size_t keep = std::min(step, n_out - start);
        std::copy_n(buf.begin() + static_cast<std::ptrdiff_t>(m - 1), keep,
                    y.begin() + static_cast<std::ptrdiff_t>(start));
    }
    return y;
}

SignalBlock OverlapSaveEqualizer::equalize(const SignalBlock& x) const {
    x.validate();
    SignalBlock out;
    out.sample_rate_hz = x.sample_rate_hz;
    out.role = SignalRole::equalized;
    out.offset = x.offset + static_cast<std::int64_t>((cfg_.filter.size() - 1) / 2);
    for (const auto& p : x.pols) out.pols.push_back(filter(p));
    return out;
}

SignalBlock overlap_save_equalize(const SignalBlock& x, const FdeConfig& cfg) {
    return OverlapSaveEqualizer(cfg).equalize(x);
}

bool valid_fft_size(std::size_t n_fft, Radix radix) {
    if (!is_power_of_two(n_fft)) return false;
    if (radix == Radix::radix2) return true;
    // Powers of four have their single set bit at an even position.
    return (n_fft & 0x5555555555555555ULL) != 0;
}

double fde_complexity(std::size_t n_fft, std::size_t m, Radix radix) {
    if (m < 1 || n_fft <= m) throw std::invalid_argument("need n_fft > m >= 1");
    if (!valid_fft_size(n_fft, radix))
        throw std::invalid_argument("FFT size " + std::to_string(n_fft) + " invalid for " + to_string(radix));
    const double beta = radix == Radix::radix2 ? 0.5 : 3.0 / 8.0;
    const double n = static_cast<double>(n_fft);
    return n * (8.0 * beta * std::log2(n) + 4.0) / (n - static_cast<double>(m) + 1.0);
}

std::size_t optimal_fft_size(std::size_t m, Radix radix, std::size_t min_size, std::size_t max_size) {
    if (m < 1) throw std::invalid_argument("filter length must be >= 1");
    std::size_t best = 0;
    double best_c = 0.0;
    for (std::size_t n = 1; n != 0 && n <= max_size; n <<= 1) {
        if (n < min_size || n <= m || !valid_fft_size(n, radix)) continue;
        const double c = fde_complexity(n, m, radix);
        if (best == 0 || c < best_c) {
            best = n;
            best_c = c;
        }
    }
    if (best == 0) throw std::invalid_argument("no valid FFT size in the search range");
    return best;
}

}  // namespace tdce
