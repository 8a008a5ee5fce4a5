#include "tdce/fft.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace tdce {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

FftPlan::FftPlan(std::size_t n) : n_(n) {
    if (!is_power_of_two(n))
        throw std::invalid_argument("FFT length must be a power of two, got " + std::to_string(n));
    twiddles_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double a = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
        twiddles_[k] = {std::cos(a), std::sin(a)};
    }
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    bitrev_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < bits; ++b)
            if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
        bitrev_[i] = r;
    }
}

void FftPlan::run(std::span<cplx> data, bool inverse) const {
    if (data.size() != n_) throw std::invalid_argument("FFT input length does not match plan");
    for (std::size_t i = 0; i < n_; ++i)
        if (i < bitrev_[i]) std::swap(data[i], data[bitrev_[i]]);
    for (std::size_t len = 2; len <= n_; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n_ / len;
        for (std::size_t start = 0; start < n_; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                cplx w = twiddles_[k * stride];
                if (inverse) w = std::conj(w);
                const cplx u = data[start + k];
                const cplx v = data[start + k + half] * w;
                data[start + k] = u + v;
                data[start + k + half] = u - v;
            }
        }
    }
    if (inverse) {
        const double s = 1.0 / static_cast<double>(n_);
        for (auto& v : data) v *= s;
    }
}

CVec fft(std::span<const cplx> x, bool inverse) {
    FftPlan plan(x.size());
    CVec out(x.begin(), x.end());
    if (inverse)
        plan.inverse(out);
    else
        plan.forward(out);
    return out;
}

Dft::Dft(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("DFT length must be positive");
    if (is_power_of_two(n)) {
        plan_ = std::make_unique<FftPlan>(n);
        return;
    }
    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;
    plan_ = std::make_unique<FftPlan>(m);
    chirp_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the angle argument small and exact.
        const auto kk = static_cast<unsigned long long>(k) * k % (2ULL * n);
        const double a = -kPi * static_cast<double>(kk) / static_cast<double>(n);
        chirp_[k] = {std::cos(a), std::sin(a)};
    }
    auto make_kernel = [&](bool conj_chirp) {
        CVec b(m, cplx{});
        for (std::size_t k = 0; k < n; ++k) {
            const cplx c = conj_chirp ? chirp_[k] : std::conj(chirp_[k]);
            b[k] = c;
            if (k != 0) b[m - k] = c;
        }
        plan_->forward(b);
        return b;
    };
    kernel_fwd_ = make_kernel(false);
    kernel_inv_ = make_kernel(true);
}

void Dft::run(std::span<cplx> data, bool inverse) const {
    if (data.size() != n_) throw std::invalid_argument("DFT input length does not match plan");
    if (chirp_.empty()) {
        if (inverse)
            plan_->inverse(data);
        else
            plan_->forward(data);
        return;
    }
    const std::size_t m = plan_->size();
    CVec a(m, cplx{});
    for (std::size_t k = 0; k < n_; ++k) a[k] = data[k] * (inverse ? std::conj(chirp_[k]) : chirp_[k]);
    plan_->forward(a);
    const CVec& b = inverse ? kernel_inv_ : kernel_fwd_;
    for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
    plan_->inverse(a);
    const double s = inverse ? 1.0 / static_cast<double>(n_) : 1.0;
    for (std::size_t k = 0; k < n_; ++k) data[k] = a[k] * (inverse ? std::conj(chirp_[k]) : chirp_[k]) * s;
}

}  // namespace tdce
