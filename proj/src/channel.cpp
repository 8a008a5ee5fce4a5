#include "tdce/channel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "tdce/fft.hpp"

namespace tdce {

std::string to_string(PulseShape p) { return p == PulseShape::rrc ? "rrc" : "rect"; }

PulseShape parse_pulse_shape(const std::string& text) {
    if (text == "rrc") return PulseShape::rrc;
    if (text == "rect") return PulseShape::rect;
    throw std::invalid_argument("pulse shape must be rrc or rect, got '" + text + "'");
}

std::vector<double> rrc_taps(int sps, double rolloff, int span_symbols) {
    if (sps < 1 || span_symbols < 1) throw std::invalid_argument("invalid RRC geometry");
    if (!(rolloff > 0.0 && rolloff <= 1.0)) throw std::invalid_argument("RRC rolloff must be in (0, 1]");
    const int half = span_symbols * sps;
    std::vector<double> h(static_cast<std::size_t>(2 * half + 1));
    const double b = rolloff;
    for (int i = -half; i <= half; ++i) {
        const double t = static_cast<double>(i) / sps;
        double v = 0.0;
        if (i == 0) {
            v = 1.0 - b + 4.0 * b / kPi;
        } else if (std::abs(std::abs(4.0 * b * t) - 1.0) < 1e-12) {
            v = b / std::sqrt(2.0) *
                ((1.0 + 2.0 / kPi) * std::sin(kPi / (4.0 * b)) + (1.0 - 2.0 / kPi) * std::cos(kPi / (4.0 * b)));
        } else {
            v = (std::sin(kPi * t * (1.0 - b)) + 4.0 * b * t * std::cos(kPi * t * (1.0 + b))) /
                (kPi * t * (1.0 - 16.0 * b * b * t * t));
        }
        h[static_cast<std::size_t>(i + half)] = v;
    }
    double energy = 0.0;
    for (double v : h) energy += v * v;
    const double s = std::sqrt(static_cast<double>(sps) / energy);
    for (double& v : h) v *= s;
    return h;
}

PulseFilter make_pulse(PulseShape shape, int sps, double rolloff, int span_symbols) {
    PulseFilter p;
    p.sps = sps;
    if (shape == PulseShape::rect) {
        if (sps < 1) throw std::invalid_argument("samples per symbol must be >= 1");
        p.taps.assign(static_cast<std::size_t>(sps), 1.0);
        p.center = 0;
    } else {
        p.taps = rrc_taps(sps, rolloff, span_symbols);
        p.center = p.taps.size() / 2;
    }
    return p;
}

SignalBlock shape_and_upsample(const std::vector<CVec>& symbols, const PulseFilter& pulse, double sample_rate_hz) {
    if (symbols.empty()) throw std::invalid_argument("no symbol streams");
    SignalBlock out;
    out.sample_rate_hz = sample_rate_hz;
    out.role = SignalRole::transmitted;
    const auto sps = static_cast<std::size_t>(pulse.sps);
    for (const auto& s : symbols) {
        const std::size_t n = s.size() * sps;
        CVec w(n, cplx{});
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (s[k] == cplx{}) continue;
            for (std::size_t i = 0; i < pulse.taps.size(); ++i) {
                // (k*sps + i - center) mod n without going negative
                const std::size_t idx = (k * sps + i + n * (pulse.center / n + 1) - pulse.center) % n;
                w[idx] += s[k] * pulse.taps[i];
            }
        }
        out.pols.push_back(std::move(w));
    }
    return out;
}

void LinkRun::validate() const {
    spec.validate();
    if (symbol_count < 1) throw std::invalid_argument("symbol count must be >= 1");
    if (nonlinear && !(step_size_m > 0.0)) throw std::invalid_argument("step size must be positive");
    if (nonlinear && step_size_m > spec.span_length_m() && spec.span_length_m() > 0.0)
        throw std::invalid_argument("step size exceeds span length");
    if (!(frontend_rms > 0.0)) throw std::invalid_argument("front-end rms must be positive");
}

double LinkRun::power_per_pol_w() const { return 1e-3 * std::pow(10.0, launch_power_dbm / 10.0) / 2.0; }

namespace {

double span_power_gain(const ChannelSpec& spec) {
    return std::pow(10.0, spec.attenuation_db_km * spec.span_length_km / 10.0);
}

double alpha_per_m(const ChannelSpec& spec) { return spec.attenuation_db_km * std::log(10.0) / 10.0 / 1e3; }

std::vector<double> angular_frequencies(std::size_t n, double fs) {
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double kk = k < (n + 1) / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
        w[k] = 2.0 * kPi * kk * fs / static_cast<double>(n);
    }
    return w;
}

class SplitStep {
public:
    SplitStep(const LinkRun& run, std::size_t n, double fs)
        : run_(run), dft_(n), omega_(angular_frequencies(n, fs)) {
        const auto& s = run.spec;
        const double lam = s.wavelength_m();
        beta2_ = -s.dispersion_si() * lam * lam / (2.0 * kPi * kSpeedOfLight);
        alpha_ = alpha_per_m(s);
        gamma_ = s.nonlinearity_w_km / 1e3 * 8.0 / 9.0;
    }

    void linear(std::vector<CVec>& f, double h) const {
        CVec op(omega_.size());
        const double loss = std::exp(-alpha_ * h / 2.0);
        for (std::size_t k = 0; k < op.size(); ++k)
            op[k] = std::polar(loss, beta2_ / 2.0 * omega_[k] * omega_[k] * h);
        for (auto& p : f) {
            dft_.forward(p);
            for (std::size_t k = 0; k < p.size(); ++k) p[k] *= op[k];
            dft_.inverse(p);
        }
    }

    // Field in sqrt(W); `h` is the step the power is integrated over, with the
    // field sampled at the step midpoint.
    void nonlinear(std::vector<CVec>& f, double h) const {
        const double h_eff = alpha_ > 0.0 ? (1.0 - std::exp(-alpha_ * h)) / alpha_ : h;
        const double mid_to_start = std::exp(alpha_ * h / 2.0);
        const double k = gamma_ * h_eff * mid_to_start;
        for (std::size_t i = 0; i < f.front().size(); ++i) {
            double pw = 0.0;
            for (const auto& p : f) pw += std::norm(p[i]);
            const cplx rot = std::polar(1.0, k * pw);
            for (auto& p : f) p[i] *= rot;
        }
    }

    void span(std::vector<CVec>& f) const {
        const double len = run_.spec.span_length_m();
        if (len <= 0.0) return;
        if (!run_.nonlinear) {
            linear(f, len);
            return;
        }
        const auto steps = static_cast<std::size_t>(std::ceil(len / run_.step_size_m - 1e-9));
        const double h = len / static_cast<double>(steps);
        linear(f, h / 2.0);
        for (std::size_t s = 0; s < steps; ++s) {
            nonlinear(f, h);
            linear(f, s + 1 == steps ? h / 2.0 : h);
        }
    }

private:
    const LinkRun& run_;
    Dft dft_;
    std::vector<double> omega_;
    double beta2_ = 0.0;
    double alpha_ = 0.0;
    double gamma_ = 0.0;
};

}  // namespace

double ase_variance_per_span(const LinkRun& run) {
    const double g = span_power_gain(run.spec);
    if (g <= 1.0) return 0.0;
    const double nf = std::pow(10.0, run.spec.amp_noise_figure_db / 10.0);
    const double photon = kPlanck * kSpeedOfLight / run.spec.wavelength_m();
    // n_sp (G - 1) h nu per polarization, with NF = (1 + 2 n_sp (G - 1)) / G.
    const double psd = (nf * g - 1.0) / 2.0 * photon;
    return psd * run.spec.sample_rate_hz() / run.power_per_pol_w();
}

SignalBlock propagate(const SignalBlock& tx, const LinkRun& run) {
    run.validate();
    tx.validate();
    const double p_pol = run.power_per_pol_w();
    const double to_phys = std::sqrt(p_pol);

    std::vector<CVec> field = tx.pols;
    for (auto& p : field)
        for (auto& v : p) v *= to_phys;

    const SplitStep ss(run, tx.length(), tx.sample_rate_hz);
    const double amp = std::sqrt(span_power_gain(run.spec));
    const double sigma = std::sqrt(ase_variance_per_span(run) * p_pol / 2.0);
    std::mt19937_64 rng(run.seed ^ 0x9E3779B97F4A7C15ULL);
    std::normal_distribution<double> normal(0.0, 1.0);

    for (int s = 0; s < run.spec.span_count; ++s) {
        ss.span(field);
        for (auto& p : field) {
            for (auto& v : p) {
                v *= amp;
                if (run.noise && sigma > 0.0) {
                    const double re = normal(rng);
                    const double im = normal(rng);
                    v += cplx(re, im) * sigma;
                }
            }
        }
    }

    SignalBlock out;
    out.sample_rate_hz = tx.sample_rate_hz;
    out.role = SignalRole::received;
    out.offset = tx.offset;
    out.pols = std::move(field);
    for (auto& p : out.pols)
        for (auto& v : p) v /= to_phys;
    return out;
}

SignalBlock receiver_front_end(const SignalBlock& x, double gain) {
    SignalBlock out = x;
    for (auto& p : out.pols)
        for (auto& v : p) v *= gain;
    return out;
}

LinkData simulate_link(const LinkRun& run) {
    run.validate();
    LinkData d;
    d.run = run;
    d.symbols = generate_symbols(run.symbol_count, run.seed, true);
    d.pulse = make_pulse(run.pulse, run.spec.samples_per_symbol, run.rolloff, run.pulse_span_symbols);
    const SignalBlock shaped = shape_and_upsample(d.symbols.symbols, d.pulse, run.spec.sample_rate_hz());
    d.rx = receiver_front_end(propagate(shaped, run), run.frontend_rms);
    d.tx = receiver_front_end(shaped, run.frontend_rms);
    d.tx.role = SignalRole::transmitted;
    return d;
}

}  // namespace tdce
