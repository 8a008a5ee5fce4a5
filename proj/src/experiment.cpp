#include "tdce/experiment.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "tdce/equalizer.hpp"

namespace tdce {

std::string to_string(Design d) {
    switch (d) {
        case Design::direct: return "direct";
        case Design::tdce: return "tdce";
        case Design::fde: return "fde";
    }
    return "?";
}

Design parse_design(const std::string& text) {
    if (text == "direct") return Design::direct;
    if (text == "tdce") return Design::tdce;
    if (text == "fde") return Design::fde;
    throw std::invalid_argument("design must be direct, tdce or fde, got '" + text + "'");
}

SignalBlock run_equalizer(const SignalBlock& rx, const ChannelSpec& spec, const EqualizeParams& p,
                          const ClusteredFilter* cf, ConvolveStats* stats) {
    const int m = p.m == 0 ? max_taps(spec) : p.m;
    switch (p.design) {
        case Design::direct: return direct_convolve(rx, generate_taps(spec, m), p.fmt);
        case Design::fde: return overlap_save_equalize(rx, {p.fft_size, generate_taps(spec, m), p.radix, p.fmt});
        case Design::tdce:
            if (!cf) throw std::invalid_argument("the TDCE design needs a clustered filter");
            if (p.m != 0 && cf->source_filter_len() != static_cast<std::size_t>(p.m))
                throw std::invalid_argument("clustered filter length does not match the requested filter length");
            return clustered_convolve(rx, *cf, p.lanes, p.fmt, stats);
    }
    throw std::invalid_argument("unknown design");
}

std::size_t worker_count() {
    if (const char* env = std::getenv("TDCE_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1) throw ConfigError("TDCE_WORKERS must be a positive integer");
        return static_cast<std::size_t>(v);
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

std::vector<ClusterSweepPoint> cluster_sweep(const LinkData& link, int m, const std::vector<int>& cluster_counts,
                                             const std::optional<FixedFormat>& fmt, const KMeansOptions& kopts,
                                             std::size_t workers) {
    const TapSet taps = generate_taps(link.run.spec, m);
    return parallel_map<ClusterSweepPoint>(cluster_counts.size(), workers, [&](std::size_t i) {
        const ClusteredFilter cf = kmeans_cluster(taps, cluster_counts[i], kopts);
        const SignalBlock eq = clustered_convolve(link.rx, cf, 16, fmt);
        return ClusterSweepPoint{cluster_counts[i], evaluate_ber(eq, link.symbols, link.pulse).ber()};
    });
}

int count_inversions(const std::vector<ClusterSweepPoint>& sweep) {
    int n = 0;
    for (std::size_t i = 1; i < sweep.size(); ++i)
        if (sweep[i].ber > sweep[i - 1].ber) ++n;
    return n;
}

FinetuneSetup prepare_finetune(const LinkData& link, const ClusteredFilter& cf, std::size_t holdout_symbols) {
    const std::size_t sps = static_cast<std::size_t>(link.pulse.sps);
    const std::size_t m = cf.source_filter_len();
    const std::size_t n_sym = link.rx.length() / sps;
    if (holdout_symbols == 0 || holdout_symbols >= n_sym)
        throw std::invalid_argument("hold-out slice must be shorter than the simulated block");
    const std::size_t split = (n_sym - holdout_symbols) * sps;
    if (split < m) throw std::invalid_argument("training slice shorter than the filter");

    TrainSet train = build_trainset(slice(link.rx, 0, split), link.tx, cf);
    // The evaluation windows start M - 1 samples early so the first held-out
    // output lands just before the split.
    const std::size_t eval_start = split - (m - 1);
    TrainSet eval = build_trainset(slice(link.rx, eval_start, link.rx.length() - eval_start), link.tx, cf);
    return {std::move(train), FeatureBerEvaluator(std::move(eval), link.symbols, link.pulse)};
}

void save_link(const std::filesystem::path& dir, const LinkData& link) {
    io::Json meta;
    meta["link"] = io::to_json(link.run);
    meta["tx_file"] = "tx.bin";
    meta["rx_file"] = "rx.bin";
    meta["symbols_file"] = "symbols.bin";
    io::write_signal(dir / "tx.bin", link.tx, meta);
    io::write_signal(dir / "rx.bin", link.rx, meta);
    io::write_signal(dir / "symbols.bin", io::block_from_symbols(link.symbols, link.run.spec.baud_rate_hz), meta);
}

LinkData load_link(const std::filesystem::path& rx_path) {
    io::Json meta;
    LinkData d;
    d.rx = io::read_signal(rx_path, &meta);
    if (!meta.contains("link") || !meta.contains("tx_file") || !meta.contains("symbols_file"))
        throw ConfigError(rx_path.string() + ": sidecar lacks the link description");
    d.run = io::link_run_from_json(meta.at("link"));
    const auto dir = rx_path.parent_path();
    d.tx = io::read_signal(dir / meta.at("tx_file").get<std::string>());
    d.symbols = io::symbols_from_block(io::read_signal(dir / meta.at("symbols_file").get<std::string>()));
    d.pulse = make_pulse(d.run.pulse, d.run.spec.samples_per_symbol, d.run.rolloff, d.run.pulse_span_symbols);
    if (d.tx.length() != d.rx.length() || d.tx.polarizations() != d.rx.polarizations())
        throw ConfigError(rx_path.string() + ": tx and rx blocks do not match");
    return d;
}

namespace {

struct ReportRow {
    const ReferenceDesign* ref;
    std::size_t cv_knn, cv_gd;
    double c_fft_r2, c_fft_r4;
    TdceCost knn, gd;
    FdeCost fde;
};

std::vector<ReportRow> report_rows(double alpha, double fde_delta) {
    std::vector<ReportRow> rows;
    for (const auto& d : reference_designs()) {
        ReportRow r{&d, clustered_complexity(d.nc_knn), clustered_complexity(d.nc_gd),
                    fde_complexity(d.n_fft, d.m_fde, Radix::radix2), fde_complexity(d.n_fft, d.m_fde, Radix::radix4),
                    {}, {}, {}};
        r.knn = tdce_cost({d.m_tdce, d.nc_knn, d.lanes_knn, d.lp_knn, alpha});
        r.gd = tdce_cost({d.m_tdce, d.nc_gd, d.lanes_gd, d.lp_gd, alpha});
        FdeHwConfig f;
        f.n_fft = d.n_fft;
        f.m = d.m_fde;
        f.delta = fde_delta;
        r.fde = fde_cost(f);
        rows.push_back(r);
    }
    return rows;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string complexity_report_csv(double alpha, double fde_delta) {
    std::string s =
        "spans,n,m_tdce,m_fde,nc_knn,nc_gd,n_fft,cv_knn,cv_gd,c_fft_radix2,c_fft_radix4,"
        "lanes_knn,lp_knn,cycles_knn,th_knn_mbps,ref_th_knn_mbps,lanes_gd,lp_gd,cycles_gd,th_gd_mbps,"
        "ref_th_gd_mbps,th_fde_mbps,ref_th_fde_mbps\n";
    for (const auto& r : report_rows(alpha, fde_delta)) {
        const auto& d = *r.ref;
        s += std::to_string(d.spans) + "," + std::to_string(d.n) + "," + std::to_string(d.m_tdce) + "," +
             std::to_string(d.m_fde) + "," + std::to_string(d.nc_knn) + "," + std::to_string(d.nc_gd) + "," +
             std::to_string(d.n_fft) + "," + std::to_string(r.cv_knn) + "," + std::to_string(r.cv_gd) + "," +
             num(r.c_fft_r2) + "," + num(r.c_fft_r4) + "," + std::to_string(d.lanes_knn) + "," +
             std::to_string(r.knn.required_lp) + "," + std::to_string(r.knn.cycles_per_block) + "," +
             num(r.knn.throughput_mbps) + "," + num(d.th_knn_mbps) + "," + std::to_string(d.lanes_gd) + "," +
             std::to_string(r.gd.required_lp) + "," + std::to_string(r.gd.cycles_per_block) + "," +
             num(r.gd.throughput_mbps) + "," + num(d.th_gd_mbps) + "," + num(r.fde.throughput_mbps) + "," +
             num(d.th_fde_mbps) + "\n";
    }
    return s;
}

io::Json complexity_report_json(double alpha, double fde_delta) {
    io::Json j;
    j["alpha"] = alpha;
    j["fde_delta"] = fde_delta;
    io::Json rows = io::Json::array();
    for (const auto& r : report_rows(alpha, fde_delta)) {
        const auto& d = *r.ref;
        io::Json row;
        row["spans"] = d.spans;
        row["n"] = d.n;
        row["m_tdce"] = d.m_tdce;
        row["m_fde"] = d.m_fde;
        row["n_fft"] = d.n_fft;
        row["complexity"] = {{"cv_knn", r.cv_knn},
                             {"cv_gd", r.cv_gd},
                             {"c_fft_radix2", r.c_fft_r2},
                             {"c_fft_radix4", r.c_fft_r4}};
        auto tdce_json = [](const TdceCost& c, std::size_t nc, std::size_t lanes, double ref) {
            return io::Json{{"n_c", nc},
                            {"lanes", lanes},
                            {"lp", c.required_lp},
                            {"real_multipliers", c.real_multipliers},
                            {"cycles_per_block", c.cycles_per_block},
                            {"throughput_mbps", c.throughput_mbps},
                            {"reference_throughput_mbps", ref}};
        };
        row["tdce_knn"] = tdce_json(r.knn, d.nc_knn, d.lanes_knn, d.th_knn_mbps);
        row["tdce_gd"] = tdce_json(r.gd, d.nc_gd, d.lanes_gd, d.th_gd_mbps);
        row["fde"] = {{"throughput_mbps", r.fde.throughput_mbps}, {"reference_throughput_mbps", d.th_fde_mbps}};
        rows.push_back(row);
    }
    j["designs"] = rows;
    return j;
}

}  // namespace tdce
