// Command-line front end: taps, simulate, cluster, equalize, finetune, cost, report.
// Exit codes: 0 success, 2 configuration error, 3 infeasible design.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tdce/config.hpp"
#include "tdce/experiment.hpp"

namespace fs = std::filesystem;
using namespace tdce;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

struct SpecArgs {
    std::string spec_file;
    int spans = 1;

    void add(CLI::App* cmd) {
        cmd->add_option("--spec", spec_file, "Channel spec file (key = value or JSON)");
        cmd->add_option("--spans", spans, "Number of 80 km spans when no spec file is given")->check(CLI::PositiveNumber);
    }

    ChannelSpec resolve() const {
        if (spec_file.empty()) return ChannelSpec::ssmf(spans);
        return load_channel_spec(spec_file);
    }
};

std::optional<FixedFormat> parse_format(const std::string& text) {
    if (text.empty() || text == "float") return std::nullopt;
    return FixedFormat::parse(text);
}

std::string fmt(double v, const char* f = "%.6g") {
    char buf[48];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

io::Json ber_json(const BerResult& r) {
    return {{"ber", r.ber()}, {"bit_errors", r.bit_errors}, {"bits", r.bits}, {"symbols", r.symbols}};
}

// ---- taps ------------------------------------------------------------------

struct TapsCmd {
    SpecArgs spec;
    int taps = 0;
    int bins = 30;
    int rho_sweep = 0;
    std::string out = ".";

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("taps", "Generate CD taps, phase histogram and uniformity metric");
        spec.add(c);
        c->add_option("--taps", taps, "Filter length M (default: maximum for the link)");
        c->add_option("--bins", bins, "Histogram bins")->check(CLI::PositiveNumber);
        c->add_option("--rho-sweep", rho_sweep, "Also tabulate rho for 1..K spans at full filter size");
        c->add_option("--out", out, "Output directory");
        c->callback([this] { run(); });
    }

    void run() const {
        const ChannelSpec s = spec.resolve();
        const int n = max_taps(s);
        const TapSet t = generate_taps(s, taps == 0 ? n : taps);
        io::write_taps_csv(fs::path(out) / "taps.csv", t);
        io::write_text(fs::path(out) / "histogram.csv", io::histogram_csv(angle_histogram(t, bins)));
        io::Json j;
        j["max_taps"] = n;
        j["taps"] = t.size();
        j["bins"] = bins;
        j["rho"] = uniformity_rho(t, bins);
        io::write_text(fs::path(out) / "taps.json", j.dump(2) + "\n");
        if (rho_sweep > 0) {
            std::string csv = "spans,length_km,max_taps,rho\n";
            for (int k = 1; k <= rho_sweep; ++k) {
                ChannelSpec sk = s;
                sk.span_count = k;
                const TapSet tk = generate_taps(sk, max_taps(sk));
                csv += std::to_string(k) + "," + fmt(sk.total_length_m() / 1e3) + "," + std::to_string(tk.size()) +
                       "," + fmt(uniformity_rho(tk, bins), "%.17g") + "\n";
            }
            io::write_text(fs::path(out) / "rho_sweep.csv", csv);
        }
        std::cout << "N=" << n << " M=" << t.size() << " rho=" << fmt(j["rho"].get<double>()) << "\n";
    }
};

// ---- simulate --------------------------------------------------------------

struct SimulateCmd {
    SpecArgs spec;
    LinkRun run;
    std::string pulse = "rrc";
    bool no_noise = false;
    std::string out = ".";

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("simulate", "Simulate a dual-polarization 16-QAM link");
        spec.add(c);
        c->add_option("--launch-dbm", run.launch_power_dbm, "Total launch power in dBm");
        c->add_option("--symbols", run.symbol_count, "Symbols per polarization");
        c->add_option("--seed", run.seed, "Random seed for bits and noise");
        c->add_flag("--nonlinear", run.nonlinear, "Enable the Kerr nonlinearity");
        c->add_flag("--no-noise", no_noise, "Disable amplifier noise");
        c->add_option("--step-m", run.step_size_m, "Split-step length in nonlinear mode (m)");
        c->add_option("--pulse", pulse, "Pulse shape: rrc or rect");
        c->add_option("--rolloff", run.rolloff, "RRC roll-off");
        c->add_option("--out", out, "Output directory");
        c->callback([this] { exec(); });
    }

    void exec() {
        run.spec = spec.resolve();
        run.noise = !no_noise;
        run.pulse = parse_pulse_shape(pulse);
        const LinkData link = simulate_link(run);
        save_link(out, link);
        std::cout << "wrote " << (fs::path(out) / "rx.bin").string() << " (" << link.rx.length()
                  << " samples x " << link.rx.polarizations() << " pols)\n";
    }
};

// ---- cluster ---------------------------------------------------------------

struct ClusterCmd {
    SpecArgs spec;
    std::string taps_file;
    int taps = 0;
    int clusters = 0;
    KMeansOptions kopts;
    std::string out = "filter.json";

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("cluster", "Cluster filter taps with k-means");
        spec.add(c);
        c->add_option("--input", taps_file, "Taps CSV (otherwise generated from the spec)");
        c->add_option("--taps", taps, "Filter length M when generating taps");
        c->add_option("--clusters", clusters, "Number of clusters N_C")->required()->check(CLI::PositiveNumber);
        c->add_option("--seed", kopts.seed, "k-means seed");
        c->add_option("--restarts", kopts.restarts, "k-means++ restarts")->check(CLI::PositiveNumber);
        c->add_option("--out", out, "Output clustered filter file");
        c->callback([this] { run(); });
    }

    void run() const {
        TapSet t;
        if (!taps_file.empty()) {
            t = io::read_taps_csv(taps_file);
        } else {
            const ChannelSpec s = spec.resolve();
            t = generate_taps(s, taps == 0 ? max_taps(s) : taps);
        }
        const ClusteredFilter cf = kmeans_cluster(t, clusters, kopts);
        const ClusteringError err = clustering_error(t, cf);
        io::Json meta;
        meta["method"] = "kmeans";
        meta["seed"] = kopts.seed;
        meta["restarts"] = kopts.restarts;
        meta["max_abs_error"] = err.max_abs;
        meta["rms_error"] = err.rms;
        io::write_clustered_filter(out, cf, meta);
        std::cout << "M=" << t.size() << " N_C=" << cf.n_clusters() << " rms_error=" << fmt(err.rms) << "\n";
    }
};

// ---- equalize --------------------------------------------------------------

struct EqualizeCmd {
    std::string input;
    std::string design = "tdce";
    std::string filter_file;
    int taps = 0;
    std::size_t lanes = 16;
    std::size_t lp = 0;
    std::string format;
    std::size_t fft_size = 256;
    std::string radix = "radix4";
    std::size_t guard = 0;
    std::string out = ".";

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("equalize", "Equalize a simulated received block and measure BER");
        c->add_option("--input", input, "Received waveform (rx.bin from simulate)")->required();
        c->add_option("--design", design, "tdce, fde or direct");
        c->add_option("--filter", filter_file, "Clustered filter file (tdce)");
        c->add_option("--taps", taps, "Filter length M (direct, fde)");
        c->add_option("--lanes", lanes, "Outputs per TDCE block")->check(CLI::PositiveNumber);
        c->add_option("--lp", lp, "Parallel multipliers (recorded in the report)");
        c->add_option("--format", format, "Fixed-point format Q<i>.<f> (default: floating point)");
        c->add_option("--fft-size", fft_size, "FDE FFT size");
        c->add_option("--radix", radix, "FDE radix for the complexity figure");
        c->add_option("--guard", guard, "Extra symbols excluded at each end");
        c->add_option("--out", out, "Output directory");
        c->callback([this] { run(); });
    }

    void run() const {
        const LinkData link = load_link(input);
        EqualizeParams p;
        p.design = parse_design(design);
        p.m = taps;
        p.lanes = lanes;
        p.fmt = parse_format(format);
        p.fft_size = fft_size;
        p.radix = parse_radix(radix);
        if (lp != 0 && lanes % lp != 0) throw ConfigError("--lanes must be a multiple of --lp");

        std::optional<ClusteredFilter> cf;
        if (p.design == Design::tdce) {
            if (filter_file.empty()) throw ConfigError("--filter is required for the tdce design");
            cf = io::read_clustered_filter(filter_file);
        }
        ConvolveStats stats;
        const SignalBlock eq = run_equalizer(link.rx, link.run.spec, p, cf ? &*cf : nullptr, &stats);
        const BerResult ber = evaluate_ber(eq, link.symbols, link.pulse, {guard});

        io::Json report;
        report["design"] = design;
        report["format"] = p.fmt ? p.fmt->to_string() : "float";
        if (p.design == Design::tdce) {
            report["m"] = cf->source_filter_len();
            report["n_clusters"] = cf->n_clusters();
            report["lanes"] = lanes;
            report["lp"] = lp;
            report["real_mults_per_sample"] = clustered_complexity(cf->n_clusters());
            report["measured_real_mults_per_sample"] = stats.real_mults_per_sample();
        } else {
            const int m = taps == 0 ? max_taps(link.run.spec) : taps;
            report["m"] = m;
            if (p.design == Design::fde) {
                report["fft_size"] = fft_size;
                report["radix"] = radix;
                report["real_mults_per_sample"] = fde_complexity(fft_size, static_cast<std::size_t>(m), p.radix);
            } else {
                report["real_mults_per_sample"] = 4 * m;
            }
        }
        report["ber"] = ber_json(ber);
        io::write_signal(fs::path(out) / "equalized.bin", eq, {{"design", design}});
        io::write_text(fs::path(out) / "ber.json", report.dump(2) + "\n");
        std::cout << "BER=" << fmt(ber.ber()) << " (" << ber.bit_errors << "/" << ber.bits << ")\n";
    }
};

// ---- finetune --------------------------------------------------------------

struct FinetuneCmd {
    std::string input;
    std::string filter_file;
    FinetuneOptions opts;
    std::size_t holdout = 1U << 14;
    std::string out = ".";

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("finetune", "Fine-tune clustered filter centroids with Adam");
        c->add_option("--input", input, "Received waveform (rx.bin from simulate)")->required();
        c->add_option("--filter", filter_file, "Initial clustered filter")->required();
        c->add_option("--lr", opts.lr, "Learning rate");
        c->add_option("--epochs", opts.epochs, "Maximum epochs");
        c->add_option("--samples", opts.samples_per_epoch, "Rows drawn per epoch");
        c->add_option("--minibatch", opts.minibatch, "Rows per update");
        c->add_option("--patience", opts.patience, "Epochs without BER improvement before stopping");
        c->add_option("--holdout", holdout, "Held-out symbols used for BER");
        c->add_option("--seed", opts.seed, "Sampling seed");
        c->add_option("--out", out, "Output directory");
        c->callback([this] { run(); });
    }

    void run() const {
        const LinkData link = load_link(input);
        io::Json init_meta;
        const ClusteredFilter cf = io::read_clustered_filter(filter_file, &init_meta);
        const FinetuneSetup setup = prepare_finetune(link, cf, holdout);
        const FinetuneResult res = adam_finetune(setup.train, cf.centroids, opts, setup.evaluator);

        std::string csv = "epoch,loss,ber,best_ber\n";
        for (const auto& h : res.history)
            csv += std::to_string(h.epoch) + "," + fmt(h.loss, "%.17g") + "," + fmt(h.ber, "%.17g") + "," +
                   fmt(h.best_ber, "%.17g") + "\n";
        io::write_text(fs::path(out) / "history.csv", csv);

        io::Json meta;
        meta["method"] = "adam";
        meta["initial"] = init_meta;
        meta["lr"] = opts.lr;
        meta["epochs_run"] = res.epochs_run;
        meta["best_epoch"] = res.best_epoch;
        meta["initial_ber"] = res.initial_ber;
        meta["final_ber"] = res.best_ber;
        io::write_clustered_filter(fs::path(out) / "filter.json", {res.centroids, cf.routing}, meta);
        std::cout << "BER " << fmt(res.initial_ber) << " -> " << fmt(res.best_ber) << " (epoch " << res.best_epoch
                  << " of " << res.epochs_run << ")\n";
    }
};

// ---- cost ------------------------------------------------------------------

struct CostCmd {
    TdceHwConfig cfg;
    double target = 0.0;
    double tolerance = 0.07;
    std::string out;

    void add(CLI::App& app) {
        cfg.alpha = default_alpha();
        auto* c = app.add_subcommand("cost", "Hardware cost of a TDCE configuration");
        c->add_option("--taps", cfg.m, "Filter length M")->required();
        c->add_option("--clusters", cfg.n_c, "Number of clusters N_C")->required();
        c->add_option("--lanes", cfg.lanes, "Outputs per block L");
        c->add_option("--lp", cfg.lp, "Complex multipliers L_P (0: minimum)");
        c->add_option("--alpha", cfg.alpha, "Dataflow constant");
        c->add_option("--clock-hz", cfg.clock_hz, "Clock frequency");
        c->add_option("--bits-per-sample", cfg.bits_per_sample, "Payload bits per equalized sample");
        c->add_option("--target-mbps", target, "Pick the smallest L meeting this throughput");
        c->add_option("--tolerance", tolerance, "Relative throughput tolerance for --target-mbps");
        c->add_option("--out", out, "Write the result as JSON");
        c->callback([this] { run(); });
    }

    void run() const {
        TdceHwConfig c = cfg;
        if (target > 0.0) c = match_throughput(c, target, tolerance);
        const TdceCost r = tdce_cost(c);
        if (!r.feasible)
            throw InfeasibleError("L_P=" + std::to_string(c.lp) + " cannot schedule " +
                                  std::to_string(r.complex_mults_per_block) + " multiplications; minimum L_P is " +
                                  std::to_string(r.required_lp));
        io::Json j{{"m", c.m},
                   {"n_c", c.n_c},
                   {"lanes", c.lanes},
                   {"alpha", c.alpha},
                   {"cycles_per_block", r.cycles_per_block},
                   {"complex_mults_per_block", r.complex_mults_per_block},
                   {"lp", r.required_lp},
                   {"real_multipliers", r.real_multipliers},
                   {"presum_memory_positions", r.presum_memory_positions},
                   {"real_mults_per_sample", r.real_mults_per_sample},
                   {"throughput_mbps", r.throughput_mbps}};
        if (!out.empty()) io::write_text(out, j.dump(2) + "\n");
        std::cout << "L=" << c.lanes << " L_P=" << r.required_lp << " cycles=" << r.cycles_per_block
                  << " multipliers=" << r.real_multipliers << " TH=" << fmt(r.throughput_mbps) << " Mb/s\n";
    }
};

// ---- report ----------------------------------------------------------------

struct ReportCmd {
    double alpha = 0.0;
    double delta = 0.0;
    bool ber = false;
    std::vector<int> spans{1, 2, 4, 8};
    std::size_t symbols = 1U << 16;
    std::uint64_t seed = 1;
    double launch_dbm = 0.0;
    bool nonlinear = false;
    std::string out = ".";

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("report", "Complexity, cost and optional BER comparison tables");
        c->add_option("--alpha", alpha, "TDCE dataflow constant (default: calibrated)");
        c->add_option("--delta", delta, "FDE dataflow constant (default: calibrated)");
        c->add_flag("--ber", ber, "Also simulate each reference design and measure BER");
        c->add_option("--spans", spans, "Span counts for the BER table");
        c->add_option("--symbols", symbols, "Symbols per polarization for the BER table");
        c->add_option("--seed", seed, "Simulation seed");
        c->add_option("--launch-dbm", launch_dbm, "Launch power for the BER table");
        c->add_flag("--nonlinear", nonlinear, "Nonlinear propagation for the BER table");
        c->add_option("--out", out, "Output directory");
        c->callback([this] { run(); });
    }

    void run() const {
        const double a = alpha > 0.0 ? alpha : default_alpha();
        const double d = delta > 0.0 ? delta : default_fde_delta();
        io::write_text(fs::path(out) / "complexity.csv", complexity_report_csv(a, d));
        io::Json j = complexity_report_json(a, d);
        if (ber) j["ber"] = ber_table(fs::path(out) / "ber.csv");
        io::write_text(fs::path(out) / "report.json", j.dump(2) + "\n");
        std::cout << "wrote " << (fs::path(out) / "report.json").string() << "\n";
    }

    io::Json ber_table(const fs::path& csv_path) const {
        struct Row {
            int spans;
            double knn, fde, direct;
        };
        const auto rows = parallel_map<Row>(spans.size(), worker_count(), [&](std::size_t i) {
            const ReferenceDesign& ref = reference_design(spans[i]);
            LinkRun run;
            run.spec = ChannelSpec::ssmf(spans[i]);
            run.symbol_count = symbols;
            run.seed = seed;
            run.launch_power_dbm = launch_dbm;
            run.nonlinear = nonlinear;
            const LinkData link = simulate_link(run);
            const TapSet taps = generate_taps(run.spec, static_cast<int>(ref.m_tdce));
            const ClusteredFilter cf = kmeans_cluster(taps, static_cast<int>(ref.nc_knn), {});
            const auto knn = clustered_convolve(link.rx, cf, 16, tdce_default_format());
            const auto fde = overlap_save_equalize(
                link.rx, {ref.n_fft, generate_taps(run.spec, static_cast<int>(ref.m_fde)), Radix::radix4,
                          fde_default_format()});
            const auto direct = direct_convolve(link.rx, taps);
            return Row{spans[i], evaluate_ber(knn, link.symbols, link.pulse).ber(),
                       evaluate_ber(fde, link.symbols, link.pulse).ber(),
                       evaluate_ber(direct, link.symbols, link.pulse).ber()};
        });
        std::string csv = "spans,ber_direct,ber_tdce_knn,ber_fde\n";
        io::Json j = io::Json::array();
        for (const auto& r : rows) {
            csv += std::to_string(r.spans) + "," + fmt(r.direct) + "," + fmt(r.knn) + "," + fmt(r.fde) + "\n";
            j.push_back({{"spans", r.spans}, {"ber_direct", r.direct}, {"ber_tdce_knn", r.knn}, {"ber_fde", r.fde}});
        }
        io::write_text(csv_path, csv);
        return j;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clustered time-domain and frequency-domain CD equalizer toolkit"};
    app.require_subcommand(1);
    TapsCmd taps;
    SimulateCmd simulate;
    ClusterCmd cluster;
    EqualizeCmd equalize;
    FinetuneCmd finetune;
    CostCmd cost;
    ReportCmd report;
    taps.add(app);
    simulate.add(app);
    cluster.add(app);
    equalize.add(app);
    finetune.add(app);
    cost.add(app);
    report.add(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitConfig;
    }
    return 0;
}
