#include "plc/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <map>

#include "plc/bp_encoder.hpp"
#include "plc/codec.hpp"
#include "plc/harness.hpp"
#include "plc/oracle.hpp"
#include "plc/plot.hpp"
#include "plc/reference.hpp"

namespace plc::cli {

namespace {

constexpr std::size_t kMaxCodebookEntries = 60'000'000;

std::string fmt(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path + "' for reading");
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw Error("read failure on '" + path + "'");
    }
    return bytes;
}

void write_file(const std::string& path, const void* data, std::size_t size) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) {
        throw Error("write failure on '" + path + "'");
    }
}

void write_file(const std::string& path, const std::string& text) {
    write_file(path, text.data(), text.size());
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_file(out_path, text);
    }
}

struct ParamFlags {
    double k = 0.0;
    bool k_set = false;
    double beta = 5.0;
    bool beta_set = false;
    double gamma = 0.4;
    std::size_t iters = 35;
    double delta = 0.1;
    bool best_iterate = false;
};

// A command-line problem detected after CLI11 parsing (bad config key,
// missing required value); reported like a usage error.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

// Flat key=value lines, '#' comments; keys match the long flag names.
std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open config file '" + path + "'");
    }
    std::map<std::string, std::string> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config file '" + path + "' line " + std::to_string(line_no) +
                             ": expected key=value");
        }
        values[trim(stripped.substr(0, eq))] = trim(stripped.substr(eq + 1));
    }
    return values;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        const auto comma = text.find(',', begin);
        const std::string token =
            trim(text.substr(begin, comma == std::string::npos ? std::string::npos
                                                               : comma - begin));
        if (!token.empty()) {
            try {
                out.push_back(std::stod(token));
            } catch (const std::exception&) {
                throw UsageError("bad " + what + " value '" + token + "'");
            }
        }
        if (comma == std::string::npos) break;
        begin = comma + 1;
    }
    return out;
}

bool parse_bool(const std::string& text, const std::string& key) {
    if (text == "1" || text == "true" || text == "yes") return true;
    if (text == "0" || text == "false" || text == "no") return false;
    throw UsageError("bad boolean for '" + key + "': " + text);
}

// The k and beta defaults are heuristic placeholders, not the channel-optimal
// values; serious runs should sweep them.
void add_param_flags(CLI::App* cmd, ParamFlags& flags) {
    cmd->add_option("--k", flags.k,
                    "decoder threshold (default: matches the source bias; heuristic, not the "
                    "optimal value)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--beta", flags.beta,
                    "inverse temperature (default: matched to the rate-distortion slope at "
                    "the coding rate; heuristic, not the optimal value)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--gamma", flags.gamma, "inertia constant in [0,1)")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--iters", flags.iters, "iteration budget (default 35)");
    cmd->add_option("--delta", flags.delta, "symmetry-breaking init amplitude in [0,1)")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_flag("--best-iterate", flags.best_iterate,
                  "emit the minimum-distortion iterate instead of the final one");
}

// rate <= 0 means "no single rate applies here" (the per-rate default is
// filled in downstream by the experiment runner instead).
CodecParams resolve_params(const ParamFlags& flags, double bias, double rate) {
    CodecParams params;
    params.k = flags.k_set ? flags.k : default_threshold(bias);
    params.beta = flags.beta;
    if (!flags.beta_set && rate > 0.0) {
        params.beta = default_beta(std::clamp(bias, 1e-6, 1.0 - 1e-6), rate);
    }
    params.gamma = flags.gamma;
    params.max_iters = flags.iters;
    params.init_amplitude = flags.delta;
    params.validate();
    return params;
}

int run_compress(const std::string& in_path, const std::string& out_path, double rate,
                 const ParamFlags& flags, std::uint64_t seed) {
    const std::vector<std::uint8_t> bytes = read_file(in_path);
    if (bytes.empty()) {
        throw Error("input '" + in_path + "' is empty");
    }
    const std::size_t m_rows = bytes.size() * 8;
    const BinarySeq y = BinarySeq::from_packed_bits(bytes, m_rows);

    const std::size_t n_cols = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(rate * static_cast<double>(m_rows))));
    if (m_rows * n_cols > kMaxCodebookEntries) {
        throw Error("instance needs " + std::to_string(m_rows * n_cols) +
                    " codebook entries (cap " + std::to_string(kMaxCodebookEntries) +
                    "); use a smaller input or rate");
    }

    double bias = 0.0;
    for (std::size_t i = 0; i < m_rows; ++i) bias += y[i] > 0 ? 1.0 : 0.0;
    bias /= static_cast<double>(m_rows);
    if (!flags.k_set && (bias < 1e-6 || bias > 1.0 - 1e-6)) {
        throw Error("input bias " + fmt(bias) +
                    " is too extreme for the default threshold; pass --k explicitly");
    }

    const CodecParams params =
        resolve_params(flags, bias, static_cast<double>(n_cols) / static_cast<double>(m_rows));

    RngStream master = RngStream::from_seed(seed);
    const std::uint64_t codebook_seed = master.next_u64();
    const Codebook codebook = Codebook::from_seed(codebook_seed, m_rows, n_cols);

    const EncodeResult res = encode_bp(y, codebook, params, master, flags.best_iterate);
    const std::vector<std::uint8_t> container =
        serialize_blob(pack_blob(res.s, codebook, params.k));
    write_file(out_path, container.data(), container.size());

    std::cout << "rate=" << fmt(static_cast<double>(n_cols) / static_cast<double>(m_rows))
              << " M=" << m_rows << " N=" << n_cols << " k=" << fmt(params.k)
              << " beta=" << fmt(params.beta) << " gamma=" << fmt(params.gamma)
              << " iters=" << params.max_iters << " distortion_bits=" << res.distortion_bits
              << " distortion_per_bit="
              << fmt(static_cast<double>(res.distortion_bits) / static_cast<double>(m_rows))
              << " converged=" << (res.trace.converged() ? 1 : 0) << "\n";
    return 0;
}

int run_decompress(const std::string& in_path, const std::string& out_path,
                   const std::string& original_path) {
    const std::vector<std::uint8_t> bytes = read_file(in_path);
    const CompressedBlob blob = unpack_blob(bytes);
    const BinarySeq restored = decode_blob(blob);
    const std::vector<std::uint8_t> packed = restored.to_packed_bits();
    write_file(out_path, packed.data(), packed.size());

    if (!original_path.empty()) {
        const std::vector<std::uint8_t> original = read_file(original_path);
        if (original.size() * 8 < blob.m_rows) {
            throw Error("original '" + original_path + "' holds " +
                        std::to_string(original.size() * 8) + " bits but the container restores " +
                        std::to_string(blob.m_rows));
        }
        const BinarySeq y = BinarySeq::from_packed_bits(original, blob.m_rows);
        const std::size_t distortion = hamming_distortion(y, restored);
        std::cout << "distortion_bits=" << distortion << " distortion_per_bit="
                  << fmt(static_cast<double>(distortion) / static_cast<double>(blob.m_rows))
                  << "\n";
    }
    return 0;
}

int run_rdcurve(double p, std::size_t points, const std::string& out_path) {
    const RdCurve curve = rd_curve(p, points);
    std::string csv = "# plc.rdcurve.v1\nD,R\n";
    for (const RdPoint& point : curve.points) {
        csv += fmt(point.distortion) + ',' + fmt(point.rate) + '\n';
    }
    emit(csv, out_path);
    return 0;
}

void print_aggregate_table(const std::vector<RateAggregate>& aggregates) {
    std::cout << "R\tmean_D\tstderr_D\trdf_D\n";
    for (const RateAggregate& agg : aggregates) {
        std::cout << fmt(agg.rate) << '\t' << fmt(agg.mean_d) << '\t' << fmt(agg.stderr_d)
                  << '\t' << fmt(agg.rdf_d) << "\n";
    }
}

int run_exponent(double p, double rate, double distortion, const std::vector<std::size_t>& m_list,
                 std::size_t trials, const ParamFlags& flags, std::uint64_t seed,
                 const std::string& out_path) {
    const double k = flags.k_set ? flags.k : default_threshold(p);
    RngStream master = RngStream::from_seed(seed);
    std::string csv = "# plc.exponent.v1\n";
    csv += "# fidelity failure counted when lambda >= D\n";
    csv += "p,R,D,k,M,N,trials,regime,p_hat,rate_estimate\n";
    for (const std::size_t m_rows : m_list) {
        RngStream rng = RngStream::from_seed(master.next_u64());
        const ExponentEstimate est =
            estimate_tail_probability(SourceModel{.p = p}, m_rows, rate, distortion, k, trials, rng);
        csv += fmt(p) + ',' + fmt(rate) + ',' + fmt(distortion) + ',' + fmt(k) + ',' +
               std::to_string(est.m_rows) + ',' + std::to_string(est.n_cols) + ',' +
               std::to_string(est.trials) + ',' +
               (est.regime == TailRegime::Failure ? "failure" : "success") + ',' +
               fmt(est.p_hat) + ',' + (est.rate_estimate ? fmt(*est.rate_estimate) : "nan") +
               '\n';
    }
    emit(csv, out_path);
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"lossy compressor for binary memoryless sources built on a dense random "
                 "codebook and an iterative message-passing encoder"};
    app.require_subcommand(1);

    // compress
    auto* compress = app.add_subcommand("compress", "compress a file of bits into a container");
    std::string c_in, c_out;
    double c_rate = 0.5;
    std::uint64_t c_seed = 1;
    ParamFlags c_flags;
    compress->add_option("--in", c_in, "input file (bits, MSB-first, 1 <-> +1)")->required();
    compress->add_option("--out", c_out, "output container")->required();
    compress->add_option("--rate", c_rate, "coding rate N/M in (0,1]")
        ->required()
        ->check(CLI::Range(1e-9, 1.0));
    compress->add_option("--seed", c_seed, "master seed");
    add_param_flags(compress, c_flags);

    // decompress
    auto* decompress = app.add_subcommand("decompress", "restore the representative sequence");
    std::string d_in, d_out, d_original;
    decompress->add_option("--in", d_in, "input container")->required();
    decompress->add_option("--out", d_out, "restored output file")->required();
    decompress->add_option("--original", d_original,
                           "original file; reports the achieved distortion");

    // rdcurve
    auto* rdcurve = app.add_subcommand("rdcurve", "emit the rate-distortion reference curve");
    double r_p = 0.5;
    std::size_t r_points = 512;
    std::string r_out;
    rdcurve->add_option("--p", r_p, "source bias P(+1)")->required()->check(CLI::Range(1e-12, 1.0));
    rdcurve->add_option("--points", r_points, "grid size (default 512)");
    rdcurve->add_option("--out", r_out, "output file (stdout if omitted)");

    // experiment / sweep share their configuration flags
    struct ExperimentFlags {
        double p = 0.5;
        std::vector<double> rates;
        std::size_t n = 1000;
        std::size_t trials = 100;
        std::uint64_t seed = 1;
        std::size_t workers = 1;
        std::string out_prefix;
        std::string svg_path;
        std::string config_path;
        ParamFlags params;
    };
    const auto add_experiment_flags = [](CLI::App* cmd, ExperimentFlags& flags) {
        cmd->add_option("--p", flags.p, "source bias P(+1)")->check(CLI::Range(1e-12, 1.0));
        cmd->add_option("--rates", flags.rates, "coding rates, comma separated")
            ->delimiter(',');
        cmd->add_option("--n", flags.n, "codeword length N");
        cmd->add_option("--trials", flags.trials, "independent runs per rate");
        cmd->add_option("--seed", flags.seed, "master seed");
        cmd->add_option("--workers", flags.workers, "worker threads (output is identical "
                                                    "for any worker count)");
        cmd->add_option("--out", flags.out_prefix,
                        "output prefix; writes <prefix>.detail.csv and <prefix>.aggregate.csv");
        cmd->add_option("--config", flags.config_path,
                        "flat key=value file, keys matching the flag names; flags override it");
    };

    // Merges config-file values into the flags; command-line flags win.
    const auto apply_config = [](CLI::App* cmd, ExperimentFlags& flags, std::string* axis,
                                 std::vector<double>* grid) {
        if (flags.config_path.empty()) return;
        const auto values = read_config_file(flags.config_path);
        for (const auto& [key, value] : values) {
            if (cmd->count("--" + key) > 0) continue;  // flag overrides file
            try {
                if (key == "p") {
                    flags.p = std::stod(value);
                } else if (key == "rates") {
                    flags.rates = parse_double_list(value, "rates");
                } else if (key == "n") {
                    flags.n = std::stoull(value);
                } else if (key == "trials") {
                    flags.trials = std::stoull(value);
                } else if (key == "seed") {
                    flags.seed = std::stoull(value);
                } else if (key == "workers") {
                    flags.workers = std::stoull(value);
                } else if (key == "out") {
                    flags.out_prefix = value;
                } else if (key == "svg") {
                    flags.svg_path = value;
                } else if (key == "k") {
                    flags.params.k = std::stod(value);
                    flags.params.k_set = true;
                } else if (key == "beta") {
                    flags.params.beta = std::stod(value);
                    flags.params.beta_set = true;
                } else if (key == "gamma") {
                    flags.params.gamma = std::stod(value);
                } else if (key == "iters") {
                    flags.params.iters = std::stoull(value);
                } else if (key == "delta") {
                    flags.params.delta = std::stod(value);
                } else if (key == "best-iterate") {
                    flags.params.best_iterate = parse_bool(value, key);
                } else if (key == "axis" && axis != nullptr) {
                    *axis = value;
                } else if (key == "grid" && grid != nullptr) {
                    *grid = parse_double_list(value, "grid");
                } else {
                    throw UsageError("unknown config key '" + key + "'");
                }
            } catch (const std::invalid_argument&) {
                throw UsageError("bad value for config key '" + key + "': " + value);
            } catch (const std::out_of_range&) {
                throw UsageError("bad value for config key '" + key + "': " + value);
            }
        }
    };

    auto* experiment =
        app.add_subcommand("experiment", "distortion-vs-rate study with CSV emission");
    ExperimentFlags e_flags;
    add_experiment_flags(experiment, e_flags);
    add_param_flags(experiment, e_flags.params);
    experiment->add_option("--svg", e_flags.svg_path,
                           "also render an SVG of mean distortion vs rate");

    auto* sweep_cmd = app.add_subcommand("sweep", "experiment repeated over a parameter grid");
    ExperimentFlags s_flags;
    std::string s_axis = "gamma";
    std::vector<double> s_grid;
    add_experiment_flags(sweep_cmd, s_flags);
    add_param_flags(sweep_cmd, s_flags.params);
    sweep_cmd->add_option("--axis", s_axis, "swept parameter: gamma, beta, or k");
    sweep_cmd->add_option("--grid", s_grid, "grid values, comma separated")->delimiter(',');

    // exponent
    auto* exponent =
        app.add_subcommand("exponent", "Monte Carlo fidelity tail probabilities at small M");
    double x_p = 0.5, x_rate = 0.5, x_distortion = 0.3;
    std::vector<std::size_t> x_m_list;
    std::size_t x_trials = 1000;
    std::uint64_t x_seed = 1;
    std::string x_out;
    ParamFlags x_flags;
    exponent->add_option("--p", x_p, "source bias P(+1)")->required()->check(CLI::Range(1e-12, 1.0));
    exponent->add_option("--rate", x_rate, "coding rate")->required()->check(CLI::PositiveNumber);
    exponent->add_option("--distortion", x_distortion, "fidelity level D")
        ->required()
        ->check(CLI::Range(1e-12, 1.0));
    exponent->add_option("--m-list", x_m_list, "data lengths M, comma separated")
        ->required()
        ->delimiter(',');
    exponent->add_option("--trials", x_trials, "Monte Carlo trials per M");
    exponent->add_option("--k", x_flags.k, "decoder threshold")->check(CLI::NonNegativeNumber);
    exponent->add_option("--seed", x_seed, "master seed");
    exponent->add_option("--out", x_out, "output file (stdout if omitted)");

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help / --version
        }
        std::cerr << e.what() << "\n\n" << app.help() << "\n";
        return 2;
    }

    try {
        c_flags.k_set = compress->count("--k") > 0;
        c_flags.beta_set = compress->count("--beta") > 0;
        e_flags.params.k_set = experiment->count("--k") > 0;
        e_flags.params.beta_set = experiment->count("--beta") > 0;
        s_flags.params.k_set = sweep_cmd->count("--k") > 0;
        s_flags.params.beta_set = sweep_cmd->count("--beta") > 0;
        x_flags.k_set = exponent->count("--k") > 0;

        if (*compress) {
            return run_compress(c_in, c_out, c_rate, c_flags, c_seed);
        }
        if (*decompress) {
            return run_decompress(d_in, d_out, d_original);
        }
        if (*rdcurve) {
            return run_rdcurve(r_p, r_points, r_out);
        }
        if (*experiment || *sweep_cmd) {
            CLI::App* cmd = *experiment ? experiment : sweep_cmd;
            ExperimentFlags& flags = *experiment ? e_flags : s_flags;
            apply_config(cmd, flags, *sweep_cmd ? &s_axis : nullptr,
                         *sweep_cmd ? &s_grid : nullptr);
            if (flags.rates.empty()) {
                throw UsageError("--rates is required (flag or config file)");
            }
            if (flags.out_prefix.empty()) {
                throw UsageError("--out is required (flag or config file)");
            }

            ExperimentConfig cfg;
            cfg.p = flags.p;
            cfg.rates = flags.rates;
            cfg.n = flags.n;
            cfg.trials = flags.trials;
            cfg.params = resolve_params(flags.params, flags.p, 0.0);
            cfg.auto_beta = !flags.params.beta_set;
            cfg.best_iterate = flags.params.best_iterate;
            cfg.master_seed = flags.seed;
            cfg.workers = flags.workers;

            if (*experiment) {
                const ExperimentResult result = run_experiment(cfg);
                write_file(flags.out_prefix + ".detail.csv", result.detail_csv());
                write_file(flags.out_prefix + ".aggregate.csv", result.aggregate_csv());
                if (!flags.svg_path.empty()) {
                    write_file(flags.svg_path, render_experiment_svg(result, cfg.p));
                }
                print_aggregate_table(result.aggregates);
            } else {
                if (s_grid.empty()) {
                    throw UsageError("--grid is required (flag or config file)");
                }
                SweepAxis axis;
                if (s_axis == "gamma") {
                    axis = SweepAxis::Gamma;
                } else if (s_axis == "beta") {
                    axis = SweepAxis::Beta;
                } else if (s_axis == "k") {
                    axis = SweepAxis::K;
                } else {
                    throw UsageError("--axis must be one of gamma, beta, k");
                }
                const SweepResult result = sweep(cfg, axis, s_grid);
                write_file(flags.out_prefix + ".detail.csv", result.detail_csv());
                write_file(flags.out_prefix + ".aggregate.csv", result.aggregate_csv());
                write_file(flags.out_prefix + ".best.csv", result.best_csv());
                std::cout << result.best_csv();
            }
            return 0;
        }
        if (*exponent) {
            return run_exponent(x_p, x_rate, x_distortion, x_m_list, x_trials, x_flags, x_seed,
                                x_out);
        }
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        for (const CLI::App* sub : app.get_subcommands()) {
            std::cerr << "\n" << sub->help();
        }
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace plc::cli
