// Command-line front end for the Kuramoto phase-locking toolkit.
//
// Subcommands: bounds, kc, existence, fixed-points, simulate, scan.
// Exit codes: 0 success, 1 analysis-negative (a finding such as "no fixed
// point", not a failure), 2 input error, 3 capacity error.

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kuramoto/coupling.hpp"
#include "kuramoto/errors.hpp"
#include "kuramoto/frequencies.hpp"
#include "kuramoto/order_field.hpp"
#include "kuramoto/simulate.hpp"

namespace {

using json = nlohmann::ordered_json;
using kuramoto::format_full;

double parse_double(const std::string& token, const std::string& what) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || token.empty() || errno == ERANGE ||
        !std::isfinite(v)) {
        throw std::invalid_argument(what + ": not a finite number: '" + token + "'");
    }
    return v;
}

std::uint64_t parse_u64(const std::string& token, const std::string& what) {
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(token, &pos);
        if (pos != token.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": not an unsigned integer: '" + token + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

// --- input resolution -------------------------------------------------------

struct InputOpts {
    std::string file;
    std::string inline_list;
    std::vector<std::string> sample;
};

void add_input_options(CLI::App* cmd, InputOpts& in) {
    cmd->add_option("--input", in.file,
                    "frequency file: one decimal per line, '#' comments, or a JSON array "
                    "('-' reads standard input)");
    cmd->add_option("--omega", in.inline_list, "inline comma-separated frequencies, e.g. 1,-1");
    cmd->add_option("--sample", in.sample,
                    "draw frequencies: n=<int> [seed=<u64>] [mean=<float>] [std=<float>]")
        ->expected(-1);
}

kuramoto::FrequencySpec sample_from_tokens(const std::vector<std::string>& tokens) {
    std::optional<std::size_t> n;
    std::uint64_t seed = 0;
    double mean = 0.0, stddev = 1.0;
    for (const std::string& raw : tokens) {
        for (const std::string& tok : split(raw, ',')) {
            if (tok.empty()) continue;
            const auto eq = tok.find('=');
            if (eq == std::string::npos) {
                throw std::invalid_argument("--sample: expected key=value, got '" + tok + "'");
            }
            const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "n") {
                n = static_cast<std::size_t>(parse_u64(val, "--sample n"));
            } else if (key == "seed") {
                seed = parse_u64(val, "--sample seed");
            } else if (key == "mean") {
                mean = parse_double(val, "--sample mean");
            } else if (key == "std") {
                stddev = parse_double(val, "--sample std");
            } else {
                throw std::invalid_argument("--sample: unknown key '" + key + "'");
            }
        }
    }
    if (!n) throw std::invalid_argument("--sample: n=<int> is required");
    return kuramoto::sample_normal(*n, mean, stddev, seed);
}

kuramoto::FrequencySpec resolve_input(const InputOpts& in) {
    const int given = (!in.file.empty() ? 1 : 0) + (!in.inline_list.empty() ? 1 : 0) +
                      (!in.sample.empty() ? 1 : 0);
    if (given != 1) {
        throw std::invalid_argument("exactly one of --input, --omega, --sample is required");
    }
    if (!in.file.empty()) {
        std::vector<double> raw = in.file == "-"
                                      ? kuramoto::read_frequencies(std::cin, "<stdin>")
                                      : kuramoto::read_frequencies_file(in.file);
        return kuramoto::center(raw);
    }
    if (!in.inline_list.empty()) {
        std::vector<double> raw;
        for (const std::string& tok : split(in.inline_list, ',')) {
            raw.push_back(parse_double(tok, "--omega"));
        }
        return kuramoto::center(raw);
    }
    return sample_from_tokens(in.sample);
}

// --- output plumbing --------------------------------------------------------

struct OutputOpts {
    std::string format;
    std::string path;
};

void add_output_options(CLI::App* cmd, OutputOpts& out, const std::string& default_format) {
    out.format = default_format;
    cmd->add_option("--format", out.format, "output form")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--output", out.path, "write to this file instead of standard output");
}

class Sink {
public:
    explicit Sink(const OutputOpts& opts) {
        if (!opts.path.empty()) {
            file_.open(opts.path, std::ios::binary);
            if (!file_) throw kuramoto::io_error(opts.path + ": cannot open for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

json json_or_inf(double v) {
    if (std::isinf(v)) return json(v > 0 ? "inf" : "-inf");
    return json(v);
}

std::string csv_of(double v) { return format_full(v); }

// --- sweep parallelism ------------------------------------------------------

unsigned sweep_threads() {
    if (const char* env = std::getenv("KURAMOTO_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Evaluates fn(i) for i in [0, count) across threads; results land in order.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, Fn fn) {
    std::vector<T> out(count);
    const unsigned workers = std::min<std::size_t>(sweep_threads(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) out[i] = fn(i);
        });
    }
    for (std::thread& t : pool) t.join();
    return out;
}

std::vector<double> parse_k_grid(const std::string& text) {
    // "start:stop:count" makes a uniform grid; otherwise a comma list.
    if (const std::vector<std::string> parts = split(text, ':'); parts.size() == 3) {
        const double a = parse_double(parts[0], "--k-grid start");
        const double b = parse_double(parts[1], "--k-grid stop");
        const std::uint64_t count = parse_u64(parts[2], "--k-grid count");
        if (count < 2) throw std::invalid_argument("--k-grid: count must be >= 2");
        std::vector<double> ks(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            ks[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
        }
        return ks;
    }
    std::vector<double> ks;
    for (const std::string& tok : split(text, ',')) {
        ks.push_back(parse_double(tok, "--k-grid"));
    }
    if (ks.empty()) throw std::invalid_argument("--k-grid: empty grid");
    return ks;
}

// --- subcommands ------------------------------------------------------------

int run_bounds(const InputOpts& in, const OutputOpts& outopts) {
    const kuramoto::FrequencySpec spec = resolve_input(in);
    Sink sink(outopts);
    std::ostream& os = sink.stream();

    const bool degenerate = kuramoto::inf_norm(spec.view()) == 0.0;
    const auto [lo_inf, lo_sigma] = kuramoto::lower_bounds(spec);
    const double upper = degenerate ? 0.0 : kuramoto::upper_bound(spec);

    if (outopts.format == "json") {
        json j;
        j["n"] = spec.size();
        j["lower_inf"] = lo_inf;
        j["lower_sigma"] = lo_sigma;
        j["upper"] = json_or_inf(upper);
        j["degenerate"] = degenerate;
        os << j.dump(2) << '\n';
    } else if (outopts.format == "csv") {
        os << "n,lower_inf,lower_sigma,upper,degenerate\n"
           << spec.size() << ',' << csv_of(lo_inf) << ',' << csv_of(lo_sigma) << ','
           << csv_of(upper) << ',' << (degenerate ? "true" : "false") << '\n';
    } else {
        os << "n: " << spec.size() << '\n'
           << "lower_inf: " << format_full(lo_inf) << '\n'
           << "lower_sigma: " << format_full(lo_sigma) << '\n'
           << "upper: " << format_full(upper) << '\n'
           << "degenerate: " << (degenerate ? "true" : "false") << '\n';
        if (degenerate) os << "note: Omega = 0, every coupling locks (kc = 0)\n";
    }
    return 0;
}

int run_kc(const InputOpts& in, const OutputOpts& outopts, double eps_rel) {
    const kuramoto::FrequencySpec spec = resolve_input(in);
    if (!(eps_rel > 0.0)) throw std::invalid_argument("--eps must be positive");
    const double m = kuramoto::inf_norm(spec.view());
    const kuramoto::CouplingReport rep = m == 0.0
                                             ? kuramoto::compute_kc(spec)
                                             : kuramoto::compute_kc(spec, eps_rel * m);
    Sink sink(outopts);
    std::ostream& os = sink.stream();

    if (outopts.format == "json") {
        json j;
        j["n"] = rep.n;
        j["kc"] = rep.kc;
        j["u_star"] = rep.u_star;
        j["iterations"] = rep.iterations;
        j["tolerance"] = rep.tolerance;
        j["lower_inf"] = rep.lower_inf;
        j["lower_sigma"] = rep.lower_sigma;
        j["upper"] = json_or_inf(rep.upper);
        j["degenerate"] = rep.degenerate;
        os << j.dump(2) << '\n';
    } else if (outopts.format == "csv") {
        os << "n,kc,u_star,iterations,tolerance,lower_inf,lower_sigma,upper,degenerate\n"
           << rep.n << ',' << csv_of(rep.kc) << ',' << csv_of(rep.u_star) << ','
           << rep.iterations << ',' << csv_of(rep.tolerance) << ',' << csv_of(rep.lower_inf)
           << ',' << csv_of(rep.lower_sigma) << ',' << csv_of(rep.upper) << ','
           << (rep.degenerate ? "true" : "false") << '\n';
    } else {
        os << "n: " << rep.n << '\n'
           << "kc: " << format_full(rep.kc) << '\n'
           << "u_star: " << format_full(rep.u_star) << '\n'
           << "iterations: " << rep.iterations << '\n'
           << "tolerance: " << format_full(rep.tolerance) << '\n'
           << "lower_inf: " << format_full(rep.lower_inf) << '\n'
           << "lower_sigma: " << format_full(rep.lower_sigma) << '\n'
           << "upper: " << format_full(rep.upper) << '\n';
        if (rep.degenerate) os << "note: Omega = 0, every coupling locks (kc = 0)\n";
    }
    return 0;
}

int run_existence(const InputOpts& in, const OutputOpts& outopts, std::optional<double> k,
                  const std::string& k_grid) {
    const kuramoto::FrequencySpec spec = resolve_input(in);
    if (k.has_value() == !k_grid.empty()) {
        throw std::invalid_argument("exactly one of --k, --k-grid is required");
    }
    Sink sink(outopts);
    std::ostream& os = sink.stream();

    if (k) {
        const std::optional<double> beta = kuramoto::existence_at(spec, *k);
        if (outopts.format == "json") {
            json j;
            j["k"] = *k;
            j["exists"] = beta.has_value();
            j["beta"] = beta ? json(*beta) : json(nullptr);
            os << j.dump(2) << '\n';
        } else if (outopts.format == "csv") {
            os << "k,exists,beta\n"
               << csv_of(*k) << ',' << (beta ? "true" : "false") << ','
               << (beta ? csv_of(*beta) : "") << '\n';
        } else {
            if (beta) {
                os << "exists (beta=" << format_full(*beta) << ")\n";
            } else {
                os << "none\n";
            }
        }
        return beta ? 0 : 1;
    }

    const std::vector<double> ks = parse_k_grid(k_grid);
    const auto rows = parallel_map<std::optional<double>>(
        ks.size(), [&](std::size_t i) { return kuramoto::existence_at(spec, ks[i]); });
    if (outopts.format == "json") {
        json arr = json::array();
        for (std::size_t i = 0; i < ks.size(); ++i) {
            json j;
            j["k"] = ks[i];
            j["exists"] = rows[i].has_value();
            j["beta"] = rows[i] ? json(*rows[i]) : json(nullptr);
            arr.push_back(std::move(j));
        }
        os << arr.dump(2) << '\n';
    } else if (outopts.format == "csv") {
        os << "k,exists,beta\n";
        for (std::size_t i = 0; i < ks.size(); ++i) {
            os << csv_of(ks[i]) << ',' << (rows[i] ? "true" : "false") << ','
               << (rows[i] ? csv_of(*rows[i]) : "") << '\n';
        }
    } else {
        for (std::size_t i = 0; i < ks.size(); ++i) {
            os << "k=" << format_full(ks[i]) << ": ";
            if (rows[i]) {
                os << "exists (beta=" << format_full(*rows[i]) << ")\n";
            } else {
                os << "none\n";
            }
        }
    }
    return 0;
}

int run_fixed_points(const InputOpts& in, const OutputOpts& outopts, double k,
                     std::size_t max_n) {
    const kuramoto::FrequencySpec spec = resolve_input(in);
    const kuramoto::Enumeration res = kuramoto::enumerate_fixed_points(spec, k, max_n);
    Sink sink(outopts);
    std::ostream& os = sink.stream();

    if (outopts.format == "json") {
        json j;
        j["n"] = spec.size();
        j["k"] = k;
        j["count"] = res.certificates.size();
        j["class_count"] = res.classes.size();
        json certs = json::array();
        for (const auto& c : res.certificates) {
            json e;
            e["a"] = c.a.pattern();
            e["beta"] = c.beta;
            e["R"] = c.order_R;
            e["residual_inf"] = c.residual_inf;
            e["x_star"] = c.x_star.x;
            certs.push_back(std::move(e));
        }
        j["certificates"] = std::move(certs);
        j["classes"] = res.classes;
        os << j.dump(2) << '\n';
    } else if (outopts.format == "csv") {
        os << "a,beta,R,residual_inf\n";
        for (const auto& c : res.certificates) {
            os << c.a.pattern() << ',' << csv_of(c.beta) << ',' << csv_of(c.order_R) << ','
               << csv_of(c.residual_inf) << '\n';
        }
    } else {
        os << "n: " << spec.size() << "  k: " << format_full(k) << '\n'
           << "certificates: " << res.certificates.size() << '\n'
           << "classes: " << res.classes.size() << '\n';
        for (const auto& c : res.certificates) {
            os << "a=" << c.a.pattern() << "  beta=" << format_full(c.beta)
               << "  R=" << format_full(c.order_R)
               << "  residual=" << format_full(c.residual_inf) << '\n';
        }
        for (std::size_t g = 0; g < res.classes.size(); ++g) {
            os << "class " << g + 1
               << ": R=" << format_full(res.certificates[res.classes[g].front()].order_R)
               << " members=" << res.classes[g].size() << '\n';
        }
    }
    return res.certificates.empty() ? 1 : 0;
}

int run_simulate(const InputOpts& in, const OutputOpts& outopts, bool homogeneous,
                 std::size_t n_hom, kuramoto::SimConfig config, const std::string& init_file) {
    if (!init_file.empty()) {
        config.init = kuramoto::read_frequencies_file(init_file);
    }
    kuramoto::SimTrace trace;
    if (homogeneous) {
        if (n_hom < 2) throw std::invalid_argument("--homogeneous requires --n >= 2");
        trace = kuramoto::homogeneous_run(n_hom, config);
    } else {
        trace = kuramoto::integrate(resolve_input(in), config);
    }
    Sink sink(outopts);
    std::ostream& os = sink.stream();

    if (outopts.format == "json") {
        json j;
        j["k"] = config.k;
        j["converged"] = trace.converged;
        j["times"] = trace.times;
        j["L"] = trace.L;
        j["D"] = trace.D.empty() ? json(nullptr) : json(trace.D);
        j["residual"] = trace.residual;
        j["final_state"] = trace.final_state.x;
        os << j.dump(2) << '\n';
    } else {
        kuramoto::write_trace_csv(os, trace);
    }
    return 0;
}

int run_scan(const InputOpts& in, const OutputOpts& outopts, double k, std::size_t samples) {
    const kuramoto::FrequencySpec spec = resolve_input(in);
    if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("--k must be positive");
    if (samples < 2) throw std::invalid_argument("--samples must be >= 2");
    const double m = kuramoto::inf_norm(spec.view());
    const double beta_lo = m / k;
    if (beta_lo > 1.0) {
        throw std::invalid_argument("empty scan range: ||Omega||_inf / k = " +
                                    format_full(beta_lo) + " exceeds 1 (coupling too weak)");
    }
    Sink sink(outopts);
    std::ostream& os = sink.stream();

    json arr = json::array();
    const bool as_json = outopts.format == "json";
    if (!as_json) os << "beta,P,h\n";
    for (std::size_t i = 0; i < samples; ++i) {
        const double beta =
            beta_lo + (1.0 - beta_lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        const double P =
            m == 0.0 ? 1.0 : kuramoto::mean_offset_cosine(spec.view(), std::max(k * beta, m));
        if (as_json) {
            json j;
            j["beta"] = beta;
            j["P"] = P;
            j["h"] = beta;
            arr.push_back(std::move(j));
        } else {
            os << csv_of(beta) << ',' << csv_of(P) << ',' << csv_of(beta) << '\n';
        }
    }
    if (as_json) os << arr.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-N all-to-all Kuramoto phase-locking toolkit"};
    app.require_subcommand(1);

    // Each subcommand owns its option storage; a shared struct would let the
    // per-command --format defaults overwrite each other.
    InputOpts in_bounds, in_kc, in_exist, in_fixed, in_sim, in_scan;
    OutputOpts out_bounds, out_kc, out_exist, out_fixed, out_sim, out_scan;

    CLI::App* bounds = app.add_subcommand("bounds", "critical-coupling bounds for a spec");
    add_input_options(bounds, in_bounds);
    add_output_options(bounds, out_bounds, "text");

    CLI::App* kc = app.add_subcommand("kc", "exact critical coupling via bisection");
    add_input_options(kc, in_kc);
    add_output_options(kc, out_kc, "text");
    double eps_rel = 1e-10;
    kc->add_option("--eps", eps_rel, "bracket width relative to ||Omega||_inf")
        ->capture_default_str();

    CLI::App* existence = app.add_subcommand("existence", "largest locked order beta at k");
    add_input_options(existence, in_exist);
    add_output_options(existence, out_exist, "text");
    std::optional<double> exist_k;
    std::string k_grid;
    existence->add_option("--k", exist_k, "coupling strength");
    existence->add_option("--k-grid", k_grid,
                          "sweep: comma list or start:stop:count (parallel; KURAMOTO_THREADS "
                          "sets the worker count)");

    CLI::App* fixed = app.add_subcommand("fixed-points", "enumerate verified locked states");
    add_input_options(fixed, in_fixed);
    add_output_options(fixed, out_fixed, "text");
    double fixed_k = 0.0;
    std::size_t max_n = 16;
    fixed->add_option("--k", fixed_k, "coupling strength")->required();
    fixed->add_option("--max-n", max_n, "refuse systems larger than this (2^n sweep)")
        ->capture_default_str();

    CLI::App* simulate = app.add_subcommand("simulate", "integrate the grounded system");
    add_input_options(simulate, in_sim);
    add_output_options(simulate, out_sim, "csv");
    kuramoto::SimConfig sim;
    bool homogeneous = false;
    std::size_t n_hom = 0;
    std::string init_file;
    simulate->add_option("--k", sim.k, "coupling strength")->required();
    simulate->add_option("--t-end", sim.t_end, "duration")->capture_default_str();
    simulate->add_option("--dt", sim.dt, "step size (0 selects min(0.01, 0.1/max(1,k)))");
    simulate->add_option("--record-every", sim.record_every, "sample cadence in steps")
        ->capture_default_str();
    simulate->add_option("--seed", sim.seed, "seed for the random start")->capture_default_str();
    simulate->add_flag("--homogeneous", homogeneous, "Omega = 0 run (needs --n, fills D column)");
    simulate->add_option("--n", n_hom, "oscillator count for --homogeneous");
    simulate->add_option("--init", init_file, "file of initial phases (frequency file format)");

    CLI::App* scan = app.add_subcommand("scan", "self-consistency curve over beta");
    add_input_options(scan, in_scan);
    add_output_options(scan, out_scan, "csv");
    double scan_k = 0.0;
    std::size_t scan_samples = 512;
    scan->add_option("--k", scan_k, "coupling strength")->required();
    scan->add_option("--samples", scan_samples, "grid points over [||Omega||_inf/k, 1]")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (bounds->parsed()) return run_bounds(in_bounds, out_bounds);
        if (kc->parsed()) return run_kc(in_kc, out_kc, eps_rel);
        if (existence->parsed()) return run_existence(in_exist, out_exist, exist_k, k_grid);
        if (fixed->parsed()) return run_fixed_points(in_fixed, out_fixed, fixed_k, max_n);
        if (simulate->parsed())
            return run_simulate(in_sim, out_sim, homogeneous, n_hom, sim, init_file);
        if (scan->parsed()) return run_scan(in_scan, out_scan, scan_k, scan_samples);
    } catch (const kuramoto::capacity_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const kuramoto::io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const kuramoto::certification_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const kuramoto::divergence_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
