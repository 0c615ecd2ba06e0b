#include "asym/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <thread>

#include "asym/format.hpp"
#include "asym/harness.hpp"
#include "asym/primes.hpp"
#include "asym/primes_parallel.hpp"
#include "asym/repeats.hpp"

namespace asym::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    if (out.empty()) throw UsageError("empty list '" + s + "'");
    return out;
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

unsigned to_unsigned(const std::string& s, const char* what) {
    const std::uint64_t v = parse_count(s);
    if (v == 0 || v > 4096) throw UsageError(std::string(what) + " must be in [1, 4096], got " + s);
    return static_cast<unsigned>(v);
}

struct PrimesArgs {
    std::string method;
    std::string n;
    std::string segsize = std::to_string(primes::kDefaultSegsize);
    unsigned threads = default_threads();
    bool verbose = false;
};

struct RepeatsArgs {
    std::string method;
    std::string m;
    std::string input;
    std::string max_bytes;
    std::string text;
    std::string random_n;
    unsigned alphabet = 256;
    std::string seed = "1";
    std::string adversarial;
    std::string n;
    std::string period = "3";
    std::string pivot_seed;
};

struct BenchArgs {
    std::string task;
    std::string methods;
    std::string n_start;
    double n_factor = 10.0;
    std::string n_max;
    std::string m;
    double budget = 0.0;
    std::string csv;
    std::string segsize = std::to_string(primes::kDefaultSegsize);
    unsigned threads = default_threads();
    unsigned alphabet = 256;
    std::string seed = "1";
};

struct SpeedupArgs {
    std::string n;
    std::string segsize = std::to_string(primes::kDefaultSegsize);
    std::string threads_list;
    unsigned reps = 3;
    std::string csv;
};

int do_primes(const PrimesArgs& a, std::ostream& out, std::ostream& err) {
    const auto method = primes::method_from_string(a.method);
    if (!method) throw UsageError("unknown primes method '" + a.method + "' (expected 0..5 or parallel)");
    const std::uint64_t n = parse_count(a.n);
    const std::uint64_t segsize = parse_count(a.segsize);

    primes::Options opts;
    if (a.verbose) {
        auto last = std::make_shared<Stopwatch>();
        auto printed = std::make_shared<double>(-1.0);
        opts.heartbeat = [&err, last, printed](std::uint64_t done, std::uint64_t total) {
            const double t = last->seconds();
            if (done == total || t - *printed >= 1.0) {
                *printed = t;
                err << "segment " << fmt::grouped(done) << "/" << fmt::grouped(total) << " at "
                    << static_cast<long long>(t) << " s" << std::endl;
            }
        };
    }

    primes::PrimesReport r;
    switch (*method) {
        case primes::Method::M0: r = primes::count_m0(n, opts); break;
        case primes::Method::M1: r = primes::count_m1(n, opts); break;
        case primes::Method::M2: r = primes::count_m2(n, opts); break;
        case primes::Method::M3: r = primes::count_m3(n, opts); break;
        case primes::Method::M4: r = primes::count_m4(n, opts); break;
        case primes::Method::M5: r = primes::count_m5({n, segsize}, opts); break;
        case primes::Method::Parallel: r = primes::count_parallel({n, segsize, a.threads}, opts); break;
    }
    out << fmt::transcript(r);
    return kExitOk;
}

int do_repeats(const RepeatsArgs& a, std::ostream& out) {
    const auto method = repeats::method_from_string(a.method);
    if (!method) throw UsageError("unknown repeats method '" + a.method + "' (expected 0..3)");
    const std::uint64_t m = parse_count(a.m);

    const int sources = !a.input.empty() + !a.text.empty() + !a.random_n.empty() + !a.adversarial.empty();
    if (sources != 1) throw UsageError("give exactly one of --input, --text, --random, --adversarial");
    if (!a.max_bytes.empty() && a.input.empty()) throw UsageError("--max-bytes applies to --input only");

    repeats::Text text;
    if (!a.input.empty()) {
        std::optional<std::uint64_t> cap;
        if (!a.max_bytes.empty()) cap = parse_count(a.max_bytes);
        text = repeats::read_text(a.input, cap);
    } else if (!a.text.empty()) {
        text = repeats::Text::literal(a.text);
    } else if (!a.random_n.empty()) {
        text = repeats::generate_text(
            {repeats::TextKind::Random, parse_count(a.random_n), a.alphabet, parse_count(a.seed)});
    } else {
        const auto kind = repeats::adversarial_from_string(a.adversarial);
        if (!kind) throw UsageError("unknown adversarial kind '" + a.adversarial + "' (all-equal, periodic)");
        if (a.n.empty()) throw UsageError("--adversarial needs --n");
        repeats::TextSpec spec;
        spec.kind = *kind == repeats::Adversarial::AllEqual ? repeats::TextKind::AllEqual
                                                             : repeats::TextKind::Periodic;
        spec.n = parse_count(a.n);
        spec.alphabet_size = a.alphabet;
        spec.seed = parse_count(a.seed);
        spec.period = parse_count(a.period);
        text = repeats::generate_text(spec);
    }

    repeats::Options opts;
    if (!a.pivot_seed.empty()) opts.pivot_seed = parse_count(a.pivot_seed);
    out << fmt::transcript(repeats::count_repeats(*method, text, m, opts));
    return kExitOk;
}

std::string seconds_text(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", s);
    return buf;
}

int do_bench(const BenchArgs& a, std::ostream& out) {
    const auto task = bench::task_from_string(a.task);
    if (!task) throw UsageError("unknown task '" + a.task + "' (primes, repeats)");
    if (!(a.budget > 0)) throw UsageError("--budget must be positive");
    const bench::Grid grid{parse_count(a.n_start), a.n_factor, parse_count(a.n_max)};
    bench::SeriesOptions opts;
    opts.budget_seconds = a.budget;

    bench::BenchSeries all;
    for (const std::string& method : split_list(a.methods)) {
        bench::MethodSpec spec;
        spec.task = *task;
        spec.method = method;
        if (!a.m.empty()) spec.m = parse_count(a.m);
        if (*task == bench::Task::Repeats && !spec.m) throw UsageError("repeats bench needs --m");
        spec.segsize = parse_count(a.segsize);
        spec.threads = a.threads;
        spec.alphabet_size = a.alphabet;
        spec.seed = parse_count(a.seed);
        if (*task == bench::Task::Primes && !primes::method_from_string(method))
            throw UsageError("unknown primes method '" + method + "'");
        if (*task == bench::Task::Repeats && !repeats::method_from_string(method))
            throw UsageError("unknown repeats method '" + method + "'");

        const bench::BenchSeries series = bench::run_series(spec, grid, opts);
        const std::string name = series.records.empty() ? method : series.records.front().method;

        out << fmt::banner("Bench " + std::string(bench::task_name(*task)) + " " + name);
        char line[160];
        std::snprintf(line, sizeof line, "%18s  %-15s %14s  %22s  %9s\n", "n", "status", "seconds", "op_count",
                      "ratio");
        out << line;
        std::vector<bench::GrowthRow> rows;
        bool have_rows = false;
        try {
            rows = bench::growth_ratios(series, bench::Metric::OpCount);
            have_rows = true;
        } catch (const ParameterError&) {
        }
        for (const auto& r : series.records) {
            std::string ratio;
            if (have_rows) {
                for (const auto& g : rows) {
                    if (g.n == r.n && g.ratio_to_previous) {
                        char b[32];
                        std::snprintf(b, sizeof b, "x%.1f", *g.ratio_to_previous);
                        ratio = b;
                    }
                }
            }
            const std::string ops = r.op_count ? fmt::grouped(*r.op_count) : "-";
            std::snprintf(line, sizeof line, "%18s  %-15s %14s  %22s  %9s\n", fmt::grouped(r.n).c_str(),
                          std::string(bench::status_name(r.status)).c_str(), seconds_text(r.elapsed_seconds).c_str(),
                          ops.c_str(), ratio.c_str());
            out << line;
        }
        try {
            const auto model = bench::fit_power_law(series, bench::Metric::Time);
            std::snprintf(line, sizeof line, "time model: t = 10^%.4f * n^%.3f  (%d points, rms log10 residual %.3f)\n",
                          model.log10_coefficient, model.exponent, model.points_used, model.residual);
            out << line;
        } catch (const ParameterError&) {
            out << "time model: not enough completed runs\n";
        }
        out << '\n';
        all.records.insert(all.records.end(), series.records.begin(), series.records.end());
    }
    if (!a.csv.empty()) bench::emit_csv(all, std::filesystem::path(a.csv));
    return kExitOk;
}

int do_speedup(const SpeedupArgs& a, std::ostream& out) {
    std::vector<unsigned> workers;
    for (const auto& w : split_list(a.threads_list)) workers.push_back(to_unsigned(w, "thread count"));
    if (a.reps == 0) throw UsageError("--reps must be at least 1");
    const auto rows = primes::speedup_curve(parse_count(a.n), parse_count(a.segsize), workers, a.reps);
    bench::emit_csv(rows, out);
    if (!a.csv.empty()) bench::emit_csv(rows, std::filesystem::path(a.csv));
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Asymptotic growth demonstrations: prime counting and repeated substrings", "asymbench"};
    app.require_subcommand(1);

    PrimesArgs pa;
    auto* primes_cmd = app.add_subcommand("primes", "Count the primes below n");
    primes_cmd->add_option("--method", pa.method, "0..5 or parallel")->required();
    primes_cmd->add_option("--n", pa.n, "Limit (exclusive); accepts 1e12, 1_000_000")->required();
    primes_cmd->add_option("--segsize", pa.segsize, "Segment length for methods 5 and parallel")
        ->capture_default_str();
    primes_cmd->add_option("--threads", pa.threads, "Workers for the parallel sieve")->capture_default_str();
    primes_cmd->add_flag("--verbose", pa.verbose, "Per-segment heartbeat on stderr");

    RepeatsArgs ra;
    auto* repeats_cmd = app.add_subcommand("repeats", "Count repeated m-substrings");
    repeats_cmd->add_option("--method", ra.method, "0..3")->required();
    repeats_cmd->add_option("--m", ra.m, "Repeat length")->required();
    repeats_cmd->add_option("--input", ra.input, "Read text from a file");
    repeats_cmd->add_option("--max-bytes", ra.max_bytes, "Use only the first B bytes of --input");
    repeats_cmd->add_option("--text", ra.text, "Literal text");
    repeats_cmd->add_option("--random", ra.random_n, "Random text of N bytes");
    repeats_cmd->add_option("--alphabet", ra.alphabet, "Alphabet size for generated text")->capture_default_str();
    repeats_cmd->add_option("--seed", ra.seed, "Seed for generated text")->capture_default_str();
    repeats_cmd->add_option("--adversarial", ra.adversarial, "all-equal or periodic");
    repeats_cmd->add_option("--n", ra.n, "Length of --adversarial text");
    repeats_cmd->add_option("--period", ra.period, "Period of --adversarial periodic")->capture_default_str();
    repeats_cmd->add_option("--pivot-seed", ra.pivot_seed, "Pivot seed for method 3");

    BenchArgs ba;
    auto* bench_cmd = app.add_subcommand("bench", "Timed size series with growth ratios and extrapolation");
    bench_cmd->add_option("--task", ba.task, "primes or repeats")->required();
    bench_cmd->add_option("--methods", ba.methods, "Comma-separated methods, e.g. 0,1,2")->required();
    bench_cmd->add_option("--n-start", ba.n_start, "First size")->required();
    bench_cmd->add_option("--n-factor", ba.n_factor, "Size multiplier")->capture_default_str();
    bench_cmd->add_option("--n-max", ba.n_max, "Largest size")->required();
    bench_cmd->add_option("--m", ba.m, "Repeat length (repeats task)");
    bench_cmd->add_option("--budget", ba.budget, "Per-run time budget in seconds")->required();
    bench_cmd->add_option("--csv", ba.csv, "Write records as CSV");
    bench_cmd->add_option("--segsize", ba.segsize, "Segment length for sieves 5 and parallel")
        ->capture_default_str();
    bench_cmd->add_option("--threads", ba.threads, "Workers for the parallel sieve")->capture_default_str();
    bench_cmd->add_option("--alphabet", ba.alphabet, "Alphabet of the random texts")->capture_default_str();
    bench_cmd->add_option("--seed", ba.seed, "Seed of the random texts")->capture_default_str();

    SpeedupArgs sa;
    auto* speedup_cmd = app.add_subcommand("speedup", "Parallel sieve times against worker count");
    speedup_cmd->add_option("--n", sa.n, "Limit")->required();
    speedup_cmd->add_option("--segsize", sa.segsize, "Segment length")->capture_default_str();
    speedup_cmd->add_option("--threads-list", sa.threads_list, "Ascending list, e.g. 1,2,4,8")->required();
    speedup_cmd->add_option("--reps", sa.reps, "Runs averaged per row")->capture_default_str();
    speedup_cmd->add_option("--csv", sa.csv, "Write rows as CSV");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "asymbench: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (primes_cmd->parsed()) return do_primes(pa, out, err);
        if (repeats_cmd->parsed()) return do_repeats(ra, out);
        if (bench_cmd->parsed()) return do_bench(ba, out);
        if (speedup_cmd->parsed()) return do_speedup(sa, out);
    } catch (const UsageError& e) {
        err << "asymbench: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParameterError& e) {
        err << "asymbench: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "asymbench: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace asym::cli
