#include "asym/harness.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

#include "asym/primes.hpp"
#include "asym/repeats.hpp"

namespace asym::bench {

std::string_view task_name(Task t) noexcept { return t == Task::Primes ? "primes" : "repeats"; }

std::string_view status_name(Status s) noexcept {
    switch (s) {
        case Status::Completed: return "completed";
        case Status::AbortedBudget: return "aborted_budget";
        case Status::Extrapolated: return "extrapolated";
    }
    return "?";
}

std::optional<Task> task_from_string(std::string_view s) noexcept {
    if (s == "primes") return Task::Primes;
    if (s == "repeats") return Task::Repeats;
    return std::nullopt;
}

std::optional<Status> status_from_string(std::string_view s) noexcept {
    for (Status st : {Status::Completed, Status::AbortedBudget, Status::Extrapolated}) {
        if (s == status_name(st)) return st;
    }
    return std::nullopt;
}

double extrapolate(const PowerLawModel& model, double n) {
    return std::pow(10.0, model.log10_coefficient + model.exponent * std::log10(n));
}

PowerLawModel fit_power_law(std::span<const Point> points) {
    std::vector<std::pair<double, double>> xy;
    for (const Point& p : points) {
        if (p.n > 0 && p.value > 0) xy.emplace_back(std::log10(p.n), std::log10(p.value));
    }
    if (xy.size() < 2) throw ParameterError("power-law fit needs at least two points with positive values");

    const double count = static_cast<double>(xy.size());
    double mx = 0, my = 0;
    for (auto [x, y] : xy) {
        mx += x;
        my += y;
    }
    mx /= count;
    my /= count;
    double sxx = 0, sxy = 0;
    for (auto [x, y] : xy) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0) throw ParameterError("power-law fit needs at least two distinct sizes");

    PowerLawModel model;
    model.exponent = sxy / sxx;
    model.log10_coefficient = my - model.exponent * mx;
    model.points_used = static_cast<int>(xy.size());
    double ss = 0;
    for (auto [x, y] : xy) {
        const double e = y - (model.log10_coefficient + model.exponent * x);
        ss += e * e;
    }
    model.residual = std::sqrt(ss / count);
    return model;
}

PowerLawModel linear_lower_bound(const Point& observed) {
    PowerLawModel model;
    model.exponent = 1.0;
    model.log10_coefficient = std::log10(observed.value) - std::log10(observed.n);
    model.points_used = 1;
    return model;
}

namespace {

double metric_value(const BenchRecord& r, Metric metric) {
    return metric == Metric::OpCount ? static_cast<double>(r.op_count.value_or(0)) : r.elapsed_seconds;
}

std::vector<const BenchRecord*> completed(const BenchSeries& series) {
    std::vector<const BenchRecord*> out;
    for (const auto& r : series.records) {
        if (r.status == Status::Completed) out.push_back(&r);
    }
    return out;
}

}  // namespace

std::vector<GrowthRow> growth_ratios(const BenchSeries& series, Metric metric) {
    const auto done = completed(series);
    if (done.empty()) throw ParameterError("growth ratios need at least one completed record");

    if (done.size() >= 3) {
        const double step = static_cast<double>(done[1]->n) / static_cast<double>(done[0]->n);
        for (std::size_t i = 2; i < done.size(); ++i) {
            const double r = static_cast<double>(done[i]->n) / static_cast<double>(done[i - 1]->n);
            if (std::abs(r - step) > 1e-6 * step)
                throw ParameterError("growth ratios need sizes in a constant-factor progression");
        }
    }

    std::vector<GrowthRow> rows;
    for (std::size_t i = 0; i < done.size(); ++i) {
        GrowthRow row;
        row.n = done[i]->n;
        row.value = metric_value(*done[i], metric);
        if (i > 0) {
            if (done[i]->n <= done[i - 1]->n) throw ParameterError("growth ratios need ascending sizes");
            row.ratio_to_previous = row.value / rows.back().value;
        }
        rows.push_back(row);
    }
    return rows;
}

PowerLawModel fit_power_law(const BenchSeries& series, Metric metric) {
    std::vector<Point> pts;
    for (const BenchRecord* r : completed(series)) {
        pts.push_back({static_cast<double>(r->n), metric_value(*r, metric)});
    }
    return fit_power_law(pts);
}

std::vector<std::uint64_t> grid_sizes(const Grid& grid) {
    if (grid.n_start < 1) throw ParameterError("n_start must be at least 1");
    if (!(grid.n_factor > 1.0)) throw ParameterError("n_factor must be greater than 1");
    if (grid.n_max < grid.n_start) throw ParameterError("n_max must be at least n_start");
    std::vector<std::uint64_t> sizes;
    for (int k = 0;; ++k) {
        const double v = static_cast<double>(grid.n_start) * std::pow(grid.n_factor, k);
        if (v > static_cast<double>(grid.n_max) * (1 + 1e-12)) break;
        const auto n = static_cast<std::uint64_t>(std::llround(v));
        if (sizes.empty() || n > sizes.back()) sizes.push_back(n);
    }
    return sizes;
}

BenchSeries run_series(Task task, std::string method, std::optional<std::uint64_t> m, const Grid& grid,
                       const SeriesOptions& opts, const Runner& runner) {
    if (!(opts.budget_seconds > 0)) throw ParameterError("budget must be positive");
    const auto sizes = grid_sizes(grid);

    BenchSeries series;
    std::vector<Point> observed;  // completed and aborted runs; aborted times are lower bounds

    auto current_model = [&]() -> std::optional<PowerLawModel> {
        if (observed.size() >= 2) return fit_power_law(observed);
        if (observed.size() == 1 && observed[0].value > 0) return linear_lower_bound(observed[0]);
        return std::nullopt;
    };

    for (std::uint64_t n : sizes) {
        BenchRecord rec;
        rec.task = task;
        rec.method = method;
        rec.n = n;
        rec.m = m;

        if (auto model = current_model()) {
            const double predicted = extrapolate(*model, static_cast<double>(n));
            if (predicted > opts.budget_seconds) {
                rec.status = Status::Extrapolated;
                rec.elapsed_seconds = predicted;
                rec.model = model;
                series.records.push_back(std::move(rec));
                continue;
            }
        }

        const double ceiling = kAbortFactor * opts.budget_seconds;
        const Cancellation cancel = Cancellation::after(ceiling);
        Stopwatch sw;
        Measurement first;
        try {
            first = runner(n, cancel);
        } catch (const Cancelled&) {
            rec.status = Status::AbortedBudget;
            rec.elapsed_seconds = sw.seconds();
            observed.push_back({static_cast<double>(n), rec.elapsed_seconds});
            series.records.push_back(std::move(rec));
            continue;
        }
        if (first.elapsed_seconds > ceiling) {
            rec.status = Status::AbortedBudget;
            rec.elapsed_seconds = first.elapsed_seconds;
            observed.push_back({static_cast<double>(n), rec.elapsed_seconds});
            series.records.push_back(std::move(rec));
            continue;
        }

        double total = first.elapsed_seconds;
        unsigned reps = 1;
        while (total < opts.min_timed_seconds && !cancel.expired()) {
            try {
                total += runner(n, cancel).elapsed_seconds;
                ++reps;
            } catch (const Cancelled&) {
                break;
            }
        }
        rec.status = Status::Completed;
        rec.elapsed_seconds = total / reps;
        rec.repetitions = reps;
        rec.op_count = first.op_count;
        observed.push_back({static_cast<double>(n), rec.elapsed_seconds});
        series.records.push_back(std::move(rec));
    }
    return series;
}

Runner make_runner(const MethodSpec& spec) {
    if (spec.task == Task::Primes) {
        const auto method = primes::method_from_string(spec.method);
        if (!method) throw ParameterError("unknown primes method '" + spec.method + "'");
        return [method = *method, spec](std::uint64_t n, const Cancellation& cancel) {
            primes::Options opts;
            opts.cancel = cancel;
            primes::PrimesReport r;
            switch (method) {
                case primes::Method::M0: r = primes::count_m0(n, opts); break;
                case primes::Method::M1: r = primes::count_m1(n, opts); break;
                case primes::Method::M2: r = primes::count_m2(n, opts); break;
                case primes::Method::M3: r = primes::count_m3(n, opts); break;
                case primes::Method::M4: r = primes::count_m4(n, opts); break;
                case primes::Method::M5: r = primes::count_m5({n, spec.segsize}, opts); break;
                case primes::Method::Parallel:
                    r = primes::count_parallel({n, spec.segsize, spec.threads}, opts);
                    break;
            }
            return Measurement{r.elapsed_seconds, r.op_count()};
        };
    }

    const auto method = repeats::method_from_string(spec.method);
    if (!method) throw ParameterError("unknown repeats method '" + spec.method + "'");
    if (!spec.m) throw ParameterError("repeats series need a repeat length m");
    // Text generation is outside the timed region and reused across repetitions.
    auto cache = std::make_shared<std::optional<repeats::Text>>();
    return [method = *method, spec, cache](std::uint64_t n, const Cancellation& cancel) {
        if (!*cache || (*cache)->size() != n) {
            *cache = repeats::generate_text({repeats::TextKind::Random, n, spec.alphabet_size, spec.seed});
        }
        repeats::Options opts;
        opts.cancel = cancel;
        const auto r = repeats::count_repeats(method, **cache, *spec.m, opts);
        return Measurement{r.elapsed_seconds, r.char_cmps};
    };
}

BenchSeries run_series(const MethodSpec& spec, const Grid& grid, const SeriesOptions& opts) {
    std::string name;
    if (spec.task == Task::Primes) {
        const auto m = primes::method_from_string(spec.method);
        if (!m) throw ParameterError("unknown primes method '" + spec.method + "'");
        name = primes::method_name(*m);
    } else {
        const auto m = repeats::method_from_string(spec.method);
        if (!m) throw ParameterError("unknown repeats method '" + spec.method + "'");
        name = repeats::method_name(*m);
    }
    return run_series(spec.task, std::move(name), spec.task == Task::Repeats ? spec.m : std::nullopt, grid, opts,
                      make_runner(spec));
}

// ---------------------------------------------------------------- CSV

namespace {

std::string shortest(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write to " + path.string() + " failed");
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

template <typename T>
T parse_field(const std::string& s, int line) {
    T v{};
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size())
        throw ParameterError("csv line " + std::to_string(line) + ": bad number '" + s + "'");
    return v;
}

constexpr std::string_view kHeader = "task,method,n,m,elapsed_seconds,op_count,status";

}  // namespace

void emit_csv(const BenchSeries& series, std::ostream& out) {
    out << kHeader << '\n';
    for (const auto& r : series.records) {
        out << task_name(r.task) << ',' << r.method << ',' << r.n << ',';
        if (r.m) out << *r.m;
        out << ',' << shortest(r.elapsed_seconds) << ',';
        if (r.op_count) out << *r.op_count;
        out << ',' << status_name(r.status) << '\n';
    }
}

void emit_csv(const BenchSeries& series, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    emit_csv(series, out);
    finish(out, path);
}

void emit_csv(const std::vector<GrowthRow>& table, std::ostream& out) {
    out << "n,value,ratio_to_previous\n";
    for (const auto& row : table) {
        out << row.n << ',' << shortest(row.value) << ',';
        if (row.ratio_to_previous) out << shortest(*row.ratio_to_previous);
        out << '\n';
    }
}

void emit_csv(const std::vector<primes::SpeedupRow>& rows, std::ostream& out) {
    out << "workers,elapsed_seconds,nprimes\n";
    for (const auto& row : rows) {
        out << row.workers << ',' << shortest(row.elapsed_seconds) << ',' << row.nprimes << '\n';
    }
}

void emit_csv(const std::vector<primes::SpeedupRow>& rows, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    emit_csv(rows, out);
    finish(out, path);
}

BenchSeries parse_csv(std::istream& in) {
    BenchSeries series;
    std::string line;
    if (!std::getline(in, line) || split(line) != split(std::string(kHeader)))
        throw ParameterError("csv: missing or unexpected header");
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto f = split(line);
        if (f.size() != 7) throw ParameterError("csv line " + std::to_string(lineno) + ": expected 7 fields");
        BenchRecord r;
        const auto task = task_from_string(f[0]);
        const auto status = status_from_string(f[6]);
        if (!task || !status) throw ParameterError("csv line " + std::to_string(lineno) + ": bad task or status");
        r.task = *task;
        r.method = f[1];
        r.n = parse_field<std::uint64_t>(f[2], lineno);
        if (!f[3].empty()) r.m = parse_field<std::uint64_t>(f[3], lineno);
        r.elapsed_seconds = parse_field<double>(f[4], lineno);
        if (!f[5].empty()) r.op_count = parse_field<std::uint64_t>(f[5], lineno);
        r.status = *status;
        series.records.push_back(std::move(r));
    }
    return series;
}

}  // namespace asym::bench
