#pragma once

// Size-doubling (or tenfolding) experiments under a time budget: measure,
// fit t = c * n^k in log-log space, predict the next size, and skip runs the
// model says would blow the budget.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asym/common.hpp"
#include "asym/primes_parallel.hpp"
#include "asym/text.hpp"

namespace asym::bench {

enum class Task { Primes, Repeats };
enum class Status { Completed, AbortedBudget, Extrapolated };

std::string_view task_name(Task t) noexcept;
std::string_view status_name(Status s) noexcept;  // "completed", "aborted_budget", "extrapolated"
std::optional<Task> task_from_string(std::string_view s) noexcept;
std::optional<Status> status_from_string(std::string_view s) noexcept;

struct PowerLawModel {
    double exponent = 0.0;           // k
    double log10_coefficient = 0.0;  // log10 c
    int points_used = 0;
    double residual = 0.0;  // RMS of log10 residuals

    bool operator==(const PowerLawModel&) const = default;
};

/// c * n^k.
double extrapolate(const PowerLawModel& model, double n);

struct Point {
    double n;
    double value;
};

/// Least-squares line through (log10 n, log10 value). Points with n <= 0 or
/// value <= 0 are ignored; throws ParameterError if fewer than two remain
/// or all usable points share one n.
PowerLawModel fit_power_law(std::span<const Point> points);

/// Linear model through a single observation. Every method here touches each
/// of its n inputs at least once, so the prediction is a lower bound.
PowerLawModel linear_lower_bound(const Point& observed);

struct BenchRecord {
    Task task = Task::Primes;
    std::string method;
    std::uint64_t n = 0;
    std::optional<std::uint64_t> m;
    double elapsed_seconds = 0.0;
    std::optional<std::uint64_t> op_count;  // absent unless completed
    Status status = Status::Completed;
    std::optional<PowerLawModel> model;  // extrapolated records only
    unsigned repetitions = 1;
};

struct BenchSeries {
    std::vector<BenchRecord> records;
};

enum class Metric { OpCount, Time };

struct GrowthRow {
    std::uint64_t n = 0;
    double value = 0.0;
    std::optional<double> ratio_to_previous;
};

/// Completed records only. Throws ParameterError if there are none or if the
/// sizes are not a constant-factor progression.
std::vector<GrowthRow> growth_ratios(const BenchSeries& series, Metric metric = Metric::OpCount);

/// Fit over the completed records of a series.
PowerLawModel fit_power_law(const BenchSeries& series, Metric metric = Metric::Time);

/// Result of running one size once; the runner must honour the Cancellation.
struct Measurement {
    double elapsed_seconds = 0.0;
    std::uint64_t op_count = 0;
};
using Runner = std::function<Measurement(std::uint64_t n, const Cancellation& cancel)>;

struct Grid {
    std::uint64_t n_start = 1;
    double n_factor = 10.0;
    std::uint64_t n_max = 1;
};

/// n_start, n_start*f, n_start*f^2, ... <= n_max (rounded to integers).
std::vector<std::uint64_t> grid_sizes(const Grid& grid);

inline constexpr double kMinTimedSeconds = 0.1;
inline constexpr double kAbortFactor = 3.0;

struct SeriesOptions {
    double budget_seconds = 10.0;
    double min_timed_seconds = kMinTimedSeconds;  // repeat short runs until this much time is spent
};

/// Generic driver. Before each size, a model of the observations so far
/// (completed plus aborted runs) predicts the elapsed time; sizes predicted
/// over budget are recorded as extrapolated. Runs past kAbortFactor x budget
/// are cancelled and recorded as aborted_budget.
BenchSeries run_series(Task task, std::string method, std::optional<std::uint64_t> m, const Grid& grid,
                       const SeriesOptions& opts, const Runner& runner);

struct MethodSpec {
    Task task = Task::Primes;
    std::string method;  // "0".."5", "parallel" for primes; "0".."3" for repeats
    std::optional<std::uint64_t> m;
    std::uint64_t segsize = primes::kDefaultSegsize;
    unsigned threads = 1;
    unsigned alphabet_size = 256;  // repeats: random text per size
    std::uint64_t seed = 1;
};

/// Builds the runner for a library method. Throws ParameterError for unknown methods.
Runner make_runner(const MethodSpec& spec);

/// Convenience: make_runner + run_series. Record method names are canonical ("M0", "R2", ...).
BenchSeries run_series(const MethodSpec& spec, const Grid& grid, const SeriesOptions& opts);

// CSV: header task,method,n,m,elapsed_seconds,op_count,status
void emit_csv(const BenchSeries& series, std::ostream& out);
void emit_csv(const BenchSeries& series, const std::filesystem::path& path);
void emit_csv(const std::vector<GrowthRow>& table, std::ostream& out);
void emit_csv(const std::vector<primes::SpeedupRow>& rows, std::ostream& out);
void emit_csv(const std::vector<primes::SpeedupRow>& rows, const std::filesystem::path& path);

/// Inverse of emit_csv(series). Throws ParameterError on malformed rows.
BenchSeries parse_csv(std::istream& in);

}  // namespace asym::bench
