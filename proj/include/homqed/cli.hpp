// cli.hpp: command implementations behind the homsim front end.

#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "homqed/core.hpp"
#include "homqed/two_photon.hpp"

namespace homqed::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int numeric = 2;
inline constexpr int audit = 3;
}  // namespace exit_code

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct Settings {
    std::string geometry{"hom"};
    std::optional<double> gamma;
    std::optional<double> delay;
    std::optional<double> center;
    std::string range;  // "start:stop"
    int steps{0};       // 0: command default
    bool log{false};
    Format format{Format::csv};
    double tol{1e-11};  // relative tolerance of the adaptive quadrature
    std::string output;

    // sweep
    std::string variable{"gamma"};
    std::vector<std::string> outputs;

    // fig-blockade inset
    std::string inset_range{"0.3:5"};
    int inset_steps{24};

    // point
    bool oracle{true};
};

struct Range {
    double start{0.0};
    double stop{0.0};
    int count{2};
    bool log{false};

    std::vector<double> values() const;
};

/// Parses "start:stop". Throws UsageError on malformed text, count < 2,
/// start == stop, or a log range that is not strictly positive.
Range parse_range(const std::string& text, int count, bool log);

enum class SweepVariable { gamma, delay, center };

struct SweepSpec {
    SweepVariable variable{SweepVariable::gamma};
    Range range;
    Geometry geometry{Geometry::hom_split};
    double gamma{10.0};
    double delay{0.0};
    std::optional<double> center;  // unset: balanced (Γ) for HOM, 0 otherwise
    std::vector<std::string> outputs;
};

/// Rows of JSON scalars under named columns. CSV prints numbers with 9
/// significant digits.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;
};

struct Report {
    std::vector<Table> tables;
    nlohmann::json extra;  // JSON-only detail (audit summary)
    bool pass{true};       // audit outcome
};

std::string format_number(double x);
nlohmann::json number(double x);  // rounded to 9 significant digits

void write_csv(std::ostream& os, const Table& table);
nlohmann::json to_json(const Table& table);
std::string render(const Report& report, Format format);

/// Runs fn(i) for i in [0, n) on worker threads; results keep index order and
/// the first exception (by index) is rethrown.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& fn) {
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads =
        std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

/// Model parameters from the settings, with the geometry's default centre
/// (Γ for HOM, 0 otherwise). Throws UsageError on invalid values.
ModelParams settings_params(const Settings& s);
TwoPhotonOptions settings_options(const Settings& s);

Report cmd_point(const Settings& s);
Report cmd_fig_hom(const Settings& s);
Report cmd_fig_blockade(const Settings& s);
Report cmd_sweep(const Settings& s);
Report cmd_audit(const Settings& s);

SweepSpec sweep_spec(const Settings& s);
Table run_sweep(const SweepSpec& spec, const TwoPhotonOptions& options);

}  // namespace homqed::cli
