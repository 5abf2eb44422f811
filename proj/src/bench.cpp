#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "utvpi/driver.hpp"

namespace utvpi {

namespace {

std::string format_double(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

double parse_double(std::string_view s) {
    double v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) {
        throw std::runtime_error("csv: bad number '" + std::string(s) + "'");
    }
    return v;
}

std::size_t parse_size(std::string_view s) {
    std::size_t v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) {
        throw std::runtime_error("csv: bad integer '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    while (true) {
        const auto pos = line.find(sep);
        out.push_back(line.substr(0, pos));
        if (pos == std::string_view::npos) {
            return out;
        }
        line.remove_prefix(pos + 1);
    }
}

struct Samples {
    std::vector<double> ms;

    [[nodiscard]] double mean() const {
        double sum = 0;
        for (double v : ms) {
            sum += v;
        }
        return ms.empty() ? 0 : sum / static_cast<double>(ms.size());
    }
    [[nodiscard]] double stddev() const {
        if (ms.size() < 2) {
            return 0;
        }
        const double mu = mean();
        double acc = 0;
        for (double v : ms) {
            acc += (v - mu) * (v - mu);
        }
        return std::sqrt(acc / static_cast<double>(ms.size() - 1));
    }
};

constexpr const char* kCsvHeader = "class,n,m,mode,verdict,mean_ms,stddev_ms";

} // namespace

std::vector<BenchClass> parse_bench_config(std::istream& in) {
    std::vector<BenchClass> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        BenchClass c;
        if (!(fields >> c.name)) {
            continue;
        }
        if (!(fields >> c.n >> c.m)) {
            throw ParseError(line_no, "bench config: expected 'name n m [seed]'");
        }
        if (!(fields >> c.seed)) {
            c.seed = 1;
        }
        out.push_back(c);
    }
    return out;
}

BenchReport run_bench(std::span<const BenchClass> classes, std::span<const Mode> modes, std::size_t reps) {
    BenchReport report;
    if (reps == 0 || classes.empty() || modes.empty()) {
        return report;
    }

    {
        const auto& c = classes.front();
        const auto warmup = generate({c.n, c.m, c.seed});
        for (Mode mode : modes) {
            (void)run_check(warmup, mode);
        }
    }

    for (const BenchClass& c : classes) {
        // (mode index, verdict) -> samples; verdict "all" aggregates.
        std::map<std::pair<std::size_t, std::string>, Samples> samples;
        for (std::size_t r = 0; r < reps; ++r) {
            const auto instance = generate({c.n, c.m, c.seed + r});
            std::optional<RunReport> reference;
            for (std::size_t k = 0; k < modes.size(); ++k) {
                const RunReport run = run_check(instance, modes[k]);
                if (reference && (run.verdict != reference->verdict || run.failing_step != reference->failing_step)) {
                    throw std::runtime_error("bench: modes disagree on class " + c.name + " seed " +
                                             std::to_string(c.seed + r) + ": " + reference->summary() + " vs " +
                                             run.summary());
                }
                reference = run;
                samples[{k, to_string(run.verdict)}].ms.push_back(run.total_ms);
                samples[{k, "all"}].ms.push_back(run.total_ms);
            }
        }
        for (std::size_t k = 0; k < modes.size(); ++k) {
            for (const char* verdict : {"SAT", "UNSAT-Z", "UNSAT-Q", "all"}) {
                auto it = samples.find({k, verdict});
                if (it == samples.end()) {
                    continue;
                }
                report.rows.push_back({c.name, c.n, c.m, modes[k], verdict, it->second.mean(), it->second.stddev()});
            }
        }
    }
    return report;
}

void write_csv(std::ostream& os, const BenchReport& r) {
    os << kCsvHeader << '\n';
    for (const auto& row : r.rows) {
        os << row.klass << ',' << row.n << ',' << row.m << ',' << to_string(row.mode) << ',' << row.verdict << ','
           << format_double(row.mean_ms) << ',' << format_double(row.stddev_ms) << '\n';
    }
}

BenchReport read_csv(std::istream& is) {
    BenchReport r;
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) {
        throw std::runtime_error("csv: missing header");
    }
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 7) {
            throw std::runtime_error("csv: expected 7 columns");
        }
        const auto mode = parse_mode(f[3]);
        if (!mode) {
            throw std::runtime_error("csv: unknown mode '" + std::string(f[3]) + "'");
        }
        r.rows.push_back({std::string(f[0]), parse_size(f[1]), parse_size(f[2]), *mode, std::string(f[4]),
                          parse_double(f[5]), parse_double(f[6])});
    }
    return r;
}

void write_table(std::ostream& os, const BenchReport& r) {
    os << std::left << std::setw(12) << "class" << std::setw(7) << "n" << std::setw(8) << "m" << std::setw(10)
       << "mode" << std::setw(9) << "verdict" << std::right << std::setw(12) << "mean_ms" << std::setw(12)
       << "stddev_ms" << '\n';
    for (const auto& row : r.rows) {
        os << std::left << std::setw(12) << row.klass << std::setw(7) << row.n << std::setw(8) << row.m
           << std::setw(10) << to_string(row.mode) << std::setw(9) << row.verdict << std::right << std::fixed
           << std::setprecision(3) << std::setw(12) << row.mean_ms << std::setw(12) << row.stddev_ms << '\n';
        os.unsetf(std::ios::fixed);
    }
}

} // namespace utvpi
