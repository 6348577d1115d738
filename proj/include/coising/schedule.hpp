#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "coising/errors.hpp"

namespace coising {

/// Default inverse temperature. In tabulated (GHz) mode this is h/(k_B T) per
/// GHz at T = 12 mK; the dimensionless linear schedule adopts the same value.
inline constexpr double kDefaultBeta = 4.0;

/// Anneal envelope A(s), B(s): either the dimensionless linear ramp or an
/// interpolated vendor table in energy units.
class Schedule {
  public:
    enum class Kind { linear_dimensionless, tabulated };

    struct Row {
        double s, a, b;
    };

    static Schedule linear(double beta = kDefaultBeta) {
        Schedule sched;
        sched.kind_ = Kind::linear_dimensionless;
        sched.beta_ = beta;
        return sched;
    }

    static Schedule tabulated(std::vector<Row> rows, double beta = kDefaultBeta) {
        Schedule sched;
        sched.kind_ = Kind::tabulated;
        sched.beta_ = beta;
        sched.table_ = std::move(rows);
        if (sched.table_.size() < 2) throw parse_error("schedule: table needs at least two rows");
        for (std::size_t i = 0; i < sched.table_.size(); ++i) {
            const auto& row = sched.table_[i];
            if (row.s < 0.0 || row.s > 1.0) throw parse_error("schedule: s out of [0,1]");
            if (row.a < 0.0 || row.b < 0.0) throw parse_error("schedule: negative A or B");
            if (i > 0) {
                const auto& prev = sched.table_[i - 1];
                if (row.s <= prev.s) throw parse_error("schedule: s values must be strictly increasing");
                if (row.a > prev.a + 1e-12) throw parse_error("schedule: A(s) must be non-increasing");
                if (row.b + 1e-12 < prev.b) throw parse_error("schedule: B(s) must be non-decreasing");
            }
        }
        return sched;
    }

    Kind kind() const { return kind_; }
    double beta() const { return beta_; }
    void set_beta(double beta) { beta_ = beta; }
    const std::vector<Row>& table() const { return table_; }

    double A(double s) const { return kind_ == Kind::linear_dimensionless ? 1.0 - clamp_s(s) : interp(s).first; }
    double B(double s) const { return kind_ == Kind::linear_dimensionless ? clamp_s(s) : interp(s).second; }

  private:
    static double clamp_s(double s) {
        if (s < 0.0 || s > 1.0) throw std::invalid_argument("schedule: s must lie in [0,1]");
        return s;
    }

    std::pair<double, double> interp(double s) const {
        if (s < table_.front().s || s > table_.back().s)
            throw std::invalid_argument("schedule: s=" + std::to_string(s) +
                                        " outside tabulated range, no extrapolation");
        auto hi = std::lower_bound(table_.begin(), table_.end(), s,
                                   [](const Row& row, double val) { return row.s < val; });
        if (hi == table_.begin()) return {hi->a, hi->b};
        auto lo = hi - 1;
        if (hi == table_.end()) return {lo->a, lo->b};
        const double t = (s - lo->s) / (hi->s - lo->s);
        return {lo->a + t * (hi->a - lo->a), lo->b + t * (hi->b - lo->b)};
    }

    Kind kind_ = Kind::linear_dimensionless;
    double beta_ = kDefaultBeta;
    std::vector<Row> table_;
};

inline Schedule default_schedule() { return Schedule::linear(); }

/// CSV with header "s,A,B"; linear interpolation between rows.
inline Schedule load_schedule(const std::string& csv, double beta = kDefaultBeta) {
    std::istringstream in(csv);
    std::string line;
    bool saw_header = false;
    std::vector<Schedule::Row> rows;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            std::string squashed;
            for (char c : line)
                if (!std::isspace((unsigned char)c)) squashed += (char)std::tolower((unsigned char)c);
            if (squashed != "s,a,b")
                throw parse_error("schedule line " + std::to_string(lineno) + ": expected header s,A,B");
            saw_header = true;
            continue;
        }
        std::istringstream fields(line);
        std::string cell;
        double vals[3];
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(fields, cell, ','))
                throw parse_error("schedule line " + std::to_string(lineno) + ": expected s,A,B row");
            try {
                vals[i] = std::stod(cell);
            } catch (const std::exception&) {
                throw parse_error("schedule line " + std::to_string(lineno) + ": malformed number \"" + cell + "\"");
            }
        }
        rows.push_back({vals[0], vals[1], vals[2]});
    }
    if (!saw_header) throw parse_error("schedule: empty document");
    return Schedule::tabulated(std::move(rows), beta);
}

} // namespace coising
