#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coising/errors.hpp"
#include "coising/graph.hpp"
#include "coising/instance.hpp"
#include "coising/observables.hpp"
#include "coising/parallel.hpp"
#include "coising/rng.hpp"
#include "coising/schedule.hpp"
#include "coising/stochastic.hpp"
#include "coising/thermal.hpp"

namespace coising {

/// 95% normal quantile used to form and invert confidence intervals.
inline constexpr double kZ95 = 1.959963984540054;

/// Verdict separation threshold: |Δmean| must exceed this many combined
/// standard errors at the best grid point.
inline constexpr double kSeparationThreshold = 5.0;

/// J_ij -> a_i a_j J_ij, h_i -> a_i h_i. An involution; the spectrum is
/// unchanged and samples de-gauge by flipping the same spins back.
inline IsingInstance gauge_transform(const IsingInstance& inst, const std::vector<int>& signs) {
    if ((int)signs.size() != inst.n) throw std::invalid_argument("gauge_transform: need one sign per spin");
    for (int a : signs)
        if (a != 1 && a != -1) throw std::invalid_argument("gauge_transform: signs must be +1 or -1");
    IsingInstance out = inst;
    for (auto& [i, j, jij] : out.couplings) jij *= (double)(signs[(std::size_t)i - 1] * signs[(std::size_t)j - 1]);
    for (int i = 0; i < inst.n; ++i) out.fields[(std::size_t)i] *= (double)signs[(std::size_t)i];
    return out;
}

enum class SweepMethod { dense, stochastic, sampled };

inline const char* sweep_method_name(SweepMethod m) {
    switch (m) {
        case SweepMethod::dense: return "dense";
        case SweepMethod::stochastic: return "stochastic";
        case SweepMethod::sampled: return "sampled";
    }
    return "?";
}

/// Gauge-sampled estimation settings for the device-protocol mimic.
struct MimicConfig {
    int num_gauges = 200;
    int anneals_per_gauge = 1000;
    int bootstrap_resamples = 1000;
    double confidence = 0.95;
    std::uint64_t seed = 0;

    void validate() const {
        if (num_gauges < 1 || anneals_per_gauge < 1 || bootstrap_resamples < 1)
            throw std::invalid_argument("mimic config: counts must be positive");
        if (confidence <= 0.0 || confidence >= 1.0)
            throw std::invalid_argument("mimic config: confidence must lie in (0,1)");
    }
};

struct SweepConfig {
    std::vector<double> s_grid = default_grid();
    double beta = kDefaultBeta;
    Schedule schedule = default_schedule();
    SweepMethod method = SweepMethod::dense;
    std::uint64_t seed = 0;
    StochasticParams stochastic;
    MimicConfig mimic;

    /// s_p ∈ {0.1..0.9} plus the endpoint invariant checks.
    static std::vector<double> default_grid() {
        std::vector<double> grid{0.0};
        for (int i = 1; i <= 9; ++i) grid.push_back(0.1 * i);
        grid.push_back(1.0);
        return grid;
    }

    /// The paper protocol pauses only at interior points.
    static std::vector<double> paper_grid() {
        std::vector<double> grid;
        for (int i = 1; i <= 9; ++i) grid.push_back(0.1 * i);
        return grid;
    }

    Schedule schedule_with_beta() const {
        Schedule s = schedule;
        s.set_beta(beta);
        return s;
    }

    void validate() const {
        if (s_grid.empty()) throw std::invalid_argument("sweep config: empty s grid");
        for (double s : s_grid)
            if (s < 0.0 || s > 1.0) throw std::invalid_argument("sweep config: s values must lie in [0,1]");
    }
};

struct CurvePoint {
    double s = 0.0;
    double mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct ObservableCurve {
    std::string graph_name;
    std::string observable_name;
    std::vector<CurvePoint> points; // sorted by s
    std::optional<int> embedding_id;
};

struct BootstrapSummary {
    double mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

/// Percentile bootstrap over per-gauge means. Deterministic for a fixed seed.
inline BootstrapSummary bootstrap_ci(const std::vector<double>& values, int resamples, double confidence,
                                     std::uint64_t seed) {
    if (values.size() < 2) throw std::invalid_argument("bootstrap_ci: need at least two values");
    if (confidence <= 0.0 || confidence >= 1.0) throw std::invalid_argument("bootstrap_ci: confidence in (0,1)");
    BootstrapSummary out;
    for (double v : values) out.mean += v;
    out.mean /= (double)values.size();

    Rng rng(seed);
    std::vector<double> means((std::size_t)resamples);
    for (auto& m : means) {
        double acc = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) acc += values[(std::size_t)rng.below(values.size())];
        m = acc / (double)values.size();
    }
    std::sort(means.begin(), means.end());
    auto quantile = [&](double p) {
        const double h = p * (double)(means.size() - 1);
        const std::size_t lo = (std::size_t)h;
        const std::size_t hi = std::min(lo + 1, means.size() - 1);
        const double frac = h - (double)lo;
        return means[lo] + frac * (means[hi] - means[lo]);
    };
    out.ci_low = quantile(0.5 * (1.0 - confidence));
    out.ci_high = quantile(1.0 - 0.5 * (1.0 - confidence));
    return out;
}

/// One gauge round: transform, thermalize, draw anneals, de-gauge, estimate.
/// The gauged Gibbs diagonal is the base diagonal with gauge-flipped indices
/// (conjugation by σ_x on every flipped spin), so the base thermal state is
/// computed once and reused across gauges.
inline std::vector<ObservableSet> mimic_run(const Graph& g, double s_p, const MimicConfig& mcfg,
                                            const SweepConfig& scfg) {
    mcfg.validate();
    if (g.n() > kDenseCap)
        throw resource_error("mimic_run: n=" + std::to_string(g.n()) +
                             " above the exact-sampling cap; use a stochastic sweep instead");
    const auto sched = scfg.schedule_with_beta();
    const auto base = thermal_dense(IsingInstance::from_graph(g), s_p, sched);
    const auto& p = base.diagonal;
    const std::uint64_t dim = (std::uint64_t)p.size();

    std::vector<ObservableSet> rows((std::size_t)mcfg.num_gauges);
    parallel_for((std::size_t)mcfg.num_gauges, [&](std::size_t gauge) {
        Rng rng(sub_seed(mcfg.seed, gauge));
        std::uint64_t flip_mask = 0;
        for (int i = 0; i < g.n(); ++i)
            if (rng.sign() < 0) flip_mask |= (1ull << i);

        // Gauged distribution and its sampling CDF.
        std::vector<double> cdf(dim + 1, 0.0);
        for (std::uint64_t z = 0; z < dim; ++z) cdf[z + 1] = cdf[z] + p[z ^ flip_mask];
        const double total = cdf[dim];

        std::vector<double> counts(dim, 0.0);
        for (int a = 0; a < mcfg.anneals_per_gauge; ++a) {
            const double u = rng.real01() * total;
            const std::uint64_t drawn =
                (std::uint64_t)(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin()) - 1;
            const std::uint64_t gauged = std::min<std::uint64_t>(drawn, dim - 1);
            counts[gauged ^ flip_mask] += 1.0; // de-gauge: flip the same spins back
        }
        for (auto& c : counts) c /= (double)mcfg.anneals_per_gauge;
        rows[gauge] = observables_from_correlations(correlations_from_diagonal(counts, g.n()), g);
    });
    return rows;
}

/// Thermal-average curves for all four observables over the s grid.
inline std::vector<ObservableCurve> sweep(const std::string& graph_name, const Graph& g,
                                          const SweepConfig& cfg) {
    cfg.validate();
    const auto sched = cfg.schedule_with_beta();
    std::vector<std::array<CurvePoint, 4>> grid_points(cfg.s_grid.size());

    for (std::size_t gi = 0; gi < cfg.s_grid.size(); ++gi) {
        const double s = cfg.s_grid[gi];
        std::array<CurvePoint, 4> pts;
        switch (cfg.method) {
            case SweepMethod::dense: {
                const auto dense = thermal_dense(IsingInstance::from_graph(g), s, sched);
                for (int k = 0; k < 4; ++k) {
                    const double v = dense.observables.value(k);
                    pts[(std::size_t)k] = {s, v, v, v};
                }
                break;
            }
            case SweepMethod::stochastic: {
                StochasticParams params = cfg.stochastic;
                params.seed = sub_seed(cfg.seed, gi);
                const auto est = thermal_stochastic(IsingInstance::from_graph(g), s, sched, params);
                for (int k = 0; k < 4; ++k) {
                    const double v = est.observables.value(k);
                    const double half = kZ95 * est.observables.error(k);
                    pts[(std::size_t)k] = {s, v, v - half, v + half};
                }
                break;
            }
            case SweepMethod::sampled: {
                MimicConfig mcfg = cfg.mimic;
                mcfg.seed = sub_seed(cfg.seed, gi);
                const auto rows = mimic_run(g, s, mcfg, cfg);
                for (int k = 0; k < 4; ++k) {
                    std::vector<double> vals;
                    vals.reserve(rows.size());
                    for (const auto& row : rows) vals.push_back(row.value(k));
                    const auto boot = bootstrap_ci(vals, mcfg.bootstrap_resamples, mcfg.confidence,
                                                   sub_seed(mcfg.seed, 1000003ull + (std::uint64_t)k));
                    pts[(std::size_t)k] = {s, boot.mean, boot.ci_low, boot.ci_high};
                }
                break;
            }
        }
        grid_points[gi] = pts;
    }

    std::vector<ObservableCurve> curves(4);
    for (int k = 0; k < 4; ++k) {
        curves[(std::size_t)k].graph_name = graph_name;
        curves[(std::size_t)k].observable_name = kObservableNames[k];
        for (const auto& pts : grid_points) curves[(std::size_t)k].points.push_back(pts[(std::size_t)k]);
        std::sort(curves[(std::size_t)k].points.begin(), curves[(std::size_t)k].points.end(),
                  [](const CurvePoint& a, const CurvePoint& b) { return a.s < b.s; });
    }
    return curves;
}

/// Pointwise difference with quadrature-combined uncertainty.
inline ObservableCurve difference_curve(const ObservableCurve& c1, const ObservableCurve& c2) {
    if (c1.observable_name != c2.observable_name)
        throw std::invalid_argument("difference_curve: observable mismatch");
    if (c1.points.size() != c2.points.size()) throw std::invalid_argument("difference_curve: grid mismatch");
    ObservableCurve out;
    out.graph_name = c1.graph_name + "-" + c2.graph_name;
    out.observable_name = c1.observable_name;
    for (std::size_t i = 0; i < c1.points.size(); ++i) {
        const auto& p1 = c1.points[i];
        const auto& p2 = c2.points[i];
        if (p1.s != p2.s) throw std::invalid_argument("difference_curve: grid mismatch");
        const double h1 = 0.5 * (p1.ci_high - p1.ci_low);
        const double h2 = 0.5 * (p2.ci_high - p2.ci_low);
        const double combined = std::sqrt(h1 * h1 + h2 * h2);
        const double delta = p1.mean - p2.mean;
        out.points.push_back({p1.s, delta, delta - combined, delta + combined});
    }
    return out;
}

struct Verdict {
    std::pair<std::string, std::string> pair;
    bool distinguishable = false;
    double best_sp = 0.0;
    std::string best_observable;
    double separation = 0.0;
};

namespace detail {

/// Converts a CI half-width back to a standard-error scale, with a numerical
/// noise floor so exact (zero-width) curves compare against roundoff rather
/// than zero.
inline double uncertainty_floor(double mean1, double mean2) {
    return 1e-9 * (1.0 + std::abs(mean1) + std::abs(mean2));
}

} // namespace detail

/// Scores one pair of named curve sets: the maximal |Δ| / combined-stderr
/// over all grid points and observables.
inline Verdict score_pair(const std::string& name1, const std::vector<ObservableCurve>& curves1,
                          const std::string& name2, const std::vector<ObservableCurve>& curves2) {
    Verdict v;
    v.pair = {name1, name2};
    const double z = kZ95; // CIs are built at 95% throughout
    for (std::size_t k = 0; k < curves1.size(); ++k) {
        const auto& c1 = curves1[k];
        const auto& c2 = curves2[k];
        for (std::size_t i = 0; i < c1.points.size(); ++i) {
            const auto& p1 = c1.points[i];
            const auto& p2 = c2.points[i];
            const double se1 = 0.5 * (p1.ci_high - p1.ci_low) / z;
            const double se2 = 0.5 * (p2.ci_high - p2.ci_low) / z;
            const double unc = std::max(std::sqrt(se1 * se1 + se2 * se2),
                                        detail::uncertainty_floor(p1.mean, p2.mean));
            const double sep = std::abs(p1.mean - p2.mean) / unc;
            if (sep > v.separation) {
                v.separation = sep;
                v.best_sp = p1.s;
                v.best_observable = c1.observable_name;
            }
        }
    }
    v.distinguishable = v.separation >= kSeparationThreshold;
    return v;
}

struct DiscriminationResult {
    std::vector<std::string> names;
    std::vector<std::vector<ObservableCurve>> curves; // per graph, averaged over embeddings
    std::vector<Verdict> verdicts;                    // all pairs, lexicographic by index
};

/// Runs sweeps for every graph (averaging over embedding replicas when
/// requested; replicas re-run the stochastic pipeline under distinct seeds
/// and contribute the standard error of the mean as the uncertainty) and
/// scores all pairs.
inline DiscriminationResult discriminate(const std::vector<std::pair<std::string, Graph>>& graphs,
                                         const SweepConfig& cfg, int embeddings_per_graph = 1) {
    if (graphs.size() < 2) throw std::invalid_argument("discriminate: need at least two graphs");
    if (embeddings_per_graph < 1) throw std::invalid_argument("discriminate: embeddings_per_graph >= 1");
    DiscriminationResult result;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const auto& [name, graph] = graphs[gi];
        result.names.push_back(name);
        if (embeddings_per_graph == 1) {
            SweepConfig sub = cfg;
            sub.seed = sub_seed(cfg.seed, gi);
            result.curves.push_back(sweep(name, graph, sub));
            continue;
        }
        std::vector<std::vector<ObservableCurve>> replicas;
        for (int e = 0; e < embeddings_per_graph; ++e) {
            SweepConfig sub = cfg;
            sub.seed = sub_seed(cfg.seed, gi * 1000ull + (std::uint64_t)e + 1);
            replicas.push_back(sweep(name, graph, sub));
        }
        std::vector<ObservableCurve> averaged(4);
        for (std::size_t k = 0; k < 4; ++k) {
            averaged[k].graph_name = name;
            averaged[k].observable_name = kObservableNames[k];
            const std::size_t npts = replicas[0][k].points.size();
            for (std::size_t i = 0; i < npts; ++i) {
                double mean = 0.0;
                for (const auto& rep : replicas) mean += rep[k].points[i].mean;
                mean /= (double)replicas.size();
                double var = 0.0;
                for (const auto& rep : replicas) {
                    const double d = rep[k].points[i].mean - mean;
                    var += d * d;
                }
                const double sem = replicas.size() > 1
                                       ? std::sqrt(var / ((double)replicas.size() *
                                                          ((double)replicas.size() - 1.0)))
                                       : 0.0;
                averaged[k].points.push_back({replicas[0][k].points[i].s, mean, mean - kZ95 * sem,
                                              mean + kZ95 * sem});
            }
        }
        result.curves.push_back(std::move(averaged));
    }
    for (std::size_t i = 0; i < graphs.size(); ++i)
        for (std::size_t j = i + 1; j < graphs.size(); ++j)
            result.verdicts.push_back(
                score_pair(result.names[i], result.curves[i], result.names[j], result.curves[j]));
    return result;
}

} // namespace coising
