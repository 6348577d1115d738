#include <gtest/gtest.h>

#include <cmath>

#include "coising/catalog.hpp"
#include "coising/experiment.hpp"
#include "coising/hamiltonian.hpp"
#include "coising/observables.hpp"
#include "coising/schedule.hpp"
#include "coising/spectrum.hpp"
#include "coising/stochastic.hpp"
#include "coising/thermal.hpp"
#include "oracles.hpp"

using namespace coising;

namespace {

IsingInstance single_spin() {
    IsingInstance inst;
    inst.n = 1;
    inst.fields = {1.0};
    return inst;
}

} // namespace

TEST(Schedule, LinearEndpointsAndMonotonicity) {
    auto sched = default_schedule();
    EXPECT_DOUBLE_EQ(sched.A(0.0), 1.0);
    EXPECT_DOUBLE_EQ(sched.B(0.0), 0.0);
    EXPECT_DOUBLE_EQ(sched.A(1.0), 0.0);
    EXPECT_DOUBLE_EQ(sched.B(1.0), 1.0);
    for (int i = 0; i < 40; ++i) {
        const double s0 = i / 40.0, s1 = (i + 1) / 40.0;
        EXPECT_GE(sched.A(s0), sched.A(s1));
        EXPECT_LE(sched.B(s0), sched.B(s1));
    }
}

TEST(Schedule, DefaultBetaMatchesTwelveMillikelvinPerGigahertz) {
    const double planck = 6.62607015e-34, boltzmann = 1.380649e-23, temperature = 12e-3;
    const double beta_per_ghz = planck / (boltzmann * temperature) * 1e9;
    EXPECT_NEAR(default_schedule().beta(), beta_per_ghz, 2e-3);
}

TEST(Schedule, TwoRowTableReproducesLinear) {
    auto sched = load_schedule("s,A,B\n0,1,0\n1,0,1\n");
    for (double s : {0.0, 0.25, 0.5, 0.77, 1.0}) {
        EXPECT_NEAR(sched.A(s), 1.0 - s, 1e-15);
        EXPECT_NEAR(sched.B(s), s, 1e-15);
    }
}

TEST(Schedule, InterpolationBetweenRows) {
    auto sched = load_schedule("s,A,B\n0,4,0\n0.4,2,1\n1.0,0,5\n");
    EXPECT_NEAR(sched.A(0.2), 3.0, 1e-12);
    EXPECT_NEAR(sched.B(0.7), 3.0, 1e-12);
}

TEST(Schedule, NoExtrapolationOutsideTable) {
    auto sched = load_schedule("s,A,B\n0.2,1,0\n0.8,0,1\n");
    EXPECT_THROW(sched.A(0.1), std::invalid_argument);
    EXPECT_THROW(sched.B(0.9), std::invalid_argument);
}

TEST(Schedule, RejectsMalformedTables) {
    EXPECT_THROW(load_schedule("s,A,B\n0.5,1,0\n0.5,0,1\n"), parse_error); // non-monotone s
    EXPECT_THROW(load_schedule("s,A,B\n0,-1,0\n1,0,1\n"), parse_error);    // negative A
    EXPECT_THROW(load_schedule("s,A,B\n0,0,1\n1,1,0\n"), parse_error);     // A increasing
    EXPECT_THROW(load_schedule("x,y\n"), parse_error);                     // bad header
}

TEST(ApplyHamiltonian, SingleSpinDriverFlips) {
    // A=1, B=0: H = sigma_x, which swaps the two basis amplitudes.
    auto out = apply_hamiltonian(single_spin(), 0.0, default_schedule(), {1.0, 0.0});
    EXPECT_DOUBLE_EQ(out[0], 0.0);
    EXPECT_DOUBLE_EQ(out[1], 1.0);
}

TEST(ApplyHamiltonian, SingleSpinDiagonalEigenvectors) {
    // A=0, B=1, h=+1: basis states are eigenvectors with energy equal to
    // their spin value (+1 for up).
    auto up = apply_hamiltonian(single_spin(), 1.0, default_schedule(), {0.0, 1.0});
    EXPECT_DOUBLE_EQ(up[1], 1.0);
    EXPECT_DOUBLE_EQ(up[0], 0.0);
    auto down = apply_hamiltonian(single_spin(), 1.0, default_schedule(), {1.0, 0.0});
    EXPECT_DOUBLE_EQ(down[0], -1.0);
}

TEST(ApplyHamiltonian, K2MatchesBruteMatrix) {
    auto inst = IsingInstance::from_graph(Graph(2, {{1, 2}}));
    const double s = 0.37;
    auto sched = default_schedule();
    auto brute = oracles::brute_hamiltonian(inst, sched.A(s), sched.B(s));
    for (std::size_t col = 0; col < 4; ++col) {
        std::vector<double> basis(4, 0.0);
        basis[col] = 1.0;
        auto out = apply_hamiltonian(inst, s, sched, basis);
        for (std::size_t row = 0; row < 4; ++row) EXPECT_NEAR(out[row], brute[row * 4 + col], 1e-15);
    }
}

TEST(ApplyHamiltonian, LengthMismatchRejected) {
    EXPECT_THROW(apply_hamiltonian(single_spin(), 0.5, default_schedule(), {1.0, 0.0, 0.0}),
                 std::invalid_argument);
}

TEST(ThermalDense, MatchesJacobiOracleOnSmallInstances) {
    Rng rng(301);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 2 + (int)rng.below(4); // 2..5
        auto g = oracles::random_graph(n, 0.6, rng);
        auto inst = IsingInstance::from_graph(g);
        const double s = rng.real01();
        auto sched = default_schedule();
        auto dense = thermal_dense(inst, s, sched, DensePath::eigendecomposition);
        auto oracle = oracles::brute_gibbs_diagonal(inst, sched.A(s), sched.B(s), sched.beta());
        for (std::size_t z = 0; z < oracle.size(); ++z)
            EXPECT_NEAR(dense.diagonal[z], oracle[z], 1e-10) << "trial " << trial << " z=" << z;
    }
}

TEST(ThermalDense, EigAndChebyshevRoutesAgree) {
    Rng rng(302);
    for (int n : {6, 8, 10}) {
        auto g = oracles::random_graph(n, 0.4, rng);
        auto inst = IsingInstance::from_graph(g);
        for (double s : {0.15, 0.5, 0.85}) {
            auto eig = thermal_dense(inst, s, default_schedule(), DensePath::eigendecomposition);
            auto cheb = thermal_dense(inst, s, default_schedule(), DensePath::chebyshev);
            for (std::size_t z = 0; z < eig.diagonal.size(); ++z)
                EXPECT_NEAR(eig.diagonal[z], cheb.diagonal[z], 1e-12);
            EXPECT_NEAR(eig.observables.energy, cheb.observables.energy, 1e-11);
            EXPECT_NEAR(eig.observables.q2, cheb.observables.q2, 1e-11);
            EXPECT_NEAR(eig.observables.omega2, cheb.observables.omega2, 1e-10);
        }
    }
}

TEST(ThermalDense, ClassicalEndpointMatchesBoltzmannEnumeration) {
    Rng rng(303);
    auto g = oracles::random_graph(8, 0.45, rng);
    auto inst = IsingInstance::from_graph(g);
    auto dense = thermal_dense(inst, 1.0, default_schedule());
    auto oracle = oracles::brute_classical_averages(g, default_schedule().beta());
    EXPECT_NEAR(dense.observables.energy, oracle.energy, 1e-11);
    EXPECT_NEAR(dense.observables.magnetization, oracle.magnetization, 1e-11);
    EXPECT_NEAR(dense.observables.q2, oracle.q2, 1e-11);
    EXPECT_NEAR(dense.observables.omega2, oracle.omega2, 1e-11);
}

TEST(ThermalDense, PureDriverHasNoDiagonalOrder) {
    auto dense = thermal_dense(IsingInstance::from_graph(catalog_get("G13")), 0.0, default_schedule());
    EXPECT_NEAR(dense.observables.magnetization, 0.0, 1e-10);
    EXPECT_NEAR(dense.observables.q2, 0.0, 1e-9);
    for (int i = 1; i <= 13; ++i) EXPECT_NEAR(dense.correlations.single(i), 0.0, 1e-10);
    for (int i = 1; i <= 13; ++i)
        for (int j = i + 1; j <= 13; ++j) EXPECT_NEAR(dense.correlations.at(i, j), 0.0, 1e-10);
}

TEST(ThermalDense, InfiniteTemperatureIsUniform) {
    Rng rng(304);
    auto g = oracles::random_graph(6, 0.5, rng);
    auto inst = IsingInstance::from_graph(g);
    auto sched = Schedule::linear(1e-12);
    auto dense = thermal_dense(inst, 0.45, sched);
    const double uniform = 1.0 / 64.0;
    double mean_ep = 0.0;
    HamiltonianAction ham(inst);
    for (double d : ham.classical_diagonal()) mean_ep += d / 64.0;
    for (double p : dense.diagonal) EXPECT_NEAR(p, uniform, 1e-10);
    EXPECT_NEAR(dense.observables.energy, mean_ep, 1e-8);
}

TEST(ThermalDense, CapAndPathLimits) {
    IsingInstance big;
    big.n = 15;
    big.fields.assign(15, 1.0);
    EXPECT_THROW(thermal_dense(big, 0.5, default_schedule()), resource_error);
}

TEST(ThermalDense, GroundStateBoundsThermalEnergy) {
    Rng rng(305);
    auto g = oracles::random_graph(8, 0.4, rng);
    auto inst = IsingInstance::from_graph(g);
    for (double s : {0.0, 0.3, 0.6, 1.0}) {
        auto spectrum = dense_spectrum(inst, s, default_schedule());
        // <H> from the spectrum's own Gibbs weights
        double zsum = 0.0, mean = 0.0;
        for (double e : spectrum) zsum += std::exp(-default_schedule().beta() * (e - spectrum.front()));
        for (double e : spectrum)
            mean += e * std::exp(-default_schedule().beta() * (e - spectrum.front())) / zsum;
        EXPECT_LE(spectrum.front(), mean + 1e-12);
    }
}

TEST(GaugeInvariance, SpectrumUnchangedAndDiagonalPermuted) {
    Rng rng(306);
    auto g = oracles::random_graph(8, 0.45, rng);
    auto inst = IsingInstance::from_graph(g);
    std::vector<int> signs(8);
    std::uint64_t mask = 0;
    for (int i = 0; i < 8; ++i) {
        signs[(std::size_t)i] = rng.sign();
        if (signs[(std::size_t)i] < 0) mask |= (1ull << i);
    }
    auto gauged = gauge_transform(inst, signs);
    const double s = 0.55;
    auto base_spec = dense_spectrum(inst, s, default_schedule());
    auto gauged_spec = dense_spectrum(gauged, s, default_schedule());
    for (std::size_t k = 0; k < base_spec.size(); ++k) EXPECT_NEAR(base_spec[k], gauged_spec[k], 1e-9);

    auto base = thermal_dense(inst, s, default_schedule());
    auto conj = thermal_dense(gauged, s, default_schedule());
    for (std::uint64_t z = 0; z < base.diagonal.size(); ++z)
        EXPECT_NEAR(conj.diagonal[z], base.diagonal[z ^ mask], 1e-12) << "z=" << z;

    // de-gauging the measured correlations recovers the original observables
    auto degauged = degauge_correlations(conj.correlations, signs);
    auto recovered = observables_from_correlations(degauged, inst);
    EXPECT_NEAR(recovered.energy, base.observables.energy, 1e-10);
    EXPECT_NEAR(recovered.magnetization, base.observables.magnetization, 1e-10);
    EXPECT_NEAR(recovered.q2, base.observables.q2, 1e-10);
    EXPECT_NEAR(recovered.omega2, base.observables.omega2, 1e-10);
}

TEST(Observables, CorrelationFormulaEdgeCases) {
    // identity correlations, zero singles
    CorrelationMatrix c;
    c.n = 5;
    c.values.assign(25, 0.0);
    for (int i = 0; i < 5; ++i) c.values[(std::size_t)(i * 5 + i)] = 1.0;
    c.singles.assign(5, 0.0);
    Graph g(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}});
    auto obs = observables_from_correlations(c, g);
    EXPECT_DOUBLE_EQ(obs.q2, 0.0);
    EXPECT_DOUBLE_EQ(obs.magnetization, 0.0);
    EXPECT_DOUBLE_EQ(obs.energy, 0.0);
    EXPECT_DOUBLE_EQ(obs.omega2, 2.0 * 4.0); // diagonal of A^2 contributes 2|E|

    // ferromagnetic saturation
    std::fill(c.values.begin(), c.values.end(), 1.0);
    std::fill(c.singles.begin(), c.singles.end(), 1.0);
    obs = observables_from_correlations(c, g);
    EXPECT_DOUBLE_EQ(obs.q2, 1.0);
    EXPECT_DOUBLE_EQ(obs.magnetization, 5.0);
    EXPECT_DOUBLE_EQ(obs.energy, 4.0 + 5.0);
    std::int64_t a2_sum = 0;
    for (auto v : adjacency_power(g, 2)) a2_sum += v;
    EXPECT_DOUBLE_EQ(obs.omega2, (double)a2_sum);

    c.n = 4;
    EXPECT_THROW(observables_from_correlations(c, g), std::invalid_argument);
}

TEST(ThermalStochastic, K2ConvergesToDense) {
    auto inst = IsingInstance::from_graph(Graph(2, {{1, 2}}));
    auto dense = thermal_dense(inst, 0.5, default_schedule());
    StochasticParams params;
    params.num_probes = 200;
    params.krylov_dim = 20;
    params.seed = 9;
    auto est = thermal_stochastic(inst, 0.5, default_schedule(), params);
    EXPECT_TRUE(est.converged);
    EXPECT_NEAR(est.observables.energy, dense.observables.energy,
                3 * est.observables.energy_err + 1e-6);
    EXPECT_NEAR(est.observables.q2, dense.observables.q2, 3 * est.observables.q2_err + 2e-2);
}

TEST(ThermalStochastic, AgreesWithDenseAtTenSpins) {
    Rng rng(307);
    auto g = oracles::random_graph(10, 0.35, rng);
    auto inst = IsingInstance::from_graph(g);
    StochasticParams params;
    params.num_probes = 50;
    params.krylov_dim = 80;
    params.seed = 12;
    for (double s : {0.3, 0.7}) {
        auto dense = thermal_dense(inst, s, default_schedule());
        auto est = thermal_stochastic(inst, s, default_schedule(), params);
        EXPECT_TRUE(est.converged);
        for (int k = 0; k < 4; ++k) {
            const double tol =
                std::max(3.0 * est.observables.error(k), 1e-2 * std::abs(dense.observables.value(k)) + 1e-3);
            EXPECT_NEAR(est.observables.value(k), dense.observables.value(k), tol)
                << kObservableNames[k] << " s=" << s;
        }
    }
}

TEST(ThermalStochastic, DeterministicForFixedSeed) {
    auto inst = IsingInstance::from_graph(catalog_get("G13"));
    StochasticParams params;
    params.num_probes = 8;
    params.krylov_dim = 30;
    params.seed = 77;
    auto a = thermal_stochastic(inst, 0.4, default_schedule(), params);
    auto b = thermal_stochastic(inst, 0.4, default_schedule(), params);
    EXPECT_EQ(a.observables.energy, b.observables.energy);
    EXPECT_EQ(a.observables.q2_err, b.observables.q2_err);
    EXPECT_EQ(a.correlations.values, b.correlations.values);
}

TEST(ThermalStochastic, StoredAndTwoPassVariantsAgree) {
    Rng rng(308);
    auto inst = IsingInstance::from_graph(oracles::random_graph(8, 0.4, rng));
    StochasticParams stored;
    stored.num_probes = 12;
    stored.krylov_dim = 40;
    stored.seed = 5;
    stored.variant = KrylovVariant::stored_basis;
    StochasticParams two_pass = stored;
    two_pass.variant = KrylovVariant::two_pass;
    auto a = thermal_stochastic(inst, 0.45, default_schedule(), stored);
    auto b = thermal_stochastic(inst, 0.45, default_schedule(), two_pass);
    EXPECT_NEAR(a.observables.energy, b.observables.energy, 1e-8);
    EXPECT_NEAR(a.observables.omega2, b.observables.omega2, 1e-7);
}

TEST(ThermalStochastic, ErrorShrinksWithMoreProbes) {
    Rng rng(309);
    auto g = oracles::random_graph(10, 0.35, rng);
    auto inst = IsingInstance::from_graph(g);
    auto dense = thermal_dense(inst, 0.5, default_schedule());
    double errs[3];
    int idx = 0;
    for (int probes : {8, 32, 128}) {
        StochasticParams params;
        params.num_probes = probes;
        params.krylov_dim = 60;
        params.seed = 21;
        auto est = thermal_stochastic(inst, 0.5, default_schedule(), params);
        errs[idx++] = std::abs(est.observables.energy - dense.observables.energy);
    }
    EXPECT_LT(errs[2], errs[0]);
}

TEST(ThermalStochastic, ParameterValidationAndMemoryGuard) {
    auto inst = IsingInstance::from_graph(Graph(2, {{1, 2}}));
    StochasticParams params;
    params.num_probes = 1;
    EXPECT_THROW(thermal_stochastic(inst, 0.5, default_schedule(), params), std::invalid_argument);
    params.num_probes = 4;
    params.krylov_dim = 10;
    EXPECT_THROW(thermal_stochastic(inst, 0.5, default_schedule(), params), std::invalid_argument);

    IsingInstance beyond;
    beyond.n = 34;
    beyond.fields.assign(34, 1.0);
    StochasticParams ok;
    EXPECT_THROW(thermal_stochastic(beyond, 0.5, default_schedule(), ok), std::invalid_argument);
}

TEST(ThermalStochastic, FlagsNonConvergentExpansions) {
    // Tiny Krylov space at a stiff beta: the residual estimate must trip the
    // warning flag rather than silently return garbage.
    Rng rng(311);
    auto inst = IsingInstance::from_graph(oracles::random_graph(12, 0.5, rng));
    StochasticParams params;
    params.num_probes = 4;
    params.krylov_dim = 20;
    params.seed = 3;
    auto sched = Schedule::linear(40.0);
    auto est = thermal_stochastic(inst, 0.5, sched, params);
    EXPECT_FALSE(est.converged);
    EXPECT_GT(est.max_expv_error, params.convergence_tol);
}

TEST(ThermalDense, Q2StaysInUnitInterval) {
    Rng rng(310);
    auto g = oracles::random_graph(9, 0.5, rng);
    auto inst = IsingInstance::from_graph(g);
    for (double s : {0.0, 0.2, 0.5, 0.9, 1.0}) {
        auto dense = thermal_dense(inst, s, default_schedule());
        EXPECT_GE(dense.observables.q2, 0.0);
        EXPECT_LE(dense.observables.q2, 1.0 + 1e-12);
    }
}
