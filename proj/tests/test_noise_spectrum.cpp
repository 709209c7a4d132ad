#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "omforce/errors.hpp"
#include "omforce/noise_spectrum.hpp"
#include "omforce/steady_state.hpp"

#include "test_support.hpp"

using namespace omforce;
using namespace testsup;

namespace {

std::complex<double> conj_tf(std::complex<double> z) { return std::conj(z); }

double crel(std::complex<double> a, std::complex<double> b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

} // namespace

TEST_CASE("transfer functions reduce to the zero-detuning closed forms") {
    const SystemParams p = reference_params().with_coupling_ratio(-0.25);
    const SteadyState ss = solve_steady_state(p);
    const double omega = 0.7 * p.omega_m;
    const TransferFunctions tf = transfer_functions(p, ss, omega);

    const std::complex<double> mech(omega * omega - p.omega_m * ss.omega_m_eff,
                                    p.gamma_m * omega);
    const std::complex<double> kmi(p.kappa, -omega);

    CHECK(crel(tf.d, kmi * kmi * mech) < 1e-12);
    CHECK(crel(tf.p_xi, ss.g_eff * p.omega_m * std::sqrt(p.gamma_m) * kmi * ss.x_quad) <
          1e-12);
    // with P_s = 0 the phase channel loses its static part
    CHECK(crel(tf.p_p, std::sqrt(2.0 * p.kappa) * kmi * mech) < 1e-12);
}

TEST_CASE("transfer functions obey conjugation symmetry") {
    SystemParams p = reference_params().with_coupling_ratio(-0.2);
    p.detuning_mode = DetuningMode::Bare;
    p.detuning = kTwoPi * 1.3e8;
    const SteadyState ss = solve_steady_state(p);
    for (double omega : {0.3 * p.omega_m, p.omega_m, 1.9 * p.omega_m}) {
        const TransferFunctions plus = transfer_functions(p, ss, omega);
        const TransferFunctions minus = transfer_functions(p, ss, -omega);
        CHECK(crel(minus.p_x, conj_tf(plus.p_x)) < 1e-14);
        CHECK(crel(minus.p_p, conj_tf(plus.p_p)) < 1e-14);
        CHECK(crel(minus.p_xi, conj_tf(plus.p_xi)) < 1e-14);
        CHECK(crel(minus.d, conj_tf(plus.d)) < 1e-14);
    }
}

TEST_CASE("full spectrum at the balanced power hits the quantum limit") {
    // at zeta = gamma_m and omega = omega_m the full form differs from 1 only
    // by (omega/kappa)^4 corrections
    const SystemParams p = reference_params().with_power(sql_power_oracle(reference_params()));
    const SteadyState ss = solve_steady_state(p);
    const NoiseBreakdown b = s_ff_full(p, ss, p.omega_m);
    CHECK(b.thermal == 0.0);
    CHECK(b.total == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(b.formula == SpectrumFormula::Full);
    CHECK(b.total == b.thermal + b.backaction + b.shot);
}

TEST_CASE("resonant spectrum at the balanced power equals one exactly") {
    const SystemParams p = reference_params().with_power(sql_power_oracle(reference_params()));
    const SteadyState ss = solve_steady_state(p);
    const NoiseBreakdown b = s_ff_resonant(p, ss, p.omega_m);
    CHECK(rel_diff(b.backaction, 0.5) < 1e-9);
    CHECK(rel_diff(b.shot, 0.5) < 1e-9);
    CHECK(rel_diff(b.total, 1.0) < 1e-9);
    // backaction and shot cross exactly at zeta = gamma_m
    CHECK(rel_diff(b.backaction, b.shot) < 1e-9);
}

TEST_CASE("thermal floor enters the breakdown unchanged") {
    SystemParams p = reference_params();
    p.temperature = 1e-3;
    const SteadyState ss = solve_steady_state(p);
    const NoiseBreakdown b = s_ff_resonant(p, ss, p.omega_m);
    const double expected = 2.0 * kBoltzmann * 1e-3 / (kHbar * p.omega_m);
    CHECK(rel_diff(b.thermal, expected) < 1e-12);
    CHECK(b.thermal == doctest::Approx(4.167323824665515).epsilon(1e-12));
    // zero temperature kills the floor
    const NoiseBreakdown cold =
        s_ff_resonant(reference_params(), solve_steady_state(reference_params()),
                      p.omega_m);
    CHECK(cold.thermal == 0.0);
}

TEST_CASE("resonant form with g_q = 0 reduces to the bare quantum-noise form") {
    std::mt19937_64 rng(5150u);
    std::uniform_real_distribution<double> omega_frac(0.1, 2.0);
    std::uniform_real_distribution<double> log_power(std::log(1e-7), std::log(1e-3));
    for (int trial = 0; trial < 200; ++trial) {
        const SystemParams p =
            reference_params().with_power(std::exp(log_power(rng)));
        const SteadyState ss = solve_steady_state(p);
        const double omega = omega_frac(rng) * p.omega_m;
        const NoiseBreakdown a = s_ff_resonant(p, ss, omega);
        const NoiseBreakdown b = s_ff_no_qoc(p, ss, omega);
        CHECK(rel_diff(a.backaction, b.backaction) < 1e-12);
        CHECK(rel_diff(a.shot, b.shot) < 1e-12);
        CHECK(rel_diff(a.total, b.total) < 1e-12);
    }
}

TEST_CASE("sub-quantum-limit benchmark at 12 uW, ratio -0.45") {
    const SystemParams p =
        reference_params().with_power(12e-6).with_coupling_ratio(-0.45);
    const SteadyState ss = solve_steady_state(p);
    const double omega = std::sqrt(p.omega_m * ss.omega_m_eff);
    const NoiseBreakdown b = s_ff_resonant(p, ss, omega);
    CHECK(b.total == doctest::Approx(0.6370819842465505).epsilon(1e-10));
    CHECK(b.total == doctest::Approx(0.6).epsilon(0.17)); // the ~0.6 benchmark
    CHECK(b.total < 1.0);
}

TEST_CASE("quantum-limit bound") {
    const SystemParams p = reference_params();
    SUBCASE("equals one at bare resonance") {
        CHECK(sql_bound(p, p.omega_m, p.omega_m) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("grows like omega^2/(gamma_m omega_m) far above resonance") {
        const double omega = 1000.0 * p.omega_m;
        const double asymptote = omega * omega / (p.gamma_m * p.omega_m);
        CHECK(rel_diff(sql_bound(p, omega, p.omega_m), asymptote) < 1e-5);
        CHECK(sql_bound(p, 10.0 * p.omega_m, p.omega_m) <
              sql_bound(p, 100.0 * p.omega_m, p.omega_m));
    }
    SUBCASE("soft mode lowers the tracked bound below one") {
        const double omega_eff = 0.33 * p.omega_m;
        const double omega = std::sqrt(p.omega_m * omega_eff);
        const double bound = sql_bound(p, omega, omega_eff);
        CHECK(rel_diff(bound, std::sqrt(0.33)) < 1e-12);
        CHECK(bound == doctest::Approx(0.574).epsilon(2e-3));
        CHECK(bound < 1.0);
    }
}

TEST_CASE("backaction-shot tradeoff respects the susceptibility bound") {
    std::mt19937_64 rng(90210u);
    std::uniform_real_distribution<double> omega_frac(0.2, 1.8);
    std::uniform_real_distribution<double> log_power(std::log(1e-7), std::log(1.4e-5));
    const SystemParams base = reference_params().with_coupling_ratio(-0.5);
    for (int trial = 0; trial < 300; ++trial) {
        const SystemParams p = base.with_power(std::exp(log_power(rng)));
        SteadyState ss;
        try {
            ss = solve_steady_state(p);
        } catch (const UnphysicalSoftMode&) {
            continue;
        }
        const double omega = omega_frac(rng) * p.omega_m;
        const NoiseBreakdown b = s_ff_resonant(p, ss, omega);
        const double bound = sql_bound(p, omega, ss.omega_m_eff);
        CHECK(b.backaction + b.shot >= bound * (1.0 - 1e-12));
    }
}

TEST_CASE("the bound is attained when the rescaled strength matches 1/|chi|") {
    // minimum over zeta' of zeta'/(2 gamma) + 1/(2 zeta' gamma |chi|^2)
    const SystemParams p = reference_params();
    const double omega = 0.8 * p.omega_m;
    const double chi_abs = std::abs(mechanical_susceptibility(omega, p, p.omega_m));
    const auto value = [&](double zeta_prime) {
        return zeta_prime / (2.0 * p.gamma_m) +
               1.0 / (2.0 * zeta_prime * p.gamma_m * chi_abs * chi_abs);
    };
    const double at_opt = value(1.0 / chi_abs);
    CHECK(rel_diff(at_opt, 1.0 / (p.gamma_m * chi_abs)) < 1e-12);
    CHECK(value(1.2 / chi_abs) > at_opt);
    CHECK(value(0.8 / chi_abs) > at_opt);
}

TEST_CASE("divergent-sensitivity guards") {
    const SystemParams p = reference_params().with_power(0.0);
    const SteadyState ss = solve_steady_state(p);
    CHECK_THROWS_AS(s_ff_resonant(p, ss, p.omega_m), DivergentSensitivity);
    CHECK_THROWS_AS(s_ff_full(p, ss, p.omega_m), DivergentSensitivity);
    CHECK_THROWS_AS(s_ff_no_qoc(p, ss, p.omega_m), DivergentSensitivity);
}

TEST_CASE("unstable operating points are rejected, not evaluated") {
    // collapsed soft mode
    const SystemParams p =
        reference_params().with_power(20e-6).with_coupling_ratio(-0.6);
    const SteadyState collapsed = solve_steady_state_unchecked(p);
    CHECK_THROWS_AS(s_ff_full(p, collapsed, p.omega_m), UnphysicalSoftMode);
    CHECK_THROWS_AS(s_ff_resonant(p, collapsed, p.omega_m), UnphysicalSoftMode);

    // physical but Routh-Hurwitz unstable state (strong blue-detuned drive)
    SystemParams q;
    q.omega_m = 1.0;
    q.gamma_m = 1e-3;
    q.kappa = 0.1;
    q.g_l = 1.0;
    q.wavelength = 810e-9;
    q.power = 1.0;
    q.detuning_mode = DetuningMode::Bare;
    SteadyState bad;
    bad.omega_m_eff = 1.0;
    bad.delta_eff = -0.5;
    bad.g_eff = 1.0;
    bad.photon_number = 10.0;
    bad.x_quad = std::sqrt(20.0);
    bad.p_quad = 0.0;
    bad.x_s = 0.0;
    CHECK_THROWS_AS(s_ff_full(q, bad, 1.0), UnstableOperatingPoint);
}

TEST_CASE("resonant form refuses detuned states") {
    SystemParams p = reference_params();
    p.detuning = 0.3 * p.kappa; // pinned effective detuning, but not zero
    const SteadyState ss = solve_steady_state(p);
    CHECK_THROWS_AS(s_ff_resonant(p, ss, p.omega_m), InvalidParameter);
    CHECK_NOTHROW(s_ff_full(p, ss, p.omega_m));
}

TEST_CASE("spectrum is even in frequency") {
    SystemParams p = reference_params().with_coupling_ratio(-0.15);
    p.detuning_mode = DetuningMode::Bare;
    p.detuning = kTwoPi * 7e7;
    const SteadyState ss = solve_steady_state(p);
    for (double omega : {0.4 * p.omega_m, 1.1 * p.omega_m}) {
        const NoiseBreakdown plus = s_ff_full(p, ss, omega);
        const NoiseBreakdown minus = s_ff_full(p, ss, -omega);
        CHECK(rel_diff(plus.total, minus.total) < 1e-14);
    }
}

TEST_CASE("every breakdown field is non-negative and finite at stable points") {
    std::mt19937_64 rng(31337u);
    std::uniform_real_distribution<double> omega_frac(0.1, 2.0);
    std::uniform_real_distribution<double> log_power(std::log(1e-7), std::log(1e-4));
    std::uniform_real_distribution<double> ratio(-0.6, 0.0);
    std::uniform_real_distribution<double> temp(0.0, 1e-2);
    for (int trial = 0; trial < 200; ++trial) {
        SystemParams p = reference_params()
                             .with_power(std::exp(log_power(rng)))
                             .with_coupling_ratio(ratio(rng));
        p.temperature = temp(rng);
        SteadyState ss;
        try {
            ss = solve_steady_state(p);
        } catch (const UnphysicalSoftMode&) {
            continue;
        }
        for (const NoiseBreakdown& b :
             {s_ff_resonant(p, ss, omega_frac(rng) * p.omega_m),
              s_ff_full(p, ss, omega_frac(rng) * p.omega_m)}) {
            CHECK(b.thermal >= 0.0);
            CHECK(b.backaction >= 0.0);
            CHECK(b.shot >= 0.0);
            CHECK(std::isfinite(b.total));
            CHECK(b.total == b.thermal + b.backaction + b.shot);
        }
    }
}

TEST_CASE("full and resonant forms agree to first order in omega/kappa") {
    for (double ratio : {0.0, -0.6}) {
        const SystemParams p = reference_params().with_coupling_ratio(ratio);
        const SteadyState ss = solve_steady_state(p);
        for (int k = 0; k <= 200; ++k) {
            const double omega = (0.1 + 1.9 * k / 200.0) * p.omega_m;
            const double full = s_ff_full(p, ss, omega).total;
            const double resonant = s_ff_resonant(p, ss, omega).total;
            CHECK(std::abs(full - resonant) / resonant <
                  3.0 * (omega / p.kappa) + 1e-9);
        }
    }
}

TEST_CASE("optimal power recovers the quantum limit without soft mode") {
    const SystemParams p = reference_params();
    const OptimalPowerResult r =
        optimal_power(p, EvalFrequency::fixed(p.omega_m), {1e-6, 1e-3});
    CHECK(rel_diff(r.s_min, 1.0) < 1e-9);
    CHECK(rel_diff(r.power, sql_power_oracle(p)) < 1e-6);
    CHECK(r.power == doctest::Approx(104.17e-6).epsilon(1e-3));
    CHECK_FALSE(r.constrained);
}

TEST_CASE("soft-mode tracking moves the optimum below the quantum limit") {
    const SystemParams p = reference_params();
    const OptimalPowerResult plain =
        optimal_power(p, EvalFrequency::fixed(p.omega_m), {1e-6, 1e-3});
    const OptimalPowerResult soft =
        optimal_power(p.with_coupling_ratio(-0.6),
                      EvalFrequency::soft_mode_resonance(), {1e-7, 1e-3});
    CHECK(soft.s_min < 1.0);
    CHECK(soft.power < plain.power);
    CHECK(soft.s_min == doctest::Approx(0.608).epsilon(5e-3));
    CHECK(soft.power == doctest::Approx(9.55e-6).epsilon(5e-3));

    const OptimalPowerResult milder =
        optimal_power(p.with_coupling_ratio(-0.25),
                      EvalFrequency::soft_mode_resonance(), {1e-7, 1e-3});
    CHECK(milder.s_min < 1.0);
    CHECK(soft.s_min < milder.s_min); // more softness, lower optimum
}

TEST_CASE("optimal power bracket failures") {
    const SystemParams p = reference_params();
    // monotone increasing over the bracket: no interior minimum
    CHECK_THROWS_AS(optimal_power(p, EvalFrequency::fixed(p.omega_m), {2e-4, 1e-3}),
                    BracketError);
    // empty bracket
    CHECK_THROWS_AS(optimal_power(p, EvalFrequency::fixed(p.omega_m), {1e-4, 1e-4}),
                    BracketError);
    // no stable point at all
    CHECK_THROWS_AS(optimal_power(p.with_coupling_ratio(-0.6),
                                  EvalFrequency::soft_mode_resonance(),
                                  {1e-4, 1e-3}),
                    BracketError);
    // bare mode is not the resonant working point
    SystemParams bare = p;
    bare.detuning_mode = DetuningMode::Bare;
    CHECK_THROWS_AS(optimal_power(bare, EvalFrequency::fixed(p.omega_m), {1e-6, 1e-3}),
                    InvalidParameter);
}
