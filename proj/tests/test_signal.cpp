#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fingersense/errors.hpp"
#include "fingersense/rng.hpp"
#include "fingersense/signal.hpp"
#include "oracles.hpp"

using namespace fingersense;
using signal::LossSample;
using signal::RawReading;

TEST_CASE("power_loss known values") {
    CHECK(signal::power_loss(1000.0, 1000.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(signal::power_loss(100.0, 1000.0) == doctest::Approx(10.0).epsilon(1e-12));
    // one octave of gain: -10*log10(2)
    CHECK(signal::power_loss(2000.0, 1000.0) ==
          doctest::Approx(-3.0102999566398120).epsilon(1e-12));
}

TEST_CASE("power_loss rejects non-positive inputs naming the argument") {
    CHECK_THROWS_WITH_AS(signal::power_loss(0.0, 1000.0),
                         doctest::Contains("intensity"), DataError);
    CHECK_THROWS_WITH_AS(signal::power_loss(1000.0, -1.0), doctest::Contains("i0"), DataError);
}

TEST_CASE("power_loss scale invariance") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const double intensity = 1.0 + 5000.0 * rng.uniform01();
        const double i0 = 1.0 + 5000.0 * rng.uniform01();
        const double a = 0.01 + 10.0 * rng.uniform01();
        CHECK(signal::power_loss(a * intensity, a * i0) ==
              doctest::Approx(signal::power_loss(intensity, i0)).epsilon(1e-9));
    }
}

TEST_CASE("fit_line exact lines") {
    const std::vector<LossSample> exact{{0, 0.5, Phase::Loading},
                                        {10, 0.7, Phase::Loading},
                                        {20, 0.9, Phase::Loading}};
    const signal::FitLine fit = signal::fit_line(exact);
    CHECK(fit.beta0_db == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fit.beta1_db_per_deg == doctest::Approx(0.02).epsilon(1e-12));

    const std::vector<LossSample> two{{0, 0, Phase::Loading}, {10, 1, Phase::Loading}};
    const signal::FitLine fit2 = signal::fit_line(two);
    CHECK(fit2.beta0_db == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fit2.beta1_db_per_deg == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("fit_line matches the normal-equations oracle on noisy data") {
    Rng rng(42);
    std::vector<LossSample> samples;
    for (int i = 0; i < 1000; ++i) {
        const double theta = 263.6 * rng.uniform01();
        samples.push_back({theta, 0.37 + 0.061 * theta + 0.2 * rng.normal(), Phase::Loading});
    }
    const signal::FitLine fit = signal::fit_line(samples);
    const oracles::LineOracle ref = oracles::fit_line_oracle(samples);
    CHECK(fit.beta0_db ==
          doctest::Approx(static_cast<double>(ref.beta0)).epsilon(1e-9));
    CHECK(fit.beta1_db_per_deg ==
          doctest::Approx(static_cast<double>(ref.beta1)).epsilon(1e-9));
}

TEST_CASE("fit_line residual orthogonality") {
    Rng rng(17);
    std::vector<LossSample> samples;
    for (int i = 0; i < 5000; ++i) {
        const double theta = 90.0 * rng.uniform01();
        samples.push_back({theta, -0.8 + 0.05 * theta + 0.1 * rng.normal(), Phase::Loading});
    }
    const signal::FitLine fit = signal::fit_line(samples);
    long double sum_r = 0.0L, sum_rt = 0.0L, sum_abs = 0.0L;
    for (const LossSample& s : samples) {
        const long double r = s.loss_db - (fit.beta0_db + fit.beta1_db_per_deg * s.theta_deg);
        sum_r += r;
        sum_rt += r * s.theta_deg;
        sum_abs += std::fabs(static_cast<double>(r));
    }
    CHECK(std::fabs(static_cast<double>(sum_r / sum_abs)) < 1e-9);
    CHECK(std::fabs(static_cast<double>(sum_rt / (sum_abs * 90.0))) < 1e-9);
}

TEST_CASE("fit_line error paths") {
    const std::vector<LossSample> one{{0, 0, Phase::Loading}};
    CHECK_THROWS_WITH_AS(signal::fit_line(one), doctest::Contains("insufficient-data"),
                         DegenerateError);
    const std::vector<LossSample> same_theta{{5, 0, Phase::Loading},
                                             {5, 1, Phase::Loading},
                                             {5, 2, Phase::Loading}};
    CHECK_THROWS_WITH_AS(signal::fit_line(same_theta), doctest::Contains("singular-design"),
                         DegenerateError);
}

TEST_CASE("linearity of a perfect line is 100 percent") {
    std::vector<LossSample> samples;
    for (int i = 0; i <= 50; ++i)
        samples.push_back({static_cast<double>(i), 0.2 + 0.03 * i, Phase::Loading});
    const signal::FitLine fit = signal::fit_line(samples);
    CHECK(signal::linearity_fsr(samples, fit.beta0_db, fit.beta1_db_per_deg) ==
          doctest::Approx(100.0).epsilon(1e-10));
}

TEST_CASE("linearity matches the hand oracle") {
    // y = {0, 1, 2, 4} at theta = {0, 1, 2, 3}: fit is y = -0.2 + 1.3*theta,
    // residuals {0.2, -0.1, -0.4, 0.3}, so (1 - 0.4/4)*100 = 90.
    const std::vector<LossSample> samples{{0, 0, Phase::Loading},
                                          {1, 1, Phase::Loading},
                                          {2, 2, Phase::Loading},
                                          {3, 4, Phase::Loading}};
    const signal::FitLine fit = signal::fit_line(samples);
    const double got = signal::linearity_fsr(samples, fit.beta0_db, fit.beta1_db_per_deg);
    const long double ref = oracles::linearity_oracle(samples, fit.beta0_db, fit.beta1_db_per_deg);
    CHECK(got == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
    CHECK(got == doctest::Approx(90.0).epsilon(1e-12));
}

TEST_CASE("linearity degenerate range") {
    const std::vector<LossSample> flat{{0, 0, Phase::Loading}, {1, 0, Phase::Loading}};
    CHECK_THROWS_WITH_AS(signal::linearity_fsr(flat, 0.0, 0.0),
                         doctest::Contains("degenerate-range"), DegenerateError);
}

TEST_CASE("rms_error_deg") {
    SUBCASE("perfect fit is zero") {
        std::vector<LossSample> samples;
        for (int i = 0; i < 10; ++i)
            samples.push_back({static_cast<double>(i), 1.0 + 0.5 * i, Phase::Loading});
        CHECK(signal::rms_error_deg(samples, 1.0, 0.5) == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("residuals {1,-1,1,-1} at beta1=0.5") {
        // Against the given line y = 0.5*theta these samples have exactly
        // those residuals: sqrt((4/3)) / 0.5.
        const std::vector<LossSample> samples{{0, 1.0, Phase::Loading},
                                              {1, -0.5, Phase::Loading},
                                              {2, 2.0, Phase::Loading},
                                              {3, 0.5, Phase::Loading}};
        const double got = signal::rms_error_deg(samples, 0.0, 0.5);
        CHECK(got == doctest::Approx(2.3094010767585030).epsilon(1e-12));
        CHECK(got == doctest::Approx(static_cast<double>(
                         oracles::rms_oracle(samples, 0.0L, 0.5L))).epsilon(1e-12));
    }
    SUBCASE("zero sensitivity is an error") {
        const std::vector<LossSample> samples{{0, 0, Phase::Loading}, {1, 1, Phase::Loading}};
        CHECK_THROWS_WITH_AS(signal::rms_error_deg(samples, 0.0, 0.0),
                             doctest::Contains("zero-sensitivity"), DegenerateError);
    }
    SUBCASE("scaling invariance of y and beta together") {
        Rng rng(5);
        std::vector<LossSample> samples;
        for (int i = 0; i < 300; ++i) {
            const double theta = 60.0 * rng.uniform01();
            samples.push_back({theta, 0.4 + 0.07 * theta + 0.05 * rng.normal(), Phase::Loading});
        }
        const signal::FitLine fit = signal::fit_line(samples);
        const double base = signal::rms_error_deg(samples, fit.beta0_db, fit.beta1_db_per_deg);
        std::vector<LossSample> scaled = samples;
        const double a = 3.7;
        for (LossSample& s : scaled) s.loss_db *= a;
        const double after =
            signal::rms_error_deg(scaled, a * fit.beta0_db, a * fit.beta1_db_per_deg);
        CHECK(after == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("hysteresis_fsr") {
    SUBCASE("identical traces give zero") {
        std::vector<LossSample> samples;
        for (int i = 0; i <= 20; ++i) {
            samples.push_back({static_cast<double>(i), 0.1 * i, Phase::Loading});
            samples.push_back({static_cast<double>(i), 0.1 * i, Phase::Unloading});
        }
        CHECK(signal::hysteresis_fsr(samples) == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("constant offset over a 4 dB range gives 5 percent") {
        // Loading ramp 0..3.8 dB, unloading the same plus 0.2 dB; the trial
        // FSR is max - min = 4.0 dB, mean difference 0.2 dB.
        std::vector<LossSample> samples;
        const std::vector<double> base{0.0, 1.0, 2.0, 3.8};
        for (const double y : base) samples.push_back({y, y, Phase::Loading});
        for (const double y : base) samples.push_back({y, y + 0.2, Phase::Unloading});
        const double got = signal::hysteresis_fsr(samples);
        CHECK(got == doctest::Approx(5.0).epsilon(1e-12));
        CHECK(got == doctest::Approx(static_cast<double>(oracles::hysteresis_oracle(samples)))
                         .epsilon(1e-12));
    }
    SUBCASE("offset invariance") {
        Rng rng(23);
        std::vector<LossSample> samples;
        for (int i = 0; i < 500; ++i) {
            const double theta = 80.0 * rng.uniform01();
            const Phase ph = (i % 2 == 0) ? Phase::Loading : Phase::Unloading;
            samples.push_back(
                {theta, 0.05 * theta + (ph == Phase::Unloading ? 0.15 : 0.0) + 0.02 * rng.normal(),
                 ph});
        }
        const double base = signal::hysteresis_fsr(samples);
        std::vector<LossSample> shifted = samples;
        for (LossSample& s : shifted) s.loss_db += 12.5;
        CHECK(signal::hysteresis_fsr(shifted) == doctest::Approx(base).epsilon(1e-9));
    }
    SUBCASE("missing phase") {
        const std::vector<LossSample> loading_only{{0, 0, Phase::Loading},
                                                   {1, 1, Phase::Loading}};
        CHECK_THROWS_WITH_AS(signal::hysteresis_fsr(loading_only),
                             doctest::Contains("missing-phase"), DataError);
    }
    SUBCASE("degenerate range") {
        const std::vector<LossSample> flat{{0, 1.0, Phase::Loading}, {1, 1.0, Phase::Unloading}};
        CHECK_THROWS_WITH_AS(signal::hysteresis_fsr(flat), doctest::Contains("degenerate-range"),
                             DegenerateError);
    }
}

TEST_CASE("normalized cycle amplitudes") {
    SUBCASE("constant intensity gives 0, zero minimum gives 1") {
        std::vector<RawReading> readings;
        for (int i = 0; i < 4; ++i) readings.push_back({i * 0.125, SensorId::MCP, 500.0});
        for (int i = 0; i < 4; ++i)
            readings.push_back({(4 + i) * 0.125, SensorId::MCP, i == 2 ? 0.0 : 500.0});
        const std::vector<std::size_t> starts{0, 4};
        const std::vector<double> amps = signal::normalized_cycle_amplitudes(readings, starts);
        REQUIRE(amps.size() == 2);
        CHECK(amps[0] == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(amps[1] == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("all-zero cycle is degenerate") {
        std::vector<RawReading> readings{{0.0, SensorId::MCP, 0.0}, {0.125, SensorId::MCP, 0.0}};
        const std::vector<std::size_t> starts{0};
        CHECK_THROWS_WITH_AS(signal::normalized_cycle_amplitudes(readings, starts),
                             doctest::Contains("degenerate-cycle"), DegenerateError);
    }
    SUBCASE("values stay inside [0, 1]") {
        Rng rng(31);
        std::vector<RawReading> readings;
        for (int i = 0; i < 600; ++i)
            readings.push_back({i * 0.125, SensorId::MCP, 100.0 + 900.0 * rng.uniform01()});
        std::vector<std::size_t> starts;
        for (std::size_t i = 0; i < readings.size(); i += 6) starts.push_back(i);
        for (const double a : signal::normalized_cycle_amplitudes(readings, starts)) {
            CHECK(a >= 0.0);
            CHECK(a <= 1.0);
        }
    }
}

TEST_CASE("cycle starts from times") {
    std::vector<double> t;
    for (int i = 0; i < 32; ++i) t.push_back(i / 8.0);
    const std::vector<std::size_t> starts = signal::cycle_starts_from_times(t, 1.0);
    REQUIRE(starts.size() == 4);
    CHECK(starts[0] == 0);
    CHECK(starts[1] == 8);
    CHECK(starts[2] == 16);
    CHECK(starts[3] == 24);
}

TEST_CASE("calibrate fills every metric") {
    Rng rng(77);
    std::vector<LossSample> samples;
    for (int i = 0; i <= 900; ++i) {
        const double theta = i / 10.0;
        samples.push_back({theta, 0.3 + 0.06 * theta + 0.02 * rng.normal(), Phase::Loading});
        samples.push_back({theta, 0.41 + 0.06 * theta + 0.02 * rng.normal(), Phase::Unloading});
    }
    const signal::JointCalibration cal = signal::calibrate(samples, 25000.0);
    CHECK(cal.n_samples == samples.size());
    CHECK(cal.i0_nw_cm2 == 25000.0);
    CHECK(cal.sensitivity_db_per_deg == cal.beta1_db_per_deg);
    CHECK(cal.beta1_db_per_deg == doctest::Approx(0.06).epsilon(1e-2));
    CHECK(cal.linearity_fsr_pct > 90.0);
    CHECK(cal.linearity_fsr_pct <= 100.0);
    CHECK(cal.rms_error_deg > 0.0);
    CHECK(cal.hysteresis_fsr_pct == doctest::Approx(100.0 * 0.11 / cal.fsr_db).epsilon(5e-2));
    CHECK(cal.fsr_db > 0.0);
    CHECK(cal.peak_abs_loss_db >= cal.fsr_db / 2.0);
}
