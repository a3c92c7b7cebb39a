#include <doctest.h>

#include <cmath>

#include "fadeber/modulation.hpp"
#include "oracles.hpp"

using namespace fadeber;

TEST_CASE("scheme construction and parsing") {
    CHECK(ModulationScheme::qpsk().kind == SchemeKind::Qpsk);
    CHECK(parse_scheme("qpsk").kind == SchemeKind::Qpsk);
    CHECK(parse_scheme("16qam").order == 16);
    CHECK(parse_scheme("bfsk").kind == SchemeKind::Fsk);
    CHECK(parse_scheme("bfsk").order == 2);
    CHECK(parse_scheme("bask").kind == SchemeKind::Ask);
    CHECK(parse_scheme("8fsk").order == 8);

    CHECK_THROWS_AS(parse_scheme("psk31"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scheme(""), std::invalid_argument);
    CHECK_THROWS_AS(ModulationScheme::qam(8), std::invalid_argument);   // not square
    CHECK_THROWS_AS(ModulationScheme::qam(9), std::invalid_argument);   // not pow2
    CHECK_THROWS_AS(ModulationScheme::fsk(3), std::invalid_argument);
    CHECK_THROWS_AS(ModulationScheme::ask(0), std::invalid_argument);
}

TEST_CASE("scheme constants") {
    const auto qam16 = scheme_constants(ModulationScheme::qam(16));
    CHECK(qam16.alpha1 == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(qam16.beta1 == doctest::Approx(0.2).epsilon(1e-15));

    const auto qam4 = scheme_constants(ModulationScheme::qam(4));
    CHECK(qam4.alpha1 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(qam4.beta1 == doctest::Approx(1.0).epsilon(1e-15));

    const auto ask2 = scheme_constants(ModulationScheme::ask(2));
    CHECK(ask2.alpha2 == 1.0);
    CHECK(ask2.beta2 == 2.0);

    for (int m : {4, 16, 64, 256}) {
        const auto k = scheme_constants(ModulationScheme::qam(m));
        CHECK(k.alpha1 > 0.0);
        CHECK(k.alpha1 < 1.0);
        CHECK(k.beta1 > 0.0);
    }
    for (int m : {2, 4, 8}) {
        const auto k = scheme_constants(ModulationScheme::ask(m));
        CHECK(k.alpha2 > 0.0);
        CHECK(k.beta2 > 0.0);
    }
}

TEST_CASE("awgn_ber reference points") {
    const SnrValue unit{1.0, SnrDomain::Linear};
    CHECK(awgn_ber(ModulationScheme::qpsk(), unit) ==
          doctest::Approx(0.07864960352514257).epsilon(1e-10));
    CHECK(awgn_ber(ModulationScheme::fsk(2), unit) ==
          doctest::Approx(0.15865525393145705).epsilon(1e-10));
    CHECK(awgn_ber(ModulationScheme::qam(16), unit) ==
          doctest::Approx(0.18524009107100496).epsilon(1e-8));
    CHECK_THROWS_AS(awgn_ber(ModulationScheme::qpsk(), {-1.0, SnrDomain::Linear}),
                    std::invalid_argument);
}

TEST_CASE("awgn_ber strictly decreasing until underflow") {
    // Beyond roughly 29 dB the QPSK tail underflows double precision, so
    // strict monotonicity is asserted only while values stay normal.
    for (const ModulationScheme s :
         {ModulationScheme::qpsk(), ModulationScheme::qam(16), ModulationScheme::qam(64),
          ModulationScheme::fsk(2), ModulationScheme::fsk(8), ModulationScheme::ask(2),
          ModulationScheme::ask(4)}) {
        double prev = 2.0;
        for (int i = 0; i <= 500; ++i) {
            const double ber = awgn_ber(s, {0.1 * i, SnrDomain::Decibel});
            if (prev > 1e-300) {
                CHECK(ber < prev);
            } else {
                CHECK(ber <= prev);
            }
            CHECK(ber >= 0.0);
            CHECK(ber < 1.0);
            prev = ber;
        }
    }
}

TEST_CASE("ASK(2) coincides with QPSK") {
    oracle::SplitMix64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const SnrValue xi{rng.uniform(0.0, 1e4), SnrDomain::Linear};
        CHECK(awgn_ber(ModulationScheme::ask(2), xi) ==
              awgn_ber(ModulationScheme::qpsk(), xi));
    }
}

TEST_CASE("QAM formula stays positive") {
    // The Q^2 correction never exceeds the Q term.
    for (int m : {4, 16, 64}) {
        for (int i = 0; i <= 120; ++i) {
            const double xi = std::pow(10.0, -2.0 + i * (8.0 / 120.0));
            const double ber = awgn_ber(ModulationScheme::qam(m), {xi, SnrDomain::Linear});
            CHECK(ber >= 0.0);
        }
    }
}

TEST_CASE("ber_curve grids") {
    const SnrValue lo{0.0, SnrDomain::Decibel};
    const SnrValue hi{10.0, SnrDomain::Decibel};
    const BerCurve c = ber_curve(ModulationScheme::qpsk(), lo, hi, 1.0);
    CHECK(c.size() == 11);
    CHECK(c.snr.front() == 0.0);
    CHECK(c.snr.back() == doctest::Approx(10.0));
    CHECK(c.ber.front() == doctest::Approx(0.0786496).epsilon(1e-5));

    const BerCurve fine = ber_curve(ModulationScheme::qpsk(), lo, hi, 0.1);
    CHECK(fine.size() == 101);

    CHECK_THROWS_AS(ber_curve(ModulationScheme::qpsk(), hi, lo, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(ber_curve(ModulationScheme::qpsk(), lo, hi, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(ber_curve(ModulationScheme::qpsk(), lo, hi, 5.0),
                    std::invalid_argument);  // only 3 points

    const BerCurve a = ber_curve(ModulationScheme::ask(2), lo, hi, 1.0);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.ber[i] == c.ber[i]);
}
