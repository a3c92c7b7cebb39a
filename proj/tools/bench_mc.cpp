// Times the serial reference against the OpenMP block-parallel Monte Carlo
// kernels and checks that both produce bit-identical estimates.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "fadeber/modulation.hpp"
#include "fadeber/montecarlo.hpp"

using namespace fadeber;

namespace {

template <typename F>
double time_seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::int64_t n = 8000000;
    if (argc > 1) n = std::atoll(argv[1]);
    const double gamma = 10.0;
    const ModulationScheme qpsk = ModulationScheme::qpsk();
    auto ber_fn = [&](double xi) { return awgn_ber(qpsk, {xi, SnrDomain::Linear}); };

    McConfig cfg{12345, n, McMode::SemiAnalytic, 0};
    McEstimate serial, parallel;
    const double t_serial =
        time_seconds([&] { serial = semi_analytic_ber_serial(ber_fn, gamma, cfg); });
    const double t_parallel =
        time_seconds([&] { parallel = semi_analytic_ber(ber_fn, gamma, cfg); });
    std::printf("semi-analytic  n=%lld\n", static_cast<long long>(n));
    std::printf("  serial   %8.3f s  (%.2f Msamples/s)  mean=%.10g\n", t_serial,
                n / t_serial / 1e6, serial.mean);
    std::printf("  parallel %8.3f s  (%.2f Msamples/s)  mean=%.10g  speedup %.2fx\n",
                t_parallel, n / t_parallel / 1e6, parallel.mean, t_serial / t_parallel);
    if (serial.mean != parallel.mean || serial.std_error != parallel.std_error) {
        std::printf("MISMATCH between serial and parallel estimates\n");
        return 1;
    }

    cfg.mode = McMode::BitLevel;
    const double t_bit_serial =
        time_seconds([&] { serial = bitlevel_qpsk_ber_serial(gamma, cfg); });
    const double t_bit_parallel =
        time_seconds([&] { parallel = bitlevel_qpsk_ber(gamma, cfg); });
    std::printf("bit-level QPSK n=%lld\n", static_cast<long long>(n));
    std::printf("  serial   %8.3f s  (%.2f Msamples/s)  mean=%.10g\n", t_bit_serial,
                n / t_bit_serial / 1e6, serial.mean);
    std::printf("  parallel %8.3f s  (%.2f Msamples/s)  mean=%.10g  speedup %.2fx\n",
                t_bit_parallel, n / t_bit_parallel / 1e6, parallel.mean,
                t_bit_serial / t_bit_parallel);
    if (serial.mean != parallel.mean || serial.std_error != parallel.std_error) {
        std::printf("MISMATCH between serial and parallel estimates\n");
        return 1;
    }
    return 0;
}
