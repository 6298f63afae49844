// Compares the parallel rapid-growth diagnostics kernel against the serial
// reference on a synthetic deep system. Usage: bench_diagnostics [stages] [width].

#include <villab/core_model.hpp>
#include <villab/ratios.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>

using namespace villab;

namespace {

VilladsenSystem make_system(std::size_t stages, std::size_t width, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> mult(1, 5), ev(0, 2);
    VilladsenSystem sys;
    sys.seed.dim = 2;
    sys.seed.strata.push_back({"square", 2});
    sys.u1.assign(width, BigInt(1));
    for (std::size_t n = 1; n < stages; ++n) {
        LevelData lvl{IntMatrix(width, width), IntMatrix(width, width)};
        for (std::size_t i = 0; i < width; ++i)
            for (std::size_t j = 0; j < width; ++j) {
                lvl.M(i, j) = mult(rng);
                lvl.E(i, j) = ev(rng);
            }
        sys.levels.push_back(lvl);
    }
    sys.validate();
    return sys;
}

template <typename F>
double time_ms(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t stages = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 24;
    std::size_t width = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 4;
    VilladsenSystem sys = make_system(stages, width, 12345);

    RapidGrowthReport serial, parallel;
    double t_serial = time_ms([&] { serial = rapid_growth_report_serial(sys); });
    double t_parallel = time_ms([&] { parallel = rapid_growth_report(sys); });

    bool agree = serial.verdict == parallel.verdict &&
                 serial.delta_min == parallel.delta_min &&
                 serial.last_stage_quantity == parallel.last_stage_quantity &&
                 serial.pairs.size() == parallel.pairs.size();
    for (std::size_t i = 0; agree && i < serial.pairs.size(); ++i)
        agree = serial.pairs[i].pushforward_gap_sup == parallel.pairs[i].pushforward_gap_sup &&
                serial.pairs[i].cauchy_over_u == parallel.pairs[i].cauchy_over_u &&
                serial.pairs[i].cauchy_over_u_tilde == parallel.pairs[i].cauchy_over_u_tilde;

    std::cout << "stages=" << stages << " width=" << width << "\n"
              << "serial:   " << t_serial << " ms\n"
              << "parallel: " << t_parallel << " ms\n"
              << "speedup:  " << (t_parallel > 0 ? t_serial / t_parallel : 0.0) << "x\n"
              << "results " << (agree ? "identical" : "DIFFER") << "\n";
    return agree ? 0 : 1;
}
