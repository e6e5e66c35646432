// Prints one line per acceptance criterion; exit status 0 iff all pass.
#include "thhcalc/acceptance.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv)
{
    std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240611;
    int failed = 0;
    for (int k = 1; k <= thh::criterion_count; ++k) {
        auto c = thh::run_criterion(k, seed);
        std::printf("criterion %2d %-30s %s  (%zu cases, %.2fs)\n", k, c.name.c_str(), c.passed ? "PASS" : "FAIL",
                    c.cases, c.seconds);
        if (!c.passed) {
            ++failed;
            for (const auto& r : c.reports)
                for (const auto& f : r.failures)
                    std::printf("    %s: %s\n", r.id.c_str(), f.c_str());
        }
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria pass\n", thh::criterion_count - failed, thh::criterion_count);
    return failed ? 1 : 0;
}
