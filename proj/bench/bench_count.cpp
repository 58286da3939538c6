// Wall-clock comparison of the parallel point-counting kernel against the
// serial reference loop, on enumeration-bound inputs (closed-form shortcuts
// excluded by construction). Counts from the two paths are also compared, so
// a disagreement shows up here as well as in the unit tests.
//
// Usage: zel-bench [max_exponent]
//   max_exponent caps log2 of the enumeration domain (default 24).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "zel/schemefile.hpp"
#include "zel/variety.hpp"

namespace {

double seconds_of(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    return dt.count();
}

struct BenchCase {
    const char* label;
    const char* text;
    std::vector<int> extensions;
    std::vector<double> domain_bits; // log2 of tuples enumerated, per extension
};

} // namespace

int main(int argc, char** argv) {
    const double max_bits = argc > 1 ? std::atof(argv[1]) : 24.0;

    const std::vector<BenchCase> cases = {
        {"plane cubic / F_2",
         "base_char 2\nbase_deg 1\nambient projective 2\nequation x1^2*x2 + x1*x2^2 - x0^3\n",
         {8, 10, 12},
         {16.0, 20.0, 24.0}},
        {"affine quadric / F_3",
         "base_char 3\nbase_deg 1\nambient affine 3\nequation x0^2 + x1^2 + x2^2 - 1\n",
         {3, 4, 5},
         {14.3, 19.0, 23.8}},
        {"torus / F_4",
         "base_char 2\nbase_deg 2\nambient affine 1\ninequation x0\n",
         {9, 10, 11},
         {18.0, 20.0, 22.0}},
    };

    std::printf("%-22s %4s %12s %12s %12s %8s\n", "case", "n", "count", "serial[s]",
                "parallel[s]", "speedup");
    bool all_equal = true;
    for (const BenchCase& bc : cases) {
        const zel::variety::SchemeSpec s = zel::schemefile::parse_scheme(bc.text);
        for (std::size_t i = 0; i < bc.extensions.size(); ++i) {
            if (bc.domain_bits[i] > max_bits) continue;
            const int n = bc.extensions[i];
            zel::Int serial_count, parallel_count;
            const double ts =
                seconds_of([&] { serial_count = zel::variety::count_points_serial(s, n); });
            const double tp = seconds_of([&] { parallel_count = zel::variety::count_points(s, n); });
            all_equal = all_equal && serial_count == parallel_count;
            std::printf("%-22s %4d %12s %12.3f %12.3f %7.2fx%s\n", bc.label, n,
                        zel::to_dec(parallel_count).c_str(), ts, tp, ts / tp,
                        serial_count == parallel_count ? "" : "  COUNTS DIFFER");
        }
    }
    if (!all_equal) {
        std::printf("kernel and reference disagree\n");
        return 1;
    }
    return 0;
}
