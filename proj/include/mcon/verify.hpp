#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mcon {

struct criterion_result {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Run one verification criterion (1..10).  Every tolerance is pinned in the
/// implementation; criteria 1-9 are exact, 10 is the floating probe.
criterion_result run_criterion(int id, std::uint64_t seed);

/// Suite names: cubic, gauge, elm, chart, garnier, all.
std::vector<int> suite_criteria(const std::string &suite);
std::vector<criterion_result> run_suite(const std::string &suite, std::uint64_t seed);

/// The (q, p, normalized Jacobian) samples behind criterion 10, for CSV export.
struct probe_sample {
    double q, p, value;
};
std::vector<probe_sample> symplectic_probe_samples();

} // namespace mcon
