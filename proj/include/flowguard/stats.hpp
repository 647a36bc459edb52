#pragma once

#include <span>
#include <vector>

namespace flowguard {

// Median of an unsorted sample; the mean of the central pair for even sizes.
// Precondition: non-empty.
double median(std::vector<double> values);

// Box-plot summary with Tukey hinges. `min`/`max` are the whisker ends, i.e.
// the most extreme observations inside the 1.5 IQR fences; anything beyond the
// fences is listed in `outliers` (ascending).
struct BoxSummary {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    std::vector<double> outliers;
    std::size_t count = 0;

    friend bool operator==(const BoxSummary&, const BoxSummary&) = default;
};

BoxSummary box_summary(std::span<const double> values);

} // namespace flowguard
