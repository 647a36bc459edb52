#include "flowguard/stats.hpp"

#include <algorithm>

#include "flowguard/error.hpp"

namespace flowguard {
namespace {

double sorted_median(std::span<const double> sorted)
{
    const std::size_t n = sorted.size();
    if (n % 2 == 1)
        return sorted[n / 2];
    return (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

} // namespace

double median(std::vector<double> values)
{
    if (values.empty())
        throw Error(ErrorCode::InvalidArgument, "median of an empty sample");
    std::sort(values.begin(), values.end());
    return sorted_median(values);
}

BoxSummary box_summary(std::span<const double> values)
{
    if (values.empty())
        throw Error(ErrorCode::InvalidArgument, "box summary of an empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();

    BoxSummary box;
    box.count = n;
    box.median = sorted_median(sorted);
    // Tukey hinges: each half includes the median observation when n is odd.
    const std::size_t half = (n + 1) / 2;
    const std::span<const double> all(sorted);
    box.q1 = sorted_median(all.first(half));
    box.q3 = sorted_median(all.last(half));

    const double iqr = box.q3 - box.q1;
    const double lo_fence = box.q1 - 1.5 * iqr;
    const double hi_fence = box.q3 + 1.5 * iqr;
    box.min = box.q1;
    box.max = box.q3;
    for (double v : sorted) {
        if (v < lo_fence || v > hi_fence) {
            box.outliers.push_back(v);
            continue;
        }
        box.min = std::min(box.min, v);
        box.max = std::max(box.max, v);
    }
    return box;
}

} // namespace flowguard
