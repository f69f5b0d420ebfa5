#pragma once

#include <algorithm>
#include <vector>

namespace ratings {

/// Sum after sorting ascending. The result depends only on the multiset of
/// addends, so aggregates that are mathematically tied (same transported
/// values in a different user order) stay bit-identical and merge as ties in
/// downstream CDFs.
inline double multiset_sum(std::vector<double>& buf) {
    std::sort(buf.begin(), buf.end());
    double s = 0.0;
    for (double v : buf) s += v;
    return s;
}

}  // namespace ratings
