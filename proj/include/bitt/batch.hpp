#pragma once

#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bitt {

/// Applies `fn` to every element and collects the results in input order.
/// jobs == 1 runs the serial reference path; jobs <= 0 uses the OpenMP
/// default thread count.
template <typename T, typename Fn>
std::vector<std::string> map_ordered(const std::vector<T>& items, Fn&& fn,
                                     int jobs = 0) {
    std::vector<std::string> out(items.size());
#ifdef _OPENMP
    if (jobs != 1) {
        int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
        for (long i = 0; i < static_cast<long>(items.size()); ++i)
            out[static_cast<size_t>(i)] = fn(items[static_cast<size_t>(i)]);
        return out;
    }
#endif
    for (size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
    return out;
}

}  // namespace bitt
