#pragma once

#include <omp.h>

#include <vector>

namespace gempic {

template <class Body>
std::vector<double> Coupling::particle_loop(std::size_t N, int nacc, Body&& body) const
{
    const std::size_t width = static_cast<std::size_t>(nacc) * grid().M;
    std::vector<double> acc(width, 0.0);
    const int nt = backend_ == Backend::OpenMP ? omp_get_max_threads() : 1;
    if (nt <= 1) {
        for (std::size_t p = 0; p < N; ++p) body(p, acc.data());
        return acc;
    }
    std::vector<std::vector<double>> local(static_cast<std::size_t>(nt), std::vector<double>(width, 0.0));
    const long n = static_cast<long>(N);
#pragma omp parallel num_threads(nt)
    {
        double* mine = local[static_cast<std::size_t>(omp_get_thread_num())].data();
#pragma omp for schedule(static)
        for (long p = 0; p < n; ++p) body(static_cast<std::size_t>(p), mine);
    }
    for (const auto& l : local)
        for (std::size_t i = 0; i < width; ++i) acc[i] += l[i];
    return acc;
}

}  // namespace gempic
