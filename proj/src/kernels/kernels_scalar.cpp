#include "uavcov/kernels/kernels.hpp"

namespace uavcov::kernels::scalar {

void laplace_integrand(std::span<const double> path_arg, std::span<const double> weight,
                       double s, int m, int k, std::span<double> out) {
    const double md = static_cast<double>(m);
    for (std::size_t i = 0; i < path_arg.size(); ++i) {
        const double my = md * path_arg[i];
        const double inv = 1.0 / (my + s);
        const double q = my * inv;
        const double g = md * inv;
        double v = weight[i];
        for (int j = 0; j < m; ++j) v *= q;
        for (int j = 0; j < k; ++j) v *= g;
        out[i] = v;
    }
}

double interference_alpha2(std::span<const double> gain, std::span<const double> dist_sq) {
    double sum = 0.0;
    for (std::size_t i = 0; i < gain.size(); ++i) sum += gain[i] / dist_sq[i];
    return sum;
}

}  // namespace uavcov::kernels::scalar
