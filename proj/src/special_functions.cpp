#include "uavcov/special_functions.hpp"

#include <cmath>

namespace uavcov {

double pochhammer(double x, int k) {
    if (k < 0) throw DomainError("pochhammer: k must be >= 0");
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= x + i;
    return p;
}

double log_gamma(double x) {
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

double hyp2f1(const Hyp2F1Args& args) {
    if (args.a < 0) throw DomainError("hyp2f1: a must be a non-negative integer");
    if (!(args.z <= 0.0)) throw DomainError("hyp2f1: z must be <= 0");
    if (args.c <= 0.0 && args.c == std::floor(args.c)) {
        throw DomainError("hyp2f1: c must not be a non-positive integer");
    }
    if (args.a == 0 || args.z == 0.0) return 1.0;
    if (args.c == args.b + 1.0 && args.b > 0.0) {
        return static_cast<double>(hyp2f1_unit_shift<long double>(
            args.a, static_cast<long double>(args.b), static_cast<long double>(args.z)));
    }
    if (args.z >= -0.5) return detail::hyp2f1_series<double>(args.a, args.b, args.c, args.z);
    return detail::hyp2f1_pfaff<double>(args.a, args.b, args.c, args.z);
}

}  // namespace uavcov
