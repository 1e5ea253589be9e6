#include "uavcov/jet.hpp"

#include "uavcov/errors.hpp"

namespace uavcov {

Jet::Jet(int order) {
    if (order < 0) throw DomainError("jet order must be >= 0");
    coeffs_.assign(static_cast<std::size_t>(order) + 1, 0.0);
}

Jet::Jet(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) throw DomainError("jet needs at least one coefficient");
}

Jet Jet::constant(double value, int order) {
    Jet j(order);
    j.coeffs_[0] = value;
    return j;
}

Jet Jet::variable(double point, int order) {
    Jet j(order);
    j.coeffs_[0] = point;
    if (order >= 1) j.coeffs_[1] = 1.0;
    return j;
}

double Jet::derivative(int k) const {
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= i;
    return coeff(k) * factorial;
}

void Jet::require_same_order(const Jet& rhs) const {
    if (rhs.order() != order()) throw DomainError("jet order mismatch");
}

Jet& Jet::operator+=(const Jet& rhs) {
    require_same_order(rhs);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
    require_same_order(rhs);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
    return *this;
}

Jet& Jet::operator*=(const Jet& rhs) {
    require_same_order(rhs);
    std::vector<double> out(coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        for (std::size_t j = 0; i + j < coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
    coeffs_ = std::move(out);
    return *this;
}

Jet& Jet::operator*=(double scale) {
    for (double& c : coeffs_) c *= scale;
    return *this;
}

Jet Jet::pow(int exponent) const {
    if (exponent < 0) throw DomainError("jet pow: exponent must be >= 0");
    const int n = order();
    if (exponent == 0) return constant(1.0, n);

    const double f0 = coeffs_[0];
    if (f0 != 0.0) {
        // g = f^p  =>  f g' = p f' g, solved order by order.
        Jet g(n);
        double g0 = 1.0;
        for (int i = 0; i < exponent; ++i) g0 *= f0;
        g.coeffs_[0] = g0;
        for (int k = 1; k <= n; ++k) {
            double acc = 0.0;
            for (int j = 1; j <= k; ++j) {
                acc += (static_cast<double>(exponent) * j - (k - j)) * coeffs_[static_cast<std::size_t>(j)] *
                       g.coeffs_[static_cast<std::size_t>(k - j)];
            }
            g.coeffs_[static_cast<std::size_t>(k)] = acc / (k * f0);
        }
        return g;
    }

    Jet result = constant(1.0, n);
    Jet base = *this;
    for (int e = exponent; e > 0; e >>= 1) {
        if (e & 1) result *= base;
        if (e > 1) base *= base;
    }
    return result;
}

}  // namespace uavcov
