#pragma once

#include <span>
#include <vector>

namespace uavcov {

/// Truncated power series about an expansion point s0:
/// coeff(k) = f^(k)(s0) / k! for k = 0..order. Arithmetic is exact
/// truncated-series algebra.
class Jet {
public:
    explicit Jet(int order);
    explicit Jet(std::vector<double> coefficients);

    static Jet constant(double value, int order);
    /// The identity function s evaluated at `point`: (point, 1, 0, ...).
    static Jet variable(double point, int order);

    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    double coeff(int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    double& coeff(int k) { return coeffs_.at(static_cast<std::size_t>(k)); }
    std::span<const double> coefficients() const noexcept { return coeffs_; }

    double value() const noexcept { return coeffs_.front(); }
    /// k-th derivative at the expansion point, coeff(k) * k!.
    double derivative(int k) const;

    Jet& operator+=(const Jet& rhs);
    Jet& operator-=(const Jet& rhs);
    Jet& operator*=(const Jet& rhs);
    Jet& operator*=(double scale);

    friend Jet operator+(Jet lhs, const Jet& rhs) { return lhs += rhs; }
    friend Jet operator-(Jet lhs, const Jet& rhs) { return lhs -= rhs; }
    friend Jet operator*(Jet lhs, const Jet& rhs) { return lhs *= rhs; }
    friend Jet operator*(Jet lhs, double rhs) { return lhs *= rhs; }
    friend Jet operator*(double lhs, Jet rhs) { return rhs *= lhs; }

    /// Integer power. Uses the J.C.P. Miller recurrence when the constant
    /// term is non-zero, repeated squaring otherwise.
    Jet pow(int exponent) const;

private:
    void require_same_order(const Jet& rhs) const;

    std::vector<double> coeffs_;
};

}  // namespace uavcov
