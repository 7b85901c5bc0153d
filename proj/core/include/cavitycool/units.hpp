#pragma once

// Compile-time dimensional analysis for the SI boundary of the library.
//
// A Quantity carries integer exponents of mass, length, time and current.
// Arithmetic between quantities composes exponents; addition, subtraction
// and comparison only compile between identical dimensions. Angles are
// dimensionless, so angular frequencies (rad/s) and rates (1/s) share a type.

#include <cmath>
#include <complex>
#include <type_traits>

namespace cavitycool {

template <int M, int L, int T, int I>
struct Dimension {
    static constexpr int mass = M;
    static constexpr int length = L;
    static constexpr int time = T;
    static constexpr int current = I;
};

template <class A, class B>
using DimProduct = Dimension<A::mass + B::mass, A::length + B::length,
                             A::time + B::time, A::current + B::current>;

template <class A, class B>
using DimQuotient = Dimension<A::mass - B::mass, A::length - B::length,
                              A::time - B::time, A::current - B::current>;

using Dimensionless = Dimension<0, 0, 0, 0>;

template <class Dim, class Rep = double>
class Quantity {
public:
    using dimension = Dim;
    using rep = Rep;

    constexpr Quantity() = default;
    constexpr explicit Quantity(Rep value) : value_(value) {}

    [[nodiscard]] constexpr Rep value() const { return value_; }

    constexpr Quantity operator-() const { return Quantity(-value_); }
    constexpr Quantity& operator+=(Quantity o) { value_ += o.value_; return *this; }
    constexpr Quantity& operator-=(Quantity o) { value_ -= o.value_; return *this; }
    constexpr Quantity& operator*=(double s) { value_ *= s; return *this; }
    constexpr Quantity& operator/=(double s) { value_ /= s; return *this; }

    friend constexpr Quantity operator+(Quantity a, Quantity b) { return Quantity(a.value_ + b.value_); }
    friend constexpr Quantity operator-(Quantity a, Quantity b) { return Quantity(a.value_ - b.value_); }
    friend constexpr Quantity operator*(Quantity a, double s) { return Quantity(a.value_ * s); }
    friend constexpr Quantity operator*(double s, Quantity a) { return Quantity(s * a.value_); }
    friend constexpr Quantity operator/(Quantity a, double s) { return Quantity(a.value_ / s); }

    friend constexpr bool operator==(Quantity a, Quantity b) { return a.value_ == b.value_; }

    template <class R = Rep, class = std::enable_if_t<std::is_floating_point_v<R>>>
    friend constexpr bool operator<(Quantity a, Quantity b) { return a.value_ < b.value_; }
    template <class R = Rep, class = std::enable_if_t<std::is_floating_point_v<R>>>
    friend constexpr bool operator>(Quantity a, Quantity b) { return a.value_ > b.value_; }
    template <class R = Rep, class = std::enable_if_t<std::is_floating_point_v<R>>>
    friend constexpr bool operator<=(Quantity a, Quantity b) { return a.value_ <= b.value_; }
    template <class R = Rep, class = std::enable_if_t<std::is_floating_point_v<R>>>
    friend constexpr bool operator>=(Quantity a, Quantity b) { return a.value_ >= b.value_; }

private:
    Rep value_{};
};

template <class D1, class D2, class R1, class R2>
constexpr auto operator*(Quantity<D1, R1> a, Quantity<D2, R2> b) {
    using R = decltype(a.value() * b.value());
    if constexpr (std::is_same_v<DimProduct<D1, D2>, Dimensionless>) {
        return R(a.value() * b.value());
    } else {
        return Quantity<DimProduct<D1, D2>, R>(a.value() * b.value());
    }
}

template <class D1, class D2, class R1, class R2>
constexpr auto operator/(Quantity<D1, R1> a, Quantity<D2, R2> b) {
    using R = decltype(a.value() / b.value());
    if constexpr (std::is_same_v<DimQuotient<D1, D2>, Dimensionless>) {
        return R(a.value() / b.value());
    } else {
        return Quantity<DimQuotient<D1, D2>, R>(a.value() / b.value());
    }
}

template <class D, class R>
constexpr auto operator/(double s, Quantity<D, R> q) {
    return Quantity<DimQuotient<Dimensionless, D>, R>(s / q.value());
}

template <class D>
Quantity<D> abs(Quantity<D> q) { return Quantity<D>(std::abs(q.value())); }

template <class D>
Quantity<D> real(Quantity<D, std::complex<double>> q) { return Quantity<D>(q.value().real()); }

template <class D>
Quantity<D> imag(Quantity<D, std::complex<double>> q) { return Quantity<D>(q.value().imag()); }

// Common SI dimensions.
using Mass = Quantity<Dimension<1, 0, 0, 0>>;
using Length = Quantity<Dimension<0, 1, 0, 0>>;
using Area = Quantity<Dimension<0, 2, 0, 0>>;
using Volume = Quantity<Dimension<0, 3, 0, 0>>;
using Time = Quantity<Dimension<0, 0, 1, 0>>;
using Rate = Quantity<Dimension<0, 0, -1, 0>>;          // 1/s, also rad/s
using Wavenumber = Quantity<Dimension<0, -1, 0, 0>>;    // rad/m
using Velocity = Quantity<Dimension<0, 1, -1, 0>>;
using Momentum = Quantity<Dimension<1, 1, -1, 0>>;
using Energy = Quantity<Dimension<1, 2, -2, 0>>;
using Power = Quantity<Dimension<1, 2, -3, 0>>;
using Action = Quantity<Dimension<1, 2, -1, 0>>;
using Force = Quantity<Dimension<1, 1, -2, 0>>;
using MomentumDiffusion = Quantity<Dimension<2, 2, -3, 0>>;  // momentum^2 / time
using Permittivity = Quantity<Dimension<-1, -3, 4, 2>>;      // F/m
using Polarizability = Quantity<Dimension<-1, 0, 4, 2>>;     // C m^2 / V
using ComplexPolarizability = Quantity<Dimension<-1, 0, 4, 2>, std::complex<double>>;

}  // namespace cavitycool
