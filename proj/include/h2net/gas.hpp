#pragma once

// Pointwise mixture thermodynamics for a hydrogen / natural-gas blend and the
// closed-form steady pipe solution of the isothermal Euler equations with the
// inertia term dropped.
//
// All quantities are in consistent user units. Every function is a template on
// the scalar type so the formulas can be checked in extended precision.

#include <cmath>
#include <limits>
#include <string>

#include "h2net/errors.hpp"

namespace h2net {

/// Squared sound speeds of the pure gases plus network-wide pipe defaults.
///
/// sigma2 = R_S * T with T = 283.15 K, R_S(H2) = 4124.2 J/(kg K) and
/// R_S(NG) = 518.26 J/(kg K).
struct GasConstants {
    double sigma2_h2 = 4124.2 * 283.15;
    double sigma2_ng = 518.26 * 283.15;
    double diameter = 1.0;
    double friction = 0.01;

    bool operator==(const GasConstants&) const = default;
};

/// Geometry and friction of one pipe.
struct Pipe {
    double length = 1.0;
    double diameter = 1.0;
    double friction = 0.01;

    /// lambda_Fr * L / D
    double resistance() const { return friction * length / diameter; }
};

struct Densities {
    double rho_ng;
    double rho_h2;
};

namespace detail {

template <typename Scalar>
void check_composition(Scalar eta, const char* what)
{
    if (!(eta >= Scalar(0) && eta <= Scalar(1))) {
        throw DomainError(std::string(what) + " must lie in [0,1], got " +
                          std::to_string(static_cast<double>(eta)));
    }
}

}  // namespace detail

/// Affine extension of the mixture sound speed to all real eta. Used by the
/// residual, whose iterates are not box constrained.
template <typename Scalar>
Scalar sigma_affine(Scalar eta, const GasConstants& gas)
{
    return eta * Scalar(gas.sigma2_h2) + (Scalar(1) - eta) * Scalar(gas.sigma2_ng);
}

/// Squared sound speed of a mixture with hydrogen mass fraction eta.
template <typename Scalar>
Scalar sigma(Scalar eta, const GasConstants& gas)
{
    detail::check_composition(eta, "composition");
    return sigma_affine(eta, gas);
}

/// Signed pressure-loss coefficient written in terms of the compositions at the
/// two end nodes. The upstream composition is selected by the sign of q; q == 0
/// takes the foot, like q > 0.
template <typename Scalar>
Scalar sigma_tilde_affine(Scalar eta_foot, Scalar eta_head, Scalar q, const Pipe& pipe,
                          const GasConstants& gas)
{
    const Scalar upstream = q >= Scalar(0) ? eta_foot : eta_head;
    return -Scalar(pipe.resistance()) * sigma_affine(upstream, gas);
}

template <typename Scalar>
Scalar sigma_tilde(Scalar eta_foot, Scalar eta_head, Scalar q, const Pipe& pipe,
                   const GasConstants& gas)
{
    detail::check_composition(eta_foot, "foot composition");
    detail::check_composition(eta_head, "head composition");
    return sigma_tilde_affine(eta_foot, eta_head, q, pipe, gas);
}

/// p_head^2 - p_foot^2 for a pipe carrying mixture flow q.
template <typename Scalar>
Scalar pressure_drop_squared(Scalar eta_foot, Scalar eta_head, Scalar q, const Pipe& pipe,
                             const GasConstants& gas)
{
    using std::abs;
    return sigma_tilde(eta_foot, eta_head, q, pipe, gas) * q * abs(q);
}

/// Length at which p^2 reaches zero when the pipe inlet pressure is p0 and the
/// flow q runs from the inlet downstream. Infinite when q <= 0.
template <typename Scalar>
Scalar critical_length(Scalar p0, Scalar eta, Scalar q, double diameter, double friction,
                       const GasConstants& gas)
{
    if (!(p0 > Scalar(0))) {
        throw DomainError("inlet pressure must be positive");
    }
    const Scalar s = sigma(eta, gas);
    if (!(q > Scalar(0))) {
        return std::numeric_limits<Scalar>::infinity();
    }
    const Scalar denom = Scalar(friction / diameter) * s * q * q;
    if (denom == Scalar(0)) {
        return std::numeric_limits<Scalar>::infinity();
    }
    return p0 * p0 / denom;
}

/// Partial densities for a given mixture pressure and composition, inverting
/// p = sigma(eta) * rho.
template <typename Scalar>
Densities recover_densities(Scalar p, Scalar eta, const GasConstants& gas)
{
    if (!(p > Scalar(0))) {
        throw DomainError("pressure must be positive");
    }
    const Scalar rho = p / sigma(eta, gas);
    return {static_cast<double>((Scalar(1) - eta) * rho), static_cast<double>(eta * rho)};
}

/// Mixture pressure from partial densities.
inline double pressure_from_densities(const Densities& d, const GasConstants& gas)
{
    return d.rho_h2 * gas.sigma2_h2 + d.rho_ng * gas.sigma2_ng;
}

/// Inlet state of a single pipe; pressure_at evaluates the steady profile.
struct PipeState {
    double p0;
    double q;
    double eta;

    /// p(x) = sqrt(p0^2 - (lambda_Fr/D) sigma(eta) q|q| x)
    double pressure_at(double x, const Pipe& pipe, const GasConstants& gas) const
    {
        const double p2 = p0 * p0 - pipe.friction / pipe.diameter * sigma(eta, gas) * q * std::abs(q) * x;
        if (!(p2 > 0.0)) {
            throw InfeasibleError("pressure vanishes inside the pipe", {}, x,
                                  critical_length(p0, eta, q, pipe.diameter, pipe.friction, gas));
        }
        return std::sqrt(p2);
    }
};

}  // namespace h2net
