#pragma once

#include <cstddef>
#include <string>

namespace domcone {

/// An exponent p in [2, infinity]. Infinity is a distinct state and never
/// enters arithmetic as a floating-point infinity.
class Exponent {
public:
    /// Throws ErrorCode::invalid_argument unless 2 <= p < inf.
    static Exponent finite(double p);
    static Exponent infinity() noexcept { return Exponent(0.0, true); }

    bool is_infinite() const noexcept { return infinite_; }
    /// Finite value; throws for p = infinity.
    double value() const;
    /// Value or +inf, for reporting only.
    double value_or_inf() const noexcept;

    std::string to_string() const;

    bool operator==(const Exponent&) const = default;

private:
    Exponent(double p, bool inf) noexcept : p_(p), infinite_(inf) {}
    double p_;
    bool infinite_;
};

/// alpha = (n + p - 2) / (p - 1), alpha = 1 at p = infinity.
double alpha_from_p(std::size_t n, const Exponent& p);

/// p = (n + alpha - 2) / (alpha - 1); infinity when alpha - 1 <= 1e-14.
/// Requires alpha in [1, n] up to 1e-12.
Exponent p_from_alpha(std::size_t n, double alpha);

/// Sobolev threshold n (p - 1) / (n - 1); +inf at p = infinity.
double sobolev_threshold(std::size_t n, const Exponent& p);

} // namespace domcone
