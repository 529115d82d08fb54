#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace tiling {

/// Exact rational number, always kept in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;

    template <std::integral I>
    Rational(I v) : q_(static_cast<long>(v))
    {
    }

    Rational(long num, long den);
    explicit Rational(mpq_class q);

    /// Accepts "p/q" or an integer, optionally signed. Decimals are rejected.
    static Rational parse(std::string_view text);

    const mpq_class & get() const { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_integer() const { return q_.get_den() == 1; }
    mpz_class floor() const;
    mpz_class ceil() const;
    int sign() const { return sgn(q_); }

    /// "p/q", or "p" when the denominator is 1.
    std::string str() const;

    Rational & operator+=(const Rational & o);
    Rational & operator-=(const Rational & o);
    Rational & operator*=(const Rational & o);
    Rational & operator/=(const Rational & o);

    friend Rational operator+(Rational a, const Rational & b) { return a += b; }
    friend Rational operator-(Rational a, const Rational & b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational & b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational & b) { return a /= b; }
    Rational operator-() const;

    friend bool operator==(const Rational & a, const Rational & b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational & a, const Rational & b)
    {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    std::size_t hash() const;

private:
    mpq_class q_;
};

std::ostream & operator<<(std::ostream & s, const Rational & r);

} // namespace tiling

template <>
struct std::hash<tiling::Rational> {
    std::size_t operator()(const tiling::Rational & r) const noexcept { return r.hash(); }
};
