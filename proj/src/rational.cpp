#include <tiling/errors.hpp>
#include <tiling/rational.hpp>

#include <cctype>
#include <ostream>

namespace tiling {

Rational::Rational(long num, long den)
{
    if (den == 0)
        throw InputError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q))
{
    if (q_.get_den() == 0)
        throw InputError("rational with zero denominator");
    q_.canonicalize();
}

namespace {
    bool all_digits(std::string_view s)
    {
        if (s.empty())
            return false;
        for (char c : s)
            if (! std::isdigit(static_cast<unsigned char>(c)))
                return false;
        return true;
    }
}

Rational Rational::parse(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (! body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (! all_digits(num) || ! all_digits(den))
        throw InputError("not an exact fraction (expected p/q or an integer): '" + std::string(text) + "'");

    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0)
        throw InputError("zero denominator in '" + std::string(text) + "'");
    if (negative)
        n = -n;
    return Rational(mpq_class(n, d));
}

mpz_class Rational::floor() const
{
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

mpz_class Rational::ceil() const
{
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

std::string Rational::str() const
{
    if (is_integer())
        return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational & Rational::operator+=(const Rational & o)
{
    q_ += o.q_;
    return *this;
}

Rational & Rational::operator-=(const Rational & o)
{
    q_ -= o.q_;
    return *this;
}

Rational & Rational::operator*=(const Rational & o)
{
    q_ *= o.q_;
    return *this;
}

Rational & Rational::operator/=(const Rational & o)
{
    if (o.q_ == 0)
        throw InvariantError("division by zero rational");
    q_ /= o.q_;
    return *this;
}

Rational Rational::operator-() const
{
    return Rational(mpq_class(-q_));
}

std::size_t Rational::hash() const
{
    return std::hash<std::string>{}(str());
}

std::ostream & operator<<(std::ostream & s, const Rational & r)
{
    return s << r.str();
}

} // namespace tiling
