#include "multfam/rational.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace multfam {

Rational make_rational(const Integer &num, const Integer &den)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(std::string_view text)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
            s.remove_prefix(1);
        }
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
            s.remove_suffix(1);
        }
        return s;
    };
    auto parse_int = [](std::string_view s) {
        if (s.empty()) {
            throw std::invalid_argument("empty integer");
        }
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) {
            throw std::invalid_argument("bad integer '" + std::string(s) + "'");
        }
        for (std::size_t j = i; j < s.size(); ++j) {
            if (s[j] < '0' || s[j] > '9') {
                throw std::invalid_argument("bad integer '" + std::string(s) + "'");
            }
        }
        std::string digits(s[0] == '+' ? s.substr(1) : s);
        return Integer(digits, 10);
    };
    text = trim(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(text));
    }
    return make_rational(parse_int(trim(text.substr(0, slash))),
                         parse_int(trim(text.substr(slash + 1))));
}

Integer floor_of(const Rational &q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil_of(const Rational &q)
{
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

std::int64_t to_i64(const Integer &z)
{
    if (!z.fits_slong_p()) {
        throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
    }
    return z.get_si();
}

std::int64_t ceil_i64(const Rational &q) { return to_i64(ceil_of(q)); }

Integer binomial(std::int64_t n, std::int64_t k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer factorial(unsigned n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Rational pow(const Rational &q, unsigned e)
{
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
    return make_rational(num, den);
}

std::string to_string(const Integer &z) { return z.get_str(); }

std::string to_string(const Rational &q)
{
    if (q.get_den() == 1) {
        return q.get_num().get_str();
    }
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

Integer pow10(long e)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
    return r;
}

Rational scale10(const Rational &a, long k)
{
    return k >= 0 ? Rational(a * pow10(k)) : Rational(a / pow10(-k));
}

Integer round_half_even(const Rational &x)
{
    Integer fl = floor_of(x);
    Rational frac = x - fl;
    const Rational half(1, 2);
    if (frac > half || (frac == half && mpz_odd_p(fl.get_mpz_t()))) {
        return fl + 1;
    }
    return fl;
}

} // namespace

std::string to_decimal(const Rational &q, int digits)
{
    if (q == 0) {
        return "0";
    }
    const bool neg = q < 0;
    const Rational a = neg ? Rational(-q) : q;
    const Integer lo = pow10(digits - 1);
    const Integer hi = pow10(digits);
    long k = 0;
    while (scale10(a, k) >= hi) {
        --k;
    }
    while (scale10(a, k) < lo) {
        ++k;
    }
    Integer n = round_half_even(scale10(a, k));
    if (n == hi) {
        --k;
        n = round_half_even(scale10(a, k));
    }
    // value = n * 10^-k
    std::string s = n.get_str();
    if (k <= 0) {
        s.append(static_cast<std::size_t>(-k), '0');
    } else {
        if (static_cast<long>(s.size()) <= k) {
            s.insert(0, static_cast<std::size_t>(k - static_cast<long>(s.size()) + 1), '0');
        }
        s.insert(s.size() - static_cast<std::size_t>(k), ".");
        while (s.back() == '0') {
            s.pop_back();
        }
        if (s.back() == '.') {
            s.pop_back();
        }
    }
    return neg ? "-" + s : s;
}

bool exact_root(const Rational &q, unsigned d, Rational &root)
{
    if (q < 0) {
        return false;
    }
    Integer rn, rd;
    if (mpz_root(rn.get_mpz_t(), q.get_num_mpz_t(), d) == 0) {
        return false;
    }
    if (mpz_root(rd.get_mpz_t(), q.get_den_mpz_t(), d) == 0) {
        return false;
    }
    root = make_rational(rn, rd);
    return true;
}

void root_bracket(const Rational &q, unsigned d, const Rational &width, Rational &lo, Rational &hi)
{
    if (q < 0) {
        throw std::domain_error("root of negative rational");
    }
    lo = 0;
    hi = q > 1 ? q : Rational(1);
    while (hi - lo > width) {
        Rational mid = (lo + hi) / 2;
        if (pow(mid, d) <= q) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

} // namespace multfam
