#include "rsolve/rational.hpp"

#include <cmath>
#include <limits>

namespace rsolve {

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view s) {
        if (s.empty()) throw Error("malformed rational '" + std::string(text) + "'");
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) throw Error("malformed rational '" + std::string(text) + "'");
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                throw Error("malformed rational '" + std::string(text) + "'");
        std::string digits(s[0] == '+' ? s.substr(1) : s);
        return Integer(digits);
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    Integer num = parse_int(text.substr(0, slash));
    Integer den = parse_int(text.substr(slash + 1));
    if (den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational from_double(double v) {
    if (!std::isfinite(v)) throw Error("cannot convert non-finite double to rational");
    Rational q;
    mpq_set_d(q.get_mpq_t(), v);
    return q;
}

double round_down(const Rational& q) {
    double d = q.get_d();
    if (!std::isfinite(d)) return d;
    if (from_double(d) > q) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
    return d;
}

double round_up(const Rational& q) {
    double d = q.get_d();
    if (!std::isfinite(d)) return d;
    if (from_double(d) < q) d = std::nextafter(d, std::numeric_limits<double>::infinity());
    return d;
}

namespace {

Rational limit_denominator(const Rational& x, const Integer& max_den) {
    if (x.get_den() <= max_den) return x;
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Integer n = x.get_num(), d = x.get_den();
    while (true) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        Integer q2 = q0 + a * q1;
        if (q2 > max_den) break;
        Integer np1 = p0 + a * p1;
        p0 = p1;
        q0 = q1;
        p1 = np1;
        q1 = q2;
        Integer nd = n - a * d;
        n = d;
        d = nd;
        if (d == 0) break;
    }
    Integer k;
    mpz_fdiv_q(k.get_mpz_t(), Integer(max_den - q0).get_mpz_t(), q1.get_mpz_t());
    Rational bound1(p0 + k * p1, q0 + k * q1);
    Rational bound2(p1, q1);
    bound1.canonicalize();
    bound2.canonicalize();
    return abs(bound2 - x) <= abs(bound1 - x) ? bound2 : bound1;
}

Rational simplest_nonneg(const Rational& lo, const Rational& hi) {
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    if (Rational(fl) == lo) return lo;
    Integer fh;
    mpz_fdiv_q(fh.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    if (fl < fh) return Rational(fl + 1);
    Rational inner = simplest_nonneg(1 / (hi - fl), 1 / (lo - fl));
    return Rational(fl) + 1 / inner;
}

}  // namespace

std::optional<Rational> reconstruct_rational(double v, std::int64_t max_den, double max_err) {
    if (!std::isfinite(v)) return std::nullopt;
    Rational exact = from_double(v);
    Rational best = limit_denominator(exact, Integer(static_cast<long>(max_den)));
    if (std::abs(Rational(best - exact).get_d()) > max_err) return std::nullopt;
    return best;
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
    if (lo > hi) return simplest_between(hi, lo);
    if (lo <= 0 && hi >= 0) return Rational(0);
    if (hi < 0) return -simplest_nonneg(-hi, -lo);
    return simplest_nonneg(lo, hi);
}

Rational rational_pow(const Rational& base, unsigned exp) {
    Rational result;
    mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), exp);
    mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), exp);
    result.canonicalize();
    return result;
}

}  // namespace rsolve
