#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lindyn/cert_real.hpp"
#include "lindyn/exp_sum.hpp"

#include <cmath>

using namespace lindyn;

namespace {
double to_d(const Rational& q) { return q.convert_to<double>(); }
}  // namespace

TEST_CASE("rational parsing and rendering") {
    CHECK(parse_rational("7/24") == Rational(7, 24));
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("5") == Rational(5));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-1.5") == Rational(-3, 2));
    CHECK(to_string(Rational(7, 24)) == "7/24");
    CHECK(to_decimal_string(Rational(1, 4), 3) == "0.250");
    CHECK(to_decimal_string(Rational(-1, 8), 3) == "-0.125");
    CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("pow_int handles negative exponents") {
    CHECK(pow_int(Rational(1, 2), -3) == Rational(8));
    CHECK(pow_int(Rational(2), 10) == Rational(1024));
    CHECK(pow_int(Rational(5), 0) == Rational(1));
}

TEST_CASE("interval arithmetic keeps the true value enclosed") {
    CertReal a(Rational(1, 3), Rational(1, 100));
    CertReal b(Rational(2, 5), Rational(1, 50));
    CertReal sum = a + b;
    CHECK(sum.lower() <= Rational(1, 3) + Rational(2, 5));
    CHECK(sum.upper() >= Rational(1, 3) + Rational(2, 5));
    CertReal prod = a * b;
    CHECK(prod.lower() <= Rational(2, 15));
    CHECK(prod.upper() >= Rational(2, 15));
    CertReal q = a / b;
    CHECK(q.lower() <= Rational(5, 6));
    CHECK(q.upper() >= Rational(5, 6));
    CHECK_THROWS(a / CertReal(Rational(0), Rational(1)));
}

TEST_CASE("exp_point brackets e and stays sharp") {
    CertReal e1 = exp_point(Rational(1), 80);
    double e = std::exp(1.0);
    CHECK(to_d(e1.lower()) <= e);
    CHECK(to_d(e1.upper()) >= e);
    CHECK(e1.rad < Rational(Int(1), Int(1) << 60));

    CertReal em = exp_point(Rational(-1), 80);
    CHECK(to_d(em.lower()) <= std::exp(-1.0));
    CHECK(to_d(em.upper()) >= std::exp(-1.0));

    // larger argument still certified
    CertReal big = exp_point(Rational(-50), 80);
    CHECK(big.lower() > 0);
    CHECK(to_d(big.upper()) >= std::exp(-50.0));
    CHECK(to_d(big.lower()) <= std::exp(-50.0) * 1.000001);
}

TEST_CASE("nth_root certifies rational roots") {
    CertReal r = nth_root(Rational(1, 4), 2, 70);
    CHECK(r.lower() <= Rational(1, 2));
    CHECK(r.upper() >= Rational(1, 2));
    CHECK(r.rad < Rational(Int(1), Int(1) << 69));

    CertReal c = nth_root(Rational(2), 2, 70);
    double s = std::sqrt(2.0);
    CHECK(to_d(c.lower()) <= s);
    CHECK(to_d(c.upper()) >= s);
}

TEST_CASE("pow_rational: integer exponents are exact, fractional certified") {
    CertReal exact = pow_rational(Rational(3, 2), Rational(3), 60);
    CHECK(exact.exact());
    CHECK(exact.mid == Rational(27, 8));

    CertReal half = pow_rational(Rational(2), Rational(1, 2), 70);
    double s = std::sqrt(2.0);
    CHECK(to_d(half.lower()) <= s);
    CHECK(to_d(half.upper()) >= s);

    CertReal neg = pow_rational(Rational(4), Rational(-1, 2), 70);
    CHECK(to_d(neg.lower()) <= 0.5);
    CHECK(to_d(neg.upper()) >= 0.5);
}

TEST_CASE("exp sums compare symbolically") {
    // e^{-1}(1 - e^{-1}) vs (1 - e^{-1}) e^{-1}: identical term maps
    ExpSum lhs = ExpSum::term(Rational(1), Rational(-1)) - ExpSum::term(Rational(1), Rational(-2));
    ExpSum rhs = ExpSum::term(Rational(1), Rational(-1)).scaled(Rational(1)) -
                 ExpSum::term(Rational(1), Rational(-2));
    CHECK((lhs - rhs).is_zero());
    CHECK(compare(lhs, rhs) == 0);

    // 1 - e^{-1} > 1/2
    ExpSum m(Rational(1));
    m -= ExpSum::term(Rational(1), Rational(-1));
    CHECK(compare(m, ExpSum(Rational(1, 2))) == 1);
    CHECK(compare(m, ExpSum(Rational(1))) == -1);

    // scaling shifts exponents: (e^{-2}) == (e^{-1} scaled by e^{-1})
    ExpSum a = ExpSum::term(Rational(3), Rational(-2));
    ExpSum b = ExpSum::term(Rational(3), Rational(-1)).scaled(Rational(1), Rational(-1));
    CHECK((a - b).is_zero());
}

TEST_CASE("pow_cert endpoint powers") {
    CertReal x = CertReal::from_bounds(Rational(1, 2), Rational(3, 4));
    CertReal y = pow_cert(x, 2);
    CHECK(y.lower() == Rational(1, 4));
    CHECK(y.upper() == Rational(9, 16));
}
