#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "radtrace/parse.hpp"
#include "radtrace/polynomial.hpp"
#include "radtrace/scalar.hpp"

#include <random>

using namespace radtrace;

namespace {

Polynomial<Rat> P(const std::string& text, const std::vector<std::string>& vars) {
    return parse_polynomial<Rat>(text, vars);
}

Monomial random_monomial(std::mt19937_64& g, int m, int maxdeg) {
    Monomial mo = Monomial::one(m);
    for (int i = 0; i < m; ++i) mo.e[i] = static_cast<int>(g() % (maxdeg + 1));
    return mo;
}

Polynomial<Rat> random_poly(std::mt19937_64& g, int m, int maxdeg, int nterms) {
    Polynomial<Rat> p(m);
    for (int t = 0; t < nterms; ++t) {
        long c = static_cast<long>(g() % 21) - 10;
        p.add_term(random_monomial(g, m, maxdeg), Rat(c));
    }
    return p;
}

}  // namespace

TEST_CASE("rational scalars stay canonical") {
    Rat a = rat_from_string("2/4");
    CHECK(a.get_num() == 1);
    CHECK(a.get_den() == 2);
    Rat b = rat_from_string("-3/6");
    CHECK(b.get_den() == 2);  // positive denominator
    CHECK(scalar_str(a * b) == "-1/4");
}

TEST_CASE("approx equality uses the relative tolerance") {
    Approx::tolerance = 1e-8;
    CHECK(Approx(1.0) == Approx(1.0 + 1e-10));
    CHECK(Approx(1.0) != Approx(1.0 + 1e-6));
    CHECK(is_zero(Approx(1e-9)));
    CHECK(!is_zero(Approx(1e-7)));
}

TEST_CASE("monomial_basis enumerates ascending") {
    auto b1 = monomial_basis(1, 2);
    REQUIRE(b1.size() == 3);
    CHECK(b1[0].degree() == 0);
    CHECK(b1[1].e == std::vector<int>{1});
    CHECK(b1[2].e == std::vector<int>{2});

    auto b2 = monomial_basis(2, 1);
    REQUIRE(b2.size() == 3);
    CHECK(b2[0].is_one());
    CHECK(b2[1].e == std::vector<int>{1, 0});
    CHECK(b2[2].e == std::vector<int>{0, 1});

    CHECK(monomial_basis(2, 2).size() == 6);
    CHECK(monomial_basis(3, 2).size() == 10);
}

TEST_CASE("graded order is total and refines degree") {
    std::mt19937_64 g(42);
    for (int trial = 0; trial < 500; ++trial) {
        Monomial a = random_monomial(g, 3, 4), b = random_monomial(g, 3, 4);
        int lt = graded_less(a, b), gt = graded_less(b, a), eq = (a == b);
        CHECK(lt + gt + eq == 1);  // exactly one of <, >, =
        if (a.degree() < b.degree()) CHECK(lt);
    }
}

TEST_CASE("polynomial product") {
    std::vector<std::string> v{"x"};
    CHECK(P("x+1", v) * P("x-1", v) == P("x^2-1", v));
    CHECK((P("x+1", v) * Polynomial<Rat>(1)).is_zero_poly());

    std::vector<std::string> v2{"x1", "x2"};
    CHECK(P("(x1+x2)^2", v2) == P("x1^2 + 2*x1*x2 + x2^2", v2));
    CHECK_THROWS_AS(P("x", v) * P("x1", v2), std::invalid_argument);
}

TEST_CASE("ring axioms hold exactly over the rationals") {
    std::mt19937_64 g(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = random_poly(g, 2, 3, 4), b = random_poly(g, 2, 3, 4), c = random_poly(g, 2, 3, 4);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
    }
}

TEST_CASE("coeff_vector") {
    std::vector<std::string> v{"x"};
    auto basis = monomial_basis(1, 2);
    auto vec = coeff_vector(P("x^2+3", v), basis);
    CHECK(vec == std::vector<Rat>{Rat(3), Rat(0), Rat(1)});

    CHECK(coeff_vector(Polynomial<Rat>(1), basis) == std::vector<Rat>(3, Rat(0)));

    std::vector<std::string> v2{"x1", "x2"};
    auto basis2 = monomial_basis(2, 2);
    auto vec2 = coeff_vector(P("2*x1*x2", v2), basis2);
    int nonzero = 0, where = -1;
    for (size_t i = 0; i < vec2.size(); ++i)
        if (!is_zero(vec2[i])) ++nonzero, where = static_cast<int>(i);
    CHECK(nonzero == 1);
    CHECK(vec2[where] == Rat(2));
    CHECK(basis2[where].e == std::vector<int>{1, 1});

    CHECK_THROWS_AS(coeff_vector(P("x^2+3", v), monomial_basis(1, 1)), std::invalid_argument);
}

TEST_CASE("coeff_vector round-trips through reconstruction") {
    std::mt19937_64 g(99);
    auto basis = monomial_basis(2, 3);
    for (int trial = 0; trial < 30; ++trial) {
        auto p = random_poly(g, 2, 1, 5);  // exponents <= 1 per var keeps degree <= 3 shapes
        if (p.degree() > 3) continue;
        auto vec = coeff_vector(p, basis);
        Polynomial<Rat> back(2);
        for (size_t i = 0; i < basis.size(); ++i) back.add_term(basis[i], vec[i]);
        CHECK(back == p);
    }
}

TEST_CASE("jacobian_det") {
    std::vector<std::string> v{"x"};
    PolySystem<Rat> f1(v, {P("x^2", v)});
    CHECK(jacobian_det(f1) == P("2*x", v));

    std::vector<std::string> v2{"x1", "x2"};
    PolySystem<Rat> f2(v2, {P("x1^2", v2), P("x2^2", v2)});
    CHECK(jacobian_det(f2) == P("4*x1*x2", v2));

    PolySystem<Rat> f3(v2, {P("x1+x2", v2), P("x1-x2", v2)});
    CHECK(jacobian_det(f3) == P("-2", v2));

    PolySystem<Rat> bad(v2, {P("x1", v2)});
    CHECK_THROWS_AS(jacobian_det(bad), std::invalid_argument);
}

TEST_CASE("exact division") {
    std::vector<std::string> v{"x", "y"};
    auto q = divide_exact(P("x^2-y^2", v), P("x-y", v));
    CHECK(q == P("x+y", v));
    CHECK_THROWS_AS(divide_exact(P("x^2+1", v), P("x-y", v)), std::runtime_error);
}

TEST_CASE("degree sentinel and system ordering") {
    std::vector<std::string> v{"x"};
    CHECK(Polynomial<Rat>(1).degree() == kDegZero);
    PolySystem<Rat> sys(v, {P("x", v), P("x^3-1", v), P("x^2", v)});
    CHECK(sys.degrees() == std::vector<int>{3, 2, 1});
    CHECK_THROWS_AS(PolySystem<Rat>(v, {P("0", v)}), std::invalid_argument);
}

TEST_CASE("parser grammar") {
    std::vector<std::string> v{"x1", "x2"};
    CHECK(P("3/2*x1^2*x2 - x2 + 1", v) ==
          P("1", v) - P("x2", v) + P("x1*x1*x2", v).scaled(rat_from_string("3/2")));
    CHECK(P("3x1", v) == P("3*x1", v));  // '*' is optional
    CHECK(P("(x1-1)^2*(x1-2)", v) == P("x1^3 - 4*x1^2 + 5*x1 - 2", v));
    CHECK_THROWS_AS(P("x1^", v), ParseError);
    CHECK_THROWS_AS(P("z+1", v), ParseError);
    CHECK_THROWS_AS(P("1.5*x1", v), ParseError);  // decimals need the approx field
    auto ap = parse_polynomial<Approx>("1.5*x1", v);
    CHECK(scalar_eq(ap.coeff(Monomial::var(0, 2)), Approx(1.5)));
}

TEST_CASE("printer round-trips through the parser") {
    std::vector<std::string> v{"x1", "x2"};
    std::mt19937_64 g(123);
    for (int trial = 0; trial < 40; ++trial) {
        auto p = random_poly(g, 2, 3, 5);
        CHECK(P(poly_str(p, v), v) == p);
    }
}
