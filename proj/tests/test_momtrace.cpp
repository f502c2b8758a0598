#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "radtrace/pipeline.hpp"
#include "support/oracles.hpp"

using namespace radtrace;
using oracles::system_of;

namespace {

QuotientData<Rat> setup(const std::vector<std::string>& vars,
                        const std::vector<std::string>& polys, bool at_infinity = false) {
    auto F = system_of(vars, polys);
    return quotient_setup(F, degree_bounds(F.degrees(), F.nvars(), at_infinity));
}

std::vector<Rat> explicit_y(const QuotientData<Rat>& qd,
                            const std::vector<std::pair<std::string, Rat>>& entries) {
    std::vector<Rat> y(qd.columns.size(), Rat(0));
    for (auto& [mono_text, v] : entries) {
        auto p = parse_polynomial<Rat>(mono_text, qd.system.vars);
        y[qd.col_index.at(p.terms.begin()->first)] = v;
    }
    return y;
}

bool matrix_is(const DenseMatrix<Rat>& m, std::initializer_list<std::initializer_list<int>> want) {
    if (m.rows() != static_cast<int>(want.size())) return false;
    int i = 0;
    for (auto& r : want) {
        if (m.cols() != static_cast<int>(r.size())) return false;
        int j = 0;
        for (auto v : r)
            if (m(i, j++) != Rat(v)) return false;
        ++i;
    }
    return true;
}

}  // namespace

TEST_CASE("moment data for the double root") {
    auto qd = setup({"x"}, {"x^2"});
    REQUIRE(qd.dimension == 2);
    auto md = moment_from_y(qd, explicit_y(qd, {{"x", Rat(1)}}));
    CHECK(matrix_is(md.moment, {{0, 1}, {1, 0}}));
    CHECK(md.rank == 2);
    CHECK(md.gorenstein);
    // extension rows beyond the basis vanish: x^2 and x^3 lie in the ideal
    for (int c = 0; c < 2; ++c) {
        CHECK(is_zero(md.extension(qd.col_index.at(Monomial(std::vector<int>{2})), c)));
        CHECK(is_zero(md.extension(qd.col_index.at(Monomial(std::vector<int>{3})), c)));
    }
    CHECK((qd.mac * md.extension).all_zero());
}

TEST_CASE("moment matrix is Hankel-symmetric for sampled kernel vectors") {
    auto qd = setup({"x", "y"}, {"x^2-1", "y^2-1"});
    auto md = sample_moment(qd, 7);
    int n = qd.dimension;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CHECK(md.moment(i, j) == md.moment(j, i));
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    if (qd.basis[i].times(qd.basis[j]) == qd.basis[k].times(qd.basis[l]))
                        CHECK(md.moment(i, j) == md.moment(k, l));
        }
    CHECK((qd.mac * md.extension).all_zero());
}

TEST_CASE("kernel extension is the unique one (second elimination route)") {
    auto qd = setup({"x"}, {"(x-1)^2*(x-2)"});
    auto md = sample_moment(qd, 3);
    // columns of mac at pivot monomials form an invertible block A; solving
    // A * R = -B * M reproduces the stored rows
    std::vector<int> pivot_cols, basis_cols = qd.basis_cols;
    for (auto& piv : qd.pivots) pivot_cols.push_back(qd.col_index.at(piv));
    std::vector<int> all_rows(qd.mac.rows());
    for (int i = 0; i < qd.mac.rows(); ++i) all_rows[i] = i;
    auto a_blk = qd.mac.submatrix(all_rows, pivot_cols);
    auto b_blk = qd.mac.submatrix(all_rows, basis_cols);
    auto rhs = b_blk * md.moment;
    for (int i = 0; i < rhs.rows(); ++i)
        for (int j = 0; j < rhs.cols(); ++j) rhs(i, j) = -rhs(i, j);
    auto r2 = solve_right(a_blk, rhs);
    for (size_t p = 0; p < qd.pivots.size(); ++p) {
        int row = qd.col_index.at(qd.pivots[p]);
        for (int c = 0; c < qd.dimension; ++c)
            CHECK(md.extension(row, c) == r2(static_cast<int>(p), c));
    }
}

TEST_CASE("non-Gorenstein detection on the fat point") {
    auto qd = setup({"x", "y"}, {"x^2", "x*y", "y^2"});
    REQUIRE(qd.dimension == 3);
    for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
        auto md = sample_moment(qd, seed);
        CHECK(md.rank == 2);
        CHECK(!gorenstein_test(md, qd.dimension));
        REQUIRE(md.alpha.size() == 2);
        CHECK(qd.basis[md.alpha[0]].is_one());
    }
    auto gor = setup({"x"}, {"x^2"});
    CHECK(gorenstein_test(sample_moment(gor, 1), gor.dimension));
    auto ci = setup({"x1", "x2"}, {"x1^2", "x2^2"});
    CHECK(gorenstein_test(sample_moment(ci, 1), ci.dimension));
}

TEST_CASE("dual basis and generalized Jacobian on worked fixtures") {
    auto qd = setup({"x"}, {"x^2"});
    auto md = moment_from_y(qd, explicit_y(qd, {{"x", Rat(1)}}));
    auto td = dual_basis_and_jacobian(md, qd);
    CHECK(td.jac == parse_polynomial<Rat>("2*x", {"x"}));
    CHECK(td.jac == qd.normal_form(jacobian_det(qd.system)));

    auto q2 = setup({"x1", "x2"}, {"x1^2", "x2^2"});
    auto m2 = moment_from_y(q2, explicit_y(q2, {{"x1*x2", Rat(1)}}));
    REQUIRE(m2.rank == 4);
    auto t2 = dual_basis_and_jacobian(m2, q2);
    CHECK(t2.jac == parse_polynomial<Rat>("4*x1*x2", {"x1", "x2"}));
    CHECK(t2.jac == q2.normal_form(jacobian_det(q2.system)));

    // non-Gorenstein: the Jacobian comes from the selected 2x2 minor
    auto q3 = setup({"x", "y"}, {"x^2", "x*y", "y^2"});
    auto m3 = moment_from_y(q3, explicit_y(q3, {{"x", Rat(1)}}));
    REQUIRE(m3.rank == 2);
    REQUIRE(m3.alpha == std::vector<int>{0, 1});
    auto t3 = dual_basis_and_jacobian(m3, q3);
    CHECK(t3.jac == parse_polynomial<Rat>("2*x", {"x", "y"}));
    trace_matrices(t3, m3, q3);
    CHECK(matrix_is(t3.trace, {{2, 0}, {0, 0}}));
}

TEST_CASE("syl rows over the working-degree columns") {
    auto qd = setup({"x"}, {"x^2"});
    auto rows = syl_B(parse_polynomial<Rat>("2*x", {"x"}), qd);
    REQUIRE(rows.rows() == 2);
    // row 0: coefficients of 1 * 2x ; row 1: of x * 2x
    CHECK(rows(0, qd.col_index.at(Monomial(std::vector<int>{1}))) == Rat(2));
    CHECK(rows(1, qd.col_index.at(Monomial(std::vector<int>{2}))) == Rat(2));
    auto unit = syl_B(Polynomial<Rat>::constant(Rat(1), 1), qd);
    CHECK(unit(0, qd.col_index.at(Monomial::one(1))) == Rat(1));
    CHECK(unit(1, qd.col_index.at(Monomial(std::vector<int>{1}))) == Rat(1));
    CHECK(syl_B(Polynomial<Rat>(1), qd).all_zero());
    CHECK_THROWS_AS(syl_B(parse_polynomial<Rat>("x^9", {"x"}), qd), std::invalid_argument);
}

TEST_CASE("matrices of traces are y-independent and match the oracle") {
    struct Fixture {
        std::vector<std::string> vars, polys;
    };
    std::vector<Fixture> fixtures = {
        {{"x"}, {"x^2"}},
        {{"x"}, {"x^2-1"}},
        {{"x1", "x2"}, {"x1^2", "x2^2"}},
        {{"x"}, {"(x-1)^2*(x-2)"}},
    };
    for (auto& f : fixtures) {
        auto F = system_of(f.vars, f.polys);
        PipelineOptions opts;
        opts.at_infinity = false;
        for (std::uint64_t seed : {1ULL, 5ULL}) {
            opts.seed = seed;
            auto res = radical_pipeline(F, opts);
            // independent route: multiplication matrix of J against the moment matrix
            auto mj = oracles::mult_matrix(res.qd, res.traces.jac);
            auto t2 = mj * res.moment.moment;
            CHECK(res.traces.trace == t2);
            // and the fully independent trace oracle
            CHECK(res.traces.trace == oracles::trace_matrix_oracle(res.qd));
            for (int i = 0; i < res.traces.trace.rows(); ++i)
                for (int j = 0; j < i; ++j)
                    CHECK(res.traces.trace(i, j) == res.traces.trace(j, i));
        }
    }
}

TEST_CASE("worked trace values") {
    PipelineOptions opts;
    opts.at_infinity = false;
    auto r1 = radical_pipeline(system_of({"x"}, {"x^2"}), opts);
    CHECK(matrix_is(r1.traces.trace, {{2, 0}, {0, 0}}));
    CHECK(matrix_is(r1.traces.trace_shift[0], {{0, 0}, {0, 0}}));

    auto r2 = radical_pipeline(system_of({"x"}, {"x^2-1"}), opts);
    CHECK(matrix_is(r2.traces.trace, {{2, 0}, {0, 2}}));

    auto r3 = radical_pipeline(system_of({"x1", "x2"}, {"x1^2", "x2^2"}), opts);
    REQUIRE(r3.traces.trace.rows() == 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(r3.traces.trace(i, j) == (i == 0 && j == 0 ? Rat(4) : Rat(0)));
}

TEST_CASE("radical multiplication matrices and generators") {
    PipelineOptions opts;
    opts.at_infinity = false;

    auto r1 = radical_pipeline(system_of({"x"}, {"x^2"}), opts);
    REQUIRE(r1.radical.basis_tilde.size() == 1);
    CHECK(r1.radical.basis_tilde[0].is_one());
    CHECK(matrix_is(r1.radical.mult[0], {{0}}));
    bool has_x = false;
    for (auto& g : r1.radical.generators)
        if (g == parse_polynomial<Rat>("x", {"x"})) has_x = true;
    CHECK(has_x);

    auto r2 = radical_pipeline(system_of({"x"}, {"x^2-1"}), opts);
    REQUIRE(r2.radical.basis_tilde.size() == 2);
    CHECK(matrix_is(r2.radical.mult[0], {{0, 1}, {1, 0}}));
    // the only relation is the input itself: the ideal is already radical
    for (auto& g : r2.radical.generators)
        CHECK(oracles::ideal_member(g, r2.qd.system, 3));

    auto r3 = radical_pipeline(system_of({"x", "y"}, {"x^2", "x*y", "y^2"}), opts);
    REQUIRE(r3.radical.basis_tilde.size() == 1);
    CHECK(r3.radical.basis_tilde[0].is_one());
    CHECK(matrix_is(r3.radical.mult[0], {{0}}));
    CHECK(matrix_is(r3.radical.mult[1], {{0}}));
    bool saw_x = false, saw_y = false;
    for (auto& g : r3.radical.generators) {
        if (g == parse_polynomial<Rat>("x", {"x", "y"})) saw_x = true;
        if (g == parse_polynomial<Rat>("y", {"x", "y"})) saw_y = true;
        // every generator vanishes at the unique root (0, 0)
        CHECK(is_zero(g.evaluate({Rat(0), Rat(0)})));
    }
    CHECK(saw_x);
    CHECK(saw_y);
}

TEST_CASE("multiplication matrices commute and have square-free minimal polynomials") {
    PipelineOptions opts;
    opts.at_infinity = false;
    auto res = radical_pipeline(system_of({"x", "y"}, {"x^2-1", "y^2-4"}), opts);
    REQUIRE(res.radical.basis_tilde.size() == 4);
    auto& mx = res.radical.mult[0];
    auto& my = res.radical.mult[1];
    CHECK(mx * my == my * mx);
    CHECK(oracles::squarefree_poly(oracles::minimal_polynomial(mx)));
    CHECK(oracles::squarefree_poly(oracles::minimal_polynomial(my)));
    // rank of the trace matrix counts the distinct common roots
    CHECK(rank(res.traces.trace) == 4);
}

TEST_CASE("trace rank matches between the reduced and full algebras") {
    auto qd = setup({"x", "y"}, {"x^2", "x*y", "y^2"});
    PipelineOptions opts;
    opts.at_infinity = false;
    auto res = radical_pipeline(qd.system, opts);
    CHECK(res.traces.trace.rows() == 2);  // trace matrix over the selected sub-basis
    CHECK(rank(res.traces.trace) == 1);
    CHECK(rank(oracles::trace_matrix_oracle(qd)) == 1);
}

TEST_CASE("forcing the full basis on a Gorenstein fixture reproduces the result") {
    PipelineOptions opts;
    opts.at_infinity = false;
    auto plain = radical_pipeline(system_of({"x1", "x2"}, {"x1^2", "x2^2"}), opts);
    PipelineOptions forced = opts;
    forced.force_full_alpha = true;
    auto f = radical_pipeline(system_of({"x1", "x2"}, {"x1^2", "x2^2"}), forced);
    CHECK(plain.radical.basis_tilde == f.radical.basis_tilde);
    for (int k = 0; k < 2; ++k) CHECK(plain.radical.mult[k] == f.radical.mult[k]);
    CHECK(plain.traces.trace == f.traces.trace);
}

TEST_CASE("square-system shortcut agrees with the trace pipeline") {
    PipelineOptions opts;
    opts.at_infinity = false;
    for (auto& sys : {system_of({"x"}, {"x^2"}), system_of({"x"}, {"x^2-1"}),
                      system_of({"x1", "x2"}, {"x1^2", "x2^2"})}) {
        auto res = radical_pipeline(sys, opts);
        auto sc = jacobian_shortcut(res.qd);
        CHECK(sc.basis_tilde == res.radical.basis_tilde);
        for (size_t k = 0; k < sc.mult.size(); ++k) CHECK(sc.mult[k] == res.radical.mult[k]);
    }
    auto over = setup({"x", "y"}, {"x^2", "x*y", "y^2"});
    CHECK_THROWS_AS(jacobian_shortcut(over), std::invalid_argument);
}

TEST_CASE("root extraction") {
    PipelineOptions opts;
    opts.at_infinity = false;
    opts.compute_roots = true;

    auto r1 = radical_pipeline(system_of({"x"}, {"x^2-1"}), opts);
    REQUIRE(r1.radical.roots.size() == 2);
    CHECK(std::abs(r1.radical.roots[0][0] - std::complex<double>(-1, 0)) < 1e-8);
    CHECK(std::abs(r1.radical.roots[1][0] - std::complex<double>(1, 0)) < 1e-8);

    auto r2 = radical_pipeline(system_of({"x"}, {"x^2"}), opts);
    REQUIRE(r2.radical.roots.size() == 1);
    CHECK(std::abs(r2.radical.roots[0][0]) < 1e-8);

    auto r3 = radical_pipeline(system_of({"x1", "x2"}, {"x1^2", "x2^2"}), opts);
    REQUIRE(r3.radical.roots.size() == 1);
    CHECK(std::abs(r3.radical.roots[0][0]) < 1e-8);
    CHECK(std::abs(r3.radical.roots[0][1]) < 1e-8);

    // complex pair
    auto r4 = radical_pipeline(system_of({"x"}, {"x^2+1"}), opts);
    REQUIRE(r4.radical.roots.size() == 2);
    CHECK(std::abs(r4.radical.roots[0][0] - std::complex<double>(0, -1)) < 1e-8);
    CHECK(std::abs(r4.radical.roots[1][0] - std::complex<double>(0, 1)) < 1e-8);
}

TEST_CASE("unit ideal short-circuit") {
    auto F = system_of({"x"}, {"x+1", "x"});
    PipelineOptions opts;  // default at_infinity=true gives k=1, delta=2
    auto res = radical_pipeline(F, opts);
    CHECK(res.unit_ideal);
    CHECK(res.qd.dimension == 0);
    CHECK(res.qd.bounds.basis_degree == 1);
    CHECK(res.qd.bounds.truncation_degree == 2);
    REQUIRE(res.radical.generators.size() == 1);
    CHECK(res.radical.generators[0] == Polynomial<Rat>::constant(Rat(1), 1));
}

TEST_CASE("radical generators have a power inside the ideal") {
    PipelineOptions opts;
    opts.at_infinity = false;
    for (auto& sys :
         {system_of({"x"}, {"x^2"}), system_of({"x", "y"}, {"x^2", "x*y", "y^2"})}) {
        auto res = radical_pipeline(sys, opts);
        for (auto& g : res.radical.generators) {
            Polynomial<Rat> power = g;
            for (int i = 1; i < res.qd.dimension; ++i) power = power * g;
            CHECK(oracles::ideal_member(power, sys, 3));
        }
    }
}
