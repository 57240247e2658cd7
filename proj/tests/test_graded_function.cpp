#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace gvb;
using namespace gvbtest;

TEST_CASE("odd generators anticommute and square to zero") {
    Model m = model_1cd();
    GradedFunction c = jet(m, "c");
    GradedFunction d = jet(m, "d");
    // d * c -> -(c * d) in canonical order
    CHECK(d * c == -(c * d));
    CHECK((c * c).is_zero());
    CHECK((c * d + d * c).is_zero());
}

TEST_CASE("like terms collect exactly") {
    Model m = model_1y();
    GradedFunction y = jet(m, "y");
    CHECK(gf_const(m, 2) * y + gf_const(m, 3) * y == gf_const(m, 5) * y);
    CHECK((y - y).is_zero());
    // zero test is structural: empty term list
    CHECK((y * gf_const(m, 0)).is_zero());
}

TEST_CASE("mixed products keep scalars commutative") {
    Model m = model_1yc();
    GradedFunction y = jet(m, "y");
    GradedFunction c = jet(m, "c");
    CHECK(y * c == c * y);
    CHECK((y * c) * c == GradedFunction::zero(m));
}

TEST_CASE("left jet partial on odd words uses the interior-product sign") {
    Model m = model_1c();
    GradedFunction c = jet(m, "c");
    GradedFunction c_t = jet(m, "c", {0});
    const int cf = *m.find_field("c");
    // del_c (c * c_t) = c_t : position 0, sign +1
    CHECK(left_jet_partial(c * c_t, cf, MultiIndex{}) == c_t);
    // del_{c_t} (c * c_t) = -c : position 1, sign -1
    CHECK(left_jet_partial(c * c_t, cf, MultiIndex{0}) == -c);
}

TEST_CASE("left jet partial on even variables is the plain derivative") {
    Model m = model_1y();
    const int yf = *m.find_field("y");
    GradedFunction y = jet(m, "y");
    GradedFunction y0 = jet(m, "y", {0});
    GradedFunction y00 = jet(m, "y", {0, 0});
    // del_y (1/2 (y_0)^2) = 0 : variable absent
    CHECK(left_jet_partial(gf_const(m, 1, 2) * y0 * y0, yf, MultiIndex{})
              .is_zero());
    // del_{y_00} (y_00 * y) = y : linear occurrence
    CHECK(left_jet_partial(y00 * y, yf, MultiIndex{0, 0}) == y);
    // del_{y_0} (1/2 (y_0)^2) = y_0
    CHECK(left_jet_partial(gf_const(m, 1, 2) * y0 * y0, yf, MultiIndex{0}) == y0);
}

TEST_CASE("base partial sees only explicit coordinate dependence") {
    Model m = model_1y();
    GradedFunction x0 = GradedFunction::coord(m, 0);
    GradedFunction y = jet(m, "y");
    GradedFunction y0 = jet(m, "y", {0});
    CHECK(base_partial(x0 * y, 0) == y);
    CHECK(base_partial(y0, 0).is_zero());
    const ScalarPoly exp_x = ScalarPoly::atom(
        Atom::func(*m.find_function("exp"), ScalarPoly::atom(Atom::coord(0))));
    GradedFunction f = GradedFunction::from_scalar(exp_x, m);
    CHECK(base_partial(f, 0) == f);
}

TEST_CASE("left jet partial satisfies the graded Leibniz rule") {
    Model m = model_1cd();
    const int cf = *m.find_field("c");
    GradedFunction c = jet(m, "c");
    GradedFunction d = jet(m, "d");
    GradedFunction c0 = jet(m, "c", {0});
    // f odd (parity 1), g odd: del_c(f g) = del_c f g - f del_c g
    GradedFunction f = c0;
    GradedFunction g = c * d;  // parity 0
    auto lhs = left_jet_partial(f * g, cf, MultiIndex{});
    auto rhs = left_jet_partial(f, cf, MultiIndex{}) * g -
               f * left_jet_partial(g, cf, MultiIndex{});
    CHECK(lhs == rhs);
}

TEST_CASE("odd partials anticommute and are nilpotent") {
    Model m = model_1cd();
    const int cf = *m.find_field("c");
    const int df = *m.find_field("d");
    GradedFunction f = jet(m, "c") * jet(m, "d") * jet(m, "c", {0});
    auto dc_dd = left_jet_partial(left_jet_partial(f, df, MultiIndex{}), cf, MultiIndex{});
    auto dd_dc = left_jet_partial(left_jet_partial(f, cf, MultiIndex{}), df, MultiIndex{});
    CHECK((dc_dd + dd_dc).is_zero());
    auto twice = left_jet_partial(left_jet_partial(f, cf, MultiIndex{}), cf, MultiIndex{});
    CHECK(twice.is_zero());
}

TEST_CASE("parity bookkeeping") {
    Model m = model_1yc();
    GradedFunction y = jet(m, "y");
    GradedFunction c = jet(m, "c");
    CHECK(y.homogeneous_parity() == Parity::Even);
    CHECK(c.homogeneous_parity() == Parity::Odd);
    CHECK((y + c).homogeneous_parity() == std::nullopt);
    CHECK((y + c).parity_part(Parity::Odd) == c);
    CHECK((y + c).parity_part(Parity::Even) == y);
    CHECK(GradedFunction::zero(m).homogeneous_parity() == Parity::Even);
}

TEST_CASE("mismatched models are rejected") {
    Model a = model_1y();
    Model b = model_1y();
    CHECK_THROWS_AS(jet(a, "y") * jet(b, "y"), DomainError);
    CHECK_THROWS_AS(jet(a, "y") + jet(b, "y"), DomainError);
}
