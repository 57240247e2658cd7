#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace gvb;
using namespace gvbtest;

TEST_CASE("total derivative on jet variables and coordinates") {
    Model m = model_1y();
    GradedFunction y = jet(m, "y");
    GradedFunction y0 = jet(m, "y", {0});
    GradedFunction y00 = jet(m, "y", {0, 0});
    CHECK(total_derivative(y, 0) == y0);
    CHECK(total_derivative(GradedFunction::coord(m, 0), 0) == gf_const(m, 1));
    // d_0 (y y_0) = y_0^2 + y y_00
    CHECK(total_derivative(y * y0, 0) == y0 * y0 + y * y00);
}

TEST_CASE("total derivative on odd functions") {
    Model m = model_1c();
    GradedFunction c = jet(m, "c");
    GradedFunction c0 = jet(m, "c", {0});
    GradedFunction c00 = jet(m, "c", {0, 0});
    // d_0(c c_0) = c_0 c_0 + c c_00 = c c_00
    CHECK(total_derivative(c * c0, 0) == c * c00);
}

TEST_CASE("iterated total derivatives commute") {
    Model m = Model(ModelSpec{2, {{"y", Parity::Even}, {"c", Parity::Odd}}, {}, 10});
    GradedFunction y = jet(m, "y");
    CHECK(iterated_total_derivative(y, MultiIndex{0, 0}) == jet(m, "y", {0, 0}));
    CHECK(iterated_total_derivative(y, MultiIndex{0, 1}) ==
          iterated_total_derivative(y, MultiIndex{1, 0}));
    GradedFunction f = jet(m, "c") * jet(m, "c", {1}) * y;
    CHECK(total_derivative(total_derivative(f, 0), 1) ==
          total_derivative(total_derivative(f, 1), 0));
}

TEST_CASE("order cap converts runaway prolongation into an error") {
    Model m(ModelSpec{1, {{"y", Parity::Even}}, {}, 2});
    GradedFunction y00 = GradedFunction::jet(m, 0, MultiIndex{0, 0});
    CHECK_THROWS_AS(total_derivative(y00, 0), OrderCapError);
}

TEST_CASE("exterior differential of a fiber coordinate") {
    Model m = model_1y();
    // d(y) = theta^y + y_0 dx0
    GradedForm dy = exterior_d(GradedFunction::jet(m, 0, {}));
    CHECK(dy == theta(m, "y") + jet(m, "y", {0}) * GradedForm::dx(m, 0));
    auto pieces = contact_decompose(dy);
    REQUIRE(pieces.size() == 2);
    CHECK(pieces.at({0, 1}) == jet(m, "y", {0}) * GradedForm::dx(m, 0));
    CHECK(pieces.at({1, 0}) == theta(m, "y"));
}

TEST_CASE("exterior differential is nilpotent on sample forms") {
    Model m = model_2yc();
    std::vector<GradedForm> samples = {
        GradedForm::from_function(jet(m, "y") * jet(m, "y", {0, 1})),
        GradedForm::from_function(jet(m, "c") * jet(m, "y")),
        wedge(theta(m, "c"), GradedForm::dx(m, 0)),
        jet(m, "c") * theta(m, "y", {1}),
        wedge(theta(m, "c"), theta(m, "c")),
    };
    for (const auto& phi : samples) {
        CHECK(exterior_d(exterior_d(phi)).is_zero());
        CHECK(exterior_d(phi) == horizontal_d(phi) + vertical_d(phi));
        CHECK(horizontal_d(horizontal_d(phi)).is_zero());
        CHECK(vertical_d(vertical_d(phi)).is_zero());
        CHECK((horizontal_d(vertical_d(phi)) + vertical_d(horizontal_d(phi)))
                  .is_zero());
    }
    CHECK(exterior_d(GradedForm::dx(m, 0)).is_zero());
}

TEST_CASE("graded Leibniz rule for d") {
    Model m = model_1yc();
    GradedForm a = jet(m, "c") * theta(m, "y");   // degree 1
    GradedForm b = GradedForm::from_function(jet(m, "y", {0}));
    // d(a ^ b) = da ^ b + (-1)^{|a|} a ^ db
    CHECK(exterior_d(wedge(a, b)) ==
          wedge(exterior_d(a), b) - wedge(a, exterior_d(b)));
}

TEST_CASE("horizontal differential examples") {
    Model m = model_1y();
    GradedFunction y = jet(m, "y");
    GradedFunction y0 = jet(m, "y", {0});
    // d_H(y^2) = 2 y y_0 dx0
    CHECK(horizontal_d(y * y) ==
          gf_const(m, 2) * y * y0 * GradedForm::dx(m, 0));
    // d_H(theta^y) = dx0 ^ theta^y_0
    CHECK(horizontal_d(theta(m, "y")) ==
          wedge(GradedForm::dx(m, 0), theta(m, "y", {0})));

    Model m2 = model_2yc();
    // d_H(x0 dx1) = dx0 ^ dx1
    CHECK(horizontal_d(GradedFunction::coord(m2, 0) * GradedForm::dx(m2, 1)) ==
          wedge(GradedForm::dx(m2, 0), GradedForm::dx(m2, 1)));
}

TEST_CASE("vertical differential examples") {
    Model m = model_1yc();
    GradedFunction y = jet(m, "y");
    CHECK(vertical_d(y * y) == gf_const(m, 2) * y * theta(m, "y"));
    CHECK(vertical_d(GradedForm::dx(m, 0)).is_zero());
    CHECK(vertical_d(jet(m, "c")) == theta(m, "c"));
}

TEST_CASE("prolongation computes higher coefficients on demand") {
    Model m = model_1y();
    auto one = gf_const(m, 1);
    ContactDerivation dy = prolong(m, {}, {{0, one}});
    CHECK(dy.prolongation(0, MultiIndex{0}).is_zero());
    CHECK(dy.prolongation(0, MultiIndex{}) == one);
    ContactDerivation v = prolong(m, {}, {{0, jet(m, "y")}});
    CHECK(v.prolongation(0, MultiIndex{0}) == jet(m, "y", {0}));
    // horizontal-only derivation: the total derivative
    ContactDerivation d0 = prolong(m, {{0, one}}, {});
    CHECK(d0.is_vertical() == false);
    CHECK(d0.vertical_part().is_zero());
}

TEST_CASE("prolong validates parity homogeneity") {
    Model m = model_1yc();
    // theta^y = c is odd against an even slot: derivation parity 1; fine.
    CHECK(prolong(m, {}, {{0, jet(m, "c")}}).parity() == Parity::Odd);
    // theta^c = 1 gives parity [c]+[theta] = 0 => [theta] = 1.
    CHECK(prolong(m, {}, {{1, gf_const(m, 1)}}).parity() == Parity::Odd);
    // inconsistent slots: theta^y = 1 (parity 0) with theta^c = 1 (parity 1)
    CHECK_THROWS_AS(prolong(m, {}, {{0, gf_const(m, 1)}, {1, gf_const(m, 1)}}),
                    DomainError);
    // inhomogeneous coefficient
    CHECK_THROWS_AS(prolong(m, {}, {{0, gf_const(m, 1) + jet(m, "c")}}),
                    DomainError);
}

TEST_CASE("interior product pairs against the contact basis") {
    Model m = model_2yc();
    auto one = gf_const(m, 1);
    // del_0 -| omega = omega_0 and del_1 -| omega = -dx0 (signed deletion)
    ContactDerivation d0 = prolong(m, {{0, one}}, {});
    ContactDerivation d1 = prolong(m, {{1, one}}, {});
    CHECK(interior_product(d0, GradedForm::omega(m)) == GradedForm::dx(m, 1));
    CHECK(interior_product(d1, GradedForm::omega(m)) == -GradedForm::dx(m, 0));
    // del_y -| theta^y = 1
    ContactDerivation dy = prolong(m, {}, {{0, one}});
    CHECK(interior_product(dy, theta(m, "y")) ==
          GradedForm::from_function(one));
    // contact generators vanish against horizontal derivations
    CHECK(interior_product(d0, theta(m, "y")).is_zero());
}

TEST_CASE("interior product satisfies its Leibniz extension") {
    Model m = model_2yc();
    std::vector<ContactDerivation> ds = {
        prolong(m, {}, {{0, jet(m, "y", {0})}}),
        prolong(m, {}, {{1, gf_const(m, 2)}}),
        prolong(m, {{0, jet(m, "c")}}, {}),
    };
    std::vector<GradedForm> forms = {
        theta(m, "y"),
        wedge(theta(m, "c"), GradedForm::dx(m, 1)),
        jet(m, "c") * GradedForm::dx(m, 0),
    };
    for (const auto& d : ds) {
        const int dp = static_cast<int>(d.parity());
        for (const auto& a : forms) {
            for (const auto& b : forms) {
                auto ga = grading(a);
                if (ga.size() != 1) continue;
                const int e = ga[0].degree + static_cast<int>(ga[0].parity) * dp;
                GradedForm rhs = wedge(interior_product(d, a), b);
                GradedForm tail = wedge(a, interior_product(d, b));
                rhs = (e % 2 != 0) ? rhs - tail : rhs + tail;
                CHECK(interior_product(d, wedge(a, b)) == rhs);
            }
        }
    }
}

TEST_CASE("interior product twice by an even derivation vanishes") {
    Model m = model_2yc();
    // parity-even derivation with nontrivial pairing
    ContactDerivation v = prolong(m, {{0, jet(m, "y")}}, {{0, jet(m, "y", {1})}});
    REQUIRE(v.parity() == Parity::Even);
    GradedForm phi = wedge(wedge(theta(m, "y"), theta(m, "y", {0})),
                           GradedForm::omega(m));
    CHECK(interior_product(v, interior_product(v, phi)).is_zero());
}

TEST_CASE("Lie derivative via the Cartan formula") {
    Model m = model_1y();
    auto one = gf_const(m, 1);
    ContactDerivation dy = prolong(m, {}, {{0, one}});
    // L_{del_y}(y omega) = omega
    GradedForm y_omega = jet(m, "y") * GradedForm::omega(m);
    CHECK(lie_derivative(dy, y_omega) == GradedForm::omega(m));
    // L commutes with d
    GradedForm phi = jet(m, "y", {0}) * theta(m, "y");
    CHECK(lie_derivative(dy, exterior_d(phi)) ==
          exterior_d(lie_derivative(dy, phi)));
}

TEST_CASE("vertical contact derivations satisfy the d_H exchange relations") {
    Model m = model_2yc();
    std::vector<ContactDerivation> ds = {
        prolong(m, {}, {{0, jet(m, "y", {1})}}),
        prolong(m, {}, {{1, jet(m, "y")}}),
        prolong(m, {}, {{0, jet(m, "c")}, {1, jet(m, "y")}}),
    };
    std::vector<GradedForm> forms = {
        theta(m, "y"),
        jet(m, "c") * theta(m, "c", {0}),
        wedge(theta(m, "y"), GradedForm::dx(m, 1)),
        GradedForm::from_function(jet(m, "y") * jet(m, "c")),
    };
    for (const auto& d : ds) {
        REQUIRE(d.is_vertical());
        for (const auto& phi : forms) {
            CHECK((interior_product(d, horizontal_d(phi)) +
                   horizontal_d(interior_product(d, phi)))
                      .is_zero());
            CHECK((lie_derivative(d, horizontal_d(phi)) -
                   horizontal_d(lie_derivative(d, phi)))
                      .is_zero());
        }
    }
}
