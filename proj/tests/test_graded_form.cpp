#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace gvb;
using namespace gvbtest;

namespace {

int swap_exponent(const GradedForm& a, const GradedForm& b, const Model& m) {
    // |a||b| + [a][b] for homogeneous forms, from the grading report.
    auto ga = grading(a);
    auto gb = grading(b);
    REQUIRE(ga.size() == 1);
    REQUIRE(gb.size() == 1);
    (void)m;
    return ga[0].degree * gb[0].degree +
           static_cast<int>(ga[0].parity) * static_cast<int>(gb[0].parity);
}

}  // namespace

TEST_CASE("repeated even-parity generators vanish") {
    Model m = model_2yc();
    GradedForm dx0 = GradedForm::dx(m, 0);
    CHECK(wedge(dx0, dx0).is_zero());
    GradedForm ty = theta(m, "y");
    CHECK(wedge(ty, ty).is_zero());
}

TEST_CASE("odd-field contact generators commute and do not square to zero") {
    Model m = model_2yc();
    GradedForm tc = theta(m, "c");
    GradedForm tc0 = theta(m, "c", {0});
    CHECK_FALSE(wedge(tc, tc).is_zero());
    CHECK(wedge(tc, tc0) == wedge(tc0, tc));
}

TEST_CASE("dx anticommutes with theta of an even field") {
    Model m = model_2yc();
    GradedForm dx0 = GradedForm::dx(m, 0);
    GradedForm ty = theta(m, "y");
    CHECK(wedge(dx0, ty) == -wedge(ty, dx0));
}

TEST_CASE("wedge swap law holds on homogeneous samples") {
    Model m = model_2yc();
    GradedFunction c = jet(m, "c");
    std::vector<GradedForm> samples = {
        GradedForm::dx(m, 0),
        GradedForm::dx(m, 1),
        theta(m, "y"),
        theta(m, "c"),
        theta(m, "c", {0, 1}),
        wedge(GradedForm::dx(m, 0), theta(m, "c")),
        GradedForm::from_function(c),
        c * theta(m, "y"),
    };
    for (const auto& a : samples) {
        for (const auto& b : samples) {
            const int e = swap_exponent(a, b, m);
            GradedForm rhs = wedge(b, a);
            if (e % 2 != 0) rhs = -rhs;
            CHECK(wedge(a, b) == rhs);
        }
    }
}

TEST_CASE("wedge is associative and bilinear") {
    Model m = model_2yc();
    GradedForm a = theta(m, "c") + GradedForm::dx(m, 0);
    GradedForm b = jet(m, "c") * theta(m, "y") - GradedForm::dx(m, 1);
    GradedForm c = theta(m, "c", {1}) + GradedForm::from_function(jet(m, "y"));
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    CHECK(wedge(a + b, c) == wedge(a, c) + wedge(b, c));
}

TEST_CASE("grading reports degree, parity, bidegree per piece") {
    Model m2 = model_2yc();
    auto g = grading(GradedForm::omega(m2));
    REQUIRE(g.size() == 1);
    CHECK(g[0] == GradingEntry{2, Parity::Even, 0, 2});

    Model m1 = model_1yc();
    // theta^c ^ omega (n = 1, c odd): degree 2, parity 1, bidegree (1,1)
    auto g2 = grading(wedge(theta(m1, "c"), GradedForm::omega(m1)));
    REQUIRE(g2.size() == 1);
    CHECK(g2[0] == GradingEntry{2, Parity::Odd, 1, 1});

    // c * dx0: degree 1, parity 1, bidegree (0,1)
    auto g3 = grading(jet(m1, "c") * GradedForm::dx(m1, 0));
    REQUIRE(g3.size() == 1);
    CHECK(g3[0] == GradingEntry{1, Parity::Odd, 0, 1});
}

TEST_CASE("contact decomposition splits by bidegree and reassembles") {
    Model m = model_1yc();
    GradedForm phi = wedge(theta(m, "y"), GradedForm::dx(m, 0)) +
                     jet(m, "y") * GradedForm::dx(m, 0) +
                     theta(m, "c");
    auto pieces = contact_decompose(phi);
    CHECK(pieces.size() == 3);
    CHECK(pieces.count({1, 1}) == 1);
    CHECK(pieces.count({0, 1}) == 1);
    CHECK(pieces.count({1, 0}) == 1);
    GradedForm sum = GradedForm::zero(m);
    for (const auto& [km, piece] : pieces) sum = sum + piece;
    CHECK(sum == phi);
    // projectors are idempotent and orthogonal
    CHECK(h_contact(h_contact(phi, 1), 1) == h_contact(phi, 1));
    CHECK(h_contact(h_contact(phi, 1), 0).is_zero());
}

TEST_CASE("odd coefficient crossing an odd theta flips sign") {
    Model m = model_1yc();
    GradedFunction c = jet(m, "c");
    GradedForm tc = theta(m, "c");
    // theta^c ^ c = - c ^ theta^c  (both parity-odd, degrees 1 and 0)
    CHECK(wedge(tc, GradedForm::from_function(c)) ==
          -wedge(GradedForm::from_function(c), tc));
}

TEST_CASE("form equality is canonical") {
    Model m = model_2yc();
    GradedForm a = wedge(theta(m, "c"), GradedForm::dx(m, 0));
    GradedForm b = -wedge(GradedForm::dx(m, 0), theta(m, "c"));
    CHECK(a == b);
    CHECK((a - a).is_zero());
}
