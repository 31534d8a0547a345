#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rspin/c2_linear.hpp"
#include "rspin/errors.hpp"
#include "rspin/hfpss.hpp"
#include "rspin/ktheory.hpp"

using namespace rspin;

namespace {

// Reduce a polynomial mod 2, dropping vanishing terms.
std::map<Monomial, int> mod2(const Polynomial& p)
{
    std::map<Monomial, int> out;
    for (const auto& [m, c] : p)
        if (c % 2 != 0)
            out[m] = 1;
    return out;
}

Polynomial times(const Polynomial& p, const Monomial& m)
{
    Polynomial out;
    for (const auto& [a, c] : p)
        out[a * m] += c;
    return out;
}

Polynomial plus(Polynomial a, const Polynomial& b)
{
    for (const auto& [m, c] : b)
        a[m] += c;
    return a;
}

const PageClass* class_at(const SpectralPage& page, int s, int t)
{
    return page.find(s, t);
}

}  // namespace

TEST_CASE("monomial bidegrees and normalization")
{
    const Monomial y{1, 0, 0}, z{0, 1, 0}, nu2{0, 0, 1};
    CHECK(y.s() == -2);
    CHECK(y.t() == 0);
    CHECK(z.s() == -1);
    CHECK(z.t() == 2);
    CHECK(nu2.t() == 4);
    CHECK(z * z == Monomial{1, 0, 1});
    CHECK((z * z).s() == (z.s() * 2));
    CHECK((Monomial{0, 1, 1}).to_string() == "znu^2");
    CHECK(Monomial{}.to_string() == "1");
    for (int s = -12; s <= 0; ++s)
        for (int t = 0; t <= 24; ++t)
            if (auto m = monomial_at(s, t)) {
                CHECK(m->s() == s);
                CHECK(m->t() == t);
            }
}

TEST_CASE("d3 generator rule")
{
    CHECK(mod2(d3(Monomial{1, 0, 0})) == std::map<Monomial, int>{{Monomial{2, 1, 0}, 1}});
    CHECK(mod2(d3(Monomial{0, 1, 0})).empty());
    CHECK(mod2(d3(Monomial{0, 0, 1})) == std::map<Monomial, int>{{Monomial{1, 1, 1}, 1}});
    CHECK(mod2(d3(Monomial{2, 0, 0})).empty());
    // z nu^2 -> z * y z nu^2 = y^2 nu^4
    CHECK(mod2(d3(Monomial{0, 1, 1})) == std::map<Monomial, int>{{Monomial{2, 0, 2}, 1}});
}

TEST_CASE("d3 matches the closed form and squares to zero mod 2")
{
    for (int a = 0; a <= 8; ++a)
        for (int e = 0; e <= 1; ++e)
            for (int c = 0; c <= 8; ++c) {
                const Monomial m{a, e, c};
                const auto image = mod2(d3(m));
                std::map<Monomial, int> expected;
                if ((a + c) % 2 == 1)
                    expected[e == 0 ? Monomial{a + 1, 1, c} : Monomial{a + 2, 0, c + 1}] = 1;
                CHECK(image == expected);
                CHECK(mod2(d3(d3(m))).empty());
                for (const auto& [target, coeff] : d3(m)) {
                    CHECK(target.s() == m.s() - 3);
                    CHECK(target.t() == m.t() + 2);
                }
            }
}

TEST_CASE("d3 obeys the Leibniz rule mod 2")
{
    for (int a1 = 0; a1 <= 3; ++a1)
        for (int c1 = 0; c1 <= 3; ++c1)
            for (int a2 = 0; a2 <= 3; ++a2)
                for (int e = 0; e <= 1; ++e) {
                    const Monomial p{a1, e, c1}, q{a2, 1 - e, 2};
                    const auto lhs = mod2(d3(p * q));
                    const auto rhs = mod2(plus(times(d3(p), q), times(d3(q), p)));
                    CHECK(lhs == rhs);
                }
}

TEST_CASE("E2 examples")
{
    const auto page = build_e2(0, DegreeWindow(-20, 40));
    const auto* y = class_at(page, -2, 0);
    REQUIRE(y != nullptr);
    CHECK(y->group == ElementaryGroup::twos());
    CHECK(y->label.to_string() == "y");
    CHECK(class_at(page, 0, 2) == nullptr);
    CHECK(e2_group(0, 0, 2).is_zero());
    CHECK(e2_group(4, -1, 2).is_zero());
    CHECK(class_at(build_e2(4, DegreeWindow(-20, 40)), -1, 2) == nullptr);
}

TEST_CASE("E2 groups equal group cohomology of the coefficients")
{
    for (int cover : {0, 2, 4, 8})
        for (int s = -20; s <= 0; ++s)
            for (int t = 0; t <= 30; ++t) {
                ElementaryGroup expected;
                if (t >= cover && t % 2 == 0) {
                    const auto m = (t % 4 == 0) ? C2Module::trivial_integers() : C2Module::sign_integers();
                    expected = cohomology_resolution(m, -s);
                }
                CHECK(e2_group(cover, s, t) == expected);
            }
}

TEST_CASE("d3 fates on cover 0")
{
    const auto e2 = resolve_d3(build_e2(0, DegreeWindow(-20, 40)));
    const auto* nu2 = class_at(e2, 0, 4);
    REQUIRE(nu2 != nullptr);
    CHECK(nu2->fate == Fate::dies_source);
    const auto* target = class_at(e2, -3, 6);
    REQUIRE(target != nullptr);
    CHECK(target->fate == Fate::dies_target);
    const auto* znu2 = class_at(e2, -1, 6);
    REQUIRE(znu2 != nullptr);
    CHECK(znu2->fate == Fate::dies_source);
    const auto* y2 = class_at(e2, -4, 0);
    REQUIRE(y2 != nullptr);
    CHECK(y2->fate == Fate::survives);

    const auto e4 = apply_d3(build_e2(0, DegreeWindow(-20, 40)));
    const auto* twice = class_at(e4, 0, 4);
    REQUIRE(twice != nullptr);
    CHECK(twice->label.to_string() == "2nu^2");
}

TEST_CASE("E-infinity examples")
{
    const auto einf = e_infinity(apply_d3(build_e2(0, DegreeWindow(-20, 40))));
    const auto* y2 = class_at(einf, -4, 0);
    REQUIRE(y2 != nullptr);
    CHECK(y2->label.to_string() == "y^2");
    CHECK(class_at(einf, -3, 6) == nullptr);

    const auto cover8 = e_infinity(apply_d3(build_e2(8, DegreeWindow(-20, 40))));
    const auto* c = class_at(cover8, -4, 8);
    REQUIRE(c != nullptr);
    CHECK(c->label.to_string() == "y^2nu^4");
}

TEST_CASE("cover 0 survivors match the documented list")
{
    const BidegreeBox box(-40, 0, 0, 80);
    const auto einf = e_infinity(apply_d3(build_e2(0, box)));
    const auto expected = cover0_documented_survivors(box);
    REQUIRE(einf.classes.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(einf.classes[i].s == expected[i].s);
        CHECK(einf.classes[i].t == expected[i].t);
        CHECK(einf.classes[i].label == expected[i].label);
        CHECK(einf.classes[i].group == expected[i].group);
    }
}

TEST_CASE("assembled homotopy of cover 0")
{
    const auto pi = hfpss_homotopy(0, DegreeWindow(-40, 40));
    CHECK(pi.at(-4) == ElementaryGroup::twos());
    CHECK(pi.at(4) == ElementaryGroup::integers());
    CHECK(pi.at(3).is_zero());
    for (int d = -40; d < 0; ++d)
        CHECK(pi.at(d) == (d % 4 == 0 ? ElementaryGroup::twos() : ElementaryGroup{}));
}

TEST_CASE("closed form delta degrees")
{
    CHECK(closed_form_delta_degrees(8, DegreeWindow(-4, 40)) == std::vector<int>{4, 0, -4});
    CHECK(closed_form_delta_degrees(0, DegreeWindow(-8, 40)) == std::vector<int>{-4, -8});
    CHECK(closed_form_delta_degrees(2, DegreeWindow(-7, 40)) == std::vector<int>{-3, -7});
    CHECK_THROWS_AS(closed_form_cover_homotopy(6, DegreeWindow(0, 10)), std::invalid_argument);
}

TEST_CASE("engine versus closed form")
{
    const DegreeWindow w(-20, 40);
    CHECK(compare_engine_vs_closed_form(0, w).empty());
    CHECK(compare_engine_vs_closed_form(8, w).empty());
    const auto diff = compare_engine_vs_closed_form(4, w);
    REQUIRE(diff.size() == 1);
    CHECK(diff[0].degree == 2);
    CHECK(diff[0].engine == ElementaryGroup::twos());
    CHECK(diff[0].closed_form.is_zero());
    CHECK(diff[0].annotation.find("boundary class") != std::string::npos);
    CHECK_THROWS_AS(compare_engine_vs_closed_form(6, w), std::invalid_argument);
}

TEST_CASE("result does not depend on the filtration floor")
{
    for (int cover : {0, 2, 4, 8, 10}) {
        const DegreeWindow w(-12, 24);
        const int floor = default_filtration_floor(cover, w);
        const auto a = assemble_homotopy(e_infinity(apply_d3(build_e2(cover, box_for_window(cover, w, floor)))), w);
        const auto b =
            assemble_homotopy(e_infinity(apply_d3(build_e2(cover, box_for_window(cover, w, floor - 24)))), w);
        CHECK(a == b);
    }
}

TEST_CASE("assembly rejects boxes that cannot reach the window")
{
    const auto page = e_infinity(apply_d3(build_e2(0, BidegreeBox(-4, 0, 0, 8))));
    CHECK_THROWS_AS(assemble_homotopy(page, DegreeWindow(-20, 40)), std::invalid_argument);
}

TEST_CASE("sign-twisted Eilenberg-Mac Lane fixed points")
{
    const auto t10 = hfp_em_sigma(10, DegreeWindow(-5, 15));
    CHECK(t10.at(9) == ElementaryGroup::twos());
    CHECK(t10.at(10).is_zero());
    CHECK(hfp_em_sigma(2, DegreeWindow(-5, 7)).at(2).is_zero());
    for (int d : {2, 6, 10, 14}) {
        const auto t = hfp_em_sigma(d, DegreeWindow(-5, d + 5));
        for (int n = -5; n <= d + 5; ++n) {
            const bool nonzero = (n % 2 != 0) && n <= d - 1;
            CHECK(t.at(n) == (nonzero ? ElementaryGroup::twos() : ElementaryGroup{}));
        }
    }
    CHECK_THROWS(hfp_em_sigma(3, DegreeWindow(0, 4)));
}

TEST_CASE("mod 2 Eilenberg-Mac Lane fixed points")
{
    CHECK(hfp_em_f2(0) == ElementaryGroup::twos());
    CHECK(hfp_em_f2(-3) == ElementaryGroup::twos());
    CHECK(hfp_em_f2(1).is_zero());
}
