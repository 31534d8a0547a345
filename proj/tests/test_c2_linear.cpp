#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rspin/c2_linear.hpp"
#include "rspin/errors.hpp"

using namespace rspin;

namespace {

// Checks every postcondition of a Smith normal form result.
SNFResult checked_snf(const IntMatrix& m)
{
    const auto r = smith_normal_form(m);
    REQUIRE(r.left * m * r.right == r.diagonal_matrix);
    const auto det_l = determinant(r.left);
    const auto det_r = determinant(r.right);
    CHECK((det_l == 1 || det_l == -1));
    CHECK((det_r == 1 || det_r == -1));
    const int k = std::min(m.rows(), m.cols());
    REQUIRE(static_cast<int>(r.diagonal.size()) == k);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            CHECK(r.diagonal_matrix(i, j) == (i == j ? r.diagonal[i] : 0));
    for (int i = 0; i < k; ++i) {
        CHECK(r.diagonal[i] >= 0);
        if (i + 1 < k && r.diagonal[i] != 0)
            CHECK(r.diagonal[i + 1] % r.diagonal[i] == 0);
        if (r.diagonal[i] == 0 && i + 1 < k)
            CHECK(r.diagonal[i + 1] == 0);
    }
    return r;
}

// Sums of trivial, sign and swap blocks, conjugated by a random unimodular
// matrix; the torsion block is the same construction reduced mod 2.
C2Module random_module(std::mt19937& rng, int index)
{
    std::uniform_int_distribution<int> size(0, 3);
    const int a = size(rng);
    const int b = size(rng);

    auto random_unimodular = [&](int n) {
        IntMatrix u = IntMatrix::identity(n);
        std::uniform_int_distribution<int> pick(0, std::max(0, n - 1));
        std::uniform_int_distribution<int> mult(-2, 2);
        for (int step = 0; step < 4 && n > 1; ++step) {
            const int i = pick(rng), j = pick(rng);
            if (i == j)
                continue;
            IntMatrix e = IntMatrix::identity(n);
            e(i, j) = mult(rng);
            u = e * u;
        }
        return u;
    };
    // L u R = I for unimodular u, so u^{-1} = R L.
    auto inverse = [&](const IntMatrix& u) {
        const auto r = smith_normal_form(u);
        return r.right * r.left;
    };
    auto random_involution = [&](int n, bool mod2) {
        IntMatrix base(n, n);
        std::uniform_int_distribution<int> kind(0, 2);
        int i = 0;
        while (i < n) {
            const int k = kind(rng);
            if (k == 2 && i + 1 < n) {
                base(i, i + 1) = 1;
                base(i + 1, i) = 1;
                i += 2;
            } else {
                base(i, i) = (k == 1 && !mod2) ? -1 : 1;
                ++i;
            }
        }
        const auto u = random_unimodular(n);
        auto conj = u * base * inverse(u);
        return mod2 ? conj.reduced_mod2() : conj;
    };
    return C2Module("random" + std::to_string(index), random_involution(a, false), random_involution(b, true));
}

}  // namespace

TEST_CASE("smith normal form examples")
{
    CHECK(checked_snf(IntMatrix::identity(2)).diagonal == std::vector<std::int64_t>{1, 1});
    CHECK(checked_snf(IntMatrix{{2, 4}, {0, 2}}).diagonal == std::vector<std::int64_t>{2, 2});
    CHECK(checked_snf(IntMatrix(2, 3)).diagonal == std::vector<std::int64_t>{0, 0});
    CHECK(checked_snf(IntMatrix{{2, 0}, {0, 3}}).diagonal == std::vector<std::int64_t>{1, 6});
    CHECK(checked_snf(IntMatrix{{0, 0, 0}, {0, 0, 5}}).diagonal == std::vector<std::int64_t>{5, 0});
}

TEST_CASE("smith normal form on random matrices")
{
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> dim(1, 5);
    std::uniform_int_distribution<int> entry(-6, 6);
    for (int trial = 0; trial < 300; ++trial) {
        IntMatrix m(dim(rng), dim(rng));
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                m(i, j) = entry(rng);
        const auto r = checked_snf(m);
        if (m.is_square()) {
            std::int64_t prod = 1;
            for (auto d : r.diagonal)
                prod *= d;
            const auto det = determinant(m);
            CHECK(prod == (det < 0 ? -det : det));
        }
        CHECK(rank_mod2(m) <= r.rank());
    }
}

TEST_CASE("module validation")
{
    CHECK_THROWS_AS(C2Module("bad", IntMatrix{{2}}, IntMatrix(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(C2Module("bad", IntMatrix(0, 0), IntMatrix{{0, 1}, {0, 0}}), std::invalid_argument);
    // squares to the identity only after reduction mod 2
    CHECK_NOTHROW(C2Module("ok", IntMatrix(0, 0), IntMatrix{{1, 1}, {0, 1}}));
    CHECK_NOTHROW(C2Module("ok", IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{1}}));
}

TEST_CASE("cohomology closed form examples")
{
    CHECK(cohomology_closed_form(Coefficients::Z_triv, 0) == ElementaryGroup::integers());
    CHECK(cohomology_closed_form(Coefficients::Z_sgn, 0).is_zero());
    CHECK(cohomology_closed_form(Coefficients::Z_sgn, 3) == ElementaryGroup::twos());
    CHECK(cohomology_closed_form(Coefficients::F2, 7) == ElementaryGroup::twos());
}

TEST_CASE("cohomology resolution examples")
{
    CHECK(cohomology_resolution(C2Module::trivial_integers(), 2) == ElementaryGroup::twos());
    CHECK(cohomology_resolution(C2Module::sign_integers(), 4).is_zero());
    CHECK(cohomology_resolution(C2Module::sign_integers(), 3) == ElementaryGroup::twos());
    const auto sum = direct_sum(C2Module::trivial_integers(), C2Module::sign_integers());
    CHECK(cohomology_resolution(sum, 1) == ElementaryGroup::twos());
    // the regular representation is induced, so its higher cohomology vanishes
    CHECK(cohomology_resolution(C2Module::regular(), 0) == ElementaryGroup::integers());
    for (int s = 1; s <= 6; ++s)
        CHECK(cohomology_resolution(C2Module::regular(), s).is_zero());
}

TEST_CASE("closed forms agree with the resolution oracle")
{
    for (auto c : {Coefficients::Z_triv, Coefficients::Z_sgn, Coefficients::F2})
        for (int s = 0; s <= 50; ++s)
            CHECK(cohomology_closed_form(c, s) == cohomology_resolution(standard_module(c), s));
}

TEST_CASE("random modules: periodicity and additivity")
{
    std::mt19937 rng(424242);
    std::vector<C2Module> modules;
    for (int i = 0; i < 100; ++i)
        modules.push_back(random_module(rng, i));
    for (int i = 0; i < 100; ++i) {
        const auto& m = modules[i];
        for (int s = 1; s <= 6; ++s)
            CHECK(cohomology_resolution(m, s) == cohomology_resolution(m, s + 2));
        const auto& other = modules[(i * 37 + 11) % 100];
        const auto sum = direct_sum(m, other);
        for (int s = 0; s <= 5; ++s)
            CHECK(cohomology_resolution(sum, s) == cohomology_resolution(m, s) + cohomology_resolution(other, s));
    }
}
