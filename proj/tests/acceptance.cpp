// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "rspin/abp.hpp"
#include "rspin/c2_linear.hpp"
#include "rspin/hfpss.hpp"
#include "rspin/ktheory.hpp"
#include "rspin/series.hpp"

using namespace rspin;

namespace {

struct Failure {
    std::string why;
};

void expect(bool ok, const std::string& why)
{
    if (!ok)
        throw Failure{why};
}

const ElementaryGroup kZ = ElementaryGroup::integers();
const ElementaryGroup kZ2 = ElementaryGroup::twos();
const ElementaryGroup k0{};

// ---- 1, 2 -------------------------------------------------------------------

void poincare_identity()
{
    const auto report = verify_poincare_identity(500);
    expect(report.main.holds(), "main identity fails at degree " +
                                    std::to_string(report.main.first_offending_degree.value_or(-1)));
    for (int d = 0; d <= 500; ++d)
        expect(report.main.difference[d] == 0, "nonzero coefficient at " + std::to_string(d));
}

void quotient_consistency()
{
    const int n = 500;
    const auto a = named_series(NamedSeries::A, n);
    expect(named_series(NamedSeries::A_mod_A1, n) * named_series(NamedSeries::A1, n) == a, "P_ko P_A1 != P_A");
    expect(named_series(NamedSeries::A_mod_E1, n) * named_series(NamedSeries::E1, n) == a, "P_A//E1 P_E1 != P_A");
    expect(named_series(NamedSeries::E2ku, n) ==
               named_series(NamedSeries::BC2, n) * named_series(NamedSeries::A_mod_E1, n),
           "P_E2 != P_BC2 P_A//E1");
    for (const auto& c : verify_poincare_identity(n).consistency)
        expect(c.holds(), c.name + " fails");
}

// ---- 3 ----------------------------------------------------------------------

C2Module random_module(std::mt19937& rng, int index)
{
    std::uniform_int_distribution<int> size(0, 3);
    auto involution = [&](int n, bool mod2) {
        IntMatrix base(n, n);
        std::uniform_int_distribution<int> kind(0, 2);
        for (int i = 0; i < n;) {
            const int k = kind(rng);
            if (k == 2 && i + 1 < n) {
                base(i, i + 1) = base(i + 1, i) = 1;
                i += 2;
            } else {
                base(i, i) = (k == 1 && !mod2) ? -1 : 1;
                ++i;
            }
        }
        IntMatrix u = IntMatrix::identity(n);
        std::uniform_int_distribution<int> mult(-2, 2);
        for (int step = 0; step < 4 && n > 1; ++step) {
            const int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
            if (i == j)
                continue;
            IntMatrix e = IntMatrix::identity(n);
            e(i, j) = mult(rng);
            u = e * u;
        }
        const auto snf = smith_normal_form(u);
        const auto conj = u * base * (snf.right * snf.left);
        return mod2 ? conj.reduced_mod2() : conj;
    };
    const int a = size(rng), b = size(rng);
    return C2Module("random" + std::to_string(index), involution(a, false), involution(b, true));
}

void cohomology_agreement()
{
    for (auto c : {Coefficients::Z_triv, Coefficients::Z_sgn, Coefficients::F2})
        for (int s = 0; s <= 50; ++s)
            expect(cohomology_closed_form(c, s) == cohomology_resolution(standard_module(c), s),
                   to_string(c) + " disagrees at s=" + std::to_string(s));

    std::mt19937 rng(90210);
    std::vector<C2Module> mods;
    for (int i = 0; i < 100; ++i)
        mods.push_back(random_module(rng, i));
    for (int i = 0; i < 100; ++i) {
        for (int s = 1; s <= 8; ++s)
            expect(cohomology_resolution(mods[i], s) == cohomology_resolution(mods[i], s + 2),
                   mods[i].name() + " not 2-periodic at s=" + std::to_string(s));
        const auto& other = mods[(i + 1) % 100];
        const auto sum = direct_sum(mods[i], other);
        for (int s = 0; s <= 6; ++s)
            expect(cohomology_resolution(sum, s) ==
                       cohomology_resolution(mods[i], s) + cohomology_resolution(other, s),
                   "additivity fails for " + mods[i].name() + " at s=" + std::to_string(s));
    }
}

// ---- 4 ----------------------------------------------------------------------

ElementaryGroup bott(int d)
{
    static const std::array<ElementaryGroup, 8> table{kZ, kZ2, kZ2, k0, kZ, k0, k0, k0};
    return d < 0 ? k0 : table[d % 8];
}

void hfpss_gate()
{
    const BidegreeBox box(-40, 0, 0, 80);
    const auto einf = e_infinity(apply_d3(build_e2(0, box)));

    // survivor list written out independently: (s, t, label, group)
    std::set<std::tuple<int, int, std::string, ElementaryGroup>> expected;
    for (int t = 0; t <= 80; t += 4) {
        const std::string power = t == 0 ? "1" : "nu^" + std::to_string(t / 2);
        expected.insert({0, t, (t % 8 == 4 ? "2" : "") + power, kZ});
    }
    for (int t = 2; t <= 80; t += 8)
        expected.insert({-1, t, t == 2 ? "z" : "znu^" + std::to_string((t - 2) / 2), kZ2});
    for (int t = 4; t <= 80; t += 8)
        expected.insert({-2, t, "ynu^" + std::to_string(t / 2), kZ2});
    for (int i = 1; 4 * i <= 40; ++i)
        expected.insert({-4 * i, 0, i == 1 ? "y^2" : "y^" + std::to_string(2 * i), kZ2});

    std::set<std::tuple<int, int, std::string, ElementaryGroup>> got;
    for (const auto& c : einf.classes)
        got.insert({c.s, c.t, c.label.to_string(), c.group});
    for (const auto& e : expected)
        expect(got.count(e) == 1, "missing survivor " + std::get<2>(e) + " at (" + std::to_string(std::get<0>(e)) +
                                      "," + std::to_string(std::get<1>(e)) + ")");
    for (const auto& g : got)
        expect(expected.count(g) == 1, "unexpected survivor " + std::get<2>(g) + " at (" +
                                           std::to_string(std::get<0>(g)) + "," + std::to_string(std::get<1>(g)) + ")");

    const auto pi = hfpss_homotopy(0, DegreeWindow(-40, 40));
    for (int d = 0; d <= 40; ++d)
        expect(pi.at(d) == bott(d), "pi_" + std::to_string(d) + " = " + pi.at(d).to_string());
    for (int d = -40; d < 0; ++d)
        expect(pi.at(d) == (d % 4 == 0 ? kZ2 : k0), "pi_" + std::to_string(d) + " = " + pi.at(d).to_string());
}

// ---- 5 ----------------------------------------------------------------------

void cover_agreement()
{
    const DegreeWindow w(-40, 40);
    for (int cover : {0, 8, 16}) {
        const auto diff = compare_engine_vs_closed_form(cover, w);
        expect(diff.empty(), "cover " + std::to_string(cover) + " has " + std::to_string(diff.size()) + " diffs");
    }
    for (int cover : {2, 4, 10, 12}) {
        const auto diff = compare_engine_vs_closed_form(cover, w);
        const int k = cover / 8, r = cover % 8;
        expect(diff.size() == 1, "cover " + std::to_string(cover) + " has " + std::to_string(diff.size()) + " diffs");
        expect(diff[0].degree == 8 * k + r / 2, "cover " + std::to_string(cover) + " diff at degree " +
                                                    std::to_string(diff[0].degree));
    }
}

// ---- 6 ----------------------------------------------------------------------

void em_fixed_points()
{
    for (int d : {2, 6, 10, 14}) {
        const auto t = hfp_em_sigma(d, DegreeWindow(-5, d + 5));
        // d = 4|I| - 2, so "n odd and n <= 4|I| - 3" reads n odd and n <= d - 1
        for (int n = -5; n <= d + 5; ++n) {
            const bool nonzero = (n % 2 != 0) && n <= d - 1;
            expect(t.at(n) == (nonzero ? kZ2 : k0), "sigma d=" + std::to_string(d) + " at " + std::to_string(n));
        }
    }
    for (int n = -30; n <= 5; ++n)
        expect(hfp_em_f2(n) == (n <= 0 ? kZ2 : k0), "Z/2[w] at " + std::to_string(n));
}

// ---- 7 ----------------------------------------------------------------------

void splitting_assembly()
{
    std::vector<int> parts;
    for (int i = 1; i <= 10; ++i)
        parts.push_back(i);
    const auto gf = from_denominators(parts, 10);
    std::map<int, std::int64_t> p;
    for (const auto& I : partitions(10, PartitionFamily::P))
        ++p[I.weight()];
    for (int w = 0; w <= 10; ++w)
        expect(p[w] == gf[w], "p(" + std::to_string(w) + ") disagrees with the generating function");

    const auto pi = homotopy_of_object(SplitObject::mspinc, 10, {}, DegreeWindow(0, 21));
    for (int d = 0; d <= 10; ++d) {
        std::int64_t expected = 0;
        for (int w = 0; w <= d / 2; ++w)
            expected += p[w];
        expect(pi.groups.at(2 * d).free_rank == expected, "free rank of pi_" + std::to_string(2 * d));
        expect(pi.groups.at(2 * d + 1).is_zero(), "pi_" + std::to_string(2 * d + 1) + " nonzero");
    }

    const DegreeWindow w(-20, 40);
    GradedAbelianGroup by_summand(w);
    for (const auto& I : partitions(6, PartitionFamily::P)) {
        const auto cover = hfpss_homotopy(4 * I.weight(), w);
        for (int d = w.lo; d <= w.hi; ++d)
            by_summand.add(d, cover.at(d));
    }
    const auto assembled = homotopy_of_object(SplitObject::mspinc_hfp, 6, {}, w, DeltaIndexBase::engine);
    for (int d = w.lo; d <= w.hi; ++d)
        expect(assembled.groups.at(d) == by_summand.at(d), "assembly differs at degree " + std::to_string(d));
}

// ---- 8 ----------------------------------------------------------------------

void extraction_roundtrip()
{
    const int n = 120;
    const auto free = named_series(NamedSeries::A, n);
    const auto cyclic = named_series(NamedSeries::A_mod_E1, n);
    std::mt19937 rng(8675309);
    std::uniform_int_distribution<int> weight(0, 30), count(0, 6), degree(1, n), mult(1, 3);
    for (int trial = 0; trial < 100; ++trial) {
        const int W = weight(rng);
        ZDegreeMultiset z;
        for (int i = count(rng); i > 0; --i)
            z.add(degree(rng), mult(rng));
        const auto total = mspinc_cohomology_series(z, W, n).series;
        const auto back = extract_z_degrees(total, kcover_generator_degrees(W), free, cyclic);
        expect(back.multiplicity == z.multiplicity, "roundtrip " + std::to_string(trial) + " differs");
    }

    ZDegreeMultiset z;
    z.add(30);
    z.add(57, 2);
    auto total = mspinc_cohomology_series(z, 8, n).series;
    const int bad = static_cast<int>(rng() % 30);
    total.add_at(bad, -1);
    try {
        extract_z_degrees(total, kcover_generator_degrees(8), free, cyclic);
        throw Failure{"corrupted total accepted"};
    } catch (const ExtractionError& e) {
        expect(e.degree() == bad, "corruption at " + std::to_string(bad) + " reported at " + std::to_string(e.degree()));
    }
}

// ---- 9 ----------------------------------------------------------------------

std::string capture(const std::string& command)
{
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr)
        throw Failure{"cannot run " + command};
    std::array<char, 4096> buffer{};
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        out.append(buffer.data(), got);
    const int status = pclose(pipe);
    out += "\n[status " + std::to_string(status) + "]\n";
    return out;
}

void determinism()
{
    const std::string bin = RSPIN_CLI_PATH;
    const std::vector<std::string> suite{
        "series verify --cutoff 200",
        "series verify --cutoff 40 --perturb-ko",
        "series named --name E2ku --cutoff 60",
        "series product --degrees 4,6,7,15 --cutoff 40",
        "hfpss --cover 0 --page einf --min -20 --max 40",
        "hfpss --cover 4 --compare",
        "hfpss --cover 12 --compare --format table",
        "hfpss --em-sigma 10 --min -5 --max 15",
        "hfpss --em-f2 --min -10 --max 5",
        "homotopy --object mspin --weight-cutoff 6 --inventory",
        "homotopy --object mspinc --min 0 --max 1 --weight-cutoff 0",
        "homotopy --object mspinc_hfp --weight-cutoff 6",
        "homotopy --object mspinc_hfp --weight-cutoff 4 --delta-base paper --format table",
        "cohomology --coeff F2 --s-max 12",
        "genuine --n 3",
    };
    std::string first, second;
    for (const auto& cmd : suite)
        first += "$ " + cmd + "\n" + capture(bin + " " + cmd + " 2>&1");
    for (const auto& cmd : suite)
        second += "$ " + cmd + "\n" + capture(bin + " " + cmd + " 2>&1");
    expect(!first.empty(), "empty report");
    expect(first == second, "reports differ between runs");
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void()>>> criteria{
        {"Poincare identity P_G - P_ko - t P_E2 = 0 through degree 500", poincare_identity},
        {"Steenrod quotient consistency through degree 500", quotient_consistency},
        {"group cohomology closed forms vs resolution oracle, random modules", cohomology_agreement},
        {"cover-0 E-infinity survivor list and assembled homotopy", hfpss_gate},
        {"cover closed-form agreement and boundary classes", cover_agreement},
        {"Eilenberg-Mac Lane fixed points", em_fixed_points},
        {"splitting assembly", splitting_assembly},
        {"extraction roundtrip and corrupted input", extraction_roundtrip},
        {"deterministic CLI reports", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            criteria[i].second();
        } catch (const Failure& f) {
            ok = false;
            detail = f.why;
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        std::cout << "criterion " << i + 1 << ": " << (ok ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
                  << ms << " ms)";
        if (!ok)
            std::cout << ": " << detail;
        std::cout << "\n";
        failed += ok ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
