#include "rspin/hfpss.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "rspin/c2_linear.hpp"
#include "rspin/errors.hpp"
#include "rspin/ktheory.hpp"

namespace rspin {

using detail::checked_add;
using detail::checked_mul;
using detail::mod;

std::string Monomial::to_string() const
{
    if (is_unit())
        return "1";
    std::ostringstream os;
    auto power = [&](const char* name, int e) {
        if (e == 0)
            return;
        os << name;
        if (e > 1)
            os << "^" << e;
    };
    power("y", y);
    power("z", z);
    if (nu2 > 0)
        os << "nu^" << 2 * nu2;
    return os.str();
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
    Monomial m{a.y + b.y, a.z + b.z, a.nu2 + b.nu2};
    while (m.z >= 2) {
        m.z -= 2;
        m.y += 1;
        m.nu2 += 1;
    }
    return m;
}

namespace {

const Monomial kY{1, 0, 0};
const Monomial kZ{0, 1, 0};
const Monomial kNu2{0, 0, 1};

void accumulate(Polynomial& p, const Monomial& m, std::int64_t c)
{
    if (c == 0)
        return;
    auto& slot = p[m];
    slot = checked_add(slot, c);
    if (slot == 0)
        p.erase(m);
}

// d3 of the generators y, z, nu^2.
const Polynomial& generator_image(int which)
{
    static const Polynomial images[3] = {
        Polynomial{{kY * kY * kZ, 1}},
        Polynomial{},
        Polynomial{{kY * kZ * kNu2, 1}},
    };
    return images[which];
}

}  // namespace

Polynomial d3(const Monomial& m)
{
    // d(y^a z^e nu^{2c}) = a y^{a-1} d(y) z^e nu^{2c} + e y^a d(z) nu^{2c}
    //                    + c y^a z^e nu^{2c-2} d(nu^2)
    Polynomial result;
    const int exps[3] = {m.y, m.z, m.nu2};
    for (int g = 0; g < 3; ++g) {
        if (exps[g] == 0)
            continue;
        Monomial rest = m;
        if (g == 0)
            rest.y -= 1;
        else if (g == 1)
            rest.z -= 1;
        else
            rest.nu2 -= 1;
        for (const auto& [mono, coeff] : generator_image(g))
            accumulate(result, rest * mono, checked_mul(exps[g], coeff));
    }
    return result;
}

Polynomial d3(const Polynomial& p)
{
    Polynomial result;
    for (const auto& [mono, coeff] : p)
        for (const auto& [image, c] : d3(mono))
            accumulate(result, image, checked_mul(coeff, c));
    return result;
}

std::optional<Monomial> monomial_at(int s, int t)
{
    if (s > 0 || t < 0)
        return std::nullopt;
    const int z = mod(-s, 2);
    const int y = (-s - z) / 2;
    const int rest = t - 2 * z;
    if (rest < 0 || rest % 4 != 0)
        return std::nullopt;
    return Monomial{y, z, rest / 4};
}

std::string ClassLabel::to_string() const
{
    if (multiplier == 1)
        return monomial.to_string();
    return std::to_string(multiplier) + monomial.to_string();
}

std::string to_string(PageIndex p)
{
    switch (p) {
    case PageIndex::E2:
        return "E2";
    case PageIndex::E4:
        return "E4";
    case PageIndex::Einf:
        return "Einf";
    }
    throw std::logic_error("unreachable");
}

std::string to_string(Fate f)
{
    switch (f) {
    case Fate::unresolved:
        return "unresolved";
    case Fate::survives:
        return "survives";
    case Fate::dies_source:
        return "dies_source";
    case Fate::dies_target:
        return "dies_target";
    }
    throw std::logic_error("unreachable");
}

BidegreeBox::BidegreeBox(int s_min_, int s_max_, int t_min_, int t_max_)
    : s_min(s_min_), s_max(s_max_), t_min(t_min_), t_max(t_max_)
{
    if (s_min > s_max || t_min > t_max)
        throw std::invalid_argument("empty bidegree box");
}

std::string BidegreeBox::to_string() const
{
    std::ostringstream os;
    os << "s in [" << s_min << ", " << s_max << "], t in [" << t_min << ", " << t_max << "]";
    return os.str();
}

const PageClass* SpectralPage::find(int s, int t) const
{
    for (const auto& c : classes)
        if (c.s == s && c.t == t)
            return &c;
    return nullptr;
}

namespace {

void require_cover(int cover_level)
{
    if (cover_level < 0 || cover_level % 2 != 0)
        throw std::invalid_argument("cover level must be even and nonnegative, got " + std::to_string(cover_level));
}

void sort_classes(std::vector<PageClass>& classes)
{
    std::sort(classes.begin(), classes.end(), [](const PageClass& a, const PageClass& b) {
        if (a.s != b.s)
            return a.s > b.s;
        return a.t < b.t;
    });
}

std::int64_t coefficient_of(const Polynomial& p, const Monomial& m)
{
    auto it = p.find(m);
    return it == p.end() ? 0 : it->second;
}

std::string at(int s, int t)
{
    return "(" + std::to_string(s) + ", " + std::to_string(t) + ")";
}

}  // namespace

ElementaryGroup e2_group(int cover_level, int s, int t)
{
    if (s > 0 || t < 0 || t < cover_level || t % 2 != 0)
        return {};
    const auto coeff = (t % 4 == 0) ? Coefficients::Z_triv : Coefficients::Z_sgn;
    return cohomology_closed_form(coeff, -s);
}

int default_filtration_floor(int cover_level, DegreeWindow window)
{
    return std::min(0, window.lo - cover_level) - 16;
}

BidegreeBox box_for_window(int cover_level, DegreeWindow window, int filtration_floor)
{
    require_cover(cover_level);
    if (filtration_floor > 0)
        throw std::invalid_argument("filtration floor must be <= 0");
    const int t_max = std::max(cover_level, window.hi - filtration_floor);
    return BidegreeBox(filtration_floor, 0, cover_level, t_max);
}

SpectralPage build_e2(int cover_level, const BidegreeBox& box)
{
    require_cover(cover_level);
    SpectralPage page;
    page.index = PageIndex::E2;
    page.cover_level = cover_level;
    page.box = box;
    for (int s = box.s_max; s >= box.s_min; --s)
        for (int t = box.t_min; t <= box.t_max; ++t) {
            auto group = e2_group(cover_level, s, t);
            if (group.is_zero())
                continue;
            auto mono = monomial_at(s, t);
            if (!mono || mono->s() != s || mono->t() != t)
                throw ValidationError("E2 group " + group.to_string() + " at " + at(s, t) + " has no monomial label");
            const bool integral = (s == 0);
            if (integral != (group.free_rank == 1) || group.free_rank + group.two_rank != 1)
                throw ValidationError("E2 group at " + at(s, t) + " is " + group.to_string() +
                                      ", expected Z in filtration 0 and Z/2 below");
            page.classes.push_back(PageClass{s, t, ClassLabel{*mono, 1}, group, Fate::unresolved});
        }
    sort_classes(page.classes);
    return page;
}

SpectralPage build_e2(int cover_level, DegreeWindow window)
{
    return build_e2(cover_level, box_for_window(cover_level, window, default_filtration_floor(cover_level, window)));
}

namespace {

struct D3Data {
    std::int64_t out_coefficient = 0;  // d3(x) = out_coefficient * (target generator)
    bool hit = false;
};

// d3 out of and into the class at (s, t). Neighbours outside the page box
// are recomputed from e2_group, which is a pure function of the bidegree.
D3Data d3_data(int cover_level, const PageClass& c)
{
    D3Data data;

    const Polynomial image = d3(Polynomial{{c.label.monomial, c.label.multiplier}});
    const int ts = c.s - 3, tt = c.t + 2;
    for (const auto& [mono, coeff] : image)
        if (mono.s() != ts || mono.t() != tt)
            throw ValidationError("d3 of " + c.label.to_string() + " leaves bidegree " + at(ts, tt));
    const auto target_group = e2_group(cover_level, ts, tt);
    if (!target_group.is_zero()) {
        auto target = monomial_at(ts, tt);
        data.out_coefficient = mod(static_cast<int>(coefficient_of(image, *target) % 2), 2);
    } else {
        for (const auto& [mono, coeff] : image)
            if (coeff % 2 != 0)
                throw ValidationError("d3 of " + c.label.to_string() + " hits the zero group at " + at(ts, tt));
    }

    // Both nonzero iff d3 o d3 != 0; checked for every class.
    const Polynomial twice = d3(image);
    for (const auto& [mono, coeff] : twice)
        if (coeff % 2 != 0)
            throw ValidationError("d3 o d3 is nonzero on " + c.label.to_string() + " at " + at(c.s, c.t));

    const int ss = c.s + 3, st = c.t - 2;
    const auto source_group = e2_group(cover_level, ss, st);
    if (!source_group.is_zero() && c.group.free_rank == 0) {
        auto source = monomial_at(ss, st);
        const Polynomial source_image = d3(*source);
        data.hit = coefficient_of(source_image, c.label.monomial) % 2 != 0;
    }
    return data;
}

}  // namespace

SpectralPage resolve_d3(const SpectralPage& e2)
{
    if (e2.index != PageIndex::E2)
        throw std::invalid_argument("d3 applies to the E2 page, got " + to_string(e2.index));
    SpectralPage out = e2;
    for (auto& c : out.classes) {
        auto data = d3_data(e2.cover_level, c);
        if (data.out_coefficient != 0 && data.hit)
            throw ValidationError("class at " + at(c.s, c.t) + " both supports and receives d3");
        if (data.out_coefficient != 0)
            c.fate = Fate::dies_source;
        else if (data.hit)
            c.fate = Fate::dies_target;
        else
            c.fate = Fate::survives;
    }
    return out;
}

SpectralPage apply_d3(const SpectralPage& e2)
{
    const SpectralPage resolved = resolve_d3(e2);
    SpectralPage e4;
    e4.index = PageIndex::E4;
    e4.cover_level = e2.cover_level;
    e4.box = e2.box;
    for (const auto& c : resolved.classes) {
        if (c.fate == Fate::survives) {
            e4.classes.push_back(PageClass{c.s, c.t, c.label, c.group, Fate::survives});
        } else if (c.fate == Fate::dies_source && c.group.free_rank == 1) {
            // Z -> Z/2 onto: the kernel is the index-2 subgroup, again Z.
            ClassLabel label = c.label;
            label.multiplier *= 2;
            e4.classes.push_back(PageClass{c.s, c.t, label, c.group, Fate::survives});
        }
    }
    sort_classes(e4.classes);
    return e4;
}

std::vector<PageClass> cover0_documented_survivors(const BidegreeBox& box)
{
    std::vector<PageClass> out;
    for (int s = box.s_max; s >= box.s_min; --s)
        for (int t = box.t_min; t <= box.t_max; ++t) {
            if (s > 0 || t < 0)
                continue;
            if (s == 0 && t % 4 == 0) {
                // Z[2 nu^2, nu^4] in degree t: generated by nu^t or 2 nu^t.
                const std::int64_t mult = (t % 8 == 0) ? 1 : 2;
                out.push_back(PageClass{s, t, ClassLabel{Monomial{0, 0, t / 4}, mult}, ElementaryGroup::integers(),
                                        Fate::survives});
            } else if (s == -1 && mod(t, 8) == 2) {
                out.push_back(
                    PageClass{s, t, ClassLabel{Monomial{0, 1, (t - 2) / 4}, 1}, ElementaryGroup::twos(), Fate::survives});
            } else if (s == -2 && mod(t, 8) == 4) {
                out.push_back(
                    PageClass{s, t, ClassLabel{Monomial{1, 0, t / 4}, 1}, ElementaryGroup::twos(), Fate::survives});
            } else if (t == 0 && s < 0 && s % 4 == 0) {
                out.push_back(PageClass{s, t, ClassLabel{Monomial{-s / 2, 0, 0}, 1}, ElementaryGroup::twos(),
                                        Fate::survives});
            }
        }
    sort_classes(out);
    return out;
}

SpectralPage e_infinity(const SpectralPage& e4)
{
    if (e4.index != PageIndex::E4)
        throw std::invalid_argument("E_infinity is read off the E4 page, got " + to_string(e4.index));
    SpectralPage einf = e4;
    einf.index = PageIndex::Einf;
    if (einf.cover_level != 0)
        return einf;

    const auto expected = cover0_documented_survivors(einf.box);
    for (const auto& want : expected) {
        const auto* got = einf.find(want.s, want.t);
        if (!got)
            throw ValidationError("cover-0 E_infinity gate: expected " + want.label.to_string() + " (" +
                                  want.group.to_string() + ") at " + at(want.s, want.t) + ", engine has 0");
        if (got->group != want.group || got->label != want.label)
            throw ValidationError("cover-0 E_infinity gate: expected " + want.label.to_string() + " (" +
                                  want.group.to_string() + ") at " + at(want.s, want.t) + ", engine has " +
                                  got->label.to_string() + " (" + got->group.to_string() + ")");
    }
    for (const auto& got : einf.classes) {
        bool listed = std::any_of(expected.begin(), expected.end(),
                                  [&](const PageClass& w) { return w.s == got.s && w.t == got.t; });
        if (!listed)
            throw ValidationError("cover-0 E_infinity gate: unexpected survivor " + got.label.to_string() + " at " +
                                  at(got.s, got.t));
    }
    return einf;
}

std::vector<PageClass> classes_in_degree(const SpectralPage& page, int degree)
{
    std::vector<PageClass> out;
    for (const auto& c : page.classes)
        if (c.s + c.t == degree)
            out.push_back(c);
    return out;
}

GradedAbelianGroup assemble_homotopy(const SpectralPage& einf, DegreeWindow window)
{
    if (einf.index != PageIndex::Einf)
        throw std::invalid_argument("assembly needs the E_infinity page, got " + to_string(einf.index));
    // Every bidegree of total degree d with s >= s_min must lie in the box.
    if (einf.box.s_max < 0 || einf.box.t_max < window.hi - einf.box.s_min ||
        einf.box.t_min > std::max(einf.cover_level, window.lo))
        throw std::invalid_argument("page box " + einf.box.to_string() + " does not cover window " +
                                    window.to_string());

    GradedAbelianGroup result(window);
    for (int d = window.lo; d <= window.hi; ++d) {
        int integral = 0;
        for (const auto& c : classes_in_degree(einf, d)) {
            result.add(d, c.group);
            integral += static_cast<int>(c.group.free_rank);
        }
        if (integral > 1)
            throw ValidationError("degree " + std::to_string(d) +
                                  " has more than one integral E_infinity contribution; assembly would need extensions");
    }
    return result;
}

GradedAbelianGroup hfpss_homotopy(int cover_level, DegreeWindow window)
{
    auto run = [&](int floor) {
        const auto page = build_e2(cover_level, box_for_window(cover_level, window, floor));
        return assemble_homotopy(e_infinity(apply_d3(page)), window);
    };
    const int floor = default_filtration_floor(cover_level, window);
    auto result = run(floor);
    if (run(floor - 16) != result)
        throw ValidationError("assembled homotopy of ku<" + std::to_string(cover_level) +
                              "> changes when the filtration floor is lowered below " + std::to_string(floor));
    return result;
}

namespace {

struct CoverSplit {
    int k;
    int r;
};

CoverSplit split_cover(int cover_level)
{
    require_cover(cover_level);
    CoverSplit c{cover_level / 8, cover_level % 8};
    if (c.r == 6)
        throw std::invalid_argument("no closed form for cover " + std::to_string(cover_level) +
                                    ": 2n = 6 mod 8 lies outside r in {0, 2, 4}");
    return c;
}

}  // namespace

int boundary_class_degree(int cover_level)
{
    auto [k, r] = split_cover(cover_level);
    return 8 * k + r / 2;
}

std::vector<int> closed_form_delta_degrees(int cover_level, DegreeWindow window)
{
    const int top = boundary_class_degree(cover_level);
    std::vector<int> out;
    for (int m = 1;; ++m) {
        const int d = top - 4 * m;
        if (d < window.lo)
            break;
        if (d <= window.hi)
            out.push_back(d);
    }
    return out;
}

GradedAbelianGroup closed_form_cover_homotopy(int cover_level, DegreeWindow window)
{
    auto result = homotopy_table(CoverSpec(KFlavor::KO, cover_level), window);
    for (int d : closed_form_delta_degrees(cover_level, window))
        result.add(d, ElementaryGroup::twos());
    return result;
}

std::vector<DiffEntry> compare_engine_vs_closed_form(int cover_level, DegreeWindow window)
{
    const auto closed = closed_form_cover_homotopy(cover_level, window);  // refuses r = 6
    const int boundary = boundary_class_degree(cover_level);

    const auto page = e_infinity(apply_d3(build_e2(cover_level, window)));
    const auto engine = assemble_homotopy(page, window);
    if (engine != hfpss_homotopy(cover_level, window))
        throw ValidationError("engine assembly is not stable in the filtration floor");

    std::vector<DiffEntry> diffs;
    for (int d = window.lo; d <= window.hi; ++d) {
        if (engine.at(d) == closed.at(d))
            continue;
        DiffEntry e{d, engine.at(d), closed.at(d), "", classes_in_degree(page, d)};
        if (d == boundary && engine.at(d) == closed.at(d) + ElementaryGroup::twos())
            e.annotation = "boundary class on the t=" + std::to_string(cover_level) +
                           " line at the m=0 value of the delta-degree formula; outside the m>=1 range";
        else
            e.annotation = "unexplained discrepancy";
        diffs.push_back(std::move(e));
    }
    return diffs;
}

GradedAbelianGroup hfp_em_sigma(int d, DegreeWindow window)
{
    if (d < 2 || d % 2 != 0)
        throw std::invalid_argument("hfp_em_sigma: shift must be even and >= 2, got " + std::to_string(d));
    const auto sign = C2Module::sign_integers();
    GradedAbelianGroup result(window);
    // One row at t = d; d_r changes t, so nothing can hit or leave it.
    for (int n = window.lo; n <= window.hi; ++n) {
        const int s = n - d;
        if (s <= 0)
            result.set(n, cohomology_resolution(sign, -s));
    }
    return result;
}

ElementaryGroup hfp_em_f2(int degree)
{
    if (degree > 0)
        return {};
    return cohomology_resolution(C2Module::f2(), -degree);
}

}  // namespace rspin
