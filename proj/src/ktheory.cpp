#include "rspin/ktheory.hpp"

#include <stdexcept>

#include "rspin/errors.hpp"

namespace rspin {

std::string to_string(KFlavor f)
{
    return f == KFlavor::KO ? "ko" : "ku";
}

KFlavor parse_kflavor(std::string_view name)
{
    if (name == "ko" || name == "KO")
        return KFlavor::KO;
    if (name == "ku" || name == "KU")
        return KFlavor::KU;
    throw std::invalid_argument("unknown K-theory flavor '" + std::string(name) + "'");
}

CoverSpec::CoverSpec(KFlavor flavor_, int level_) : flavor(flavor_), level(level_)
{
    if (level < 0)
        throw std::invalid_argument("cover level must be nonnegative");
}

std::string CoverSpec::to_string() const
{
    return rspin::to_string(flavor) + "<" + std::to_string(level) + ">";
}

namespace {

ElementaryGroup connective_homotopy(KFlavor flavor, int degree)
{
    if (degree < 0)
        return {};
    if (flavor == KFlavor::KU)
        return degree % 2 == 0 ? ElementaryGroup::integers() : ElementaryGroup{};
    switch (degree % 8) {
    case 0:
    case 4:
        return ElementaryGroup::integers();
    case 1:
    case 2:
        return ElementaryGroup::twos();
    default:
        return {};
    }
}

}  // namespace

ElementaryGroup homotopy_k(const CoverSpec& spec, int degree)
{
    if (degree < spec.level)
        return {};
    return connective_homotopy(spec.flavor, degree);
}

GradedAbelianGroup homotopy_table(const CoverSpec& spec, DegreeWindow window)
{
    GradedAbelianGroup table(window);
    for (int d = window.lo; d <= window.hi; ++d)
        table.set(d, homotopy_k(spec, d));
    return table;
}

GenuineTables genuine_descriptor(int n, DegreeWindow window)
{
    if (n <= 0 || n % 2 == 0)
        throw std::invalid_argument("genuine_descriptor: n must be a positive odd integer, got " + std::to_string(n));
    return GenuineTables{homotopy_table(CoverSpec(KFlavor::KU, 4 * n), window),
                         homotopy_table(CoverSpec(KFlavor::KO, 4 * n - 2), window)};
}

}  // namespace rspin
