#pragma once

#include <string>
#include <string_view>

#include "rspin/graded.hpp"

namespace rspin {

enum class KFlavor { KO, KU };

std::string to_string(KFlavor f);
KFlavor parse_kflavor(std::string_view name);

/// Connective cover ko<level> or ku<level>: homotopy vanishes strictly below
/// `level` and agrees with the periodic theory at and above it.
struct CoverSpec {
    KFlavor flavor = KFlavor::KO;
    int level = 0;

    CoverSpec() = default;
    CoverSpec(KFlavor flavor, int level);

    std::string to_string() const;
    auto operator<=>(const CoverSpec&) const = default;
};

/// pi_d of the cover. KO follows Bott periodicity (Z, Z/2, Z/2, 0, Z, 0, 0, 0),
/// KU is Z in even degrees.
ElementaryGroup homotopy_k(const CoverSpec& spec, int degree);

GradedAbelianGroup homotopy_table(const CoverSpec& spec, DegreeWindow window);

/// Homotopy of the genuine C_2-spectrum with underlying spectrum ku<4n> and
/// fixed points ko<4n-2>, for odd n.
struct GenuineTables {
    GradedAbelianGroup underlying;
    GradedAbelianGroup fixed;
};

GenuineTables genuine_descriptor(int n, DegreeWindow window);

}  // namespace rspin
