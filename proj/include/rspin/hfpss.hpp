#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rspin/graded.hpp"

namespace rspin {

// Homotopy fixed point spectral sequence for the C_2 action on connective
// complex K-theory and its covers ku<2n>, in the homological convention
//
//     E_2^{s,t} = H^{-s}(C_2; pi_t ku),  s <= 0,  abutting to pi_{s+t},
//     d_r : (s, t) -> (s - r, t + r - 1).
//
// Classes are labelled by normalized monomials y^a z^e nu^{2c} with e <= 1,
// where y sits in (-2, 0), z in (-1, 2) and nu^2 in (0, 4), subject to
// z^2 = y nu^2. The groups themselves always come from group cohomology.

struct Monomial {
    int y = 0;
    int z = 0;  // 0 or 1 after normalization
    int nu2 = 0;

    int s() const { return -2 * y - z; }
    int t() const { return 2 * z + 4 * nu2; }
    bool is_unit() const { return y == 0 && z == 0 && nu2 == 0; }
    std::string to_string() const;

    auto operator<=>(const Monomial&) const = default;
};

/// Product with z^2 rewritten as y nu^2.
Monomial operator*(const Monomial& a, const Monomial& b);

using Polynomial = std::map<Monomial, std::int64_t>;

/// d_3 on a monomial: the Leibniz extension of d3(y) = y^2 z, d3(z) = 0,
/// d3(nu^2) = y z nu^2. Integer coefficients; signs are irrelevant on the
/// 2-torsion targets.
Polynomial d3(const Monomial& m);
Polynomial d3(const Polynomial& p);

/// The unique normalized monomial in bidegree (s, t), if any.
std::optional<Monomial> monomial_at(int s, int t);

struct ClassLabel {
    Monomial monomial;
    std::int64_t multiplier = 1;  // 2 for the index-2 subgroup 2 nu^{2c}

    std::string to_string() const;
    bool operator==(const ClassLabel&) const = default;
};

enum class PageIndex { E2, E4, Einf };
enum class Fate { unresolved, survives, dies_source, dies_target };

std::string to_string(PageIndex p);
std::string to_string(Fate f);

struct PageClass {
    int s = 0;
    int t = 0;
    ClassLabel label;
    ElementaryGroup group;
    Fate fate = Fate::unresolved;
};

struct BidegreeBox {
    int s_min = 0;
    int s_max = 0;
    int t_min = 0;
    int t_max = 0;

    BidegreeBox() = default;
    BidegreeBox(int s_min, int s_max, int t_min, int t_max);

    bool contains(int s, int t) const { return s_min <= s && s <= s_max && t_min <= t && t <= t_max; }
    std::string to_string() const;
};

struct SpectralPage {
    PageIndex index = PageIndex::E2;
    int cover_level = 0;
    BidegreeBox box;
    std::vector<PageClass> classes;  // nonzero groups only, sorted by (s desc, t asc)

    const PageClass* find(int s, int t) const;
};

/// The E_2 group at (s, t) for the cover ku<cover_level>: zero below the
/// t = cover_level line, otherwise H^{-s}(C_2; pi_t ku) with the trivial
/// action for t = 0 mod 4 and the sign action for t = 2 mod 4.
ElementaryGroup e2_group(int cover_level, int s, int t);

/// Box covering every bidegree of total degree in `window` with filtration at
/// least `filtration_floor`.
BidegreeBox box_for_window(int cover_level, DegreeWindow window, int filtration_floor);

/// Default filtration floor for a total-degree window.
int default_filtration_floor(int cover_level, DegreeWindow window);

SpectralPage build_e2(int cover_level, const BidegreeBox& box);
SpectralPage build_e2(int cover_level, DegreeWindow window);

/// The E_2 page with each class annotated by its d_3 fate.
SpectralPage resolve_d3(const SpectralPage& e2);

/// Homology of d_3: returns the E_4 page. Verifies d_3 o d_3 = 0.
SpectralPage apply_d3(const SpectralPage& e2);

/// The spectral sequence collapses at E_4. For cover 0 the survivors are
/// checked against the known list (ValidationError on any mismatch).
SpectralPage e_infinity(const SpectralPage& e4);

/// Known E_infinity classes of the cover-0 page inside a box:
/// E^{0,*} = Z[2nu^2, nu^4], E^{-1,*} = z Z/2[nu^4], E^{-2,*} = y nu^2 Z/2[nu^4],
/// and y^{2i} in (-4i, 0).
std::vector<PageClass> cover0_documented_survivors(const BidegreeBox& box);

/// pi_d as the direct sum of E_infinity groups with s + t = d. No extension
/// problems are resolved.
GradedAbelianGroup assemble_homotopy(const SpectralPage& einf, DegreeWindow window);

/// E_infinity classes contributing to total degree d.
std::vector<PageClass> classes_in_degree(const SpectralPage& page, int degree);

/// Full pipeline build -> d_3 -> E_infinity -> assembly on a window, checking
/// that deepening the filtration floor does not change the answer.
GradedAbelianGroup hfpss_homotopy(int cover_level, DegreeWindow window);

/// pi_* ko<2n> plus Z/2 in degrees 8k + r/2 - 4m, m >= 1, for 2n = 8k + r with
/// r in {0, 2, 4}.
GradedAbelianGroup closed_form_cover_homotopy(int cover_level, DegreeWindow window);

/// Degrees 8k + r/2 - 4m (m >= 1) inside the window.
std::vector<int> closed_form_delta_degrees(int cover_level, DegreeWindow window);

/// The m = 0 value 8k + r/2 of the delta-degree formula.
int boundary_class_degree(int cover_level);

struct DiffEntry {
    int degree = 0;
    ElementaryGroup engine;
    ElementaryGroup closed_form;
    std::string annotation;
    std::vector<PageClass> engine_classes;
};

/// Degreewise difference between the engine and the closed form. Refuses
/// covers 2n = 6 mod 8, where no closed form is available.
std::vector<DiffEntry> compare_engine_vs_closed_form(int cover_level, DegreeWindow window);

/// pi_* of (Sigma^d HZ_sigma)^{hC_2} from the one-row spectral sequence
/// E_2^{s,d} = H^{-s}(C_2; Z_sgn).
GradedAbelianGroup hfp_em_sigma(int d, DegreeWindow window);

/// pi_degree of (HZ/2)^{hC_2}, i.e. H^{-degree}(BC_2; Z/2).
ElementaryGroup hfp_em_f2(int degree);

}  // namespace rspin
