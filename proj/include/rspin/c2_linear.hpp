#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rspin/graded.hpp"

namespace rspin {

/// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols);
    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, int cols_if_empty = 0);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::int64_t& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    std::int64_t operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    bool is_square() const { return rows_ == cols_; }
    bool is_zero() const;
    std::vector<std::vector<std::int64_t>> to_rows() const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
    IntMatrix reduced_mod2() const;

    bool operator==(const IntMatrix&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::int64_t> data_;
};

/// Determinant by fraction-free elimination (Bareiss).
std::int64_t determinant(const IntMatrix& m);

struct SNFResult {
    std::vector<std::int64_t> diagonal;  // min(rows, cols) entries, each dividing the next
    IntMatrix left;                      // rows x rows, unimodular
    IntMatrix right;                     // cols x cols, unimodular
    IntMatrix diagonal_matrix;           // left * input * right

    int rank() const;
};

SNFResult smith_normal_form(const IntMatrix& m);

/// Rank of a matrix over F_2 (entries read mod 2).
int rank_mod2(const IntMatrix& m);

/// A finitely generated abelian group Z^a + (Z/2)^b with an involution. The
/// action is block diagonal: an integral involution on the free block and an
/// F_2-linear involution on the torsion block.
class C2Module {
public:
    C2Module(std::string name, IntMatrix integral_action, IntMatrix torsion_action);

    /// Build from a single (a+b)x(a+b) matrix; off-diagonal blocks must vanish.
    static C2Module from_block_matrix(std::string name, int free_rank, int two_rank, const IntMatrix& action);

    static C2Module trivial_integers();
    static C2Module sign_integers();
    static C2Module f2();
    /// Z[C_2] with the swap action.
    static C2Module regular();

    const std::string& name() const { return name_; }
    int free_rank() const { return integral_.rows(); }
    int two_rank() const { return torsion_.rows(); }
    const IntMatrix& integral_action() const { return integral_; }
    const IntMatrix& torsion_action() const { return torsion_; }

    friend C2Module direct_sum(const C2Module& a, const C2Module& b);

private:
    std::string name_;
    IntMatrix integral_;
    IntMatrix torsion_;
};

enum class Coefficients { Z_triv, Z_sgn, F2 };

Coefficients parse_coefficients(std::string_view name);
std::string to_string(Coefficients c);
C2Module standard_module(Coefficients c);

/// H^s(C_2; M) for the three standard coefficient modules, from the known
/// answer.
ElementaryGroup cohomology_closed_form(Coefficients coeff, int s);

/// H^s(C_2; M) computed from the 2-periodic resolution via Smith normal form:
/// H^0 = ker(1-t), H^odd = ker(1+t)/im(1-t), H^even = ker(1-t)/im(1+t).
/// Throws ValidationError if any torsion coefficient exceeds 2.
ElementaryGroup cohomology_resolution(const C2Module& m, int s);

}  // namespace rspin
