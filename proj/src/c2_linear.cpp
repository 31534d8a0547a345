#include "rspin/c2_linear.hpp"

#include <cstdlib>
#include <stdexcept>
#include <utility>

#include "rspin/errors.hpp"

namespace rspin {

using detail::checked_add;
using detail::checked_mul;
using detail::checked_sub;

IntMatrix::IntMatrix(int rows, int cols) : rows_(rows), cols_(cols)
{
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("matrix dimensions must be nonnegative");
    data_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
{
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != cols_)
            throw std::invalid_argument("ragged matrix literal");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

IntMatrix IntMatrix::identity(int n)
{
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, int cols_if_empty)
{
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? cols_if_empty : static_cast<int>(rows.front().size());
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw std::invalid_argument("ragged matrix rows");
        for (int j = 0; j < c; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

bool IntMatrix::is_zero() const
{
    for (auto x : data_)
        if (x != 0)
            return false;
    return true;
}

std::vector<std::vector<std::int64_t>> IntMatrix::to_rows() const
{
    std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            out[i][j] = (*this)(i, j);
    return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("matrix product dimension mismatch");
    IntMatrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            auto x = a(i, k);
            if (x == 0)
                continue;
            for (int j = 0; j < b.cols_; ++j)
                r(i, j) = checked_add(r(i, j), checked_mul(x, b(k, j)));
        }
    return r;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("matrix sum dimension mismatch");
    IntMatrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i)
        r.data_[i] = checked_add(a.data_[i], b.data_[i]);
    return r;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("matrix difference dimension mismatch");
    IntMatrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i)
        r.data_[i] = checked_sub(a.data_[i], b.data_[i]);
    return r;
}

IntMatrix IntMatrix::reduced_mod2() const
{
    IntMatrix r = *this;
    for (auto& x : r.data_)
        x = detail::mod(static_cast<int>(x % 2), 2);
    return r;
}

std::int64_t determinant(const IntMatrix& m)
{
    if (!m.is_square())
        throw std::invalid_argument("determinant of a non-square matrix");
    const int n = m.rows();
    if (n == 0)
        return 1;
    IntMatrix a = m;
    std::int64_t sign = 1;
    std::int64_t prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, k) != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0)
                return 0;
            for (int j = 0; j < n; ++j)
                std::swap(a(k, j), a(swap_row, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a(i, j) = checked_sub(checked_mul(a(i, j), a(k, k)), checked_mul(a(i, k), a(k, j))) / prev;
        prev = a(k, k);
    }
    return checked_mul(sign, a(n - 1, n - 1));
}

int SNFResult::rank() const
{
    int r = 0;
    for (auto d : diagonal)
        if (d != 0)
            ++r;
    return r;
}

namespace {

void swap_rows(IntMatrix& m, int a, int b)
{
    if (a == b)
        return;
    for (int j = 0; j < m.cols(); ++j)
        std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, int a, int b)
{
    if (a == b)
        return;
    for (int i = 0; i < m.rows(); ++i)
        std::swap(m(i, a), m(i, b));
}

// row[dst] += q * row[src]
void add_row(IntMatrix& m, int dst, int src, std::int64_t q)
{
    for (int j = 0; j < m.cols(); ++j)
        m(dst, j) = checked_add(m(dst, j), checked_mul(q, m(src, j)));
}

void add_col(IntMatrix& m, int dst, int src, std::int64_t q)
{
    for (int i = 0; i < m.rows(); ++i)
        m(i, dst) = checked_add(m(i, dst), checked_mul(q, m(i, src)));
}

}  // namespace

SNFResult smith_normal_form(const IntMatrix& m)
{
    IntMatrix d = m;
    IntMatrix left = IntMatrix::identity(m.rows());
    IntMatrix right = IntMatrix::identity(m.cols());
    const int n = std::min(m.rows(), m.cols());

    for (int t = 0; t < n; ++t) {
        bool nonzero_left = true;
        for (;;) {
            int pi = -1, pj = -1;
            std::int64_t best = 0;
            for (int i = t; i < d.rows(); ++i)
                for (int j = t; j < d.cols(); ++j) {
                    auto v = std::llabs(d(i, j));
                    if (v != 0 && (pi < 0 || v < best)) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) {
                nonzero_left = false;
                break;
            }
            swap_rows(d, t, pi);
            swap_rows(left, t, pi);
            swap_cols(d, t, pj);
            swap_cols(right, t, pj);

            bool dirty = false;
            for (int i = t + 1; i < d.rows(); ++i) {
                if (d(i, t) == 0)
                    continue;
                auto q = d(i, t) / d(t, t);
                add_row(d, i, t, -q);
                add_row(left, i, t, -q);
                if (d(i, t) != 0)
                    dirty = true;
            }
            for (int j = t + 1; j < d.cols(); ++j) {
                if (d(t, j) == 0)
                    continue;
                auto q = d(t, j) / d(t, t);
                add_col(d, j, t, -q);
                add_col(right, j, t, -q);
                if (d(t, j) != 0)
                    dirty = true;
            }
            if (dirty)
                continue;

            // Enforce the divisibility chain: fold any offending row into row t.
            int bad_row = -1;
            for (int i = t + 1; i < d.rows() && bad_row < 0; ++i)
                for (int j = t + 1; j < d.cols(); ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        bad_row = i;
                        break;
                    }
            if (bad_row < 0)
                break;
            add_row(d, t, bad_row, 1);
            add_row(left, t, bad_row, 1);
        }
        if (!nonzero_left)
            break;
        if (d(t, t) < 0) {
            for (int j = 0; j < d.cols(); ++j)
                d(t, j) = -d(t, j);
            for (int j = 0; j < left.cols(); ++j)
                left(t, j) = -left(t, j);
        }
    }

    SNFResult result;
    result.diagonal.resize(n, 0);
    for (int t = 0; t < n; ++t)
        result.diagonal[t] = d(t, t);
    result.left = std::move(left);
    result.right = std::move(right);
    result.diagonal_matrix = std::move(d);
    return result;
}

int rank_mod2(const IntMatrix& m)
{
    IntMatrix a = m.reduced_mod2();
    int rank = 0;
    for (int col = 0; col < a.cols() && rank < a.rows(); ++col) {
        int pivot = -1;
        for (int i = rank; i < a.rows(); ++i)
            if (a(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            continue;
        swap_rows(a, rank, pivot);
        for (int i = 0; i < a.rows(); ++i)
            if (i != rank && a(i, col) != 0)
                for (int j = 0; j < a.cols(); ++j)
                    a(i, j) ^= a(rank, j);
        ++rank;
    }
    return rank;
}

C2Module::C2Module(std::string name, IntMatrix integral_action, IntMatrix torsion_action)
    : name_(std::move(name)), integral_(std::move(integral_action)), torsion_(std::move(torsion_action))
{
    if (!integral_.is_square() || !torsion_.is_square())
        throw std::invalid_argument("C2Module '" + name_ + "': action blocks must be square");
    if (integral_ * integral_ != IntMatrix::identity(integral_.rows()))
        throw std::invalid_argument("C2Module '" + name_ + "': integral action is not an involution");
    if ((torsion_ * torsion_).reduced_mod2() != IntMatrix::identity(torsion_.rows()))
        throw std::invalid_argument("C2Module '" + name_ + "': torsion action is not an involution mod 2");
    torsion_ = torsion_.reduced_mod2();
}

C2Module C2Module::from_block_matrix(std::string name, int free_rank, int two_rank, const IntMatrix& action)
{
    const int n = free_rank + two_rank;
    if (action.rows() != n || action.cols() != n)
        throw std::invalid_argument("C2Module '" + name + "': action must be " + std::to_string(n) + "x" +
                                    std::to_string(n));
    IntMatrix integral(free_rank, free_rank);
    IntMatrix torsion(two_rank, two_rank);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const bool row_free = i < free_rank;
            const bool col_free = j < free_rank;
            if (row_free && col_free)
                integral(i, j) = action(i, j);
            else if (!row_free && !col_free)
                torsion(i - free_rank, j - free_rank) = action(i, j);
            else if (action(i, j) % 2 != 0 || (row_free && action(i, j) != 0))
                throw std::invalid_argument("C2Module '" + name + "': action mixes the free and torsion blocks");
        }
    return C2Module(std::move(name), std::move(integral), std::move(torsion));
}

C2Module C2Module::trivial_integers()
{
    return C2Module("Z_triv", IntMatrix{{1}}, IntMatrix(0, 0));
}

C2Module C2Module::sign_integers()
{
    return C2Module("Z_sgn", IntMatrix{{-1}}, IntMatrix(0, 0));
}

C2Module C2Module::f2()
{
    return C2Module("F2", IntMatrix(0, 0), IntMatrix{{1}});
}

C2Module C2Module::regular()
{
    return C2Module("Z[C2]", IntMatrix{{0, 1}, {1, 0}}, IntMatrix(0, 0));
}

namespace {

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b)
{
    IntMatrix r(a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            r(a.rows() + i, a.cols() + j) = b(i, j);
    return r;
}

}  // namespace

C2Module direct_sum(const C2Module& a, const C2Module& b)
{
    return C2Module(a.name_ + " + " + b.name_, block_diagonal(a.integral_, b.integral_),
                    block_diagonal(a.torsion_, b.torsion_));
}

Coefficients parse_coefficients(std::string_view name)
{
    if (name == "Z_triv")
        return Coefficients::Z_triv;
    if (name == "Z_sgn")
        return Coefficients::Z_sgn;
    if (name == "F2")
        return Coefficients::F2;
    throw std::invalid_argument("unknown coefficient module '" + std::string(name) + "' (expected Z_triv, Z_sgn, F2)");
}

std::string to_string(Coefficients c)
{
    switch (c) {
    case Coefficients::Z_triv:
        return "Z_triv";
    case Coefficients::Z_sgn:
        return "Z_sgn";
    case Coefficients::F2:
        return "F2";
    }
    throw std::logic_error("unreachable");
}

C2Module standard_module(Coefficients c)
{
    switch (c) {
    case Coefficients::Z_triv:
        return C2Module::trivial_integers();
    case Coefficients::Z_sgn:
        return C2Module::sign_integers();
    case Coefficients::F2:
        return C2Module::f2();
    }
    throw std::logic_error("unreachable");
}

ElementaryGroup cohomology_closed_form(Coefficients coeff, int s)
{
    if (s < 0)
        throw std::invalid_argument("cohomological degree must be nonnegative");
    switch (coeff) {
    case Coefficients::Z_triv:
        if (s == 0)
            return ElementaryGroup::integers();
        return s % 2 == 0 ? ElementaryGroup::twos() : ElementaryGroup{};
    case Coefficients::Z_sgn:
        return s % 2 == 1 ? ElementaryGroup::twos() : ElementaryGroup{};
    case Coefficients::F2:
        return ElementaryGroup::twos();
    }
    throw std::logic_error("unreachable");
}

ElementaryGroup cohomology_resolution(const C2Module& m, int s)
{
    if (s < 0)
        throw std::invalid_argument("cohomological degree must be nonnegative");

    ElementaryGroup result;

    // Free block: H = ker(f)/im(g) with f*g = 0. ker(f) is a saturated
    // sublattice containing im(g), so the torsion of the quotient is the
    // torsion of coker(g).
    const int a = m.free_rank();
    if (a > 0) {
        const IntMatrix id = IntMatrix::identity(a);
        const IntMatrix plus = id + m.integral_action();
        const IntMatrix minus = id - m.integral_action();
        if (s == 0) {
            result.free_rank = a - smith_normal_form(minus).rank();
        } else {
            const IntMatrix& f = (s % 2 == 1) ? plus : minus;
            const IntMatrix& g = (s % 2 == 1) ? minus : plus;
            if (!(f * g).is_zero())
                throw ValidationError("C2Module '" + m.name() + "': resolution maps do not compose to zero");
            auto snf_f = smith_normal_form(f);
            auto snf_g = smith_normal_form(g);
            result.free_rank = a - snf_f.rank() - snf_g.rank();
            for (auto d : snf_g.diagonal) {
                if (d <= 1)
                    continue;
                if (d != 2)
                    throw ValidationError("C2Module '" + m.name() + "': H^" + std::to_string(s) +
                                          " has torsion of order " + std::to_string(d) +
                                          ", exponent exceeds 2");
                ++result.two_rank;
            }
        }
    }

    // Torsion block over F_2, where 1 + t = 1 - t.
    const int b = m.two_rank();
    if (b > 0) {
        const IntMatrix plus = IntMatrix::identity(b) + m.torsion_action();
        const int r = rank_mod2(plus);
        result.two_rank += (s == 0) ? b - r : b - 2 * r;
    }
    return result;
}

}  // namespace rspin
