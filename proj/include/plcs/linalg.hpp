// Exact dense linear algebra over the ground field.
#ifndef PLCS_LINALG_HPP
#define PLCS_LINALG_HPP

#include "plcs/field.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace plcs {

using fvec = std::vector<fel>;
using fmat = std::vector<fvec>;

// Row echelon form kept incrementally: rows are reduced, pivot columns strictly
// increasing insertion-independent (sorted by pivot).
class echelon {
public:
    explicit echelon(std::size_t cols) : cols_(cols) {}

    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    const fmat& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    // Reduces v against the basis in place; returns the remainder.
    fvec reduce(fvec v) const
    {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const fel& c = v[pivots_[k]];
            if (c.is_zero())
                continue;
            const fel factor = c; // rows are pivot-normalized to 1
            for (std::size_t j = pivots_[k]; j < cols_; ++j)
                if (!rows_[k][j].is_zero())
                    v[j] -= factor * rows_[k][j];
        }
        return v;
    }

    // Returns true if the row enlarged the span.
    bool insert(fvec v)
    {
        v = reduce(std::move(v));
        std::size_t p = 0;
        while (p < cols_ && v[p].is_zero())
            ++p;
        if (p == cols_)
            return false;
        const fel inv = v[p].inverse();
        for (std::size_t j = p; j < cols_; ++j)
            if (!v[j].is_zero())
                v[j] = inv * v[j];
        // back-substitute into existing rows to keep them fully reduced
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const fel c = rows_[k][p];
            if (c.is_zero())
                continue;
            for (std::size_t j = p; j < cols_; ++j)
                if (!v[j].is_zero())
                    rows_[k][j] -= c * v[j];
        }
        std::size_t at = 0;
        while (at < pivots_.size() && pivots_[at] < p)
            ++at;
        rows_.insert(rows_.begin() + at, std::move(v));
        pivots_.insert(pivots_.begin() + at, p);
        return true;
    }

    bool in_span(const fvec& v) const
    {
        fvec r = reduce(v);
        for (const auto& c : r)
            if (!c.is_zero())
                return false;
        return true;
    }

private:
    std::size_t cols_;
    fmat rows_;
    std::vector<std::size_t> pivots_;
};

// Solves A x = b exactly; returns one solution if consistent.
inline std::optional<fvec> solve_linear(const fmat& a, const fvec& b, const field_ptr& fld)
{
    const std::size_t m = a.size();
    const std::size_t n = m == 0 ? 0 : a[0].size();
    fmat aug(m, fvec(n + 1, fel::zero(fld)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug[i][j] = a[i][j];
        aug[i][n] = b[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t sel = row;
        while (sel < m && aug[sel][col].is_zero())
            ++sel;
        if (sel == m)
            continue;
        std::swap(aug[sel], aug[row]);
        const fel inv = aug[row][col].inverse();
        for (std::size_t j = col; j <= n; ++j)
            if (!aug[row][j].is_zero())
                aug[row][j] = inv * aug[row][j];
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || aug[i][col].is_zero())
                continue;
            const fel f = aug[i][col];
            for (std::size_t j = col; j <= n; ++j)
                if (!aug[row][j].is_zero())
                    aug[i][j] -= f * aug[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < m; ++i)
        if (!aug[i][n].is_zero())
            return std::nullopt;
    fvec x(n, fel::zero(fld));
    for (std::size_t k = 0; k < pivot_col.size(); ++k)
        x[pivot_col[k]] = aug[k][n];
    return x;
}

// Nullspace basis of A (columns n); each vector has n entries.
inline fmat nullspace(const fmat& a, std::size_t n, const field_ptr& fld)
{
    const std::size_t m = a.size();
    fmat aug(m, fvec(n, fel::zero(fld)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n && j < a[i].size(); ++j)
            aug[i][j] = a[i][j];
    std::vector<std::ptrdiff_t> where(n, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t sel = row;
        while (sel < m && aug[sel][col].is_zero())
            ++sel;
        if (sel == m)
            continue;
        std::swap(aug[sel], aug[row]);
        const fel inv = aug[row][col].inverse();
        for (std::size_t j = col; j < n; ++j)
            if (!aug[row][j].is_zero())
                aug[row][j] = inv * aug[row][j];
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || aug[i][col].is_zero())
                continue;
            const fel f = aug[i][col];
            for (std::size_t j = col; j < n; ++j)
                if (!aug[row][j].is_zero())
                    aug[i][j] -= f * aug[row][j];
        }
        where[col] = static_cast<std::ptrdiff_t>(row);
        ++row;
    }
    fmat basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (where[free] != -1)
            continue;
        fvec v(n, fel::zero(fld));
        v[free] = fel::one(fld);
        for (std::size_t col = 0; col < n; ++col)
            if (where[col] != -1)
                v[col] = -aug[static_cast<std::size_t>(where[col])][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace plcs

#endif
