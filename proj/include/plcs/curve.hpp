// Marked curve germs: ordered branches, reduced equation, intersection table.
#ifndef PLCS_CURVE_HPP
#define PLCS_CURVE_HPP

#include "plcs/branch.hpp"

#include <optional>
#include <vector>

namespace plcs {

using vtuple = std::vector<expo_t>; // entries in [0,...] or kInfVal

class curve_germ {
public:
    explicit curve_germ(std::vector<branch> branches) : branches_(std::move(branches))
    {
        if (branches_.empty())
            throw std::invalid_argument("curve needs at least one branch");
        for (const auto& b : branches_)
            if (!b.is_primitive())
                throw std::invalid_argument("branch parametrization is not primitive");
        branch_eqs_.reserve(branches_.size());
        for (const auto& b : branches_)
            branch_eqs_.push_back(branch_equation(b));
        // duplicate branches show up as an infinite pairwise intersection
        const std::size_t r = branches_.size();
        inter_.assign(r, std::vector<expo_t>(r, 0));
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = i + 1; j < r; ++j) {
                const expo_t m = intersection_multiplicity_by_eq(branch_eqs_[j], branches_[i]);
                if (m == kInfVal)
                    throw std::invalid_argument("duplicate branch in curve description");
                inter_[i][j] = inter_[j][i] = m;
            }
        }
        equation_ = branch_eqs_[0];
        for (std::size_t i = 1; i < r; ++i)
            equation_ = equation_ * branch_eqs_[i];
    }

    std::size_t r() const { return branches_.size(); }
    const std::vector<branch>& branches() const { return branches_; }
    const branch& comp(std::size_t l) const { return branches_[l]; }
    const bipoly& equation() const { return equation_; }
    const bipoly& branch_eq(std::size_t l) const { return branch_eqs_[l]; }
    expo_t pairwise(std::size_t i, std::size_t j) const { return inter_[i][j]; }

    expo_t multiplicity() const { return equation_.order(); }

    bool is_smooth() const { return r() == 1 && branches_[0].mult() == 1; }

    // union of two smooth branches (the y(y + x^n) special family)
    bool is_two_smooth_union() const
    {
        return r() == 2 && branches_[0].mult() == 1 && branches_[1].mult() == 1;
    }

    // marking permutation: renumber branches
    curve_germ permuted(const std::vector<std::size_t>& perm) const
    {
        if (perm.size() != r())
            throw std::invalid_argument("marking permutation has wrong length");
        std::vector<branch> bs;
        std::vector<bool> seen(r(), false);
        for (std::size_t p : perm) {
            if (p >= r() || seen[p])
                throw std::invalid_argument("marking permutation is not a bijection");
            seen[p] = true;
            bs.push_back(branches_[p]);
        }
        return curve_germ(std::move(bs));
    }

    // conductor cache, filled by finalize_conductor() in semiring.hpp
    const std::optional<vtuple>& sigma_cache() const { return sigma_; }
    void set_sigma(vtuple s) const { sigma_ = std::move(s); }

private:
    std::vector<branch> branches_;
    std::vector<bipoly> branch_eqs_;
    std::vector<std::vector<expo_t>> inter_;
    bipoly equation_;
    mutable std::optional<vtuple> sigma_;
};

// product of the other branches' equations (vanishes exactly on comps != l)
inline bipoly complement_equation(const curve_germ& c, const std::vector<bool>& in_z)
{
    bipoly p = bipoly::constant(fel(1));
    for (std::size_t l = 0; l < c.r(); ++l)
        if (in_z[l])
            p = p * c.branch_eq(l);
    return p;
}

} // namespace plcs

#endif
