#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "graded.hpp"

namespace ainfty {

/// Incremental exact row elimination with first-pivot (lowest index) rule.
/// Rows are kept reduced against each other; pivot columns normalized to 1.
template <class K> class Eliminator {
  public:
    // Reduce v against the stored rows; returns the residue.
    SparseVec<K> residue(SparseVec<K> v) const
    {
        while (!v.is_zero()) {
            auto it = pivot_rows_.find(v.lead_index());
            if (it == pivot_rows_.end()) break;
            v.axpy(-v.lead_coeff(), rows_[it->second]);
        }
        // clear any interior pivot hits as well
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& [i, c] : v.entries()) {
                auto it = pivot_rows_.find(i);
                if (it != pivot_rows_.end()) {
                    v.axpy(-c, rows_[it->second]);
                    changed = true;
                    break;
                }
            }
        }
        return v;
    }

    // Insert v (after reduction). Returns true if it increased the rank.
    bool insert(SparseVec<K> v)
    {
        v = residue(std::move(v));
        if (v.is_zero()) return false;
        v *= v.lead_coeff().inv();
        int p = v.lead_index();
        // back-substitute into existing rows
        for (auto& r : rows_) {
            K c = r.coeff(p);
            if (!c.is_zero()) r.axpy(-c, v);
        }
        pivot_rows_[p] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(v));
        return true;
    }

    bool contains(const SparseVec<K>& v) const { return residue(v).is_zero(); }
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<SparseVec<K>>& rows() const { return rows_; }
    bool has_pivot(int i) const { return pivot_rows_.count(i) != 0; }

  private:
    std::vector<SparseVec<K>> rows_;
    std::map<int, int> pivot_rows_;
};

/// Span of a list of vectors as a reduced row space.
template <class K> Eliminator<K> span_of(const std::vector<SparseVec<K>>& vecs)
{
    Eliminator<K> e;
    for (const auto& v : vecs) e.insert(v);
    return e;
}

template <class K>
bool same_span(const std::vector<SparseVec<K>>& a, const std::vector<SparseVec<K>>& b)
{
    Eliminator<K> ea = span_of(a), eb = span_of(b);
    if (ea.rank() != eb.rank()) return false;
    for (const auto& v : a)
        if (!eb.contains(v)) return false;
    return true;
}

template <class K>
bool span_contains(const std::vector<SparseVec<K>>& big, const std::vector<SparseVec<K>>& small)
{
    Eliminator<K> e = span_of(big);
    for (const auto& v : small)
        if (!e.contains(v)) return false;
    return true;
}

/// Kernel basis of the linear map sending basis vector i (0 <= i < n) to
/// columns[i]. Augmented column elimination, deterministic.
template <class K>
std::vector<SparseVec<K>> kernel_basis(const std::vector<SparseVec<K>>& columns)
{
    struct Aug {
        SparseVec<K> img;
        SparseVec<K> src;
    };
    std::vector<Aug> reduced; // img has unique lead indices
    std::map<int, int> lead_of;
    std::vector<SparseVec<K>> kernel;
    for (int i = 0; i < static_cast<int>(columns.size()); ++i) {
        SparseVec<K> img = columns[i];
        SparseVec<K> src = SparseVec<K>::unit(i);
        while (!img.is_zero()) {
            auto it = lead_of.find(img.lead_index());
            if (it == lead_of.end()) break;
            const Aug& a = reduced[it->second];
            K c = img.lead_coeff();
            img.axpy(-c, a.img);
            src.axpy(-c, a.src);
        }
        if (img.is_zero()) {
            kernel.push_back(std::move(src));
        }
        else {
            K inv = img.lead_coeff().inv();
            img *= inv;
            src *= inv;
            lead_of[img.lead_index()] = static_cast<int>(reduced.size());
            reduced.push_back({std::move(img), std::move(src)});
        }
    }
    return kernel;
}

/// Solve sum_i x_i columns[i] = target; nullopt if inconsistent.
template <class K>
std::optional<SparseVec<K>> solve_in_span(const std::vector<SparseVec<K>>& columns,
                                          const SparseVec<K>& target)
{
    struct Aug {
        SparseVec<K> img;
        SparseVec<K> src;
    };
    std::vector<Aug> reduced;
    std::map<int, int> lead_of;
    for (int i = 0; i < static_cast<int>(columns.size()); ++i) {
        SparseVec<K> img = columns[i];
        SparseVec<K> src = SparseVec<K>::unit(i);
        while (!img.is_zero()) {
            auto it = lead_of.find(img.lead_index());
            if (it == lead_of.end()) break;
            const Aug& a = reduced[it->second];
            K c = img.lead_coeff();
            img.axpy(-c, a.img);
            src.axpy(-c, a.src);
        }
        if (!img.is_zero()) {
            K inv = img.lead_coeff().inv();
            img *= inv;
            src *= inv;
            lead_of[img.lead_index()] = static_cast<int>(reduced.size());
            reduced.push_back({std::move(img), std::move(src)});
        }
    }
    SparseVec<K> rem = target, expr;
    while (!rem.is_zero()) {
        auto it = lead_of.find(rem.lead_index());
        if (it == lead_of.end()) return std::nullopt;
        const Aug& a = reduced[it->second];
        K c = rem.lead_coeff();
        rem.axpy(-c, a.img);
        expr.axpy(c, a.src);
    }
    return expr;
}

/// Basis of span(vectors) intersected with {v : v supported on allowed indices}.
template <class K>
std::vector<SparseVec<K>>
intersect_with_coordinates(const std::vector<SparseVec<K>>& vectors,
                           const std::function<bool(int)>& allowed)
{
    // Kernel of (project to forbidden coordinates) restricted to the span:
    // eliminate forbidden leads first by sorting entries so forbidden indices
    // compare smaller. Implemented via an index shift trick.
    // Simpler: run kernel_basis on the forbidden parts.
    std::vector<SparseVec<K>> forb(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        SparseVec<K> f;
        for (const auto& [j, c] : vectors[i].entries())
            if (!allowed(j)) f.add_term(j, c);
        forb[i] = std::move(f);
    }
    std::vector<SparseVec<K>> combos = kernel_basis(forb);
    std::vector<SparseVec<K>> out;
    for (const auto& combo : combos) {
        SparseVec<K> v;
        for (const auto& [i, c] : combo.entries()) v.axpy(c, vectors[i]);
        if (!v.is_zero()) out.push_back(std::move(v));
    }
    return out;
}

/// rank of the union of two spanning sets
template <class K>
int rank_of_sum(const std::vector<SparseVec<K>>& a, const std::vector<SparseVec<K>>& b)
{
    Eliminator<K> e;
    for (const auto& v : a) e.insert(v);
    for (const auto& v : b) e.insert(v);
    return e.rank();
}

} // namespace ainfty
