#pragma once

#include "filtered.hpp"

namespace ainfty {

/// One page of the spectral sequence of a filtered complex.
/// dims is keyed by (filtration index k, cohomological degree).
struct SpectralPage {
    int page = 0;
    std::map<std::pair<int, int>, int> dims;
    int total_dim() const
    {
        int t = 0;
        for (const auto& [kd, n] : dims) t += n;
        return t;
    }
    friend bool operator==(const SpectralPage& a, const SpectralPage& b)
    {
        return a.dims == b.dims;
    }
};

namespace detail {

/// {c in piece(k), degree deg : dc in piece(k - q)} as vectors in the total space.
template <class K>
std::vector<SparseVec<K>> z_space(const FilteredComplex<K>& F, int k, int q, int deg)
{
    const Complex<K>& C = F.total();
    const std::set<int>& top = F.piece(k);
    const std::set<int>& drop = F.piece(k - q);
    std::vector<int> idx;
    for (int i : C.space()->indices_in_degree(deg))
        if (top.count(i)) idx.push_back(i);
    std::vector<SparseVec<K>> cols;
    for (int i : idx) {
        SparseVec<K> forb;
        for (const auto& [j, c] : C.d().column(i).entries())
            if (!drop.count(j)) forb.add_term(j, c);
        cols.push_back(std::move(forb));
    }
    std::vector<SparseVec<K>> combos = kernel_basis(cols);
    std::vector<SparseVec<K>> out;
    for (const auto& combo : combos) {
        SparseVec<K> v;
        for (const auto& [j, c] : combo.entries()) v.add_term(idx[j], c);
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace detail

/// Page E_q per the subquotient formulas
///   Z_k^q = {[c] : c in G^k C, dc in G^{k-q} C}
///   B_k^q = {[dc] : c in G^{k+q-1} C, dc in G^k C}
/// computed exactly, entries reported per (k, degree).
template <class K> SpectralPage spectral_page(const FilteredComplex<K>& F, int q)
{
    SpectralPage out;
    out.page = q;
    const Complex<K>& C = F.total();
    for (int k = F.window_lo() + 1; k <= F.window_hi(); ++k) {
        // all indices with piece(k) == piece(k-1) contribute nothing
        if (F.piece(k) == F.piece(k - 1)) continue;
        for (int deg : C.degrees_present()) {
            std::vector<SparseVec<K>> z = detail::z_space(F, k, q, deg);
            // boundary space: d of {c in piece(k+q-1), deg-1 : dc in piece(k)}
            std::vector<SparseVec<K>> bsrc = detail::z_space(F, k + q - 1, q - 1, deg - 1);
            std::vector<SparseVec<K>> b;
            for (const auto& v : bsrc) {
                SparseVec<K> dv = C.d().apply(v);
                if (!dv.is_zero()) b.push_back(std::move(dv));
            }
            // both spaces taken mod piece(k-1)
            std::vector<SparseVec<K>> below;
            for (int i : C.space()->indices_in_degree(deg))
                if (F.piece(k - 1).count(i)) below.push_back(SparseVec<K>::unit(i));
            int dim = rank_of_sum(z, below) - rank_of_sum(b, below);
            if (dim != 0) out.dims[{k, deg}] = dim;
        }
    }
    return out;
}

/// Pages E_1 .. E_max_page.
template <class K>
std::vector<SpectralPage> spectral_pages(const FilteredComplex<K>& F, int max_page)
{
    if (max_page < 1) throw ArgumentError("max_page must be >= 1");
    std::vector<SpectralPage> out;
    for (int q = 1; q <= max_page; ++q) out.push_back(spectral_page(F, q));
    return out;
}

struct DegenerationReport {
    int s = 0;          // degenerates on the (s+1) page
    bool certified = true; // window constancy makes the tail stable
};

/// Smallest s with E_{s+1} = E_{s+2} = ... ; pages stabilize once q exceeds
/// the window span, so the scan is finite.
template <class K> DegenerationReport degeneration_report(const FilteredComplex<K>& F)
{
    int span = F.window_hi() - F.window_lo() + 1;
    int qmax = span + 2;
    std::vector<SpectralPage> pages;
    for (int q = 1; q <= qmax + 1; ++q) pages.push_back(spectral_page(F, q));
    int s = qmax - 1;
    for (int q = qmax; q >= 1; --q) {
        if (pages[q - 1] == pages[q])
            s = q - 1;
        else
            break;
    }
    return {s, F.exact_window()};
}

template <class K> int degeneration_page(const FilteredComplex<K>& F)
{
    return degeneration_report(F).s;
}

/// E_infinity graded dims must match the jumps of the induced filtration on
/// H*; exposed for the property suite.
template <class K>
std::map<std::pair<int, int>, int> infinity_page_dims(const FilteredComplex<K>& F)
{
    int span = F.window_hi() - F.window_lo() + 1;
    return spectral_page(F, span + 2).dims;
}

template <class K>
std::map<std::pair<int, int>, int> induced_filtration_jumps(const FilteredComplex<K>& F)
{
    const Complex<K>& C = F.total();
    std::map<std::pair<int, int>, int> out;
    for (int deg : C.degrees_present()) {
        std::vector<SparseVec<K>> Z = C.cocycles_in_degree(deg);
        std::vector<SparseVec<K>> B = C.boundaries_in_degree(deg);
        int rb = span_of(B).rank();
        int prev = 0;
        for (int n = F.window_lo(); n <= F.window_hi(); ++n) {
            auto zn = intersect_with_coordinates<K>(
                Z, [&](int i) { return F.piece(n).count(i) != 0; });
            int cur = rank_of_sum(zn, B) - rb;
            if (cur - prev != 0) out[{n, deg}] = cur - prev;
            prev = cur;
        }
    }
    return out;
}

} // namespace ainfty
