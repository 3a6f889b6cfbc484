#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace ainfty {

/// Cochain complex: graded space with a degree +1 differential, d*d = 0
/// checked at construction.
template <class K> class Complex {
  public:
    Complex() = default;
    Complex(SpacePtr space, GradedMap<K> d) : space_(std::move(space)), d_(std::move(d))
    {
        if (!(*d_.source() == *space_) || !(*d_.target() == *space_))
            throw SignatureError("differential must be an endomorphism of the space");
        if (!degrees_equal(space_->grading(), d_.degree(), 1))
            throw SignatureError("differential must have degree 1");
        GradedMap<K> dd = compose(d_, d_);
        if (!dd.is_zero()) throw ArgumentError("d*d != 0");
    }

    static Complex with_zero_differential(SpacePtr space)
    {
        GradedMap<K> d(space, space, 1);
        return Complex(std::move(space), std::move(d));
    }

    const SpacePtr& space() const { return space_; }
    const GradedMap<K>& d() const { return d_; }
    Grading grading() const { return space_->grading(); }

    std::vector<int> degrees_present() const
    {
        std::vector<int> out;
        for (const auto& [d, n] : space_->dims())
            if (n > 0) out.push_back(d);
        return out;
    }

    /// Kernel of d restricted to the given degree slice.
    std::vector<SparseVec<K>> cocycles_in_degree(int deg) const
    {
        std::vector<int> idx = space_->indices_in_degree(deg);
        std::vector<SparseVec<K>> cols;
        cols.reserve(idx.size());
        for (int i : idx) cols.push_back(d_.column(i));
        std::vector<SparseVec<K>> combos = kernel_basis(cols);
        std::vector<SparseVec<K>> out;
        for (const auto& c : combos) {
            SparseVec<K> v;
            for (const auto& [j, coef] : c.entries()) v.add_term(idx[j], coef);
            out.push_back(std::move(v));
        }
        return out;
    }

    /// Image of d landing in the given degree slice.
    std::vector<SparseVec<K>> boundaries_in_degree(int deg) const
    {
        std::vector<SparseVec<K>> out;
        for (int i : space_->indices_in_degree(deg - 1)) {
            const auto& col = d_.column(i);
            if (!col.is_zero()) out.push_back(col);
        }
        return out;
    }

  private:
    SpacePtr space_;
    GradedMap<K> d_;
};

template <class K> struct Cohomology {
    SpacePtr space; // basis labels H<deg>_<i>
    std::vector<SparseVec<K>> representatives; // cocycle representative per basis element
};

/// ker d / im d by exact row reduction, first-pivot representatives.
/// Preferred vectors (must be cocycles) are tried first, so their classes
/// keep them as chosen representatives; the transfer uses this to keep the
/// strict unit on the nose.
template <class K>
Cohomology<K> cohomology(const Complex<K>& c,
                         const std::vector<SparseVec<K>>& preferred = {})
{
    auto H = std::make_shared<GradedSpace>(c.grading());
    std::vector<SparseVec<K>> reps;
    for (int deg : c.degrees_present()) {
        Eliminator<K> mod_out = span_of(c.boundaries_in_degree(deg));
        int count = 0;
        auto add_class = [&](const SparseVec<K>& rep) {
            mod_out.insert(rep);
            H->add_basis_element("H" + std::to_string(deg) + "_" + std::to_string(count++),
                                 deg);
            reps.push_back(rep);
        };
        for (const auto& p : preferred) {
            if (p.is_zero()) continue;
            bool in_degree = true;
            for (const auto& [i, v] : p.entries())
                if (c.space()->degree_of(i) != reduce_degree(c.grading(), deg))
                    in_degree = false;
            if (!in_degree) continue;
            if (!c.d().apply(p).is_zero())
                throw ArgumentError("preferred representative is not a cocycle");
            if (!mod_out.residue(p).is_zero()) add_class(p);
        }
        for (const auto& z : c.cocycles_in_degree(deg)) {
            SparseVec<K> r = mod_out.residue(z);
            if (r.is_zero()) continue;
            r *= r.lead_coeff().inv();
            add_class(r);
        }
    }
    return {H, std::move(reps)};
}

template <class K> std::map<int, int> cohomology_dims(const Complex<K>& c)
{
    std::map<int, int> out;
    Cohomology<K> h = cohomology(c);
    for (const auto& b : h.space->basis()) out[reduce_degree(h.space->grading(), b.degree)] += 1;
    return out;
}

/// Deterministic splitting (i, p, h) with the side conditions
/// h i = 0, p h = 0, h h = 0 and d h + h d = 1 - i p.
template <class K> struct HomotopySplitting {
    Cohomology<K> H;
    GradedMap<K> include;  // H -> C, degree 0
    GradedMap<K> project;  // C -> H, degree 0
    GradedMap<K> homotopy; // C -> C, degree -1
};

template <class K>
HomotopySplitting<K> homotopy_splitting(const Complex<K>& c,
                                        const std::vector<SparseVec<K>>& preferred = {})
{
    Cohomology<K> H = cohomology(c, preferred);
    const SpacePtr& A = c.space();
    GradedMap<K> inc(H.space, A, 0);
    for (int i = 0; i < H.space->dim(); ++i) inc.set_column(i, H.representatives[i]);

    GradedMap<K> proj(A, H.space, 0);
    GradedMap<K> h(A, A, -1);

    for (int deg : c.degrees_present()) {
        std::vector<int> hidx;
        for (int i = 0; i < H.space->dim(); ++i)
            if (H.space->degree_of(i) == reduce_degree(c.grading(), deg)) hidx.push_back(i);

        std::vector<SparseVec<K>> Rv;
        for (int i : hidx) Rv.push_back(H.representatives[i]);
        Eliminator<K> bonly = span_of(c.boundaries_in_degree(deg));
        std::vector<SparseVec<K>> Bbasis = bonly.rows();

        // complement of ker d inside the degree-1 slice, mapping isomorphically
        // onto the boundaries of this slice
        Eliminator<K> z1;
        for (const auto& z : c.cocycles_in_degree(deg - 1)) z1.insert(z);
        std::vector<SparseVec<K>> C1, dC1;
        for (int k : c.space()->indices_in_degree(deg - 1)) {
            SparseVec<K> e = SparseVec<K>::unit(k);
            if (z1.insert(e)) {
                dC1.push_back(c.d().apply(e));
                C1.push_back(std::move(e));
            }
        }
        // h on a boundary b: the unique preimage of b inside span(C1)
        auto h_of_boundary = [&](const SparseVec<K>& b) {
            auto pre = solve_in_span(dC1, b);
            if (!pre) throw ArgumentError("splitting: no preimage for boundary");
            SparseVec<K> hv;
            for (const auto& [k, cf] : pre->entries()) hv.axpy(cf, C1[k]);
            return hv;
        };

        // complement C of ker d in this slice (p = 0, h = 0 there)
        Eliminator<K> zb;
        for (const auto& v : Rv) zb.insert(v);
        for (const auto& v : Bbasis) zb.insert(v);
        std::vector<SparseVec<K>> Cv;
        for (int i : c.space()->indices_in_degree(deg)) {
            SparseVec<K> e = SparseVec<K>::unit(i);
            if (zb.insert(e)) Cv.push_back(std::move(e));
        }

        std::vector<SparseVec<K>> all;
        all.insert(all.end(), Rv.begin(), Rv.end());
        all.insert(all.end(), Bbasis.begin(), Bbasis.end());
        all.insert(all.end(), Cv.begin(), Cv.end());
        for (int i : c.space()->indices_in_degree(deg)) {
            auto expr = solve_in_span(all, SparseVec<K>::unit(i));
            if (!expr) throw ArgumentError("splitting: basis decomposition failed");
            SparseVec<K> pcol, hcol;
            for (const auto& [j, coef] : expr->entries()) {
                if (j < static_cast<int>(Rv.size()))
                    pcol.add_term(hidx[j], coef);
                else if (j < static_cast<int>(Rv.size() + Bbasis.size()))
                    hcol.axpy(coef, h_of_boundary(Bbasis[j - Rv.size()]));
            }
            proj.set_column(i, std::move(pcol));
            h.set_column(i, std::move(hcol));
        }
    }
    return {std::move(H), std::move(inc), std::move(proj), std::move(h)};
}

} // namespace ainfty
