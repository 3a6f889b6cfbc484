#pragma once

#include "filtered.hpp"
#include "polymodule.hpp"

namespace ainfty {

/// Morphism of polymodules with the same signature: a map from bar words of
/// P to P', stored component-wise on unit-free words within a window.
template <class K> class ModuleMorphism {
  public:
    ModuleMorphism() = default;
    ModuleMorphism(ModulePtr<K> source, ModulePtr<K> target, int degree, int window)
        : src_(std::move(source)), dst_(std::move(target)), deg_(degree), window_(window)
    {
        if (!(src_->signature() == dst_->signature()))
            throw SignatureError("morphism between different signatures");
    }

    static ModuleMorphism identity(const ModulePtr<K>& P, int window)
    {
        ModuleMorphism f(P, P, 0, window);
        PWord w;
        w.words.resize(P->signature().slots());
        for (int i = 0; i < P->space()->dim(); ++i) {
            w.elt = i;
            f.set_component(w, SparseVec<K>::unit(i));
        }
        return f;
    }

    const ModulePtr<K>& source() const { return src_; }
    const ModulePtr<K>& target() const { return dst_; }
    int degree() const { return deg_; }
    int window() const { return window_; }

    void set_component(const PWord& w, SparseVec<K> value)
    {
        if (w.total_length() > window_)
            throw TruncationError("component beyond the morphism window");
        for (int t = 0; t < src_->signature().slots(); ++t)
            for (int l : w.words[t])
                if (l == src_->signature().algebra(t)->unit_index())
                    throw ArgumentError("unital morphisms vanish on unit letters");
        int din = src_->word_degree(w);
        for (const auto& [j, c] : value.entries())
            if (!degrees_equal(src_->grading(), dst_->space()->at(j).degree, din + deg_))
                throw ArgumentError("morphism component off-degree");
        if (value.is_zero())
            table_.erase(w);
        else
            table_[w] = std::move(value);
    }

    const SparseVec<K>& component(const PWord& w) const
    {
        static const SparseVec<K> zero;
        auto it = table_.find(w);
        return it == table_.end() ? zero : it->second;
    }
    const std::map<PWord, SparseVec<K>>& components() const { return table_; }
    bool is_zero() const { return table_.empty(); }

    /// Smallest total word length carrying a nonzero component; morphisms in
    /// the ghost filtration F^k vanish below length k.
    int filtration_index() const
    {
        int k = window_ + 1;
        for (const auto& [w, v] : table_) k = std::min(k, w.total_length());
        return k;
    }
    bool is_strict() const
    {
        for (const auto& [w, v] : table_)
            if (w.total_length() > 0) return false;
        return true;
    }

  private:
    ModulePtr<K> src_, dst_;
    int deg_ = 0;
    int window_ = 0;
    std::map<PWord, SparseVec<K>> table_;
};

/// d phi per eq:polymor, evaluated on words within the window.
template <class K> ModuleMorphism<K> morphism_differential(const ModuleMorphism<K>& f)
{
    const PolyModule<K>& P = *f.source();
    const PolyModule<K>& Q = *f.target();
    ModuleMorphism<K> out(f.source(), f.target(), f.degree() + 1, f.window());
    for (const auto& w :
         pword::enumerate(P.signature(), P.space()->dim(), f.window())) {
        bool unit_free = true;
        for (int t = 0; t < P.signature().slots(); ++t)
            for (int l : w.words[t])
                unit_free &= (l != P.signature().algebra(t)->unit_index());
        if (!unit_free) continue;
        SparseVec<K> acc;
        for (const auto& [w2, c] : bar_of_module(P, w)) acc.axpy(c, f.component(w2));
        pword::for_each_split<K>(
            P.signature(), w,
            [&](const std::vector<Word>& outer, const PWord& inner, int gamma) {
                const SparseVec<K>& fi = f.component(inner);
                if (fi.is_zero()) return;
                int lhead = 0;
                for (int t = 0; t < P.signature().r(); ++t)
                    lhead += word_suspended_degree(*P.signature().algebra(t), outer[t]);
                K sgn = sign_pow<K>(1 + f.degree() + f.degree() * lhead + gamma);
                PWord ow;
                ow.words = outer;
                for (const auto& [j, c] : fi.entries()) {
                    ow.elt = j;
                    acc.axpy(sgn * c, Q.mu(ow));
                }
            });
        if (!acc.is_zero()) out.set_component(w, std::move(acc));
    }
    return out;
}

template <class K> bool is_homomorphism(const ModuleMorphism<K>& f)
{
    return morphism_differential(f).is_zero();
}

/// psi phi = psi o (1 (x) phi (x) 1) o Delta_P; filtration indices add.
template <class K>
ModuleMorphism<K> compose(const ModuleMorphism<K>& psi, const ModuleMorphism<K>& phi)
{
    if (phi.target().get() != psi.source().get())
        throw SignatureError("compose: middle modules differ");
    const PolyModule<K>& P = *phi.source();
    ModuleMorphism<K> out(phi.source(), psi.target(), phi.degree() + psi.degree(),
                          std::min(phi.window(), psi.window()));
    for (const auto& w :
         pword::enumerate(P.signature(), P.space()->dim(), out.window())) {
        bool unit_free = true;
        for (int t = 0; t < P.signature().slots(); ++t)
            for (int l : w.words[t])
                unit_free &= (l != P.signature().algebra(t)->unit_index());
        if (!unit_free) continue;
        SparseVec<K> acc;
        pword::for_each_split<K>(
            P.signature(), w,
            [&](const std::vector<Word>& outer, const PWord& inner, int gamma) {
                const SparseVec<K>& fi = phi.component(inner);
                if (fi.is_zero()) return;
                int lhead = 0;
                for (int t = 0; t < P.signature().r(); ++t)
                    lhead += word_suspended_degree(*P.signature().algebra(t), outer[t]);
                K sgn = sign_pow<K>(phi.degree() * lhead + gamma);
                PWord ow;
                ow.words = outer;
                for (const auto& [j, c] : fi.entries()) {
                    ow.elt = j;
                    acc.axpy(sgn * c, psi.component(ow));
                }
            });
        if (!acc.is_zero()) out.set_component(w, std::move(acc));
    }
    return out;
}

/// cone(phi : X -> Y) on the space Y (+) sX; the shifted source feeds Y
/// through phi conjugated by the suspension of the module slot.
/// phi must be a degree-0 homomorphism with all components inside its window.
template <class K> ModulePtr<K> cone(const ModuleMorphism<K>& phi)
{
    if (phi.degree() != 0) throw ArgumentError("cone needs a degree-0 morphism");
    if (!is_homomorphism(phi)) throw NotCocycleError("cone of a non-closed morphism");
    ModulePtr<K> X = phi.source(), Y = phi.target();
    auto space = std::make_shared<GradedSpace>(X->grading());
    int ny = Y->space()->dim();
    for (const auto& b : Y->space()->basis())
        space->add_basis_element(b.label + ".c", b.degree);
    for (const auto& b : X->space()->basis())
        space->add_basis_element("s(" + b.label + ").c", b.degree - 1);
    ModuleMorphism<K> f = phi;
    auto mu = [X, Y, f, ny](const PWord& w) -> SparseVec<K> {
        SparseVec<K> out;
        const Signature<K>& sig = X->signature();
        int rdeg = 0;
        for (int t = sig.r(); t < sig.slots(); ++t)
            rdeg += word_suspended_degree(*sig.algebra(t), w.words[t]);
        if (w.elt < ny) {
            for (const auto& [j, c] : Y->mu(w).entries()) out.add_term(j, c);
        }
        else {
            PWord wx = w;
            wx.elt = w.elt - ny;
            // shifted copy of mu_X
            for (const auto& [j, c] : X->mu(wx).entries())
                out.add_term(ny + j, sign_pow<K>(rdeg) * c);
            // phi o (1 (x) sigma^{-1} (x) 1) into Y
            bool unit_free = true;
            for (int t = 0; t < sig.slots(); ++t)
                for (int l : w.words[t])
                    unit_free &= (l != sig.algebra(t)->unit_index());
            if (unit_free && w.total_length() <= f.window()) {
                int lw = 0;
                for (int t = 0; t < sig.r(); ++t)
                    lw += word_suspended_degree(*sig.algebra(t), w.words[t]);
                K sgn = sign_pow<K>(lw + X->space()->at(wx.elt).degree);
                for (const auto& [j, c] : f.component(wx).entries())
                    out.add_term(j, sgn * c);
            }
        }
        return out;
    };
    return std::make_shared<PolyModule<K>>("cone(" + X->name() + "->" + Y->name() + ")",
                                           X->signature(), space, mu,
                                           X->perfect() && Y->perfect());
}

/// The morphism complex Hom_{Mod}(P, P') materialized on a word window,
/// with the bar filtration. Basis elements are (unit-free word, target
/// basis element) pairs.
template <class K> class HomComplex {
  public:
    HomComplex(ModulePtr<K> source, ModulePtr<K> target, int window, bool unital = true)
        : src_(std::move(source)), dst_(std::move(target)), window_(window)
    {
        if (!(src_->signature() == dst_->signature()))
            throw SignatureError("hom complex between different signatures");
        const Signature<K>& sig = src_->signature();
        for (const auto& w : pword::enumerate(sig, src_->space()->dim(), window_)) {
            bool keep = true;
            if (unital)
                for (int t = 0; t < sig.slots(); ++t)
                    for (int l : w.words[t])
                        keep &= (l != sig.algebra(t)->unit_index());
            if (keep) words_.push_back(w);
        }
        auto space = std::make_shared<GradedSpace>(src_->grading());
        for (const auto& w : words_) {
            for (int t = 0; t < dst_->space()->dim(); ++t) {
                index_[{w, t}] = space->dim();
                basis_keys_.push_back({w, t});
                space->add_basis_element(
                    "(" + pword::to_string(*src_, w) + "->" +
                        dst_->space()->at(t).label + ")",
                    dst_->space()->at(t).degree - src_->word_degree(w));
            }
        }
        // differential via eq:polymor on basis morphisms
        GradedMap<K> d(space, space, 1);
        std::vector<SparseVec<K>> cols(space->dim());
        int dimQ = dst_->space()->dim();
        for (const auto& w : words_) {
            // phi o b_P : a term c * w0 sends basis (w0, t) to c at (w, t)
            for (const auto& [w0, c] : bar_of_module(*src_, w)) {
                auto it0 = index_.find({w0, 0});
                if (it0 == index_.end()) continue;
                for (int t = 0; t < dimQ; ++t)
                    cols[index_.at({w0, t})].add_term(index_.at({w, t}), c);
            }
            // -(-1)^{|phi|} mu_Q o (1 (x) phi (x) 1) o Delta
            pword::for_each_split<K>(
                src_->signature(), w,
                [&](const std::vector<Word>& outer, const PWord& inner, int gamma) {
                    auto it0 = index_.find({inner, 0});
                    if (it0 == index_.end()) return;
                    int lhead = 0;
                    for (int t = 0; t < src_->signature().r(); ++t)
                        lhead += word_suspended_degree(*src_->signature().algebra(t),
                                                       outer[t]);
                    for (int t0 = 0; t0 < dimQ; ++t0) {
                        int fdeg = space->at(index_.at({inner, t0})).degree;
                        PWord ow;
                        ow.words = outer;
                        ow.elt = t0;
                        const SparseVec<K>& mv = dst_->mu(ow);
                        if (mv.is_zero()) continue;
                        K sgn = sign_pow<K>(1 + fdeg + fdeg * lhead + gamma);
                        for (const auto& [j, c] : mv.entries())
                            cols[index_.at({inner, t0})].add_term(index_.at({w, j}),
                                                                  sgn * c);
                    }
                });
        }
        for (int i = 0; i < space->dim(); ++i) d.set_column(i, std::move(cols[i]));
        complex_ = Complex<K>(space, d);
    }

    const ModulePtr<K>& source() const { return src_; }
    const ModulePtr<K>& target() const { return dst_; }
    int window() const { return window_; }
    const Complex<K>& complex() const { return complex_; }
    const std::vector<PWord>& words() const { return words_; }
    int index_of(const PWord& w, int t) const { return index_.at({w, t}); }

    /// Lattice filtration F_alpha = {phi : phi kills words with length
    /// vector <= -alpha - 1 componentwise}, increasing in alpha.
    LatticeFilteredComplex<K> lattice_filtered() const
    {
        int k = src_->signature().slots();
        int lo = -window_ - 1, hi = 0;
        std::map<std::vector<int>, std::set<int>> pieces;
        std::vector<int> alpha(k, lo);
        while (true) {
            std::set<int> sel;
            for (const auto& [key, idx] : index_) {
                // phi in F_alpha kills words with lenvec <= -alpha-1; the
                // component survives iff some slot has length >= -alpha_t
                bool in_kill_zone = true;
                for (int t = 0; t < k; ++t)
                    in_kill_zone &=
                        (static_cast<int>(key.first.words[t].size()) <= -alpha[t] - 1);
                if (!in_kill_zone) sel.insert(idx);
            }
            pieces[alpha] = std::move(sel);
            int t = k - 1;
            while (t >= 0 && alpha[t] == hi) alpha[t--] = lo;
            if (t < 0) break;
            ++alpha[t];
        }
        return LatticeFilteredComplex<K>(complex_, k, lo, hi, std::move(pieces), false);
    }

    /// Total bar filtration: for one-slot signatures this is
    /// F_n = components of total word length >= -n.
    FilteredComplex<K> filtered() const { return total_filtration(lattice_filtered()); }

    /// basis vector of the complex for a stored morphism, and back
    SparseVec<K> vector_of(const ModuleMorphism<K>& f) const
    {
        SparseVec<K> out;
        for (const auto& [w, v] : f.components())
            for (const auto& [t, c] : v.entries()) out.add_term(index_.at({w, t}), c);
        return out;
    }
    ModuleMorphism<K> morphism_of(const SparseVec<K>& v, int degree) const
    {
        ModuleMorphism<K> f(src_, dst_, degree, window_);
        std::map<PWord, SparseVec<K>> comp;
        for (const auto& [i, c] : v.entries()) {
            const auto& key = basis_keys_.at(i);
            comp[key.first].add_term(key.second, c);
        }
        for (auto& [w, val] : comp) f.set_component(w, std::move(val));
        return f;
    }

  private:
    ModulePtr<K> src_, dst_;
    int window_ = 0;
    std::vector<PWord> words_;
    std::map<std::pair<PWord, int>, int> index_;
    std::vector<std::pair<PWord, int>> basis_keys_;
    Complex<K> complex_;
};

} // namespace ainfty
