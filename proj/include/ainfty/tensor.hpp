#pragma once

#include "morphism.hpp"

namespace ainfty {

/// Filtered tensor product P1 (x)_A P2 on the space P1 (x) B A (x) P2 for
/// P1 with a single right slot A and P2 with a single left slot A; leftover
/// slots of P1 (left) and P2 (right) carry over to the result.
/// The middle bar factor is truncated at middle_window.
template <class K> class TensorModule {
  public:
    TensorModule(ModulePtr<K> p1, ModulePtr<K> p2, int middle_window)
        : p1_(std::move(p1)), p2_(std::move(p2)), nmid_(middle_window)
    {
        const Signature<K>& s1 = p1_->signature();
        const Signature<K>& s2 = p2_->signature();
        if (s1.s() != 1 || s2.r() != 1 || s1.right[0].get() != s2.left[0].get())
            throw SignatureError("tensor_over needs P1 = (a|A) and P2 = (A|b)");
        A_ = s1.right[0];

        // result signature: P1's left slots, P2's right slots
        Signature<K> sig{s1.left, s2.right};

        auto space = std::make_shared<GradedSpace>(p1_->grading());
        std::vector<Word> mids = primitive_filtration(*A_, nmid_, nmid_);
        for (int i = 0; i < p1_->space()->dim(); ++i)
            for (const auto& w : mids)
                for (int j = 0; j < p2_->space()->dim(); ++j) {
                    triples_.push_back({i, w, j});
                    tindex_[{i, w, j}] = static_cast<int>(triples_.size()) - 1;
                    space->add_basis_element(
                        p1_->space()->at(i).label + "(x)" +
                            word_str(*A_->suspended_space(), w) + "(x)" +
                            p2_->space()->at(j).label,
                        p1_->space()->at(i).degree + word_suspended_degree(*A_, w) +
                            p2_->space()->at(j).degree);
                }

        auto p1c = p1_;
        auto p2c = p2_;
        auto Ac = A_;
        auto triples = triples_;
        auto tindex = tindex_;
        int r1 = s1.r();
        int s2n = s2.s();
        auto mu = [p1c, p2c, Ac, triples, tindex, r1, s2n](const PWord& pw) -> SparseVec<K> {
            const auto& [pi, w, qi] = triples[pw.elt];
            bool c_empty = true, d_empty = true;
            for (int t = 0; t < r1; ++t) c_empty &= pw.words[t].empty();
            for (int t = r1; t < r1 + s2n; ++t) d_empty &= pw.words[t].empty();
            SparseVec<K> out;
            int n = static_cast<int>(w.size());
            int pdeg = p1c->space()->at(pi).degree;

            // mu_{P1} eats the outer left words, p, and a prefix of w
            if (d_empty) {
                for (int i = 0; i <= n; ++i) {
                    PWord w1;
                    w1.words.assign(pw.words.begin(), pw.words.begin() + r1);
                    w1.words.push_back(Word(w.begin(), w.begin() + i));
                    w1.elt = pi;
                    const SparseVec<K>& val = p1c->mu(w1);
                    if (val.is_zero()) continue;
                    Word tail(w.begin() + i, w.end());
                    for (const auto& [j, c] : val.entries())
                        out.add_term(tindex.at({j, tail, qi}), c);
                }
            }
            // middle bar differential
            if (c_empty && d_empty) {
                for (const auto& [w2, c] : bar_differential(*Ac, w, n)) {
                    K sgn = sign_pow<K>(pdeg);
                    out.add_term(tindex.at({pi, w2, qi}), sgn * c);
                }
            }
            // mu_{P2} eats a suffix of w, q, and the outer right words
            if (c_empty) {
                for (int i = 0; i <= n; ++i) {
                    PWord w2;
                    w2.words.push_back(Word(w.begin() + i, w.end()));
                    w2.words.insert(w2.words.end(), pw.words.begin() + r1,
                                    pw.words.end());
                    w2.elt = qi;
                    const SparseVec<K>& val = p2c->mu(w2);
                    if (val.is_zero()) continue;
                    Word head(w.begin(), w.begin() + i);
                    K sgn = sign_pow<K>(pdeg + word_suspended_degree(*Ac, head));
                    for (const auto& [j, c] : val.entries())
                        out.add_term(tindex.at({pi, head, j}), sgn * c);
                }
            }
            return out;
        };
        module_ = std::make_shared<PolyModule<K>>(
            p1_->name() + "(x)_" + A_->name() + p2_->name(), sig, space, mu,
            p1_->perfect() && p2_->perfect());
    }

    const ModulePtr<K>& module() const { return module_; }
    const AlgebraPtr<K>& glued_algebra() const { return A_; }
    int middle_window() const { return nmid_; }
    const ModulePtr<K>& factor1() const { return p1_; }
    const ModulePtr<K>& factor2() const { return p2_; }

    int index_of(int p, const Word& w, int q) const { return tindex_.at({p, w, q}); }
    const std::tuple<int, Word, int>& triple(int idx) const { return triples_.at(idx); }
    int middle_length(int idx) const
    {
        return static_cast<int>(std::get<1>(triples_.at(idx)).size());
    }

    /// underlying complex with the Z-filtration by middle bar length
    FilteredComplex<K> filtered() const
    {
        ModuleComplex<K> mc = module_bar_complex(module_, 0);
        std::vector<std::set<int>> pieces;
        for (int g = -1; g <= nmid_; ++g) {
            std::set<int> sel;
            for (std::size_t i = 0; i < mc.words.size(); ++i)
                if (middle_length(mc.words[i].elt) <= g) sel.insert(static_cast<int>(i));
            pieces.push_back(std::move(sel));
        }
        return FilteredComplex<K>(mc.complex, -1, nmid_, std::move(pieces), false);
    }

  private:
    ModulePtr<K> p1_, p2_;
    AlgebraPtr<K> A_;
    int nmid_ = 0;
    ModulePtr<K> module_;
    std::vector<std::tuple<int, Word, int>> triples_;
    std::map<std::tuple<int, Word, int>, int> tindex_;
};

/// P1 (.)^gamma P2 = (P1 (x) P2) / (middle length <= gamma).
template <class K>
ModulePtr<K> filtered_quotient(const TensorModule<K>& T, int gamma)
{
    if (gamma < -1 || gamma > T.middle_window())
        throw ArgumentError("quotient level outside the declared window");
    const ModulePtr<K>& M = T.module();
    auto space = std::make_shared<GradedSpace>(M->grading());
    std::vector<int> keep, back(M->space()->dim(), -1);
    for (int i = 0; i < M->space()->dim(); ++i) {
        if (T.middle_length(i) > gamma) {
            back[i] = static_cast<int>(keep.size());
            keep.push_back(i);
            space->add_basis_element(M->space()->at(i).label,
                                     M->space()->at(i).degree);
        }
    }
    auto keep_c = keep;
    auto back_c = back;
    auto mu = [M, keep_c, back_c](const PWord& w) -> SparseVec<K> {
        PWord inner = w;
        inner.elt = keep_c[w.elt];
        SparseVec<K> out;
        for (const auto& [j, c] : M->mu(inner).entries())
            if (back_c[j] >= 0) out.add_term(back_c[j], c);
        return out;
    };
    return std::make_shared<PolyModule<K>>(
        M->name() + "/F" + std::to_string(gamma), M->signature(), space, mu,
        M->perfect());
}

/// The projection T -> T /(.)^gamma as a strict homomorphism.
template <class K>
ModuleMorphism<K> quotient_projection(const TensorModule<K>& T,
                                      const ModulePtr<K>& quotient, int gamma,
                                      int window)
{
    ModuleMorphism<K> pi(T.module(), quotient, 0, window);
    PWord w;
    w.words.resize(T.module()->signature().slots());
    int out = 0;
    for (int i = 0; i < T.module()->space()->dim(); ++i) {
        if (T.middle_length(i) > gamma) {
            w.elt = i;
            pi.set_component(w, SparseVec<K>::unit(out));
            ++out;
        }
    }
    return pi;
}

/// xi_P : D_A (x)_A P -> P,  components (-1)^{|c| + |x|_A} mu_P([c.x^.w] (x) p).
template <class K>
ModuleMorphism<K> xi_unit_map(const TensorModule<K>& T, int window)
{
    // T must be D_A (x)_A P with P a left module
    const ModulePtr<K>& D = T.factor1();
    const ModulePtr<K>& P = T.factor2();
    const AlgebraPtr<K>& A = T.glued_algebra();
    ModuleMorphism<K> xi(T.module(), P, 0, window);
    for (const auto& pw :
         pword::enumerate(T.module()->signature(), T.module()->space()->dim(), window)) {
        bool unit_free = true;
        for (int l : pw.words[0]) unit_free &= (l != A->unit_index());
        if (!unit_free) continue;
        const auto& [xi_idx, w, p_idx] = T.triple(pw.elt);
        Word full = pw.words[0];
        full.push_back(xi_idx); // x viewed in sA (same index as in D = A)
        full.insert(full.end(), w.begin(), w.end());
        PWord arg;
        arg.words = {full};
        arg.elt = p_idx;
        const SparseVec<K>& val = P->mu(arg);
        if (val.is_zero()) continue;
        K sgn = sign_pow<K>(word_suspended_degree(*A, pw.words[0]) +
                            D->space()->at(xi_idx).degree);
        SparseVec<K> v;
        for (const auto& [j, c] : val.entries()) v.add_term(j, sgn * c);
        xi.set_component(pw, std::move(v));
    }
    return xi;
}

/// epsilon_P : P -> D_A (x)_A P at the chain level: the strict unit
/// insertion p |-> 1 (x) [] (x) p. The full module morphism of the paper
/// carries the identity of the bar factor and is not unital, so it is
/// exposed on underlying complexes, where it is an honest chain map.
template <class K> GradedMap<K> epsilon_chain_map(const TensorModule<K>& T)
{
    const ModulePtr<K>& P = T.factor2();
    const AlgebraPtr<K>& A = T.glued_algebra();
    Complex<K> pc = underlying_complex(*P);
    Complex<K> tc = underlying_complex(*T.module());
    GradedMap<K> eps(pc.space(), tc.space(), 0);
    for (int i = 0; i < P->space()->dim(); ++i)
        eps.set_column(i, SparseVec<K>::unit(T.index_of(A->unit_index(), {}, i)));
    return eps;
}

/// The strict part of xi as a chain map on underlying complexes.
template <class K> GradedMap<K> xi_chain_map(const TensorModule<K>& T)
{
    const ModulePtr<K>& P = T.factor2();
    const ModulePtr<K>& D = T.factor1();
    const AlgebraPtr<K>& A = T.glued_algebra();
    GradedMap<K> xi(underlying_complex(*T.module()).space(), P->space(), 0);
    for (int idx = 0; idx < T.module()->space()->dim(); ++idx) {
        const auto& [xi_idx, w, p_idx] = T.triple(idx);
        Word full;
        full.push_back(xi_idx);
        full.insert(full.end(), w.begin(), w.end());
        PWord arg;
        arg.words = {full};
        arg.elt = p_idx;
        const SparseVec<K>& val = P->mu(arg);
        if (val.is_zero()) continue;
        K sgn = sign_pow<K>(D->space()->at(xi_idx).degree);
        SparseVec<K> col;
        for (const auto& [j, c] : val.entries()) col.add_term(j, sgn * c);
        xi.set_column(idx, std::move(col));
    }
    return xi;
}

/// Left restriction of an (A|A)-bimodule: the left A-module with the right
/// words forgotten.
template <class K> ModulePtr<K> restrict_to_left_slot(const ModulePtr<K>& Q)
{
    const Signature<K>& sig = Q->signature();
    if (sig.r() != 1 || sig.s() != 1)
        throw SignatureError("left restriction needs an (A|B)-bimodule");
    return std::make_shared<PolyModule<K>>(
        "i*" + Q->name(), Signature<K>{{sig.left[0]}, {}}, Q->space(),
        [Q](const PWord& w) -> SparseVec<K> {
            PWord full;
            full.words = {w.words[0], {}};
            full.elt = w.elt;
            return Q->mu(full);
        },
        Q->perfect());
}

/// Right restriction: the right module over the second slot.
template <class K> ModulePtr<K> restrict_to_right_slot(const ModulePtr<K>& Q)
{
    const Signature<K>& sig = Q->signature();
    if (sig.r() != 1 || sig.s() != 1)
        throw SignatureError("right restriction needs an (A|B)-bimodule");
    return std::make_shared<PolyModule<K>>(
        "j*" + Q->name(), Signature<K>{{}, {sig.right[0]}}, Q->space(),
        [Q](const PWord& w) -> SparseVec<K> {
            PWord full;
            full.words = {{}, w.words[0]};
            full.elt = w.elt;
            return Q->mu(full);
        },
        Q->perfect());
}

/// Twisting cochain rho of an (A|A)-bimodule with respect to splitting off
/// the right slot: rho(c) is the endomorphism of the left restriction
/// feeding c into the free slot, (v (x) x) |-> mu_Q(v (x) x (x) c).
/// The strictly unital normalization sends the unit word to minus the
/// identity and longer unit-carrying words to zero.
template <class K>
ModuleMorphism<K> twisting_endomorphism(const ModulePtr<K>& iQ, const ModulePtr<K>& Q,
                                        const Word& c, int window)
{
    const AlgebraPtr<K>& A = Q->signature().left[0];
    ModuleMorphism<K> rho(iQ, iQ,
                          static_cast<int>(word_suspended_degree(*A, c)) + 1, window);
    bool c_has_unit = false;
    for (int l : c) c_has_unit |= (l == A->unit_index());
    if (c_has_unit) {
        if (c.size() != 1) return rho;
        ModuleMorphism<K> id = ModuleMorphism<K>::identity(iQ, window);
        ModuleMorphism<K> out(iQ, iQ, 0, window);
        for (const auto& [w, v] : id.components()) {
            SparseVec<K> neg = v;
            neg *= K(-1);
            out.set_component(w, std::move(neg));
        }
        return out;
    }
    for (const auto& pw : pword::enumerate(iQ->signature(), Q->space()->dim(), window)) {
        bool unit_free = true;
        for (int l : pw.words[0]) unit_free &= (l != A->unit_index());
        if (!unit_free) continue;
        PWord full;
        full.words = {pw.words[0], c};
        full.elt = pw.elt;
        const SparseVec<K>& val = Q->mu(full);
        if (!val.is_zero()) rho.set_component(pw, val);
    }
    return rho;
}

/// Maurer-Cartan defect at the word c:
///   d rho(c) + rho(b_A c) + sum over splits c = c1.c2 of rho(c2) o rho(c1).
template <class K>
ModuleMorphism<K> maurer_cartan_defect(const ModulePtr<K>& iQ, const ModulePtr<K>& Q,
                                       const Word& c, int window)
{
    const AlgebraPtr<K>& A = Q->signature().left[0];
    ModuleMorphism<K> rho_c = twisting_endomorphism(iQ, Q, c, window);
    ModuleMorphism<K> acc = morphism_differential(rho_c);
    for (const auto& [c2, coef] : bar_differential(*A, c, static_cast<int>(c.size()))) {
        ModuleMorphism<K> r2 = twisting_endomorphism(iQ, Q, c2, window);
        for (const auto& [w, v] : r2.components()) {
            SparseVec<K> cur = acc.component(w);
            cur.axpy(coef, v);
            acc.set_component(w, std::move(cur));
        }
    }
    for (std::size_t i = 1; i < c.size(); ++i) {
        Word c1(c.begin(), c.begin() + i), c2(c.begin() + i, c.end());
        ModuleMorphism<K> r1 = twisting_endomorphism(iQ, Q, c1, window);
        ModuleMorphism<K> r2 = twisting_endomorphism(iQ, Q, c2, window);
        ModuleMorphism<K> prod = compose(r2, r1);
        for (const auto& [w, v] : prod.components()) {
            SparseVec<K> cur = acc.component(w);
            cur.axpy(K(1), v);
            acc.set_component(w, std::move(cur));
        }
    }
    return acc;
}

} // namespace ainfty
