#pragma once

#include <functional>
#include <optional>
#include <sstream>

#include "complex.hpp"

namespace ainfty {

using Word = std::vector<int>; // letter indices into the suspended basis

inline std::string word_str(const GradedSpace& s, const Word& w)
{
    std::string out = "[";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += "|";
        out += s.at(w[i]).label;
    }
    return out + "]";
}

struct RelationReport {
    bool ok = true;
    int arity = 0;          // first failing n (or r-position for unit checks)
    std::string word;       // first failing word
    std::string identity;   // which identity failed
    int validated_up_to = 0;

    std::string describe() const
    {
        if (ok) return "ok (validated up to " + std::to_string(validated_up_to) + ")";
        return identity + " fails at n=" + std::to_string(arity) + " on " + word;
    }
};

/// A_infty algebra with a strict unit, structure maps stored in the suspended
/// convention: mu^n : (sA)^{(x)n} -> sA of degree 1.
template <class K> class AInfAlgebra {
  public:
    AInfAlgebra() = default;
    AInfAlgebra(std::string name, SpacePtr suspended_space, int unit_index)
        : name_(std::move(name)), sA_(std::move(suspended_space)), unit_(unit_index)
    {
        if (unit_ < 0 || unit_ >= sA_->dim()) throw ArgumentError("unit index out of range");
        if (!degrees_equal(grading(), sA_->at(unit_).degree, -1))
            throw ArgumentError("unit must have suspended degree -1");
    }

    const std::string& name() const { return name_; }
    Grading grading() const { return sA_->grading(); }
    const SpacePtr& suspended_space() const { return sA_; }
    int dim() const { return sA_->dim(); }
    int unit_index() const { return unit_; }
    int degree_of(int i) const { return sA_->degree_of(i); }
    int max_arity() const { return static_cast<int>(mu_.size()); }

    void set_mu(int n, const Word& w, SparseVec<K> value)
    {
        if (n < 1 || static_cast<int>(w.size()) != n)
            throw ArgumentError("mu arity mismatch");
        int din = 0;
        for (int l : w) din += sA_->at(l).degree;
        for (const auto& [j, c] : value.entries())
            if (!degrees_equal(grading(), sA_->at(j).degree, din + 1))
                throw ArgumentError("mu^" + std::to_string(n) + " is not degree 1 on " +
                                    word_str(*sA_, w));
        if (static_cast<int>(mu_.size()) < n) mu_.resize(n);
        if (value.is_zero())
            mu_[n - 1].erase(w);
        else
            mu_[n - 1][w] = std::move(value);
    }

    const SparseVec<K>& mu(const Word& w) const
    {
        static const SparseVec<K> zero;
        int n = static_cast<int>(w.size());
        if (n < 1 || n > max_arity()) return zero;
        auto it = mu_[n - 1].find(w);
        if (it == mu_[n - 1].end()) return zero;
        return it->second;
    }
    const std::map<Word, SparseVec<K>>& mu_table(int n) const
    {
        static const std::map<Word, SparseVec<K>> empty;
        if (n < 1 || n > max_arity()) return empty;
        return mu_[n - 1];
    }

    void set_augmentation(SparseVec<K> eps) { aug_ = std::move(eps); }
    const std::optional<SparseVec<K>>& augmentation() const { return aug_; }

    /// Fill the strict-unit mu^2 products: mu^2(e,a) = a, mu^2(a,e) = (-1)^{|a|+1} a.
    void install_unit_products()
    {
        for (int i = 0; i < dim(); ++i) {
            set_mu(2, {unit_, i}, SparseVec<K>::unit(i));
            SparseVec<K> right = SparseVec<K>::unit(i, sign_pow<K>(sA_->at(i).degree + 1));
            if (i == unit_) continue; // (e,e) written once below
            set_mu(2, {i, unit_}, std::move(right));
        }
        set_mu(2, {unit_, unit_}, SparseVec<K>::unit(unit_));
    }

    /// The underlying complex (sA, mu^1).
    Complex<K> underlying_complex() const
    {
        GradedMap<K> d(sA_, sA_, 1);
        for (int i = 0; i < dim(); ++i) d.set_column(i, mu({i}));
        return Complex<K>(sA_, d);
    }

    std::map<int, int> cohomology_dims_suspended() const
    {
        return cohomology_dims(underlying_complex());
    }
    bool is_compact() const { return true; } // finite-dimensional by construction

  private:
    std::string name_;
    SpacePtr sA_;
    int unit_ = 0;
    std::vector<std::map<Word, SparseVec<K>>> mu_;
    std::optional<SparseVec<K>> aug_;
};

template <class K> using AlgebraPtr = std::shared_ptr<const AInfAlgebra<K>>;

namespace detail {

template <class K>
void for_each_word(const AInfAlgebra<K>& A, int n, const std::function<void(const Word&)>& f)
{
    Word w(n, 0);
    while (true) {
        f(w);
        int i = n - 1;
        while (i >= 0 && w[i] == A.dim() - 1) w[i--] = 0;
        if (i < 0) break;
        ++w[i];
    }
}

template <class K> int word_degree(const AInfAlgebra<K>& A, const Word& w, int from, int to)
{
    int d = 0;
    for (int i = from; i < to; ++i) d += A.suspended_space()->at(w[i]).degree;
    return d;
}

} // namespace detail

/// Stasheff sum at one word: sum_{k,r} (-1)^{|w_1|+...+|w_r|}
/// mu^{n-k+1}(w_{<r} , mu^k(w_r..w_{r+k-1}), w_{>}).
template <class K> SparseVec<K> stasheff_sum(const AInfAlgebra<K>& A, const Word& w)
{
    int n = static_cast<int>(w.size());
    SparseVec<K> acc;
    for (int k = 1; k <= std::min(n, A.max_arity()); ++k) {
        for (int r = 0; r + k <= n; ++r) {
            Word inner(w.begin() + r, w.begin() + r + k);
            SparseVec<K> mid = A.mu(inner);
            if (mid.is_zero()) continue;
            K sgn = sign_pow<K>(detail::word_degree(A, w, 0, r));
            for (const auto& [l, c] : mid.entries()) {
                Word outer;
                outer.insert(outer.end(), w.begin(), w.begin() + r);
                outer.push_back(l);
                outer.insert(outer.end(), w.begin() + r + k, w.end());
                acc.axpy(sgn * c, A.mu(outer));
            }
        }
    }
    return acc;
}

template <class K> RelationReport check_stasheff(const AInfAlgebra<K>& A, int up_to)
{
    RelationReport rep;
    rep.validated_up_to = up_to;
    for (int n = 1; n <= up_to && rep.ok; ++n) {
        detail::for_each_word<K>(A, n, [&](const Word& w) {
            if (!rep.ok) return;
            if (!stasheff_sum(A, w).is_zero()) {
                rep.ok = false;
                rep.arity = n;
                rep.word = word_str(*A.suspended_space(), w);
                rep.identity = "stasheff";
            }
        });
    }
    return rep;
}

template <class K> RelationReport check_unitality(const AInfAlgebra<K>& A)
{
    RelationReport rep;
    rep.validated_up_to = A.max_arity();
    int e = A.unit_index();
    // eq:unit1 on every letter
    for (int i = 0; i < A.dim() && rep.ok; ++i) {
        if (!(A.mu({e, i}) == SparseVec<K>::unit(i))) {
            rep = {false, 2, word_str(*A.suspended_space(), {e, i}), "unit-left",
                   rep.validated_up_to};
            break;
        }
        SparseVec<K> want =
            SparseVec<K>::unit(i, sign_pow<K>(A.suspended_space()->at(i).degree + 1));
        if (i != e && !(A.mu({i, e}) == want)) {
            rep = {false, 2, word_str(*A.suspended_space(), {i, e}), "unit-right",
                   rep.validated_up_to};
            break;
        }
    }
    if (!rep.ok) return rep;
    // eq:unit2: unit inserted into mu^n, n != 2, gives zero
    for (int n = 1; n <= A.max_arity() && rep.ok; ++n) {
        if (n == 2) continue;
        for (const auto& [w, v] : A.mu_table(n)) {
            for (int l : w)
                if (l == e) {
                    rep = {false, n, word_str(*A.suspended_space(), w), "unit-higher",
                           rep.validated_up_to};
                    break;
                }
            if (!rep.ok) break;
        }
    }
    if (!rep.ok) return rep;
    if (A.augmentation()) {
        if (!(A.augmentation()->coeff(A.unit_index()) == K(1)))
            rep = {false, 0, "[e]", "augmentation", rep.validated_up_to};
    }
    return rep;
}

/// mu_{A^op}^k = mu_A^k o sigma_k where sigma_k reverses factors via gamma.
/// Under this composition the strict unit of A^op is -e, so the result is
/// normalized by the strict isomorphism e |-> -e to keep e as the unit.
template <class K> AInfAlgebra<K> opposite(const AInfAlgebra<K>& A)
{
    int e = A.unit_index();
    AInfAlgebra<K> op(A.name() + "_op", A.suspended_space(), e);
    for (int n = 1; n <= A.max_arity(); ++n) {
        for (const auto& [w, v] : A.mu_table(n)) {
            int sgn = 0;
            for (std::size_t i = 0; i < w.size(); ++i)
                for (std::size_t j = i + 1; j < w.size(); ++j)
                    sgn += A.suspended_space()->at(w[i]).degree *
                           A.suspended_space()->at(w[j]).degree;
            Word rw(w.rbegin(), w.rend());
            // conjugate by T = diag(-1 on e): flip sign once per e among the
            // inputs and once if the output hits e
            int eflips = 0;
            for (int l : rw) eflips += (l == e) ? 1 : 0;
            SparseVec<K> val;
            for (const auto& [l, c] : v.entries())
                val.add_term(l, sign_pow<K>(sgn + eflips + (l == e ? 1 : 0)) * c);
            op.set_mu(n, rw, std::move(val));
        }
    }
    if (A.augmentation()) op.set_augmentation(*A.augmentation());
    return op;
}

/// Strictly unital A_infty morphism: phi^n : (sA)^{(x)n} -> sB, degree 0.
template <class K> class AInfMorphism {
  public:
    AInfMorphism() = default;
    AInfMorphism(AlgebraPtr<K> source, AlgebraPtr<K> target)
        : src_(std::move(source)), dst_(std::move(target))
    {
    }

    static AInfMorphism identity(const AlgebraPtr<K>& a)
    {
        AInfMorphism f(a, a);
        for (int i = 0; i < a->dim(); ++i) f.set_phi(1, {i}, SparseVec<K>::unit(i));
        return f;
    }

    const AlgebraPtr<K>& source() const { return src_; }
    const AlgebraPtr<K>& target() const { return dst_; }
    int max_arity() const { return static_cast<int>(phi_.size()); }

    void set_phi(int n, const Word& w, SparseVec<K> value)
    {
        if (n < 1 || static_cast<int>(w.size()) != n) throw ArgumentError("phi arity mismatch");
        int din = 0;
        for (int l : w) din += src_->suspended_space()->at(l).degree;
        for (const auto& [j, c] : value.entries())
            if (!degrees_equal(src_->grading(), dst_->suspended_space()->at(j).degree, din))
                throw ArgumentError("phi^" + std::to_string(n) + " is not degree 0");
        if (static_cast<int>(phi_.size()) < n) phi_.resize(n);
        if (value.is_zero())
            phi_[n - 1].erase(w);
        else
            phi_[n - 1][w] = std::move(value);
    }
    const SparseVec<K>& phi(const Word& w) const
    {
        static const SparseVec<K> zero;
        int n = static_cast<int>(w.size());
        if (n < 1 || n > max_arity()) return zero;
        auto it = phi_[n - 1].find(w);
        if (it == phi_[n - 1].end()) return zero;
        return it->second;
    }

    /// [phi^1] as a graded map on suspended spaces.
    GradedMap<K> phi1_map() const
    {
        GradedMap<K> f(src_->suspended_space(), dst_->suspended_space(), 0);
        for (int i = 0; i < src_->dim(); ++i) f.set_column(i, phi({i}));
        return f;
    }

  private:
    AlgebraPtr<K> src_, dst_;
    std::vector<std::map<Word, SparseVec<K>>> phi_;
};

/// Defect of the A_infty morphism relation at the word w:
///   sum phi(1,...,mu_A,...,1) - sum mu_B(phi (x) ... (x) phi).
template <class K>
SparseVec<K> morphism_defect(const AInfMorphism<K>& f, const Word& w)
{
    const AInfAlgebra<K>& A = *f.source();
    const AInfAlgebra<K>& B = *f.target();
    int n = static_cast<int>(w.size());
    SparseVec<K> lhs;
    for (int k = 1; k <= std::min(n, A.max_arity()); ++k) {
        for (int r = 0; r + k <= n; ++r) {
            Word inner(w.begin() + r, w.begin() + r + k);
            SparseVec<K> mid = A.mu(inner);
            if (mid.is_zero()) continue;
            K sgn = sign_pow<K>(detail::word_degree(A, w, 0, r));
            for (const auto& [l, c] : mid.entries()) {
                Word outer;
                outer.insert(outer.end(), w.begin(), w.begin() + r);
                outer.push_back(l);
                outer.insert(outer.end(), w.begin() + r + k, w.end());
                lhs.axpy(sgn * c, f.phi(outer));
            }
        }
    }
    // right side: over compositions n = i_1 + ... + i_j; phi components have
    // degree 0, so no Koszul signs appear
    SparseVec<K> rhs;
    std::function<void(int, std::vector<SparseVec<K>>&)> rec =
        [&](int pos, std::vector<SparseVec<K>>& parts) {
            if (pos == n) {
                // mu_B^j applied to the tensor of the collected values
                int j = static_cast<int>(parts.size());
                if (j > B.max_arity()) return;
                std::function<void(int, Word&, K)> expand = [&](int idx, Word& bw, K coef) {
                    if (idx == j) {
                        rhs.axpy(coef, B.mu(bw));
                        return;
                    }
                    for (const auto& [l, c] : parts[idx].entries()) {
                        bw.push_back(l);
                        expand(idx + 1, bw, coef * c);
                        bw.pop_back();
                    }
                };
                Word bw;
                expand(0, bw, K(1));
                return;
            }
            for (int len = 1; pos + len <= n; ++len) {
                Word seg(w.begin() + pos, w.begin() + pos + len);
                SparseVec<K> val = f.phi(seg);
                if (val.is_zero()) continue;
                parts.push_back(std::move(val));
                rec(pos + len, parts);
                parts.pop_back();
            }
        };
    std::vector<SparseVec<K>> parts;
    rec(0, parts);
    return lhs - rhs;
}

template <class K> RelationReport check_morphism(const AInfMorphism<K>& f, int up_to)
{
    RelationReport rep;
    rep.validated_up_to = up_to;
    const AInfAlgebra<K>& A = *f.source();
    for (int n = 1; n <= up_to && rep.ok; ++n) {
        detail::for_each_word<K>(A, n, [&](const Word& w) {
            if (!rep.ok) return;
            if (!morphism_defect(f, w).is_zero()) {
                rep.ok = false;
                rep.arity = n;
                rep.word = word_str(*A.suspended_space(), w);
                rep.identity = "morphism";
            }
        });
    }
    if (!rep.ok) return rep;
    // strict unitality: phi^1(e) = e and unit insertions vanish for n > 1
    if (!(f.phi({A.unit_index()}) == SparseVec<K>::unit(f.target()->unit_index()))) {
        rep = {false, 1, "[e]", "morphism-unit", up_to};
        return rep;
    }
    for (int n = 2; n <= f.max_arity() && rep.ok; ++n) {
        detail::for_each_word<K>(A, n, [&](const Word& w) {
            if (!rep.ok) return;
            bool has_unit = false;
            for (int l : w) has_unit |= (l == A.unit_index());
            if (has_unit && !f.phi(w).is_zero()) {
                rep.ok = false;
                rep.arity = n;
                rep.word = word_str(*A.suspended_space(), w);
                rep.identity = "morphism-unit";
            }
        });
    }
    return rep;
}

template <class K> bool is_quasi_isomorphism(const AInfMorphism<K>& f)
{
    Cohomology<K> ha = cohomology(f.source()->underlying_complex());
    Cohomology<K> hb = cohomology(f.target()->underlying_complex());
    if (!(ha.space->dims() == hb.space->dims())) return false;
    // [phi^1] must carry a basis of H(A) to a basis of H(B)
    GradedMap<K> p1 = f.phi1_map();
    Complex<K> cb = f.target()->underlying_complex();
    for (const auto& [deg, n] : ha.space->dims()) {
        if (n == 0) continue;
        std::vector<SparseVec<K>> images;
        for (int i = 0; i < ha.space->dim(); ++i)
            if (ha.space->degree_of(i) == deg)
                images.push_back(p1.apply(ha.representatives[i]));
        std::vector<SparseVec<K>> bnd = cb.boundaries_in_degree(deg);
        int rb = span_of(bnd).rank();
        int rank = rank_of_sum(images, bnd) - rb;
        if (rank != static_cast<int>(images.size())) return false;
    }
    return true;
}

/// Minimal model by planar-tree homotopy transfer with the deterministic
/// first-pivot splitting; also returns the quasi-isomorphism into A.
template <class K> struct MinimalModel {
    AlgebraPtr<K> model;
    AInfMorphism<K> inclusion; // H*(A) -> A
};

template <class K>
MinimalModel<K> minimal_model(const AlgebraPtr<K>& Aptr, int arity_bound)
{
    if (arity_bound < 2) throw ArgumentError("arity_bound must be >= 2");
    const AInfAlgebra<K>& A = *Aptr;

    bool already_minimal = true;
    for (const auto& [w, v] : A.mu_table(1))
        if (!v.is_zero()) already_minimal = false;
    if (already_minimal) {
        return {Aptr, AInfMorphism<K>::identity(Aptr)};
    }

    // seed the splitting with e so the unit class keeps e as representative;
    // with the side conditions this keeps the transferred structure strictly
    // unital on the nose
    HomotopySplitting<K> sp = homotopy_splitting(
        A.underlying_complex(), {SparseVec<K>::unit(A.unit_index())});
    SparseVec<K> pe = sp.project.apply(SparseVec<K>::unit(A.unit_index()));
    if (pe.nnz() != 1 || !(pe.lead_coeff() == K(1)))
        throw ArgumentError("transfer: unit class is not a chosen representative");
    int unit_idx = pe.lead_index();

    auto H = sp.H.space;
    auto model = std::make_shared<AInfAlgebra<K>>(A.name() + "_min", H, unit_idx);

    // lambda^n : (sH)^{(x)n} -> sA on basis words, lambda^1 = inclusion
    std::vector<std::map<Word, SparseVec<K>>> lambda(arity_bound);
    for (int i = 0; i < H->dim(); ++i)
        lambda[0][{i}] = sp.include.column(i);

    auto eval_lambda = [&](const Word& w) -> SparseVec<K> {
        auto it = lambda[w.size() - 1].find(w);
        return it == lambda[w.size() - 1].end() ? SparseVec<K>() : it->second;
    };

    for (int n = 2; n <= arity_bound; ++n) {
        std::map<Word, SparseVec<K>> level;
        Word w(n, 0);
        while (true) {
            // m^n(w) = sum_{k>=2} mu^k (lambda^{i_1} (x) ... (x) lambda^{i_k})(w)
            SparseVec<K> acc;
            std::function<void(int, std::vector<SparseVec<K>>&)> rec =
                [&](int pos, std::vector<SparseVec<K>>& parts) {
                    if (pos == n) {
                        int k = static_cast<int>(parts.size());
                        if (k < 2 || k > A.max_arity()) return;
                        std::function<void(int, Word&, K)> expand =
                            [&](int idx, Word& bw, K coef) {
                                if (idx == k) {
                                    acc.axpy(coef, A.mu(bw));
                                    return;
                                }
                                for (const auto& [l, c] : parts[idx].entries()) {
                                    bw.push_back(l);
                                    expand(idx + 1, bw, coef * c);
                                    bw.pop_back();
                                }
                            };
                        Word bw;
                        expand(0, bw, K(1));
                        return;
                    }
                    for (int len = 1; pos + len <= n; ++len) {
                        Word seg(w.begin() + pos, w.begin() + pos + len);
                        SparseVec<K> val = eval_lambda(seg);
                        if (val.is_zero()) continue;
                        parts.push_back(std::move(val));
                        rec(pos + len, parts);
                        parts.pop_back();
                    }
                };
            std::vector<SparseVec<K>> parts;
            rec(0, parts);
            if (!acc.is_zero()) level[w] = acc;

            int i = n - 1;
            while (i >= 0 && w[i] == H->dim() - 1) w[i--] = 0;
            if (i < 0) break;
            ++w[i];
        }
        for (const auto& [w2, v] : level) {
            SparseVec<K> mt = sp.project.apply(v);
            if (!mt.is_zero()) model->set_mu(n, w2, std::move(mt));
            // lambda^n = -h m^n: the sign that makes the inclusion an
            // A_infty morphism for this (i, p, h) package
            SparseVec<K> lv = sp.homotopy.apply(v);
            lv *= K(-1);
            if (!lv.is_zero()) lambda[n - 1][w2] = std::move(lv);
        }
    }

    AlgebraPtr<K> cmodel = model;
    AInfMorphism<K> f(cmodel, Aptr);
    for (int n = 1; n <= arity_bound; ++n)
        for (const auto& [w, v] : lambda[n - 1])
            if (!v.is_zero()) f.set_phi(n, w, v);
    return {cmodel, std::move(f)};
}

} // namespace ainfty
