#pragma once

#include "bar.hpp"

namespace ainfty {

/// Left/right algebra lists of a polymodule signature; empty sides mean no
/// algebra acts there (the ground field).
template <class K> struct Signature {
    std::vector<AlgebraPtr<K>> left, right;

    int r() const { return static_cast<int>(left.size()); }
    int s() const { return static_cast<int>(right.size()); }
    int slots() const { return r() + s(); }
    const AlgebraPtr<K>& algebra(int slot) const
    {
        return slot < r() ? left[slot] : right[slot - r()];
    }
    bool is_left_slot(int slot) const { return slot < r(); }

    friend bool operator==(const Signature& a, const Signature& b)
    {
        if (a.left.size() != b.left.size() || a.right.size() != b.right.size())
            return false;
        for (std::size_t i = 0; i < a.left.size(); ++i)
            if (a.left[i].get() != b.left[i].get()) return false;
        for (std::size_t i = 0; i < a.right.size(); ++i)
            if (a.right[i].get() != b.right[i].get()) return false;
        return true;
    }
};

/// Bar word of a polymodule: one letter word per coalgebra slot plus a
/// module basis element.
struct PWord {
    std::vector<Word> words; // r left words then s right words
    int elt = 0;
    friend auto operator<=>(const PWord&, const PWord&) = default;

    int total_length() const
    {
        int n = 0;
        for (const auto& w : words) n += static_cast<int>(w.size());
        return n;
    }
    std::vector<int> length_vector() const
    {
        std::vector<int> out;
        for (const auto& w : words) out.push_back(static_cast<int>(w.size()));
        return out;
    }
};

template <class K> using PCombo = std::map<PWord, K>;

template <class K> void pcombo_add(PCombo<K>& acc, const PWord& w, const K& c)
{
    if (c.is_zero()) return;
    auto [it, fresh] = acc.try_emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

/// A_infty polymodule: signature, module space, structure map evaluated
/// lazily on bar words and memoized. Values are vectors in the module space.
template <class K> class PolyModule {
  public:
    using MuFn = std::function<SparseVec<K>(const PWord&)>;

    PolyModule() = default;
    PolyModule(std::string name, Signature<K> sig, SpacePtr space, MuFn mu,
               bool perfect = false)
        : name_(std::move(name)), sig_(std::move(sig)), space_(std::move(space)),
          mu_(std::move(mu)), perfect_(perfect)
    {
    }

    const std::string& name() const { return name_; }
    const Signature<K>& signature() const { return sig_; }
    const SpacePtr& space() const { return space_; }
    Grading grading() const { return space_->grading(); }
    bool perfect() const { return perfect_; }
    void set_perfect(bool p) { perfect_ = p; }

    const SparseVec<K>& mu(const PWord& w) const
    {
        auto it = memo_.find(w);
        if (it != memo_.end()) return it->second;
        SparseVec<K> v = mu_(w);
        return memo_.emplace(w, std::move(v)).first->second;
    }

    int word_degree(const PWord& w) const
    {
        int d = space_->at(w.elt).degree;
        for (int t = 0; t < sig_.slots(); ++t)
            d += word_suspended_degree(*sig_.algebra(t), w.words[t]);
        return d;
    }

  private:
    std::string name_;
    Signature<K> sig_;
    SpacePtr space_;
    MuFn mu_;
    bool perfect_ = false;
    mutable std::map<PWord, SparseVec<K>> memo_;
};

template <class K> using ModulePtr = std::shared_ptr<const PolyModule<K>>;

namespace pword {

/// Suspended degree of the coalgebra letters of w lying strictly left of
/// the module slot (all left words) or of everything (with the element).
template <class K> int left_words_degree(const Signature<K>& sig, const PWord& w)
{
    int d = 0;
    for (int t = 0; t < sig.r(); ++t)
        d += word_suspended_degree(*sig.algebra(t), w.words[t]);
    return d;
}

/// All deconcatenation splits of the slot words: left slots split off heads
/// (outer part), right slots split off tails. The returned items are
/// (outer word per slot, inner PWord, gamma sign exponent of the shuffle).
/// For r <= 1 and s <= 1 no gamma signs occur; for higher signatures the
/// outer head of left slot i moves past the remaining tails of slots < i,
/// and symmetrically on the right.
template <class K>
void for_each_split(const Signature<K>& sig, const PWord& w,
                    const std::function<void(const std::vector<Word>&, const PWord&, int)>& f)
{
    int m = sig.slots();
    std::vector<int> cut(m, 0);
    auto emit = [&]() {
        std::vector<Word> outer(m);
        PWord inner;
        inner.words.resize(m);
        inner.elt = w.elt;
        int gamma = 0;
        // left slots: outer = head, inner = tail
        for (int t = 0; t < sig.r(); ++t) {
            const Word& v = w.words[t];
            outer[t] = Word(v.begin(), v.begin() + cut[t]);
            inner.words[t] = Word(v.begin() + cut[t], v.end());
        }
        // the head of slot t moves left past the tails of slots < t
        for (int t = 1; t < sig.r(); ++t) {
            int hd = word_suspended_degree(*sig.algebra(t), outer[t]);
            int below = 0;
            for (int u = 0; u < t; ++u)
                below += word_suspended_degree(*sig.algebra(u), inner.words[u]);
            gamma += hd * below;
        }
        // right slots: outer = tail, inner = head
        for (int t = sig.r(); t < m; ++t) {
            const Word& v = w.words[t];
            inner.words[t] = Word(v.begin(), v.begin() + cut[t]);
            outer[t] = Word(v.begin() + cut[t], v.end());
        }
        for (int t = sig.r(); t < m - 1; ++t) {
            int tl = word_suspended_degree(*sig.algebra(t), outer[t]);
            int above = 0;
            for (int u = t + 1; u < m; ++u)
                above += word_suspended_degree(*sig.algebra(u), inner.words[u]);
            gamma += tl * above;
        }
        f(outer, inner, gamma);
    };
    // iterate the product of cut positions
    while (true) {
        emit();
        int t = m - 1;
        while (t >= 0 && cut[t] == static_cast<int>(w.words[t].size())) cut[t--] = 0;
        if (t < 0) break;
        ++cut[t];
    }
}

} // namespace pword

/// Bar differential b_P = (1 (x) mu_P (x) 1) o Delta_P + d'_P on one word.
template <class K> PCombo<K> bar_of_module(const PolyModule<K>& P, const PWord& w)
{
    const Signature<K>& sig = P.signature();
    PCombo<K> out;
    // d'_P: coalgebra differentials with spectator Koszul signs
    int m = sig.slots();
    for (int t = 0; t < m; ++t) {
        int prefix = 0;
        for (int u = 0; u < t; ++u)
            prefix += word_suspended_degree(*sig.algebra(u), w.words[u]);
        if (t >= sig.r()) prefix += P.space()->at(w.elt).degree;
        const AInfAlgebra<K>& A = *sig.algebra(t);
        for (const auto& [w2, c] :
             bar_differential(A, w.words[t], static_cast<int>(w.words[t].size()))) {
            PWord nw = w;
            nw.words[t] = w2;
            pcombo_add(out, nw, sign_pow<K>(prefix) * c);
        }
    }
    // (1 (x) mu_P (x) 1) o Delta_P
    pword::for_each_split<K>(sig, w, [&](const std::vector<Word>& outer, const PWord& inner,
                                         int gamma) {
        // skip the identity split (inner == w) only when it would call mu on
        // the full word with all outer empty: that IS a summand (mu acting on
        // everything) -- keep it. Nothing to skip.
        int outer_deg = 0;
        for (int t = 0; t < m; ++t)
            outer_deg += word_suspended_degree(*sig.algebra(t), outer[t]);
        const SparseVec<K>& val = P.mu(inner);
        if (val.is_zero()) return;
        // mu has degree 1: Koszul sign over the outer left heads only
        int lhead = 0;
        for (int t = 0; t < sig.r(); ++t)
            lhead += word_suspended_degree(*sig.algebra(t), outer[t]);
        (void)outer_deg;
        for (const auto& [j, c] : val.entries()) {
            PWord nw;
            nw.words = outer;
            nw.elt = j;
            pcombo_add(out, nw, sign_pow<K>(lhead + gamma) * c);
        }
    });
    return out;
}

struct ModuleCheckReport {
    bool ok = true;
    std::string word;
    std::string identity;
    int validated_total_length = 0;

    std::string describe() const
    {
        if (ok)
            return "ok (words up to total length " +
                   std::to_string(validated_total_length) + ")";
        return identity + " fails on " + word;
    }
};

namespace pword {

template <class K>
std::vector<PWord> enumerate(const Signature<K>& sig, int dim, int max_total)
{
    std::vector<PWord> out;
    int m = sig.slots();
    // distribute max lengths over slots; enumerate words per slot
    std::function<void(int, int, PWord&)> rec = [&](int slot, int budget, PWord& cur) {
        if (slot == m) {
            for (int e = 0; e < dim; ++e) {
                cur.elt = e;
                out.push_back(cur);
            }
            return;
        }
        const AInfAlgebra<K>& A = *sig.algebra(slot);
        for (int len = 0; len <= budget; ++len) {
            Word w(len, 0);
            while (true) {
                cur.words[slot] = w;
                rec(slot + 1, budget - len, cur);
                int i = len - 1;
                while (i >= 0 && w[i] == A.dim() - 1) w[i--] = 0;
                if (i < 0) break;
                ++w[i];
                if (len == 0) break;
            }
            if (len == 0) continue;
        }
    };
    PWord cur;
    cur.words.resize(m);
    rec(0, max_total, cur);
    return out;
}

template <class K> std::string to_string(const PolyModule<K>& P, const PWord& w)
{
    std::string out;
    const Signature<K>& sig = P.signature();
    for (int t = 0; t < sig.r(); ++t)
        out += word_str(*sig.algebra(t)->suspended_space(), w.words[t]) + "(x)";
    out += P.space()->at(w.elt).label;
    for (int t = sig.r(); t < sig.slots(); ++t)
        out += "(x)" + word_str(*sig.algebra(t)->suspended_space(), w.words[t]);
    return out;
}

} // namespace pword

/// mu_P must be degree 1 blockwise; the structure equation eq:polymod means
/// mu_P o b_P = 0 on every word; unit insertions vanish except the two
/// mu^2-type cases handled by the per-slot unit laws.
template <class K>
ModuleCheckReport check_polymodule(const PolyModule<K>& P, int max_total_length)
{
    ModuleCheckReport rep;
    rep.validated_total_length = max_total_length;
    const Signature<K>& sig = P.signature();
    for (const auto& w : pword::enumerate(sig, P.space()->dim(), max_total_length)) {
        // degree check
        const SparseVec<K>& v = P.mu(w);
        int din = P.word_degree(w);
        for (const auto& [j, c] : v.entries())
            if (!degrees_equal(P.grading(), P.space()->at(j).degree, din + 1)) {
                rep.ok = false;
                rep.word = pword::to_string(P, w);
                rep.identity = "degree";
                return rep;
            }
        // structure equation: mu_P applied to b_P(w) vanishes
        SparseVec<K> acc;
        for (const auto& [w2, c] : bar_of_module(P, w)) acc.axpy(c, P.mu(w2));
        if (!acc.is_zero()) {
            rep.ok = false;
            rep.word = pword::to_string(P, w);
            rep.identity = "structure";
            return rep;
        }
        // unital conditions: a unit letter anywhere kills mu except the
        // single-letter mu^2 cases
        for (int t = 0; t < sig.slots(); ++t) {
            const Word& wt = w.words[t];
            bool has_unit = false;
            for (int l : wt) has_unit |= (l == sig.algebra(t)->unit_index());
            if (!has_unit) continue;
            bool exceptional = (w.total_length() == 1 && wt.size() == 1);
            if (exceptional) {
                const SparseVec<K>& uv = P.mu(w);
                SparseVec<K> want = SparseVec<K>::unit(
                    w.elt, sig.is_left_slot(t)
                               ? K(1)
                               : sign_pow<K>(P.space()->at(w.elt).degree + 1));
                if (!(uv == want)) {
                    rep.ok = false;
                    rep.word = pword::to_string(P, w);
                    rep.identity = "unit-law";
                    return rep;
                }
            }
            else if (!P.mu(w).is_zero()) {
                rep.ok = false;
                rep.word = pword::to_string(P, w);
                rep.identity = "unit-insertion";
                return rep;
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Module constructors

/// The trivial polymodule U = A_1 (x) ... (x) B_s: each algebra acts on its
/// own tensor factor. The sign of a single-slot action is
/// (-1)^{(module factors left of the acted factor) + (letters right of it)}.
template <class K> ModulePtr<K> trivial_module(const Signature<K>& sig, std::string name = "U")
{
    int m = sig.slots();
    if (m == 0) throw ArgumentError("trivial module needs at least one algebra");
    // module space: tensor of the unsuspended spaces, factor-major ordering
    auto space = std::make_shared<GradedSpace>(sig.algebra(0)->grading());
    std::vector<int> dims(m);
    for (int t = 0; t < m; ++t) dims[t] = sig.algebra(t)->dim();
    std::vector<int> stride(m, 1);
    for (int t = m - 2; t >= 0; --t) stride[t] = stride[t + 1] * dims[t + 1];
    int total = stride[0] * dims[0];
    for (int idx = 0; idx < total; ++idx) {
        std::string label;
        int deg = 0;
        for (int t = 0; t < m; ++t) {
            int i = (idx / stride[t]) % dims[t];
            if (t) label += "(x)";
            label += sig.algebra(t)->suspended_space()->at(i).label;
            deg += sig.algebra(t)->suspended_space()->at(i).degree + 1;
        }
        space->add_basis_element(label, deg);
    }
    auto factor_of = [stride, dims](int idx, int t) { return (idx / stride[t]) % dims[t]; };

    Signature<K> s2 = sig;
    auto mu = [s2, space, stride, dims, factor_of, m](const PWord& w) -> SparseVec<K> {
        int acting = -1;
        for (int t = 0; t < m; ++t)
            if (!w.words[t].empty()) {
                if (acting >= 0) return {}; // two active slots never act
                acting = t;
            }
        SparseVec<K> out;
        auto act = [&](int t) {
            const AInfAlgebra<K>& A = *s2.algebra(t);
            int xi = factor_of(w.elt, t);
            Word full;
            if (s2.is_left_slot(t)) {
                full = w.words[t];
                full.push_back(xi);
            }
            else {
                full.push_back(xi);
                full.insert(full.end(), w.words[t].begin(), w.words[t].end());
            }
            const SparseVec<K>& val = A.mu(full);
            if (val.is_zero()) return;
            int wd = word_suspended_degree(A, w.words[t]);
            int below = 0; // module factors left of the acted factor
            for (int u = 0; u < t; ++u) {
                int fu = factor_of(w.elt, u);
                below += s2.algebra(u)->suspended_space()->at(fu).degree + 1;
            }
            int expo;
            if (s2.is_left_slot(t)) {
                // move the word right past the lower factors, then act
                expo = (wd + 1) * below;
            }
            else {
                // move the word left past the higher factors, act with the
                // right-module twist (-1)^{|word|}
                int above = 0;
                for (int u = t + 1; u < m; ++u) {
                    int fu = factor_of(w.elt, u);
                    above += s2.algebra(u)->suspended_space()->at(fu).degree + 1;
                }
                expo = below + wd * above + wd;
            }
            for (const auto& [j, c] : val.entries()) {
                int nelt = w.elt + (j - xi) * stride[t];
                out.add_term(nelt, sign_pow<K>(expo) * c);
            }
        };
        if (acting >= 0)
            act(acting);
        else
            for (int t = 0; t < m; ++t) act(t); // internal differential
        return out;
    };
    return std::make_shared<PolyModule<K>>(std::move(name), sig, space, mu, true);
}

/// The diagonal (A|A)-bimodule: A with both sides acting through mu_A,
/// mu_D(a (x) x (x) b) = (-1)^{|b|} mu_A(a.x.b) desuspended.
template <class K> ModulePtr<K> diagonal_bimodule(const AlgebraPtr<K>& A)
{
    Signature<K> sig{{A}, {A}};
    auto space = std::make_shared<GradedSpace>(A->grading());
    for (const auto& b : A->suspended_space()->basis())
        space->add_basis_element(b.label, b.degree + 1);
    AlgebraPtr<K> Ac = A;
    auto mu = [Ac](const PWord& w) -> SparseVec<K> {
        Word full = w.words[0];
        full.push_back(w.elt);
        full.insert(full.end(), w.words[1].begin(), w.words[1].end());
        const SparseVec<K>& val = Ac->mu(full);
        if (val.is_zero()) return {};
        SparseVec<K> out;
        K sgn = sign_pow<K>(word_suspended_degree(*Ac, w.words[1]));
        for (const auto& [j, c] : val.entries()) out.add_term(j, sgn * c);
        return out;
    };
    return std::make_shared<PolyModule<K>>("D_" + A->name(), sig, space, mu, true);
}

/// An ordinary (graded, possibly DG) left module presented by its action
/// mu^{(k)} : (sA)^{(x)k} (x) M -> M stored as explicit components.
template <class K> class LeftModuleBuilder {
  public:
    LeftModuleBuilder(std::string name, AlgebraPtr<K> A, SpacePtr space)
        : name_(std::move(name)), A_(std::move(A)), space_(std::move(space))
    {
    }

    /// action component on a pure word (letters of sA, then module element)
    void set_action(const Word& letters, int elt, SparseVec<K> value)
    {
        table_[{letters, elt}] = std::move(value);
    }

    ModulePtr<K> build(bool perfect = false) const
    {
        Signature<K> sig{{A_}, {}};
        auto table = table_;
        AlgebraPtr<K> A = A_;
        SpacePtr space = space_;
        auto mu = [table, A, space](const PWord& w) -> SparseVec<K> {
            // strict unit: [e] (x) x -> x; unit letters elsewhere act by zero
            const Word& v = w.words[0];
            bool has_unit = false;
            for (int l : v) has_unit |= (l == A->unit_index());
            if (has_unit) {
                if (v.size() == 1) return SparseVec<K>::unit(w.elt);
                return {};
            }
            auto it = table.find({v, w.elt});
            return it == table.end() ? SparseVec<K>() : it->second;
        };
        return std::make_shared<PolyModule<K>>(name_, sig, space_, mu, perfect);
    }

  private:
    std::string name_;
    AlgebraPtr<K> A_;
    SpacePtr space_;
    std::map<std::pair<Word, int>, SparseVec<K>> table_;
};

/// Shift sP: degrees drop by one; the structure map picks up the sign
/// (-1)^{degree of the letters right of the module slot}.
template <class K> ModulePtr<K> shift_module(const ModulePtr<K>& P)
{
    auto space = std::make_shared<GradedSpace>(P->grading());
    for (const auto& b : P->space()->basis())
        space->add_basis_element("s(" + b.label + ")", b.degree - 1);
    ModulePtr<K> Pc = P;
    auto mu = [Pc](const PWord& w) -> SparseVec<K> {
        int rdeg = 0;
        const Signature<K>& sig = Pc->signature();
        for (int t = sig.r(); t < sig.slots(); ++t)
            rdeg += word_suspended_degree(*sig.algebra(t), w.words[t]);
        SparseVec<K> v = Pc->mu(w);
        v *= sign_pow<K>(rdeg);
        return v;
    };
    return std::make_shared<PolyModule<K>>("s(" + P->name() + ")", P->signature(), space,
                                           mu, P->perfect());
}

template <class K>
ModulePtr<K> direct_sum(const ModulePtr<K>& P, const ModulePtr<K>& Q)
{
    if (!(P->signature() == Q->signature()))
        throw SignatureError("direct sum of different signatures");
    auto space = std::make_shared<GradedSpace>(P->grading());
    int np = P->space()->dim();
    for (const auto& b : P->space()->basis())
        space->add_basis_element(b.label + ".L", b.degree);
    for (const auto& b : Q->space()->basis())
        space->add_basis_element(b.label + ".R", b.degree);
    ModulePtr<K> Pc = P, Qc = Q;
    auto mu = [Pc, Qc, np](const PWord& w) -> SparseVec<K> {
        SparseVec<K> out;
        if (w.elt < np) {
            PWord wp = w;
            for (const auto& [j, c] : Pc->mu(wp).entries()) out.add_term(j, c);
        }
        else {
            PWord wq = w;
            wq.elt = w.elt - np;
            for (const auto& [j, c] : Qc->mu(wq).entries()) out.add_term(j + np, c);
        }
        return out;
    };
    return std::make_shared<PolyModule<K>>(P->name() + "+" + Q->name(), P->signature(),
                                           space, mu, P->perfect() && Q->perfect());
}

/// Image of a strict idempotent homomorphism as a polymodule.
template <class K>
ModulePtr<K> summand(const ModulePtr<K>& P, const GradedMap<K>& idem, std::string name)
{
    if (!(*idem.source() == *P->space()) || !(*idem.target() == *P->space()) ||
        idem.degree() != 0)
        throw ArgumentError("idempotent must be a degree-0 endomorphism");
    // e*e = e exactly (strict idempotent)
    if (!(compose(idem, idem) == idem)) throw ArgumentError("endomorphism is not idempotent");
    // basis of the image
    Eliminator<K> im;
    std::vector<SparseVec<K>> gens;
    std::vector<int> degs;
    for (int i = 0; i < P->space()->dim(); ++i) {
        SparseVec<K> v = idem.column(i);
        if (im.insert(v)) {
            gens.push_back(im.rows().back());
            degs.push_back(P->space()->at(i).degree);
        }
    }
    auto space = std::make_shared<GradedSpace>(P->grading());
    for (std::size_t i = 0; i < gens.size(); ++i)
        space->add_basis_element(name + "_" + std::to_string(i), degs[i]);
    ModulePtr<K> Pc = P;
    auto gens_c = gens;
    auto mu = [Pc, gens_c](const PWord& w) -> SparseVec<K> {
        // expand the summand element, act, re-express in the image basis
        SparseVec<K> x;
        x.axpy(K(1), gens_c[w.elt]);
        SparseVec<K> img;
        for (const auto& [i, c] : x.entries()) {
            PWord wi = w;
            wi.elt = i;
            img.axpy(c, Pc->mu(wi));
        }
        if (img.is_zero()) return {};
        auto expr = solve_in_span(gens_c, img);
        if (!expr) throw ArgumentError("idempotent image is not closed under the action");
        return *expr;
    };
    return std::make_shared<PolyModule<K>>(name, P->signature(), space, mu, P->perfect());
}

/// Underlying cochain complex of a polymodule on its own space, with
/// differential mu^(0).
template <class K> Complex<K> underlying_complex(const PolyModule<K>& P)
{
    GradedMap<K> d(P.space(), P.space(), 1);
    PWord w;
    w.words.resize(P.signature().slots());
    for (int i = 0; i < P.space()->dim(); ++i) {
        w.elt = i;
        d.set_column(i, P.mu(w));
    }
    return Complex<K>(P.space(), d);
}

/// Materialized underlying complex of a polymodule on the word window
/// (total coalgebra length <= window). Words carrying unit letters are
/// included; b_P is closed on the window since it never lengthens words.
template <class K> struct ModuleComplex {
    ModulePtr<K> module;
    int window = 0;
    std::vector<PWord> words;
    std::map<PWord, int> index;
    Complex<K> complex;
};

template <class K> ModuleComplex<K> module_bar_complex(const ModulePtr<K>& P, int window)
{
    ModuleComplex<K> out;
    out.module = P;
    out.window = window;
    out.words = pword::enumerate(P->signature(), P->space()->dim(), window);
    auto space = std::make_shared<GradedSpace>(P->grading());
    for (const auto& w : out.words) {
        out.index[w] = space->dim();
        space->add_basis_element(pword::to_string(*P, w), P->word_degree(w));
    }
    GradedMap<K> d(space, space, 1);
    for (std::size_t i = 0; i < out.words.size(); ++i) {
        SparseVec<K> col;
        for (const auto& [w2, c] : bar_of_module(*P, out.words[i]))
            col.add_term(out.index.at(w2), c);
        d.set_column(static_cast<int>(i), std::move(col));
    }
    out.complex = Complex<K>(space, d);
    return out;
}

} // namespace ainfty
