#pragma once

#include <functional>

#include "ainf.hpp"

namespace ainfty {

/// Linear combination of bar words, deterministically ordered.
template <class K> using WordCombo = std::map<Word, K>;

template <class K> void combo_add(WordCombo<K>& acc, const Word& w, const K& c)
{
    if (c.is_zero()) return;
    auto [it, fresh] = acc.try_emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

template <class K> int word_suspended_degree(const AInfAlgebra<K>& A, const Word& w)
{
    int d = 0;
    for (int l : w) d += A.suspended_space()->at(l).degree;
    return d;
}

/// b_A on a single word: sum over mu^k insertions with the Koszul prefix
/// sign. Never lengthens, so the truncation window is preserved.
template <class K>
WordCombo<K> bar_differential(const AInfAlgebra<K>& A, const Word& w, int n_bar)
{
    if (static_cast<int>(w.size()) > n_bar)
        throw TruncationError("bar word exceeds the session truncation");
    WordCombo<K> out;
    int n = static_cast<int>(w.size());
    for (int k = 1; k <= std::min(n, A.max_arity()); ++k) {
        for (int r = 0; r + k <= n; ++r) {
            Word inner(w.begin() + r, w.begin() + r + k);
            const SparseVec<K>& mid = A.mu(inner);
            if (mid.is_zero()) continue;
            K sgn = sign_pow<K>(word_suspended_degree(A, Word(w.begin(), w.begin() + r)));
            for (const auto& [l, c] : mid.entries()) {
                Word nw;
                nw.reserve(n - k + 1);
                nw.insert(nw.end(), w.begin(), w.begin() + r);
                nw.push_back(l);
                nw.insert(nw.end(), w.begin() + r + k, w.end());
                combo_add(out, nw, sgn * c);
            }
        }
    }
    return out;
}

/// Delta[v_1|...|v_n] = sum of all n+1 deconcatenations, no signs.
inline std::vector<std::pair<Word, Word>> comultiply(const Word& w)
{
    std::vector<std::pair<Word, Word>> out;
    for (std::size_t i = 0; i <= w.size(); ++i)
        out.push_back({Word(w.begin(), w.begin() + i), Word(w.begin() + i, w.end())});
    return out;
}

/// All bar words of length <= n (the primitive filtration B_n A), in length
/// then lexicographic order.
template <class K>
std::vector<Word> primitive_filtration(const AInfAlgebra<K>& A, int n, int n_bar)
{
    if (n > n_bar) throw TruncationError("requested filtration piece beyond truncation");
    std::vector<Word> out;
    out.push_back({});
    for (int len = 1; len <= n; ++len) {
        Word w(len, 0);
        while (true) {
            out.push_back(w);
            int i = len - 1;
            while (i >= 0 && w[i] == A.dim() - 1) w[i--] = 0;
            if (i < 0) break;
            ++w[i];
        }
    }
    return out;
}

/// The bar complex B A materialized on a finite word window. The d*d = 0
/// invariant is certified by the Complex constructor.
template <class K> struct BarComplex {
    AlgebraPtr<K> algebra;
    int n_bar = 0;
    std::vector<Word> words;
    std::map<Word, int> index;
    Complex<K> complex;
};

template <class K> BarComplex<K> bar_complex(const AlgebraPtr<K>& A, int n_bar)
{
    BarComplex<K> out;
    out.algebra = A;
    out.n_bar = n_bar;
    out.words = primitive_filtration(*A, n_bar, n_bar);
    auto space = std::make_shared<GradedSpace>(A->grading());
    for (const auto& w : out.words) {
        out.index[w] = space->dim();
        space->add_basis_element(word_str(*A->suspended_space(), w),
                                 word_suspended_degree(*A, w));
    }
    GradedMap<K> d(space, space, 1);
    for (std::size_t i = 0; i < out.words.size(); ++i) {
        SparseVec<K> col;
        for (const auto& [w2, c] : bar_differential(*A, out.words[i], n_bar))
            col.add_term(out.index.at(w2), c);
        d.set_column(static_cast<int>(i), std::move(col));
    }
    out.complex = Complex<K>(space, d);
    return out;
}

// ---------------------------------------------------------------------------
// The rank-one free module U_A = A over itself: its bar words are
// (coalgebra word, module element), written [a_1|...|a_m] (x) x.

struct UWord {
    Word letters;
    int elt = 0;
    friend auto operator<=>(const UWord&, const UWord&) = default;
};

template <class K> using UCombo = std::map<UWord, K>;

template <class K> void ucombo_add(UCombo<K>& acc, const UWord& w, const K& c)
{
    if (c.is_zero()) return;
    auto [it, fresh] = acc.try_emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

/// degree of a U_A bar word (module element carries its unsuspended degree)
template <class K> int uword_degree(const AInfAlgebra<K>& A, const UWord& w)
{
    return word_suspended_degree(A, w.letters) + A.suspended_space()->at(w.elt).degree + 1;
}

/// b_{U_A}: coalgebra differential plus the module action
/// mu_U([v] (x) x) = mu_A^{len+1}(v (x) sx) desuspended, with no extra sign.
template <class K> UCombo<K> u_bar_differential(const AInfAlgebra<K>& A, const UWord& w)
{
    UCombo<K> out;
    int n = static_cast<int>(w.letters.size());
    // d' = b_A (x) 1
    for (const auto& [w2, c] : bar_differential(A, w.letters, n))
        ucombo_add(out, UWord{w2, w.elt}, c);
    // (1 (x) mu_U) Delta: the suffix (plus the module slot) is consumed
    for (int i = 0; i <= n; ++i) {
        Word tail(w.letters.begin() + i, w.letters.end());
        tail.push_back(w.elt);
        const SparseVec<K>& val = A.mu(tail);
        if (val.is_zero()) continue;
        K sgn = sign_pow<K>(word_suspended_degree(A, Word(w.letters.begin(),
                                                          w.letters.begin() + i)));
        Word head(w.letters.begin(), w.letters.begin() + i);
        for (const auto& [l, c] : val.entries()) ucombo_add(out, UWord{head, l}, sgn * c);
    }
    return out;
}

/// h_A([a_1|...|a_m] (x) x) = (-1)^{|word|} [a_1|...|a_m|sx] (x) 1_A where
/// |word| is the total suspended degree of the input together with sx.
template <class K>
std::pair<UWord, K> unit_contraction_h(const AInfAlgebra<K>& A, const UWord& w, int n_bar)
{
    if (static_cast<int>(w.letters.size()) + 1 > n_bar)
        throw TruncationError("unit contraction would exceed the truncation");
    Word nw = w.letters;
    nw.push_back(w.elt);
    int expo = word_suspended_degree(A, w.letters) +
               A.suspended_space()->at(w.elt).degree + 1;
    return {UWord{nw, A.unit_index()}, sign_pow<K>(expo)};
}

/// Delta_{1,P} on a U_A bar word: all left deconcatenations, no signs.
inline std::vector<std::pair<Word, UWord>> u_comultiply(const UWord& w)
{
    std::vector<std::pair<Word, UWord>> out;
    for (std::size_t i = 0; i <= w.letters.size(); ++i)
        out.push_back({Word(w.letters.begin(), w.letters.begin() + i),
                       UWord{Word(w.letters.begin() + i, w.letters.end()), w.elt}});
    return out;
}

/// [Delta, f] = Delta_{P'} f - (1 (x) f) Delta_P evaluated on one word;
/// terms are (coalgebra word, module word) pairs.
template <class K>
std::map<std::pair<Word, UWord>, K>
map_class_defect_terms(const AInfAlgebra<K>& A,
                       const std::function<UCombo<K>(const UWord&)>& f, int f_degree,
                       const UWord& w)
{
    std::map<std::pair<Word, UWord>, K> acc;
    auto add = [&](const Word& a, const UWord& b, const K& c) {
        if (c.is_zero()) return;
        auto key = std::make_pair(a, b);
        auto [it, fresh] = acc.try_emplace(key, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) acc.erase(it);
        }
    };
    for (const auto& [uw, c] : f(w))
        for (const auto& [a, b] : u_comultiply(uw)) add(a, b, c);
    for (const auto& [a, rest] : u_comultiply(w)) {
        K sgn = sign_pow<K>(f_degree * word_suspended_degree(A, a));
        for (const auto& [uw, c] : f(rest)) add(a, uw, K(-1) * sgn * c);
    }
    return acc;
}

/// f is in Map^k iff every defect term lands in C (x) (words of length < k).
template <class K>
bool map_class_defect(const AInfAlgebra<K>& A,
                      const std::function<UCombo<K>(const UWord&)>& f, int f_degree,
                      int k, const std::vector<UWord>& sample_words)
{
    for (const auto& w : sample_words)
        for (const auto& [term, c] : map_class_defect_terms(A, f, f_degree, w))
            if (static_cast<int>(term.second.letters.size()) > k - 1) return false;
    return true;
}

/// All U_A bar words with at most max_len letters.
template <class K>
std::vector<UWord> enumerate_uwords(const AInfAlgebra<K>& A, int max_len)
{
    std::vector<UWord> out;
    for (const auto& w : primitive_filtration(A, max_len, max_len))
        for (int i = 0; i < A.dim(); ++i) out.push_back({w, i});
    return out;
}

} // namespace ainfty
