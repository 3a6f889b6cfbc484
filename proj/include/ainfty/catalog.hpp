#pragma once

#include <random>

#include "builders.hpp"
#include "dimension.hpp"

namespace ainfty {

/// An ordinary associative right module presented by its length-one action
/// table plus optional longer components (matrix factorization style).
template <class K> class RightModuleBuilder {
  public:
    RightModuleBuilder(std::string name, AlgebraPtr<K> A, SpacePtr space)
        : name_(std::move(name)), A_(std::move(A)), space_(std::move(space))
    {
    }

    void set_action(int elt, const Word& letters, SparseVec<K> value)
    {
        table_[{elt, letters}] = std::move(value);
    }

    /// associative right action x.a with the derived sign (-1)^{|x|+1}
    void set_product(int elt, int letter, SparseVec<K> value)
    {
        value *= sign_pow<K>(space_->at(elt).degree + 1);
        set_action(elt, {letter}, std::move(value));
    }

    ModulePtr<K> build(bool perfect = false) const
    {
        Signature<K> sig{{}, {A_}};
        auto table = table_;
        AlgebraPtr<K> A = A_;
        SpacePtr space = space_;
        auto mu = [table, A, space](const PWord& w) -> SparseVec<K> {
            const Word& v = w.words[0];
            bool has_unit = false;
            for (int l : v) has_unit |= (l == A->unit_index());
            if (has_unit) {
                if (v.size() == 1)
                    return SparseVec<K>::unit(
                        w.elt, sign_pow<K>(space->at(w.elt).degree + 1));
                return {};
            }
            auto it = table.find({w.elt, v});
            return it == table.end() ? SparseVec<K>() : it->second;
        };
        return std::make_shared<PolyModule<K>>(name_, sig, space_, mu, perfect);
    }

  private:
    std::string name_;
    AlgebraPtr<K> A_;
    SpacePtr space_;
    std::map<std::pair<int, Word>, SparseVec<K>> table_;
};

/// A named catalog entry: the ambient algebra, probe families on both
/// sides, and the perfect modules whose lengths reproduce the examples.
template <class K> struct CatalogEntry {
    std::string name;
    AlgebraPtr<K> algebra;
    ProbeFamily<K> left_modules;  // probe family of left modules
    ProbeFamily<K> right_modules; // right-module probes for the tensor side
    std::map<std::string, ModulePtr<K>> named;
};

namespace catalog_detail {

template <class K> void validate_algebra(const AInfAlgebra<K>& A, int bound)
{
    RelationReport st = check_stasheff(A, bound);
    if (!st.ok) throw ArgumentError("catalog algebra fails stasheff: " + st.describe());
    RelationReport un = check_unitality(A);
    if (!un.ok) throw ArgumentError("catalog algebra fails unitality: " + un.describe());
}

template <class K> void validate_module(const PolyModule<K>& P, int bound)
{
    ModuleCheckReport rep = check_polymodule(P, bound);
    if (!rep.ok)
        throw ArgumentError("catalog module " + P.name() + " fails: " + rep.describe());
}

} // namespace catalog_detail

/// Path algebra of the Kronecker quiver (two vertices, two parallel
/// arrows), the endomorphism algebra of the Beilinson generator on P^1.
template <class K> CatalogEntry<K> kronecker_entry()
{
    AssociativePresentation<K> p;
    p.name = "kronecker";
    p.basis = {{"e", 0}, {"v", 0}, {"x", 0}, {"y", 0}};
    p.unit = "e";
    // v idempotent at the source vertex, x and y the arrows out of it;
    // composition order m(a, b) = a o b
    p.products = {{{"v", "v"}, {{"v", K(1)}}},
                  {{"x", "v"}, {{"x", K(1)}}},
                  {{"y", "v"}, {{"y", K(1)}}}};
    auto alg = from_associative(p);
    catalog_detail::validate_algebra(*alg, 4);
    AlgebraPtr<K> A = alg;
    int vi = 1, xi = 2, yi = 3;

    CatalogEntry<K> out;
    out.name = "kronecker";
    out.algebra = A;

    auto U = trivial_module<K>({{A}, {}}, "U");
    // P0 = Av: the big projective
    auto sp0 = make_space(Grading::Z, {{"pv", 0}, {"px", 0}, {"py", 0}});
    LeftModuleBuilder<K> p0("P0", A, sp0);
    p0.set_action({vi}, 0, SparseVec<K>::unit(0));
    p0.set_action({xi}, 0, SparseVec<K>::unit(1));
    p0.set_action({yi}, 0, SparseVec<K>::unit(2));
    auto P0 = p0.build(true);
    // P1 = A(e - v): one-dimensional projective = simple at the sink
    auto sp1 = make_space(Grading::Z, {{"q", 0}});
    LeftModuleBuilder<K> p1("P1", A, sp1);
    auto P1 = p1.build(true);
    // S0: simple at the source vertex
    auto ss0 = make_space(Grading::Z, {{"s", 0}});
    LeftModuleBuilder<K> s0("S0", A, ss0);
    s0.set_action({vi}, 0, SparseVec<K>::unit(0));
    auto S0 = s0.build(true);

    for (const auto& M : {U, P0, P1, S0}) catalog_detail::validate_module(*M, 3);
    out.left_modules.modules = {U, P0, P1, S0};
    out.named = {{"U", U}, {"P0", P0}, {"P1", P1}, {"S0", S0}, {"S1", P1}};

    auto Ur = trivial_module<K>({{}, {A}}, "Ur");
    // right projective vA = span{v}; right module at the sink e1A
    auto rv = make_space(Grading::Z, {{"rv", 0}});
    RightModuleBuilder<K> r0("S0r", A, rv);
    r0.set_product(0, vi, SparseVec<K>::unit(0));
    auto S0r = r0.build(true);
    auto re = make_space(Grading::Z, {{"re", 0}, {"rx", 0}, {"ry", 0}});
    RightModuleBuilder<K> r1("P1r", A, re);
    r1.set_product(0, xi, SparseVec<K>::unit(1));
    r1.set_product(0, yi, SparseVec<K>::unit(2));
    r1.set_product(1, vi, SparseVec<K>::unit(1));
    r1.set_product(2, vi, SparseVec<K>::unit(2));
    auto P1r = r1.build(true);
    // right simple at the sink: everything non-unit acts by zero
    auto rt = make_space(Grading::Z, {{"rt", 0}});
    RightModuleBuilder<K> r2("S1r", A, rt);
    auto S1r = r2.build(true);
    for (const auto& M : {Ur, S0r, P1r, S1r}) catalog_detail::validate_module(*M, 3);
    out.right_modules.modules = {Ur, S0r, P1r, S1r};
    out.named["Ur"] = Ur;
    out.named["S0r"] = S0r;
    out.named["P1r"] = P1r;
    out.named["S1r"] = S1r;
    return out;
}

/// The mutated P^1 collection <O, O_p>: five-dimensional graded algebra
/// with deg(a) = deg(c) = 1, deg(b) = 0 and ba = c.
template <class K> CatalogEntry<K> mutated_p1_entry()
{
    AssociativePresentation<K> p;
    p.name = "mutated_p1";
    p.basis = {{"e", 0}, {"p", 0}, {"b", 0}, {"a", 1}, {"c", 1}};
    p.unit = "e";
    p.products = {{{"p", "p"}, {{"p", K(1)}}},
                  {{"b", "p"}, {{"b", K(1)}}},
                  {{"p", "a"}, {{"a", K(1)}}},
                  {{"b", "a"}, {{"c", K(1)}}}};
    auto alg = from_associative(p);
    catalog_detail::validate_algebra(*alg, 4);
    AlgebraPtr<K> A = alg;
    int pi = 1, bi = 2, ai = 3, ci = 4;

    CatalogEntry<K> out;
    out.name = "mutated_p1";
    out.algebra = A;

    auto U = trivial_module<K>({{A}, {}}, "U");
    // P1 = Ap = span{p, b}
    auto sp1 = make_space(Grading::Z, {{"p", 0}, {"b", 0}});
    LeftModuleBuilder<K> mp1("P1", A, sp1);
    mp1.set_action({pi}, 0, SparseVec<K>::unit(0));
    mp1.set_action({bi}, 0, SparseVec<K>::unit(1));
    auto P1 = mp1.build(true);
    // P2 = A(e-p) = span{q, a, c}
    auto sp2 = make_space(Grading::Z, {{"q", 0}, {"a", 1}, {"c", 1}});
    LeftModuleBuilder<K> mp2("P2", A, sp2);
    mp2.set_action({ai}, 0, SparseVec<K>::unit(1));
    mp2.set_action({ci}, 0, SparseVec<K>::unit(2));
    mp2.set_action({pi}, 1, SparseVec<K>::unit(1));
    mp2.set_action({bi}, 1, SparseVec<K>::unit(2));
    auto P2 = mp2.build(true);
    // simples at the two vertices
    auto ss1 = make_space(Grading::Z, {{"s1", 0}});
    LeftModuleBuilder<K> ms1("S1", A, ss1);
    ms1.set_action({pi}, 0, SparseVec<K>::unit(0));
    auto S1 = ms1.build(true);
    auto ss2 = make_space(Grading::Z, {{"s2", 0}});
    LeftModuleBuilder<K> ms2("S2", A, ss2);
    auto S2 = ms2.build(true);

    for (const auto& M : {U, P1, P2, S1, S2}) catalog_detail::validate_module(*M, 3);
    out.left_modules.modules = {U, P1, P2, S1, S2};
    out.named = {{"U", U}, {"P1", P1}, {"P2", P2}, {"S1", S1}, {"S2", S2}};

    auto Ur = trivial_module<K>({{}, {A}}, "Ur");
    for (const auto& M : {Ur}) catalog_detail::validate_module(*M, 3);
    out.right_modules.modules = {Ur};
    out.named["Ur"] = Ur;
    return out;
}

/// k[theta]/(theta^2) with the single higher product mu^n(theta,...) = 1:
/// the minimal model of the matrix factorization category of z^n.
template <class K> std::shared_ptr<AInfAlgebra<K>> mf_alg(int n)
{
    if (n < 2) throw ArgumentError("mf needs n >= 2");
    auto A = std::make_shared<GradedSpace>(Grading::Z2);
    A->add_basis_element("e", 0);
    A->add_basis_element("th", 1);
    auto sA = suspend_space(std::static_pointer_cast<const GradedSpace>(A));
    auto alg = std::make_shared<AInfAlgebra<K>>("mf" + std::to_string(n), sA, 0);
    alg->install_unit_products();
    alg->set_mu(n, Word(n, 1), SparseVec<K>::unit(0));
    catalog_detail::validate_algebra(*alg, std::min(2 * n, 12));
    return alg;
}

/// The irreducible factorization module M_m = (u^m, u^{n-m}); the suspended
/// convention places the sign on the second block (L.L = -u^n here).
template <class K>
ModulePtr<K> mf_left_module(const AlgebraPtr<K>& A, int n, int m)
{
    if (m < 1 || m > n / 2) throw ArgumentError("mf module needs 1 <= m <= n/2");
    auto space = make_space(Grading::Z2, {{"m0", 0}, {"m1", 1}});
    LeftModuleBuilder<K> b("M" + std::to_string(m), A, space);
    b.set_action(Word(m, 1), 0, SparseVec<K>::unit(1));
    b.set_action(Word(n - m, 1), 1, SparseVec<K>::unit(0, K(-1)));
    auto M = b.build(true);
    catalog_detail::validate_module(*M, 2 * n);
    return M;
}

template <class K>
ModulePtr<K> mf_right_module(const AlgebraPtr<K>& A, int n, int m)
{
    if (m < 1 || m > n / 2) throw ArgumentError("mf module needs 1 <= m <= n/2");
    auto space = make_space(Grading::Z2, {{"r0", 0}, {"r1", 1}});
    RightModuleBuilder<K> b("R" + std::to_string(m), A, space);
    b.set_action(0, Word(m, 1), SparseVec<K>::unit(1));
    b.set_action(1, Word(n - m, 1), SparseVec<K>::unit(0));
    auto M = b.build(true);
    catalog_detail::validate_module(*M, 2 * n);
    return M;
}

template <class K> CatalogEntry<K> mf_entry(int n)
{
    CatalogEntry<K> out;
    out.name = "mf" + std::to_string(n);
    auto alg = mf_alg<K>(n);
    AlgebraPtr<K> A = alg;
    out.algebra = A;
    auto U = trivial_module<K>({{A}, {}}, "U");
    catalog_detail::validate_module(*U, std::min(2 * n, 10));
    out.left_modules.modules = {U};
    out.named["U"] = U;
    for (int m = 1; m <= n / 2; ++m) {
        auto M = mf_left_module(A, n, m);
        out.left_modules.modules.push_back(M);
        out.named["M" + std::to_string(m)] = M;
    }
    auto Ur = trivial_module<K>({{}, {A}}, "Ur");
    catalog_detail::validate_module(*Ur, std::min(2 * n, 10));
    out.right_modules.modules = {Ur};
    out.named["Ur"] = Ur;
    for (int m = 1; m <= n / 2; ++m) {
        auto R = mf_right_module(A, n, m);
        out.right_modules.modules.push_back(R);
        out.named["R" + std::to_string(m)] = R;
    }
    return out;
}

/// Beilinson endomorphism algebra of (+) O(i) on P^n for n <= 2.
template <class K> CatalogEntry<K> beilinson_entry(int n)
{
    if (n < 1 || n > 2) throw ArgumentError("beilinson supported for n in {1, 2}");
    if (n == 1) {
        CatalogEntry<K> out = kronecker_entry<K>();
        out.name = "beilinson1";
        return out;
    }
    AssociativePresentation<K> p;
    p.name = "beilinson2";
    p.basis = {{"e", 0}, {"v0", 0}, {"v1", 0}};
    for (int i = 0; i < 3; ++i) p.basis.push_back({"x" + std::to_string(i), 0});
    for (int i = 0; i < 3; ++i) p.basis.push_back({"y" + std::to_string(i), 0});
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            p.basis.push_back({"z" + std::to_string(i) + std::to_string(j), 0});
    p.unit = "e";
    auto z = [](int i, int j) {
        if (i > j) std::swap(i, j);
        return "z" + std::to_string(i) + std::to_string(j);
    };
    // v0 projects onto O, v1 onto O(1); x_i : O -> O(1), y_i : O(1) -> O(2),
    // z_{ij} = y_i o x_j = y_j o x_i (sections of O(2))
    p.products[{"v0", "v0"}] = {{"v0", K(1)}};
    p.products[{"v1", "v1"}] = {{"v1", K(1)}};
    for (int i = 0; i < 3; ++i) {
        p.products[{"x" + std::to_string(i), "v0"}] = {{"x" + std::to_string(i), K(1)}};
        p.products[{"v1", "x" + std::to_string(i)}] = {{"x" + std::to_string(i), K(1)}};
        p.products[{"y" + std::to_string(i), "v1"}] = {{"y" + std::to_string(i), K(1)}};
        for (int j = 0; j < 3; ++j)
            p.products[{"y" + std::to_string(i), "x" + std::to_string(j)}] = {
                {z(i, j), K(1)}};
        for (int j = i; j < 3; ++j)
            p.products[{z(i, j), "v0"}] = {{z(i, j), K(1)}};
    }
    auto alg = from_associative(p);
    catalog_detail::validate_algebra(*alg, 3);
    CatalogEntry<K> out;
    out.name = "beilinson2";
    out.algebra = alg;
    AlgebraPtr<K> A = alg;
    auto U = trivial_module<K>({{A}, {}}, "U");
    out.left_modules.modules = {U};
    out.named["U"] = U;
    auto Ur = trivial_module<K>({{}, {A}}, "Ur");
    out.right_modules.modules = {Ur};
    out.named["Ur"] = Ur;
    return out;
}

/// Registered example constructor.
template <class K> CatalogEntry<K> build_entry(const std::string& name, int n = 0)
{
    if (name == "kronecker") return kronecker_entry<K>();
    if (name == "mutated_p1") return mutated_p1_entry<K>();
    if (name == "mf") return mf_entry<K>(n);
    if (name == "beilinson") return beilinson_entry<K>(n);
    throw ArgumentError("unknown example: " + name);
}

inline std::vector<std::string> catalog_names()
{
    return {"kronecker", "mutated_p1", "mf", "beilinson"};
}

// ---------------------------------------------------------------------------
// Matrix factorization power-series repackaging

/// L-series of an mf module: r -> matrix of the theta-word action.
template <class K>
std::map<int, GradedMap<K>> mf_series(const ModulePtr<K>& M, int max_r)
{
    std::map<int, GradedMap<K>> out;
    for (int r = 1; r <= max_r; ++r) {
        bool nonzero = false;
        // theta letters have suspended degree zero, so every L_r is odd
        GradedMap<K> L(M->space(), M->space(), 1);
        for (int i = 0; i < M->space()->dim(); ++i) {
            PWord w;
            w.words = {Word(r, 1)};
            w.elt = i;
            SparseVec<K> v = M->mu(w);
            nonzero |= !v.is_zero();
            L.set_column(i, std::move(v));
        }
        if (nonzero) out.emplace(r, std::move(L));
    }
    return out;
}

/// Rebuild the module from its series; the identity round-trip certifies
/// the repackaging.
template <class K>
ModulePtr<K> mf_module_from_series(const AlgebraPtr<K>& A, SpacePtr space,
                                   const std::map<int, GradedMap<K>>& series,
                                   std::string name)
{
    LeftModuleBuilder<K> b(std::move(name), A, space);
    for (const auto& [r, L] : series)
        for (int i = 0; i < space->dim(); ++i)
            if (!L.column(i).is_zero()) b.set_action(Word(r, 1), i, L.column(i));
    return b.build(true);
}

// ---------------------------------------------------------------------------
// Randomized small instances

struct RandomBounds {
    int max_dim = 4;   // including the unit
    int max_arity = 4;
    int attempts = 32;
};

/// Seeded random small algebra: random two-nilpotent products and a random
/// differential, validated by the relation suite (retry on infeasible
/// draws), optionally followed by homotopy transfer.
template <class K>
std::shared_ptr<AInfAlgebra<K>> random_small(std::uint64_t seed,
                                             const RandomBounds& bounds = {})
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coin(0, 1), coef(-2, 2);
    for (int attempt = 0; attempt < bounds.attempts; ++attempt) {
        Grading g = coin(rng) ? Grading::Z : Grading::Z2;
        int extras = 1 + static_cast<int>(rng() % (bounds.max_dim - 1));
        std::vector<int> degs(extras);
        for (auto& d : degs) d = static_cast<int>(rng() % 2);
        AssociativePresentation<K> p;
        p.name = "rnd" + std::to_string(seed);
        p.grading = g;
        p.basis = {{"e", 0}};
        for (int i = 0; i < extras; ++i)
            p.basis.push_back({"g" + std::to_string(i), degs[i]});
        p.unit = "e";
        // two-nilpotent products into the last generator
        if (extras >= 3) {
            int h = extras - 1;
            for (int i = 0; i + 1 < extras; ++i)
                for (int j = 0; j + 1 < extras; ++j) {
                    if (degrees_equal(g, degs[i] + degs[j], degs[h]) && coin(rng))
                        p.products[{"g" + std::to_string(i), "g" + std::to_string(j)}] =
                            {{"g" + std::to_string(h), K(coef(rng))}};
                }
        }
        // random differential between degree-adjacent generators
        for (int i = 0; i < extras; ++i)
            for (int j = 0; j < extras; ++j) {
                if (i == j) continue;
                if (degrees_equal(g, degs[j], degs[i] + 1) && rng() % 4 == 0)
                    p.differential["g" + std::to_string(i)] = {
                        {"g" + std::to_string(j), K(1)}};
            }
        try {
            auto alg = from_associative(p);
            if (!check_stasheff(*alg, 4).ok) continue;
            if (!check_unitality(*alg).ok) continue;
            return alg;
        }
        catch (const ArgumentError&) {
            continue;
        }
    }
    throw ArgumentError("random_small: no feasible draw within the attempt bound");
}

} // namespace ainfty
