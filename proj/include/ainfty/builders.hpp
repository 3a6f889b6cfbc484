#pragma once

#include "ainf.hpp"

namespace ainfty {

/// Description of a graded associative algebra (optionally DG) in the
/// unsuspended convention. The unit must be one of the basis elements.
template <class K> struct AssociativePresentation {
    std::string name;
    Grading grading = Grading::Z;
    std::vector<BasisElement> basis; // degrees in A
    std::string unit;
    // product x*y -> linear combination, missing pairs are zero, unit
    // products may be omitted (filled from the unit laws)
    std::map<std::pair<std::string, std::string>, std::vector<std::pair<std::string, K>>>
        products;
    // optional differential, a degree +1 derivation
    std::map<std::string, std::vector<std::pair<std::string, K>>> differential;
};

/// Suspended-convention structure maps of an associative (DG) algebra:
/// mu^1(sx) = s(dx), mu^2(sx (x) sy) = (-1)^{|x|} s(x y).
template <class K>
std::shared_ptr<AInfAlgebra<K>> from_associative(const AssociativePresentation<K>& p)
{
    auto A = std::make_shared<GradedSpace>(p.grading);
    for (const auto& b : p.basis) A->add_basis_element(b.label, b.degree);
    auto sA = suspend_space(std::static_pointer_cast<const GradedSpace>(A));
    int e = A->index_of(p.unit);
    auto alg = std::make_shared<AInfAlgebra<K>>(p.name, sA, e);

    auto deg_in_A = [&](int i) { return A->at(i).degree; };
    for (const auto& [xy, val] : p.products) {
        int i = A->index_of(xy.first), j = A->index_of(xy.second);
        SparseVec<K> out;
        for (const auto& [lbl, c] : val)
            out.add_term(A->index_of(lbl), sign_pow<K>(deg_in_A(i)) * c);
        alg->set_mu(2, {i, j}, std::move(out));
    }
    alg->install_unit_products();
    for (const auto& [x, dx] : p.differential) {
        int i = A->index_of(x);
        SparseVec<K> out;
        for (const auto& [lbl, c] : dx) out.add_term(A->index_of(lbl), c);
        alg->set_mu(1, {i}, std::move(out));
    }
    return alg;
}

/// Direct associativity check of the unsuspended product encoded in mu^2,
/// used to cross-validate check_stasheff on formal algebras.
template <class K> bool mu2_is_associative(const AInfAlgebra<K>& A)
{
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < A.dim(); ++j)
            for (int k = 0; k < A.dim(); ++k) {
                // m(m(a,b),c) + (-1)^{|a|} m(a, m(b,c)) = 0 in the suspended
                // convention is exactly associativity of the desuspension
                SparseVec<K> lhs;
                for (const auto& [l, c] : A.mu({i, j}).entries())
                    lhs.axpy(c, A.mu({l, k}));
                SparseVec<K> rhs;
                for (const auto& [l, c] : A.mu({j, k}).entries())
                    rhs.axpy(c, A.mu({i, l}));
                rhs *= sign_pow<K>(A.suspended_space()->at(i).degree);
                lhs += rhs;
                if (!lhs.is_zero()) return false;
            }
    return true;
}

} // namespace ainfty
