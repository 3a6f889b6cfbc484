#include <catch2/catch_amalgamated.hpp>

#include "ainfty/builders.hpp"

using namespace ainfty;
using K = Rational;
using Vec = SparseVec<K>;

namespace {

std::shared_ptr<AInfAlgebra<K>> mf_algebra(int n)
{
    // k[theta]/(theta^2), Z/2-graded, |theta| = 1, single higher product
    // mu^n(theta,...,theta) = 1
    auto A = std::make_shared<GradedSpace>(Grading::Z2);
    A->add_basis_element("e", 0);
    A->add_basis_element("th", 1);
    auto sA = suspend_space(std::static_pointer_cast<const GradedSpace>(A));
    auto alg = std::make_shared<AInfAlgebra<K>>("mf" + std::to_string(n), sA, 0);
    alg->install_unit_products();
    alg->set_mu(2, {1, 1}, Vec());
    alg->set_mu(n, Word(n, 1), Vec::unit(0));
    return alg;
}

std::shared_ptr<AInfAlgebra<K>> kronecker()
{
    AssociativePresentation<K> p;
    p.name = "kronecker";
    p.basis = {{"e", 0}, {"v", 0}, {"x", 0}, {"y", 0}};
    p.unit = "e";
    // v = idempotent at the source vertex; x, y arrows out of it
    p.products = {{{"v", "v"}, {{"v", K(1)}}},
                  {{"x", "v"}, {{"x", K(1)}}},
                  {{"y", "v"}, {{"y", K(1)}}}};
    return from_associative(p);
}

std::shared_ptr<AInfAlgebra<K>> four_dim_dg()
{
    // k[z]/(z^2) with |z| = 1 plus an acyclic summand {w, t = dw}
    AssociativePresentation<K> p;
    p.name = "dg4";
    p.basis = {{"e", 0}, {"z", 1}, {"w", 0}, {"t", 1}};
    p.unit = "e";
    p.products = {};
    p.differential = {{"w", {{"t", K(1)}}}};
    return from_associative(p);
}

} // namespace

TEST_CASE("stasheff: differential squares to zero (n = 1 instance)")
{
    auto A = four_dim_dg();
    REQUIRE(check_stasheff(*A, 1).ok);
}

TEST_CASE("stasheff: mf algebra passes to 2n")
{
    for (int n : {3, 5}) {
        auto A = mf_algebra(n);
        RelationReport rep = check_stasheff(*A, 2 * n);
        INFO(rep.describe());
        REQUIRE(rep.ok);
        REQUIRE(check_unitality(*A).ok);
    }
}

TEST_CASE("stasheff reduces to associativity for formal algebras")
{
    auto A = kronecker();
    REQUIRE(mu2_is_associative(*A));
    REQUIRE(check_stasheff(*A, 5).ok);
    REQUIRE(check_unitality(*A).ok);

    // corrupt one product: both checkers must fail
    auto bad = std::make_shared<AInfAlgebra<K>>(*A);
    bad->set_mu(2, {1, 1}, Vec::unit(2)); // v*v := x breaks associativity
    REQUIRE_FALSE(mu2_is_associative(*bad));
    REQUIRE_FALSE(check_stasheff(*bad, 4).ok);
}

TEST_CASE("unitality: corrupted unit is reported with the failing word")
{
    auto A = kronecker();
    auto bad = std::make_shared<AInfAlgebra<K>>(*A);
    bad->set_mu(2, {0, 2}, Vec::unit(2, K(2))); // mu(e,x) = 2x
    RelationReport rep = check_unitality(*bad);
    REQUIRE_FALSE(rep.ok);
    REQUIRE(rep.identity == "unit-left");
    REQUIRE(rep.word == "[e|x]");
}

TEST_CASE("opposite: involution and validity")
{
    auto A = kronecker();
    AInfAlgebra<K> op = opposite(*A);
    REQUIRE(check_stasheff(op, 4).ok);
    REQUIRE(check_unitality(op).ok);
    AInfAlgebra<K> opop = opposite(op);
    for (int n = 1; n <= A->max_arity(); ++n)
        REQUIRE(opop.mu_table(n) == A->mu_table(n));

    // opposite of the Kronecker algebra is the reversed-arrow path algebra:
    // in A^op the arrows compose with v on the other side (up to the
    // reversal sign of two odd suspended letters)
    int vi = A->suspended_space()->index_of("v");
    int xi = A->suspended_space()->index_of("x");
    REQUIRE(op.mu({vi, xi}) == Vec::unit(xi, K(-1)));
    REQUIRE(op.mu({xi, vi}).is_zero());
}

TEST_CASE("opposite of mf algebra passes relations (odd higher product)")
{
    auto A = mf_algebra(5);
    AInfAlgebra<K> op = opposite(*A);
    REQUIRE(check_stasheff(op, 10).ok);
    REQUIRE(check_unitality(op).ok);
    // cohomology dims preserved degreewise
    REQUIRE(op.cohomology_dims_suspended() == A->cohomology_dims_suspended());
}

TEST_CASE("morphism checks: identity and strict algebra maps")
{
    auto A = kronecker();
    AInfMorphism<K> id = AInfMorphism<K>::identity(
        std::static_pointer_cast<const AInfAlgebra<K>>(A));
    REQUIRE(check_morphism(id, 4).ok);
    REQUIRE(is_quasi_isomorphism(id));

    // zero phi^1 between algebras with nonzero cohomology is not a q-iso
    AInfMorphism<K> z(std::static_pointer_cast<const AInfAlgebra<K>>(A),
                      std::static_pointer_cast<const AInfAlgebra<K>>(A));
    REQUIRE_FALSE(is_quasi_isomorphism(z));
}

TEST_CASE("minimal model: already-minimal algebra returns itself")
{
    auto A = kronecker();
    auto mm = minimal_model(std::static_pointer_cast<const AInfAlgebra<K>>(A), 4);
    REQUIRE(mm.model->dim() == A->dim());
    REQUIRE(mm.model->max_arity() <= 2); // no higher products: formality
    REQUIRE(check_morphism(mm.inclusion, 3).ok);
    REQUIRE(is_quasi_isomorphism(mm.inclusion));
}

TEST_CASE("minimal model of a 4-dim DG algebra with acyclic summand")
{
    auto A = four_dim_dg();
    auto mm = minimal_model(std::static_pointer_cast<const AInfAlgebra<K>>(A), 4);
    // H* = k[z]/(z^2)
    REQUIRE(mm.model->dim() == 2);
    RelationReport st = check_stasheff(*mm.model, 6);
    INFO(st.describe());
    REQUIRE(st.ok);
    REQUIRE(check_unitality(*mm.model).ok);
    // transferred mu^2 is the induced product: [z][z] = 0, unit laws hold
    int zi = -1;
    for (int i = 0; i < mm.model->dim(); ++i)
        if (i != mm.model->unit_index()) zi = i;
    REQUIRE(mm.model->mu({zi, zi}).is_zero());
    // higher products vanish for degree reasons
    for (int n = 3; n <= mm.model->max_arity(); ++n)
        REQUIRE(mm.model->mu_table(n).empty());
    RelationReport mo = check_morphism(mm.inclusion, 4);
    INFO(mo.describe());
    REQUIRE(mo.ok);
    REQUIRE(is_quasi_isomorphism(mm.inclusion));
}

TEST_CASE("minimal model picks up the Massey triple product")
{
    // x*y = q = d(w), w*z = m a surviving cocycle: the transferred
    // mu^3([x],[y],[z]) is +-[m]
    AssociativePresentation<K> p;
    p.name = "massey";
    p.basis = {{"e", 0}, {"x", 1}, {"y", 1}, {"z", 1}, {"w", 1}, {"q", 2}, {"m", 2}};
    p.unit = "e";
    p.products = {{{"x", "y"}, {{"q", K(1)}}}, {{"w", "z"}, {{"m", K(1)}}}};
    p.differential = {{"w", {{"q", K(1)}}}};
    auto A = from_associative(p);
    RelationReport st0 = check_stasheff(*A, 4);
    INFO(st0.describe());
    REQUIRE(st0.ok);

    auto mm = minimal_model(std::static_pointer_cast<const AInfAlgebra<K>>(A), 4);
    REQUIRE(mm.model->dim() == 5); // e, x, y, z, m survive
    REQUIRE(check_stasheff(*mm.model, 5).ok);
    REQUIRE(check_unitality(*mm.model).ok);
    REQUIRE(is_quasi_isomorphism(mm.inclusion));
    RelationReport mo = check_morphism(mm.inclusion, 4);
    INFO(mo.describe());
    REQUIRE(mo.ok);

    const auto& sH = *mm.model->suspended_space();
    // representatives keep their original labels' positions: find classes by
    // degree and by pairing through the inclusion's phi^1
    GradedMap<K> p1 = mm.inclusion.phi1_map();
    auto class_of = [&](const std::string& label) {
        int target = A->suspended_space()->index_of(label);
        for (int i = 0; i < sH.dim(); ++i)
            if (!p1.column(i).coeff(target).is_zero()) return i;
        throw std::runtime_error("class not found: " + label);
    };
    Word xyz = {class_of("x"), class_of("y"), class_of("z")};
    Vec m3 = mm.model->mu(xyz);
    REQUIRE_FALSE(m3.is_zero());
    REQUIRE_FALSE(m3.coeff(class_of("m")).is_zero());
    // degree forces everything else on this word to vanish
    REQUIRE(m3.nnz() == 1);
}
