#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "ainfty/graded.hpp"

using namespace ainfty;
using K = Rational;
using Vec = SparseVec<K>;
using Map = GradedMap<K>;

namespace {

SpacePtr two_dim()
{
    return make_space(Grading::Z, {{"u", 0}, {"v", 1}});
}

Map random_map(std::mt19937& rng, const SpacePtr& src, const SpacePtr& dst, int degree)
{
    std::uniform_int_distribution<int> coef(-3, 3);
    Map f(src, dst, degree);
    for (int i = 0; i < src->dim(); ++i) {
        Vec col;
        for (int j = 0; j < dst->dim(); ++j)
            if (dst->at(j).degree == src->at(i).degree + degree)
                col.add_term(j, K(coef(rng)));
        f.set_column(i, std::move(col));
    }
    return f;
}

} // namespace

TEST_CASE("compose: identity and zero")
{
    auto v = two_dim();
    std::mt19937 rng(11);
    Map f = random_map(rng, v, v, 0);
    Map id = Map::identity(v);
    REQUIRE(compose(id, f) == f);
    REQUIRE(compose(f, id) == f);
    Map z = Map::zero(v, v, 0);
    REQUIRE(compose(f, z).is_zero());
}

TEST_CASE("compose: 1x1 scalar blocks multiply")
{
    auto l = make_space(Grading::Z, {{"x", 0}});
    Map f(l, l, 0), g(l, l, 0);
    f.set_column(0, Vec::unit(0, K(3)));
    g.set_column(0, Vec::unit(0, K(2)));
    REQUIRE(compose(g, f).column(0).coeff(0) == K(6));
}

TEST_CASE("compose degree adds, mismatched spaces rejected")
{
    auto v = two_dim();
    auto w = make_space(Grading::Z, {{"a", 0}});
    std::mt19937 rng(5);
    Map f = random_map(rng, v, v, 1);
    Map g = random_map(rng, v, v, 1);
    REQUIRE(compose(g, f).degree() == 2);
    Map h(w, w, 0);
    REQUIRE_THROWS_AS(compose(h, f), SignatureError);
}

TEST_CASE("compose is associative on random maps")
{
    auto v = two_dim();
    std::mt19937 rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        Map f = random_map(rng, v, v, 0);
        Map g = random_map(rng, v, v, 1);
        Map h = random_map(rng, v, v, 0);
        REQUIRE(compose(h, compose(g, f)) == compose(compose(h, g), f));
    }
}

TEST_CASE("tensor_maps implements the Koszul sign")
{
    // |g| = 1, |v| = 1: (f (x) g)(v (x) w) = -f(v) (x) g(w)
    auto v = make_space(Grading::Z, {{"v", 1}});
    auto w = make_space(Grading::Z, {{"w", 0}});
    Map f(v, v, 0);
    f.set_column(0, Vec::unit(0));
    Map g(w, w, 1);
    // g degree 1 but w one-dimensional in degree 0: represent g on a bigger space
    auto w2 = make_space(Grading::Z, {{"w0", 0}, {"w1", 1}});
    Map g2(w2, w2, 1);
    g2.set_column(0, Vec::unit(1));
    Map fg = tensor_maps(f, g2);
    // basis of v (x) w2 is v(x)w0, v(x)w1
    REQUIRE(fg.column(0).coeff(1) == K(-1));

    // |g| = 0: no sign
    Map id2 = Map::identity(w2);
    Map fid = tensor_maps(f, id2);
    REQUIRE(fid.column(0).coeff(0) == K(1));

    // id (x) id = id
    Map idid = tensor_maps(Map::identity(v), id2);
    REQUIRE(idid == Map::identity(tensor_space(v, w2)));
}

TEST_CASE("tensor interchange law with Koszul sign")
{
    // (f (x) g) o (f' (x) g') = (-1)^{|g||f'|} (f o f') (x) (g o g')
    auto v = two_dim();
    std::mt19937 rng(7);
    for (int t = 0; t < 20; ++t) {
        for (int dg : {0, 1}) {
            for (int dfp : {0, 1}) {
                Map f = random_map(rng, v, v, 0);
                Map g = random_map(rng, v, v, dg);
                Map fp = random_map(rng, v, v, dfp);
                Map gp = random_map(rng, v, v, 0);
                Map lhs = compose(tensor_maps(f, g), tensor_maps(fp, gp));
                Map rhs = tensor_maps(compose(f, fp), compose(g, gp));
                rhs *= sign_pow<K>(dg * dfp);
                REQUIRE(lhs == rhs);
            }
        }
    }
}

TEST_CASE("koszul_swap signs and involutivity")
{
    auto v = make_space(Grading::Z, {{"a", 1}});
    auto w = make_space(Grading::Z, {{"b", 1}, {"c", 0}});
    Map g = koszul_swap<K>(v, w);
    // |a| = |b| = 1 -> sign -1
    REQUIRE(g.column(0).coeff(0) == K(-1));
    // |c| = 0 -> no sign; target index of a(x)c in w(x)v ordering is c*1+... = 1
    REQUIRE(g.column(1).coeff(1) == K(1));
    Map back = koszul_swap<K>(w, v);
    REQUIRE(compose(back, g) == Map::identity(tensor_space(v, w)));
}

TEST_CASE("koszul_swap naturality")
{
    auto v = two_dim();
    std::mt19937 rng(13);
    for (int t = 0; t < 10; ++t) {
        for (int df : {0, 1}) {
            for (int dg : {0, 1}) {
                Map f = random_map(rng, v, v, df);
                Map g = random_map(rng, v, v, dg);
                Map gamma = koszul_swap<K>(v, v);
                // (g (x) f) o gamma = (-1)^{|f||g|} gamma o (f (x) g)
                Map lhs = compose(tensor_maps(g, f), gamma);
                Map rhs = compose(gamma, tensor_maps(f, g));
                rhs *= sign_pow<K>(df * dg);
                REQUIRE(lhs == rhs);
            }
        }
    }
}

TEST_CASE("suspension of spaces and maps")
{
    auto v = two_dim();
    auto sv = suspend_space(v);
    REQUIRE(sv->at(0).degree == -1);
    REQUIRE(sv->at(1).degree == 0);

    std::mt19937 rng(3);
    Map f0 = random_map(rng, v, v, 0);
    REQUIRE(suspend_map(f0) == [&] {
        Map g(sv, sv, 0);
        for (int i = 0; i < v->dim(); ++i) g.set_column(i, f0.column(i));
        return g;
    }());
    Map f1 = random_map(rng, v, v, 1);
    Map sf1 = suspend_map(f1);
    for (int i = 0; i < v->dim(); ++i) {
        Vec want = f1.column(i);
        want *= K(-1);
        REQUIRE(sf1.column(i) == want);
    }
}

TEST_CASE("sigma and s_tensor on identity")
{
    auto v = two_dim();
    Map s = sigma_map<K>(v);
    Map si = sigma_inverse_map<K>(suspend_space(v));
    REQUIRE(compose(si, s) == Map::identity(v));
    Map idv = Map::identity(v);
    Map st = suspend_tensor(idv, {v}, {v});
    REQUIRE(st == Map::identity(suspend_space(v)));
}

TEST_CASE("Z/2 grading reduces degrees")
{
    auto v = make_space(Grading::Z2, {{"a", 3}, {"b", 0}});
    REQUIRE(v->degree_of(0) == 1);
    REQUIRE(v->dim_in_degree(5) == 1);
}
