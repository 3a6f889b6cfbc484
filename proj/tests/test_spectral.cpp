#include <catch2/catch_amalgamated.hpp>

#include "ainfty/spectral.hpp"

using namespace ainfty;
using K = Rational;
using Vec = SparseVec<K>;

namespace {

// Independent dense oracle for the page formulas, used to freeze expected
// dims on small instances.
struct DenseOracle {
    const FilteredComplex<K>& F;
    int N;
    explicit DenseOracle(const FilteredComplex<K>& f)
        : F(f), N(f.total().space()->dim())
    {
    }

    static int rank(std::vector<std::vector<K>> rows)
    {
        int r = 0;
        std::size_t cols = rows.empty() ? 0 : rows[0].size();
        for (std::size_t c = 0; c < cols; ++c) {
            int piv = -1;
            for (std::size_t i = r; i < rows.size(); ++i)
                if (!rows[i][c].is_zero()) {
                    piv = static_cast<int>(i);
                    break;
                }
            if (piv < 0) continue;
            std::swap(rows[r], rows[piv]);
            K inv = rows[r][c].inv();
            for (auto& x : rows[r]) x *= inv;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (static_cast<int>(i) == r) continue;
                K f = rows[i][c];
                if (f.is_zero()) continue;
                for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
            }
            ++r;
            if (r == static_cast<int>(rows.size())) break;
        }
        return r;
    }

    std::vector<K> dense(const Vec& v) const
    {
        std::vector<K> out(N, K(0));
        for (const auto& [i, c] : v.entries()) out[i] = c;
        return out;
    }

    // basis of {c in piece(k), deg : dc in piece(k-q)} by brute enumeration of
    // coefficient vectors over the slice, via dense kernel computation
    std::vector<std::vector<K>> z_set(int k, int q, int deg) const
    {
        std::vector<int> idx;
        for (int i : F.total().space()->indices_in_degree(deg))
            if (F.piece(k).count(i)) idx.push_back(i);
        // rows of the constraint matrix: forbidden coordinates of d(column)
        std::vector<std::vector<K>> cols;
        for (int i : idx) {
            std::vector<K> row(N, K(0));
            for (const auto& [j, c] : F.total().d().column(i).entries())
                if (!F.piece(k - q).count(j)) row[j] = c;
            cols.push_back(row);
        }
        // kernel by appending identity and reducing (dense, test-only)
        std::size_t n = idx.size();
        std::vector<std::vector<K>> aug(n, std::vector<K>(N + n, K(0)));
        for (std::size_t i = 0; i < n; ++i) {
            for (int j = 0; j < N; ++j) aug[i][j] = cols[i][j];
            aug[i][N + i] = K(1);
        }
        // eliminate on the first N columns
        int r = 0;
        for (int c = 0; c < N && r < static_cast<int>(n); ++c) {
            int piv = -1;
            for (std::size_t i = r; i < n; ++i)
                if (!aug[i][c].is_zero()) {
                    piv = static_cast<int>(i);
                    break;
                }
            if (piv < 0) continue;
            std::swap(aug[r], aug[piv]);
            K inv = aug[r][c].inv();
            for (auto& x : aug[r]) x *= inv;
            for (std::size_t i = 0; i < n; ++i) {
                if (static_cast<int>(i) == r) continue;
                K f = aug[i][c];
                if (f.is_zero()) continue;
                for (std::size_t j = 0; j < aug[i].size(); ++j) aug[i][j] -= f * aug[r][j];
            }
            ++r;
        }
        std::vector<std::vector<K>> out;
        for (std::size_t i = r; i < n; ++i) {
            std::vector<K> v(N, K(0));
            for (std::size_t j = 0; j < n; ++j)
                if (!aug[i][N + j].is_zero())
                    for (int t = 0; t < 1; ++t) v[idx[j]] += aug[i][N + j];
            out.push_back(v);
        }
        return out;
    }

    int page_dim(int k, int q, int deg) const
    {
        auto z = z_set(k, q, deg);
        auto bsrc = z_set(k + q - 1, q - 1, deg - 1);
        std::vector<std::vector<K>> b;
        for (const auto& v : bsrc) {
            Vec sv;
            for (int i = 0; i < N; ++i)
                if (!v[i].is_zero()) sv.add_term(i, v[i]);
            b.push_back(dense(F.total().d().apply(sv)));
        }
        std::vector<std::vector<K>> below;
        for (int i : F.total().space()->indices_in_degree(deg))
            if (F.piece(k - 1).count(i)) {
                std::vector<K> e(N, K(0));
                e[i] = K(1);
                below.push_back(e);
            }
        auto zb = z;
        zb.insert(zb.end(), below.begin(), below.end());
        auto bb = b;
        bb.insert(bb.end(), below.begin(), below.end());
        return rank(zb) - rank(bb);
    }
};

FilteredComplex<K> acyclic_two_step()
{
    // x(0), y(1), u(0), v(1); d(x) = y, d(u) = v; G0 = {y}, G1 = everything
    auto s = make_space(Grading::Z, {{"x", 0}, {"y", 1}, {"u", 0}, {"v", 1}});
    GradedMap<K> d(s, s, 1);
    d.set_column(0, Vec::unit(1));
    d.set_column(2, Vec::unit(3));
    Complex<K> c(s, d);
    return FilteredComplex<K>(c, -1, 1, {{}, {1}, {0, 1, 2, 3}});
}

} // namespace

TEST_CASE("trivial filtration degenerates at page 1")
{
    auto s = make_space(Grading::Z, {{"a", 0}, {"b", 1}});
    auto c = Complex<K>::with_zero_differential(s);
    FilteredComplex<K> f(c, -1, 0, {{}, {0, 1}});
    auto rep = degeneration_report(f);
    REQUIRE(rep.s == 0);
    REQUIRE(rep.certified);
    auto pages = spectral_pages(f, 3);
    REQUIRE(pages[0].total_dim() == 2);
    REQUIRE(pages[0] == pages[2]);
}

TEST_CASE("acyclic two-step: E1 nontrivial, E2 = 0, s = 1")
{
    FilteredComplex<K> f = acyclic_two_step();
    SpectralPage e1 = spectral_page(f, 1);
    SpectralPage e2 = spectral_page(f, 2);
    REQUIRE(e1.total_dim() == 2);
    REQUIRE(e1.dims.at({0, 1}) == 1);
    REQUIRE(e1.dims.at({1, 0}) == 1);
    REQUIRE(e2.total_dim() == 0);
    REQUIRE(degeneration_page(f) == 1);

    // cross-check against the brute-force oracle on every entry
    DenseOracle oracle(f);
    for (int q = 1; q <= 3; ++q) {
        SpectralPage page = spectral_page(f, q);
        for (int k = 0; k <= 1; ++k)
            for (int deg = 0; deg <= 1; ++deg) {
                int want = oracle.page_dim(k, q, deg);
                auto it = page.dims.find({k, deg});
                int got = it == page.dims.end() ? 0 : it->second;
                REQUIRE(got == want);
            }
    }
}

TEST_CASE("strictly respected filtration: E1 is associated graded cohomology")
{
    // d stays in the bottom piece
    auto s = make_space(Grading::Z, {{"a", 0}, {"b", 1}, {"c", 0}});
    GradedMap<K> d(s, s, 1);
    d.set_column(0, Vec::unit(1));
    Complex<K> cx(s, d);
    FilteredComplex<K> f(cx, -1, 1, {{}, {0, 1}, {0, 1, 2}});
    SpectralPage e1 = spectral_page(f, 1);
    // gr_0 = {a,b} acyclic, gr_1 = {c} survives
    REQUIRE(e1.total_dim() == 1);
    REQUIRE(e1.dims.at({1, 0}) == 1);
    REQUIRE(degeneration_page(f) == 0);
}

TEST_CASE("page dims are monotone and E_infty matches the induced jumps")
{
    FilteredComplex<K> f = acyclic_two_step();
    int prev = -1;
    for (int q = 1; q <= 4; ++q) {
        int tot = spectral_page(f, q).total_dim();
        if (prev >= 0) REQUIRE(tot <= prev);
        prev = tot;
    }
    auto inf = infinity_page_dims(f);
    auto jumps = induced_filtration_jumps(f);
    REQUIRE(inf == jumps);

    auto s = make_space(Grading::Z, {{"a", 0}, {"b", 1}, {"c", 0}});
    GradedMap<K> d(s, s, 1);
    d.set_column(0, Vec::unit(1));
    Complex<K> cx(s, d);
    FilteredComplex<K> g(cx, -1, 1, {{}, {0, 1}, {0, 1, 2}});
    REQUIRE(infinity_page_dims(g) == induced_filtration_jumps(g));
}

TEST_CASE("spectral_pages rejects max_page < 1")
{
    FilteredComplex<K> f = acyclic_two_step();
    REQUIRE_THROWS_AS(spectral_pages(f, 0), ArgumentError);
}
