#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "grading.hpp"

namespace ainfty {

/// Sparse vector over a fixed basis, entries sorted by index.
template <class K> class SparseVec {
  public:
    using Entry = std::pair<int, K>;

    SparseVec() = default;
    explicit SparseVec(std::vector<Entry> entries) : e_(std::move(entries)) { normalize(); }
    static SparseVec unit(int i, K c = K(1)) { return SparseVec({{i, std::move(c)}}); }

    const std::vector<Entry>& entries() const { return e_; }
    bool is_zero() const { return e_.empty(); }
    std::size_t nnz() const { return e_.size(); }

    K coeff(int i) const
    {
        auto it = std::lower_bound(e_.begin(), e_.end(), i,
                                   [](const Entry& a, int b) { return a.first < b; });
        if (it != e_.end() && it->first == i) return it->second;
        return K(0);
    }
    int lead_index() const { return e_.empty() ? -1 : e_.front().first; }
    const K& lead_coeff() const { return e_.front().second; }

    void add_term(int i, const K& c)
    {
        if (c.is_zero()) return;
        auto it = std::lower_bound(e_.begin(), e_.end(), i,
                                   [](const Entry& a, int b) { return a.first < b; });
        if (it != e_.end() && it->first == i) {
            it->second += c;
            if (it->second.is_zero()) e_.erase(it);
        }
        else {
            e_.insert(it, {i, c});
        }
    }

    SparseVec& axpy(const K& c, const SparseVec& o)
    {
        if (c.is_zero() || o.e_.empty()) return *this;
        std::vector<Entry> out;
        out.reserve(e_.size() + o.e_.size());
        std::size_t i = 0, j = 0;
        while (i < e_.size() || j < o.e_.size()) {
            if (j == o.e_.size() || (i < e_.size() && e_[i].first < o.e_[j].first)) {
                out.push_back(e_[i++]);
            }
            else if (i == e_.size() || o.e_[j].first < e_[i].first) {
                K v = c * o.e_[j].second;
                if (!v.is_zero()) out.push_back({o.e_[j].first, std::move(v)});
                ++j;
            }
            else {
                K v = e_[i].second + c * o.e_[j].second;
                if (!v.is_zero()) out.push_back({e_[i].first, std::move(v)});
                ++i, ++j;
            }
        }
        e_ = std::move(out);
        return *this;
    }

    SparseVec& operator+=(const SparseVec& o) { return axpy(K(1), o); }
    SparseVec& operator-=(const SparseVec& o) { return axpy(K(-1), o); }
    SparseVec& operator*=(const K& c)
    {
        if (c.is_zero()) {
            e_.clear();
            return *this;
        }
        for (auto& [i, v] : e_) v *= c;
        return *this;
    }
    friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
    friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
    friend SparseVec operator*(const K& c, SparseVec v) { return v *= c; }
    friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.e_ == b.e_; }

  private:
    void normalize()
    {
        std::sort(e_.begin(), e_.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        std::vector<Entry> out;
        for (auto& [i, v] : e_) {
            if (!out.empty() && out.back().first == i)
                out.back().second += v;
            else
                out.push_back({i, v});
        }
        std::erase_if(out, [](const Entry& p) { return p.second.is_zero(); });
        e_ = std::move(out);
    }
    std::vector<Entry> e_;
};

struct BasisElement {
    std::string label;
    int degree = 0;
};

/// Finite-support graded vector space with a chosen, ordered basis.
class GradedSpace {
  public:
    GradedSpace() : grading_(Grading::Z) {}
    explicit GradedSpace(Grading g) : grading_(g) {}
    GradedSpace(Grading g, std::vector<BasisElement> basis) : grading_(g)
    {
        for (auto& b : basis) add_basis_element(b.label, b.degree);
    }

    Grading grading() const { return grading_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<BasisElement>& basis() const { return basis_; }
    const BasisElement& at(int i) const { return basis_.at(i); }
    int degree_of(int i) const { return reduce_degree(grading_, basis_.at(i).degree); }

    int add_basis_element(const std::string& label, int degree)
    {
        int d = reduce_degree(grading_, degree);
        if (index_.count(label))
            throw ArgumentError("duplicate basis label: " + label);
        index_[label] = dim();
        basis_.push_back({label, d});
        dims_[d] += 1;
        return dim() - 1;
    }

    int index_of(const std::string& label) const
    {
        auto it = index_.find(label);
        if (it == index_.end()) throw ArgumentError("unknown basis label: " + label);
        return it->second;
    }
    bool has_label(const std::string& label) const { return index_.count(label) != 0; }

    const std::map<int, int>& dims() const { return dims_; }
    int dim_in_degree(int d) const
    {
        auto it = dims_.find(reduce_degree(grading_, d));
        return it == dims_.end() ? 0 : it->second;
    }

    std::vector<int> indices_in_degree(int d) const
    {
        std::vector<int> out;
        int dd = reduce_degree(grading_, d);
        for (int i = 0; i < dim(); ++i)
            if (degree_of(i) == dd) out.push_back(i);
        return out;
    }

    friend bool operator==(const GradedSpace& a, const GradedSpace& b)
    {
        if (a.grading_ != b.grading_ || a.basis_.size() != b.basis_.size()) return false;
        for (std::size_t i = 0; i < a.basis_.size(); ++i)
            if (a.basis_[i].label != b.basis_[i].label ||
                a.basis_[i].degree != b.basis_[i].degree)
                return false;
        return true;
    }

  private:
    Grading grading_;
    std::vector<BasisElement> basis_;
    std::map<std::string, int> index_;
    std::map<int, int> dims_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

inline SpacePtr make_space(Grading g, std::vector<BasisElement> basis)
{
    return std::make_shared<GradedSpace>(g, std::move(basis));
}

/// Suspension sV: same underlying vectors, degrees shifted down by one
/// (display convention V^{*+1}).
inline SpacePtr suspend_space(const SpacePtr& v)
{
    auto out = std::make_shared<GradedSpace>(v->grading());
    for (const auto& b : v->basis()) out->add_basis_element(b.label, b.degree - 1);
    return out;
}

/// Tensor product space with v-major basis ordering and "a(x)b" labels.
inline SpacePtr tensor_space(const SpacePtr& v, const SpacePtr& w)
{
    if (v->grading() != w->grading()) throw SignatureError("tensor of mixed gradings");
    auto out = std::make_shared<GradedSpace>(v->grading());
    for (const auto& a : v->basis())
        for (const auto& b : w->basis())
            out->add_basis_element(a.label + "(x)" + b.label, a.degree + b.degree);
    return out;
}

/// Homogeneous-by-blocks graded linear map, stored column-sparse.
template <class K> class GradedMap {
  public:
    GradedMap() = default;
    GradedMap(SpacePtr source, SpacePtr target, int degree)
        : src_(std::move(source)), dst_(std::move(target)), deg_(degree),
          cols_(src_->dim())
    {
        if (src_->grading() != dst_->grading())
            throw SignatureError("map between mixed gradings");
    }

    static GradedMap identity(const SpacePtr& v)
    {
        GradedMap f(v, v, 0);
        for (int i = 0; i < v->dim(); ++i) f.cols_[i] = SparseVec<K>::unit(i);
        return f;
    }
    static GradedMap zero(const SpacePtr& v, const SpacePtr& w, int degree)
    {
        return GradedMap(v, w, degree);
    }

    const SpacePtr& source() const { return src_; }
    const SpacePtr& target() const { return dst_; }
    int degree() const { return deg_; }
    Grading grading() const { return src_->grading(); }

    void set_column(int i, SparseVec<K> v)
    {
        for (const auto& [j, c] : v.entries())
            if (!degrees_equal(grading(), dst_->at(j).degree, src_->at(i).degree + deg_))
                throw ArgumentError("block outside degree " + std::to_string(src_->at(i).degree + deg_) +
                                    ": " + dst_->at(j).label);
        cols_.at(i) = std::move(v);
    }
    void add_entry(const std::string& from, const std::string& to, const K& c)
    {
        int i = src_->index_of(from);
        SparseVec<K> col = cols_.at(i);
        col.add_term(dst_->index_of(to), c);
        set_column(i, std::move(col));
    }
    const SparseVec<K>& column(int i) const { return cols_.at(i); }

    SparseVec<K> apply(const SparseVec<K>& v) const
    {
        SparseVec<K> out;
        for (const auto& [i, c] : v.entries()) out.axpy(c, cols_.at(i));
        return out;
    }

    bool is_zero() const
    {
        for (const auto& c : cols_)
            if (!c.is_zero()) return false;
        return true;
    }

    GradedMap& operator+=(const GradedMap& o)
    {
        require_same_shape(o);
        for (int i = 0; i < src_->dim(); ++i) cols_[i] += o.cols_[i];
        return *this;
    }
    GradedMap& operator-=(const GradedMap& o)
    {
        require_same_shape(o);
        for (int i = 0; i < src_->dim(); ++i) cols_[i] -= o.cols_[i];
        return *this;
    }
    GradedMap& operator*=(const K& c)
    {
        for (auto& col : cols_) col *= c;
        return *this;
    }
    friend GradedMap operator+(GradedMap a, const GradedMap& b) { return a += b; }
    friend GradedMap operator-(GradedMap a, const GradedMap& b) { return a -= b; }
    friend GradedMap operator*(const K& c, GradedMap f) { return f *= c; }

    friend bool operator==(const GradedMap& a, const GradedMap& b)
    {
        if (!(*a.src_ == *b.src_) || !(*a.dst_ == *b.dst_)) return false;
        if (!degrees_equal(a.grading(), a.deg_, b.deg_)) return a.is_zero() && b.is_zero();
        return a.cols_ == b.cols_;
    }

  private:
    void require_same_shape(const GradedMap& o) const
    {
        if (!(*src_ == *o.src_) || !(*dst_ == *o.dst_) ||
            !degrees_equal(grading(), deg_, o.deg_))
            throw SignatureError("map shape mismatch");
    }
    SpacePtr src_, dst_;
    int deg_ = 0;
    std::vector<SparseVec<K>> cols_;
};

/// g after f, degree adds in the grading group.
template <class K> GradedMap<K> compose(const GradedMap<K>& g, const GradedMap<K>& f)
{
    if (!(*f.target() == *g.source())) throw SignatureError("compose: inner spaces differ");
    GradedMap<K> out(f.source(), g.target(), f.degree() + g.degree());
    for (int i = 0; i < f.source()->dim(); ++i) out.set_column(i, g.apply(f.column(i)));
    return out;
}

/// (f (x) g)(v (x) w) = (-1)^{|g||v|} f(v) (x) g(w).
template <class K>
GradedMap<K> tensor_maps(const GradedMap<K>& f, const GradedMap<K>& g)
{
    auto src = tensor_space(f.source(), g.source());
    auto dst = tensor_space(f.target(), g.target());
    GradedMap<K> out(src, dst, f.degree() + g.degree());
    int gn = g.source()->dim(), gm = g.target()->dim();
    for (int i = 0; i < f.source()->dim(); ++i) {
        K sgn = sign_pow<K>(g.degree() * f.source()->at(i).degree);
        for (int j = 0; j < gn; ++j) {
            SparseVec<K> col;
            for (const auto& [fi, fc] : f.column(i).entries())
                for (const auto& [gj, gc] : g.column(j).entries())
                    col.add_term(fi * gm + gj, sgn * fc * gc);
            out.set_column(i * gn + j, std::move(col));
        }
    }
    return out;
}

/// The braiding gamma_{V,W}(v (x) w) = (-1)^{|v||w|} w (x) v.
template <class K> GradedMap<K> koszul_swap(const SpacePtr& v, const SpacePtr& w)
{
    auto src = tensor_space(v, w);
    auto dst = tensor_space(w, v);
    GradedMap<K> out(src, dst, 0);
    int wn = w->dim(), vn = v->dim();
    for (int i = 0; i < vn; ++i)
        for (int j = 0; j < wn; ++j)
            out.set_column(i * wn + j,
                           SparseVec<K>::unit(j * vn + i,
                                              sign_pow<K>(v->at(i).degree * w->at(j).degree)));
    return out;
}

/// s(f) = (-1)^{|f|} f, acting (sV) -> (sW).
template <class K> GradedMap<K> suspend_map(const GradedMap<K>& f)
{
    GradedMap<K> out(suspend_space(f.source()), suspend_space(f.target()), f.degree());
    for (int i = 0; i < f.source()->dim(); ++i) {
        SparseVec<K> col = f.column(i);
        col *= sign_pow<K>(f.degree());
        out.set_column(i, std::move(col));
    }
    return out;
}

/// sigma : V -> sV, v |-> (-1)^{|v|} v. Degree -1 on displayed degrees.
template <class K> GradedMap<K> sigma_map(const SpacePtr& v)
{
    GradedMap<K> out(v, suspend_space(v), -1);
    for (int i = 0; i < v->dim(); ++i)
        out.set_column(i, SparseVec<K>::unit(i, sign_pow<K>(v->at(i).degree)));
    return out;
}

template <class K> GradedMap<K> sigma_inverse_map(const SpacePtr& sv)
{
    auto v = std::make_shared<GradedSpace>(sv->grading());
    for (const auto& b : sv->basis()) v->add_basis_element(b.label, b.degree + 1);
    GradedMap<K> out(sv, v, 1);
    for (int i = 0; i < sv->dim(); ++i)
        out.set_column(i, SparseVec<K>::unit(i, sign_pow<K>(sv->at(i).degree + 1)));
    return out;
}

/// s_tensor(f) = sigma^{(x)m} o f o (sigma^{-1})^{(x)n} for f : V^{(x)n} -> W^{(x)m}.
/// Callers supply the factor lists of source and target.
template <class K>
GradedMap<K> suspend_tensor(const GradedMap<K>& f, const std::vector<SpacePtr>& src_factors,
                            const std::vector<SpacePtr>& dst_factors)
{
    auto fold_sigma_inv = [&](const std::vector<SpacePtr>& factors) {
        // (sigma^{-1})^{(x)n} on the suspended factors
        GradedMap<K> acc;
        bool first = true;
        for (const auto& fac : factors) {
            GradedMap<K> si = sigma_inverse_map<K>(suspend_space(fac));
            acc = first ? si : tensor_maps(acc, si);
            first = false;
        }
        return acc;
    };
    auto fold_sigma = [&](const std::vector<SpacePtr>& factors) {
        GradedMap<K> acc;
        bool first = true;
        for (const auto& fac : factors) {
            GradedMap<K> s = sigma_map<K>(fac);
            acc = first ? s : tensor_maps(acc, s);
            first = false;
        }
        return acc;
    };
    GradedMap<K> pre = fold_sigma_inv(src_factors);
    GradedMap<K> post = fold_sigma(dst_factors);
    return compose(post, compose(f, pre));
}

} // namespace ainfty
