#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "complex.hpp"

namespace ainfty {

/// Increasing filtration by subcomplexes, each given as a basis selection of
/// the total complex. Pieces are declared constant outside [lo, hi].
template <class K> class FilteredComplex {
  public:
    FilteredComplex() = default;
    FilteredComplex(Complex<K> total, int lo, int hi,
                    std::vector<std::set<int>> pieces, bool exact_window = true)
        : total_(std::move(total)), lo_(lo), hi_(hi), pieces_(std::move(pieces)),
          exact_window_(exact_window)
    {
        if (hi_ < lo_ || static_cast<int>(pieces_.size()) != hi_ - lo_ + 1)
            throw ArgumentError("filtration window does not match pieces");
        for (std::size_t n = 0; n + 1 < pieces_.size(); ++n)
            if (!std::includes(pieces_[n + 1].begin(), pieces_[n + 1].end(),
                               pieces_[n].begin(), pieces_[n].end()))
                throw ArgumentError("filtration pieces not nested at step " +
                                    std::to_string(lo_ + static_cast<int>(n)));
        for (std::size_t n = 0; n < pieces_.size(); ++n)
            for (int i : pieces_[n])
                for (const auto& [j, c] : total_.d().column(i).entries())
                    if (!pieces_[n].count(j))
                        throw ArgumentError("piece " + std::to_string(lo_ + static_cast<int>(n)) +
                                            " not closed under d");
    }

    const Complex<K>& total() const { return total_; }
    int window_lo() const { return lo_; }
    int window_hi() const { return hi_; }
    bool exact_window() const { return exact_window_; }

    const std::set<int>& piece(int n) const
    {
        if (n < lo_) return pieces_.front();
        if (n > hi_) return pieces_.back();
        return pieces_[n - lo_];
    }
    bool in_piece(int n, int i) const { return piece(n).count(i) != 0; }
    bool top_piece_is_total() const
    {
        return static_cast<int>(pieces_.back().size()) == total_.space()->dim();
    }

  private:
    Complex<K> total_;
    int lo_ = 0, hi_ = 0;
    std::vector<std::set<int>> pieces_;
    bool exact_window_ = true;
};

/// Z^k-indexed filtration within a finite window box, monotone under the
/// product order; constant outside the box (componentwise clamp).
template <class K> class LatticeFilteredComplex {
  public:
    LatticeFilteredComplex(Complex<K> total, int rank, int lo, int hi,
                           std::map<std::vector<int>, std::set<int>> pieces,
                           bool exact_window = true)
        : total_(std::move(total)), rank_(rank), lo_(lo), hi_(hi),
          pieces_(std::move(pieces)), exact_window_(exact_window)
    {
        if (rank_ < 0) throw ArgumentError("lattice rank must be >= 0");
        for (const auto& [alpha, sel] : pieces_) {
            if (static_cast<int>(alpha.size()) != rank_)
                throw ArgumentError("lattice index of wrong rank");
            for (const auto& [beta, sel2] : pieces_) {
                bool le = true;
                for (int i = 0; i < rank_; ++i)
                    if (alpha[i] > beta[i]) { le = false; break; }
                if (le && !std::includes(sel2.begin(), sel2.end(), sel.begin(), sel.end()))
                    throw ArgumentError("lattice pieces not monotone");
            }
        }
    }

    const Complex<K>& total() const { return total_; }
    int rank() const { return rank_; }
    int window_lo() const { return lo_; }
    int window_hi() const { return hi_; }
    bool exact_window() const { return exact_window_; }

    const std::set<int>& piece(std::vector<int> alpha) const
    {
        for (auto& a : alpha) a = std::min(std::max(a, lo_), hi_);
        auto it = pieces_.find(alpha);
        if (it == pieces_.end()) throw ArgumentError("missing lattice piece");
        return it->second;
    }
    const std::map<std::vector<int>, std::set<int>>& pieces() const { return pieces_; }

  private:
    Complex<K> total_;
    int rank_ = 1;
    int lo_ = 0, hi_ = 0;
    std::map<std::vector<int>, std::set<int>> pieces_;
    bool exact_window_ = true;
};

/// Tot : Ch^lf -> Ch^f. The paper's union of pieces over |alpha| = n is taken
/// as the span, which for basis-selection pieces is the selection union.
/// k = 0 gets the step filtration at n = 0.
template <class K> FilteredComplex<K> total_filtration(const LatticeFilteredComplex<K>& L)
{
    int k = L.rank();
    if (k == 0) {
        std::set<int> v0 = L.piece({});
        return FilteredComplex<K>(L.total(), -1, 0, {{}, v0}, L.exact_window());
    }
    int lo = k * L.window_lo(), hi = k * L.window_hi();
    std::vector<std::set<int>> pieces;
    for (int n = lo; n <= hi; ++n) {
        std::set<int> sel;
        // A clamped box point c is hit by some alpha with |alpha| = n iff
        // min|alpha| <= n <= max|alpha| over the clamp preimage of c.
        for (const auto& [c, csel] : L.pieces()) {
            long sum = 0;
            bool has_lo = false, has_hi = false;
            for (int ci : c) {
                sum += ci;
                has_lo |= (ci == L.window_lo());
                has_hi |= (ci == L.window_hi());
            }
            bool lower_ok = has_lo || sum <= n;
            bool upper_ok = has_hi || sum >= n;
            if (lower_ok && upper_ok) sel.insert(csel.begin(), csel.end());
        }
        pieces.push_back(std::move(sel));
    }
    return FilteredComplex<K>(L.total(), lo, hi, std::move(pieces), L.exact_window());
}

struct LengthSummary {
    // values are clamped to the window when the corresponding flag is set
    int l_plus = 0;
    int l_minus = 0;
    bool plus_unbounded = false;  // union of pieces misses H* (within window)
    bool minus_unbounded = false; // intersection of pieces meets H* (within window)
    bool vacuous = false;         // H* = 0
    bool certified = true;        // window declared exact and no sentinel hit
    int window_lo = 0;
    int window_hi = 0;

    /// max(|l_plus|, |l_minus|); 0 when vacuous; nullopt when unbounded.
    std::optional<int> length() const
    {
        if (vacuous) return 0;
        if (plus_unbounded || minus_unbounded) return std::nullopt;
        return std::max(std::abs(l_plus), std::abs(l_minus));
    }
};

/// Induced filtration on cohomology H*(V)_n = Z_n / (im d cap Z_n) and the
/// jump indices l+-. Sentinel conditions follow the declared window.
template <class K> LengthSummary lengths(const FilteredComplex<K>& F)
{
    const Complex<K>& C = F.total();
    LengthSummary out;
    out.window_lo = F.window_lo();
    out.window_hi = F.window_hi();

    int total_h = 0;
    std::map<int, int> hn; // n -> dim H_n
    for (int deg : C.degrees_present()) {
        std::vector<SparseVec<K>> Z = C.cocycles_in_degree(deg);
        std::vector<SparseVec<K>> B = C.boundaries_in_degree(deg);
        int rb = static_cast<int>(span_of(B).rank());
        total_h += static_cast<int>(Z.size()) == 0
                       ? 0
                       : rank_of_sum(Z, B) - rb;
        for (int n = F.window_lo(); n <= F.window_hi(); ++n) {
            const std::set<int>& sel = F.piece(n);
            auto zn = intersect_with_coordinates<K>(
                Z, [&](int i) { return sel.count(i) != 0; });
            hn[n] += rank_of_sum(zn, B) - rb;
        }
    }

    if (total_h == 0) {
        out.vacuous = true;
        out.l_plus = out.l_minus = F.window_lo();
        out.certified = F.exact_window();
        return out;
    }
    // l+ = inf{n : H_n = H*}
    out.l_plus = F.window_hi();
    if (hn[F.window_hi()] < total_h) {
        out.plus_unbounded = true;
    }
    else {
        for (int n = F.window_lo(); n <= F.window_hi(); ++n)
            if (hn[n] == total_h) {
                out.l_plus = n;
                break;
            }
    }
    // l- = inf{n : H_n != 0}; pieces constant below the window
    out.l_minus = F.window_lo();
    if (hn[F.window_lo()] > 0) {
        out.minus_unbounded = true;
    }
    else {
        for (int n = F.window_lo(); n <= F.window_hi(); ++n)
            if (hn[n] > 0) {
                out.l_minus = n;
                break;
            }
    }
    out.certified = F.exact_window() && !out.plus_unbounded && !out.minus_unbounded;
    return out;
}

} // namespace ainfty
