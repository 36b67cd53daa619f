#pragma once

#include <complex>
#include <map>
#include <vector>

namespace hydro {

using Complex = std::complex<double>;

// Finitely supported bilateral sequence (c_k)_{k in Z} of complex scalars.
// Storage is a dense block over [lo, lo+size); indexed access behaves like a
// sparse map: entries outside the block read as zero. Values are immutable
// after construction in normal use; copies are cheap enough to share freely.
class CoeffSeq {
  public:
    CoeffSeq() = default;

    CoeffSeq(int lo, std::vector<Complex> data) : lo_(lo), data_(std::move(data)) {}

    static CoeffSeq delta() { return CoeffSeq(0, {1.0}); }

    static CoeffSeq from_entries(const std::map<int, Complex> &entries) {
        CoeffSeq s;
        for (const auto &[k, v] : entries) s.set(k, v);
        return s;
    }

    Complex at(int k) const {
        if (k < lo_ || k >= lo_ + static_cast<int>(data_.size())) return {0.0, 0.0};
        return data_[static_cast<size_t>(k - lo_)];
    }

    // Extends the block as needed. Exact zeros written this way are retained.
    void set(int k, Complex v);

    bool empty() const { return data_.empty(); }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(data_.size()) - 1; }

    // Indices with nonzero entries, ascending.
    std::vector<int> support() const;

    double l1_norm() const;

    // Drops entries with |c_k| <= eps. Arithmetic never prunes implicitly.
    CoeffSeq pruned(double eps) const;

  private:
    int lo_ = 0;
    std::vector<Complex> data_;
};

// (a*b)_k = sum_j a_{k-j} b_j
CoeffSeq conv(const CoeffSeq &a, const CoeffSeq &b);

// c^k under convolution; c^0 is the delta at index 0. Throws on k < 0.
CoeffSeq conv_power(const CoeffSeq &c, int k);

// reflect(c)_k = conj(c_{-k})
CoeffSeq reflect(const CoeffSeq &c);

} // namespace hydro
