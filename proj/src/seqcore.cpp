#include "hydrodetect/seqcore.hpp"

#include <cmath>
#include <stdexcept>

namespace hydro {

void CoeffSeq::set(int k, Complex v) {
    if (data_.empty()) {
        lo_ = k;
        data_.assign(1, v);
        return;
    }
    if (k < lo_) {
        data_.insert(data_.begin(), static_cast<size_t>(lo_ - k), Complex{0.0, 0.0});
        lo_ = k;
    } else if (k > hi()) {
        data_.resize(static_cast<size_t>(k - lo_ + 1), Complex{0.0, 0.0});
    }
    data_[static_cast<size_t>(k - lo_)] = v;
}

std::vector<int> CoeffSeq::support() const {
    std::vector<int> idx;
    for (size_t i = 0; i < data_.size(); ++i)
        if (data_[i] != Complex{0.0, 0.0}) idx.push_back(lo_ + static_cast<int>(i));
    return idx;
}

double CoeffSeq::l1_norm() const {
    double s = 0.0;
    for (const auto &v : data_) s += std::abs(v);
    return s;
}

CoeffSeq CoeffSeq::pruned(double eps) const {
    CoeffSeq out;
    for (size_t i = 0; i < data_.size(); ++i)
        if (std::abs(data_[i]) > eps) out.set(lo_ + static_cast<int>(i), data_[i]);
    return out;
}

CoeffSeq conv(const CoeffSeq &a, const CoeffSeq &b) {
    if (a.empty() || b.empty()) return {};
    const int lo = a.lo() + b.lo();
    const int hi = a.hi() + b.hi();
    std::vector<Complex> out(static_cast<size_t>(hi - lo + 1), Complex{0.0, 0.0});
    for (int i = a.lo(); i <= a.hi(); ++i) {
        const Complex ai = a.at(i);
        if (ai == Complex{0.0, 0.0}) continue;
        for (int j = b.lo(); j <= b.hi(); ++j)
            out[static_cast<size_t>(i + j - lo)] += ai * b.at(j);
    }
    return CoeffSeq(lo, std::move(out));
}

CoeffSeq conv_power(const CoeffSeq &c, int k) {
    if (k < 0) throw std::invalid_argument("conv_power: negative exponent");
    CoeffSeq out = CoeffSeq::delta();
    for (int i = 0; i < k; ++i) out = conv(out, c);
    return out;
}

CoeffSeq reflect(const CoeffSeq &c) {
    if (c.empty()) return {};
    const int lo = -c.hi();
    std::vector<Complex> out(static_cast<size_t>(c.hi() - c.lo() + 1));
    for (int k = c.lo(); k <= c.hi(); ++k)
        out[static_cast<size_t>(-k - lo)] = std::conj(c.at(k));
    return CoeffSeq(lo, std::move(out));
}

} // namespace hydro
