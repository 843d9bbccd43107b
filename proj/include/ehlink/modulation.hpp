// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "ehlink/common.hpp"

namespace ehlink {

// SER model parameters in the a*Q(sqrt(2 b gamma)) form, plus the square-QAM
// order used by the simulator. Defaults are the nearest-neighbour 4-QAM fit
//   SER ~= 4(1 - 1/sqrt(M)) Q(sqrt(3 gamma / (M-1)))  =>  a = 2, b = 0.5.
struct ModulationParams {
    double a = 2.0;
    double b = 0.5;
    int m_order = 4;
    int iota = 2; // log2(m_order)

    static ModulationParams square_qam(int m_order) {
        require(m_order >= 4, "ModulationParams: m_order must be >= 4");
        int iota = 0;
        while ((1 << iota) < m_order) ++iota;
        require((1 << iota) == m_order, "ModulationParams: m_order must be a power of 2");
        require(iota % 2 == 0, "ModulationParams: square QAM needs even log2(M)");
        ModulationParams p;
        p.m_order = m_order;
        p.iota = iota;
        const double sqm = std::sqrt(static_cast<double>(m_order));
        p.a = 4.0 * (1.0 - 1.0 / sqm);
        p.b = 1.5 / (m_order - 1.0);
        return p;
    }
    void validate() const {
        require(a > 0 && b > 0, "ModulationParams: a, b must be > 0");
        require((1 << iota) == m_order, "ModulationParams: iota must equal log2(m_order)");
    }
};

namespace modulation {

namespace detail {
inline int gray_encode(int x) { return x ^ (x >> 1); }
inline int gray_decode(int x) {
    int y = x;
    while (x >>= 1) y ^= x;
    return y;
}
} // namespace detail

// Gray-mapped square M-QAM with unit average symbol energy.
class QamMapper {
  public:
    explicit QamMapper(int m_order) {
        int iota = 0;
        while ((1 << iota) < m_order) ++iota;
        require((1 << iota) == m_order && iota % 2 == 0 && m_order >= 4,
                "QamMapper: m_order must be an even power of 2, >= 4");
        m_ = m_order;
        iota_ = iota;
        side_ = 1 << (iota / 2);
        scale_ = std::sqrt(1.5 / (m_ - 1.0));
        levels_.resize(side_);
        for (int i = 0; i < side_; ++i)
            levels_[i] = scale_ * (2.0 * i + 1.0 - side_);
    }

    int order() const { return m_; }
    int bits_per_symbol() const { return iota_; }

    // bits: iota entries, MSB-first; first half selects I, second half Q.
    cplx map(std::span<const int> bits) const {
        if (bits.size() != static_cast<std::size_t>(iota_))
            throw std::invalid_argument("QamMapper::map: bits length must equal iota");
        const int half = iota_ / 2;
        int bi = 0, bq = 0;
        for (int k = 0; k < half; ++k) bi = (bi << 1) | (bits[k] & 1);
        for (int k = half; k < iota_; ++k) bq = (bq << 1) | (bits[k] & 1);
        return {levels_[detail::gray_decode(bi)], levels_[detail::gray_decode(bq)]};
    }

    // Minimum-distance hard decision, axis-separable on the square grid.
    void demap(cplx y, std::span<int> bits) const {
        if (bits.size() != static_cast<std::size_t>(iota_))
            throw std::invalid_argument("QamMapper::demap: bits length must equal iota");
        const int half = iota_ / 2;
        const int gi = detail::gray_encode(nearest_level(y.real()));
        const int gq = detail::gray_encode(nearest_level(y.imag()));
        for (int k = 0; k < half; ++k) bits[k] = (gi >> (half - 1 - k)) & 1;
        for (int k = 0; k < half; ++k) bits[half + k] = (gq >> (half - 1 - k)) & 1;
    }

    int nearest_level(double amp) const {
        int i = static_cast<int>(std::lround((amp / scale_ - 1.0 + side_) / 2.0));
        return std::min(std::max(i, 0), side_ - 1);
    }

  private:
    int m_ = 4, iota_ = 2, side_ = 2;
    double scale_ = 1.0;
    std::vector<double> levels_;
};

// Matched-filter MRC combination; with equal per-branch noise this maximizes
// the post-combining SNR at sum of branch SNRs.
inline cplx mrc_combine(std::span<const cplx> received, std::span<const cplx> gains) {
    if (received.size() != gains.size() || received.empty())
        throw std::invalid_argument("mrc_combine: size mismatch");
    cplx num(0.0, 0.0);
    double den = 0.0;
    for (std::size_t i = 0; i < gains.size(); ++i) {
        num += std::conj(gains[i]) * received[i];
        den += std::norm(gains[i]);
    }
    return num / den;
}

} // namespace modulation
} // namespace ehlink
