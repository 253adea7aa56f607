#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gevrey {

/// Stirling tables up to order `max_order`:
///   D^j         = sum_k S2(j,k)       z^k d^k/dz^k
///   z^j d^j/dz^j = sum_k S1signed(j,k) D^k
/// S1signed(j,k) = (-1)^(j-k) |s(j,k)|. Both are lower triangular with unit
/// diagonal and are mutually inverse.
class StirlingTables {
public:
    static constexpr int kMaxSupported = 20; // 20! fits in int64

    explicit StirlingTables(int max_order) : max_(max_order) {
        if (max_order < 0 || max_order > kMaxSupported)
            throw std::out_of_range("Stirling tables support orders 0.." + std::to_string(kMaxSupported));
        const auto n = static_cast<std::size_t>(max_order) + 1;
        s2_.assign(n, std::vector<std::int64_t>(n, 0));
        s1_.assign(n, std::vector<std::int64_t>(n, 0));
        s2_[0][0] = 1;
        s1_[0][0] = 1;
        // a_{j+1,k+1} = a_{j,k} + (k+1) a_{j,k+1}
        for (std::size_t j = 0; j + 1 < n; ++j)
            for (std::size_t k = 0; k + 1 < n; ++k)
                s2_[j + 1][k + 1] = s2_[j][k] + static_cast<std::int64_t>(k + 1) * s2_[j][k + 1];
        // Falling factorial x(x-1)...(x-j): s(j+1,k) = s(j,k-1) - j s(j,k)
        for (std::size_t j = 0; j + 1 < n; ++j)
            for (std::size_t k = 1; k < n; ++k)
                s1_[j + 1][k] = s1_[j][k - 1] - static_cast<std::int64_t>(j) * s1_[j][k];
    }

    int max_order() const { return max_; }

    std::int64_t s2(int j, int k) const {
        check(j, k);
        return s2_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    }
    std::int64_t s1_signed(int j, int k) const {
        check(j, k);
        return s1_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    }

private:
    void check(int j, int k) const {
        if (j < 0 || k < 0 || j > max_ || k > max_)
            throw std::out_of_range("Stirling index (" + std::to_string(j) + "," + std::to_string(k) + ") out of range");
    }

    int max_;
    std::vector<std::vector<std::int64_t>> s2_;
    std::vector<std::vector<std::int64_t>> s1_;
};

/// Process-wide read-only table.
inline const StirlingTables& stirling_tables() {
    static const StirlingTables tables(StirlingTables::kMaxSupported);
    return tables;
}

inline std::int64_t stirling2(int j, int k) { return stirling_tables().s2(j, k); }
inline std::int64_t stirling1_signed(int j, int k) { return stirling_tables().s1_signed(j, k); }

} // namespace gevrey
