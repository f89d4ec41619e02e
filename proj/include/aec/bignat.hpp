// bignat.hpp -- minimal arbitrary-precision naturals.
//
// Energy values are sums of log2 of small integer in-degrees; the exact
// quantity behind such a sum is the product of the in-degrees.  Storing the
// product lets DP argmax ties be broken exactly instead of through float
// rounding.  Only the operations the energy witness search needs are here.

#pragma once

#include <cstdint>
#include <vector>

namespace aec {

class BigNat {
public:
    BigNat() : limbs_{1} {} // the empty product

    static BigNat zero() {
        BigNat b;
        b.limbs_.clear();
        return b;
    }

    bool is_zero() const { return limbs_.empty(); }

    void mul_small(std::uint32_t m) {
        if (limbs_.empty()) return;
        if (m == 0) {
            limbs_.clear();
            return;
        }
        std::uint64_t carry = 0;
        for (auto& limb : limbs_) {
            std::uint64_t v = static_cast<std::uint64_t>(limb) * m + carry;
            limb = static_cast<std::uint32_t>(v);
            carry = v >> 32;
        }
        while (carry != 0) {
            limbs_.push_back(static_cast<std::uint32_t>(carry));
            carry >>= 32;
        }
    }

    // -1, 0, +1 as *this <, ==, > other.
    int compare(const BigNat& other) const {
        if (limbs_.size() != other.limbs_.size())
            return limbs_.size() < other.limbs_.size() ? -1 : 1;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            if (limbs_[i] != other.limbs_[i])
                return limbs_[i] < other.limbs_[i] ? -1 : 1;
        }
        return 0;
    }

    bool operator==(const BigNat& other) const { return compare(other) == 0; }
    bool operator<(const BigNat& other) const { return compare(other) < 0; }

private:
    std::vector<std::uint32_t> limbs_; // little-endian base 2^32; empty == 0
};

} // namespace aec
