#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "pfv/error.hpp"

namespace pfv {

/// Fixed-length bitset with word access; bit i is position i (0-based).
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t size, bool value = false)
        : size_(size), words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0) {
        trim();
    }

    std::size_t size() const noexcept { return size_; }

    bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void assign(std::size_t i, bool v) noexcept { v ? set(i) : reset(i); }

    std::size_t count() const noexcept { return count_prefix(size_); }

    /// Number of set bits among positions [0, n).
    std::size_t count_prefix(std::size_t n) const noexcept {
        if (n > size_) n = size_;
        std::size_t full = n >> 6, total = 0;
        for (std::size_t w = 0; w < full; ++w) total += std::popcount(words_[w]);
        if (n & 63) total += std::popcount(words_[full] & ((std::uint64_t{1} << (n & 63)) - 1));
        return total;
    }

    Bitset& operator&=(const Bitset& other) {
        if (other.size_ != size_) throw UsageError("Bitset: size mismatch");
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
        return *this;
    }

    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    friend bool operator==(const Bitset&, const Bitset&) = default;

private:
    void trim() noexcept {
        if ((size_ & 63) != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace pfv
