#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace clab {

/// Fixed-size bit vector with value semantics. Used both for concept label
/// vectors (indexed by instance) and for version-space masks (indexed by
/// concept). Bits past size() are always zero so equality and hashing can
/// work on whole words.
class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t size, bool value = false);

    /// Parses a string of '0'/'1' characters; character i becomes bit i.
    static Bits from_string(std::string_view s);

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
    bool operator[](std::size_t i) const noexcept { return test(i); }
    void set(std::size_t i, bool value = true) noexcept;
    void reset(std::size_t i) noexcept { set(i, false); }
    void flip(std::size_t i) noexcept { words_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }
    void flip_all() noexcept;

    std::size_t count() const noexcept;
    bool any() const noexcept;
    bool none() const noexcept { return !any(); }

    /// Index of the lowest set bit at or after `from`, or size() if none.
    std::size_t find_next(std::size_t from) const noexcept;
    std::size_t find_first() const noexcept { return find_next(0); }

    bool is_subset_of(const Bits& other) const noexcept;
    bool intersects(const Bits& other) const noexcept;

    Bits& operator&=(const Bits& other) noexcept;
    Bits& operator|=(const Bits& other) noexcept;
    Bits& operator^=(const Bits& other) noexcept;
    friend Bits operator&(Bits a, const Bits& b) noexcept { return a &= b; }
    friend Bits operator|(Bits a, const Bits& b) noexcept { return a |= b; }
    friend Bits operator^(Bits a, const Bits& b) noexcept { return a ^= b; }
    Bits operator~() const noexcept;

    bool operator==(const Bits& other) const noexcept = default;
    /// Lexicographic by bit index: the first differing bit decides, 0 < 1.
    bool lex_less(const Bits& other) const noexcept;

    std::size_t hash() const noexcept;
    std::string to_string() const;

    std::vector<std::size_t> indices() const;

    template <typename F>
    void for_each_set(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word != 0) {
                const auto bit = static_cast<std::size_t>(std::countr_zero(word));
                f(w * 64 + bit);
                word &= word - 1;
            }
        }
    }

    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

private:
    void trim() noexcept;

    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

struct BitsHash {
    std::size_t operator()(const Bits& b) const noexcept { return b.hash(); }
};

}  // namespace clab
