#include "clab/bits.hpp"

#include <stdexcept>

namespace clab {

Bits::Bits(std::size_t size, bool value)
    : words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0), size_(size) {
    trim();
}

Bits Bits::from_string(std::string_view s) {
    Bits b(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') {
            b.set(i);
        } else if (s[i] != '0') {
            throw std::invalid_argument("bit string may only contain '0' and '1'");
        }
    }
    return b;
}

void Bits::set(std::size_t i, bool value) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
        words_[i >> 6] |= mask;
    } else {
        words_[i >> 6] &= ~mask;
    }
}

void Bits::flip_all() noexcept {
    for (auto& w : words_) w = ~w;
    trim();
}

std::size_t Bits::count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool Bits::any() const noexcept {
    for (auto w : words_) {
        if (w != 0) return true;
    }
    return false;
}

std::size_t Bits::find_next(std::size_t from) const noexcept {
    if (from >= size_) return size_;
    std::size_t w = from >> 6;
    std::uint64_t word = words_[w] & (~std::uint64_t{0} << (from & 63));
    while (true) {
        if (word != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(word));
        if (++w >= words_.size()) return size_;
        word = words_[w];
    }
}

bool Bits::is_subset_of(const Bits& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if ((words_[i] & ~other.words_[i]) != 0) return false;
    }
    return true;
}

bool Bits::intersects(const Bits& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if ((words_[i] & other.words_[i]) != 0) return true;
    }
    return false;
}

Bits& Bits::operator&=(const Bits& other) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

Bits& Bits::operator|=(const Bits& other) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

Bits& Bits::operator^=(const Bits& other) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

Bits Bits::operator~() const noexcept {
    Bits r = *this;
    r.flip_all();
    return r;
}

bool Bits::lex_less(const Bits& other) const noexcept {
    for (std::size_t i = 0; i < words_.size() && i < other.words_.size(); ++i) {
        const std::uint64_t diff = words_[i] ^ other.words_[i];
        if (diff != 0) {
            const auto bit = std::countr_zero(diff);
            return ((other.words_[i] >> bit) & 1u) != 0;
        }
    }
    return size_ < other.size_;
}

std::size_t Bits::hash() const noexcept {
    // FNV-1a over the words, mixed with the size.
    std::uint64_t h = 1469598103934665603ull ^ size_;
    for (auto w : words_) {
        h ^= w;
        h *= 1099511628211ull;
        h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
}

std::string Bits::to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if (test(i)) s[i] = '1';
    }
    return s;
}

std::vector<std::size_t> Bits::indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each_set([&](std::size_t i) { out.push_back(i); });
    return out;
}

void Bits::trim() noexcept {
    if (words_.empty()) return;
    const std::size_t rem = size_ & 63;
    if (rem != 0) words_.back() &= (std::uint64_t{1} << rem) - 1;
}

}  // namespace clab
