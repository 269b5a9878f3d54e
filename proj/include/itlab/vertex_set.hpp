#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace itlab {

/// Fixed-width bit row over vertex ids 0..size()-1.
class VertexSet {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    VertexSet() = default;
    explicit VertexSet(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const noexcept { return size_; }

    void set(std::size_t i) noexcept { words_[i / 64] |= bit(i); }
    void reset(std::size_t i) noexcept { words_[i / 64] &= ~bit(i); }
    bool test(std::size_t i) const noexcept { return (words_[i / 64] & bit(i)) != 0; }

    void clear() noexcept {
        for (auto& w : words_) w = 0;
    }

    void set_all() noexcept {
        for (auto& w : words_) w = ~std::uint64_t{0};
        trim();
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const noexcept {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    bool none() const noexcept { return !any(); }

    /// |this \ other| without materialising the difference.
    std::size_t count_minus(const VertexSet& other) const noexcept {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & ~other.words_[i]));
        return c;
    }

    std::size_t count_and(const VertexSet& other) const noexcept {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
        return c;
    }

    bool intersects(const VertexSet& other) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    bool is_subset_of(const VertexSet& other) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    VertexSet& operator|=(const VertexSet& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    VertexSet& operator&=(const VertexSet& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    /// Set difference.
    VertexSet& operator-=(const VertexSet& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    VertexSet complement() const {
        VertexSet r(*this);
        for (auto& w : r.words_) w = ~w;
        r.trim();
        return r;
    }

    std::size_t first() const noexcept { return next_from(0); }
    std::size_t next(std::size_t i) const noexcept { return next_from(i + 1); }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            auto w = words_[wi];
            while (w) {
                f(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> to_vector() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each([&](std::size_t v) { out.push_back(v); });
        return out;
    }

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    static constexpr std::uint64_t bit(std::size_t i) noexcept { return std::uint64_t{1} << (i % 64); }

    void trim() noexcept {
        if (size_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }

    std::size_t next_from(std::size_t i) const noexcept {
        if (i >= size_) return npos;
        std::size_t wi = i / 64;
        auto w = words_[wi] & (~std::uint64_t{0} << (i % 64));
        while (true) {
            if (w) return wi * 64 + static_cast<std::size_t>(std::countr_zero(w));
            if (++wi == words_.size()) return npos;
            w = words_[wi];
        }
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace itlab
