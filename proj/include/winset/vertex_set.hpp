#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace winset {

// Set of vertex ids over a fixed universe 0..n-1. Thin wrapper around a
// dynamic bitset; all iteration is ascending by id so algorithms built on
// top are deterministic.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int n) : bits_(static_cast<size_t>(n)) {}

    static VertexSet full(int n) {
        VertexSet s(n);
        s.bits_.set();
        return s;
    }
    static VertexSet of(int n, std::initializer_list<int> ids) {
        VertexSet s(n);
        for (int v : ids) s.set(v);
        return s;
    }
    static VertexSet of(int n, const std::vector<int>& ids) {
        VertexSet s(n);
        for (int v : ids) s.set(v);
        return s;
    }

    int universe() const { return static_cast<int>(bits_.size()); }
    bool test(int v) const { return bits_.test(static_cast<size_t>(v)); }
    void set(int v, bool on = true) { bits_.set(static_cast<size_t>(v), on); }
    void reset(int v) { bits_.reset(static_cast<size_t>(v)); }
    void clear() { bits_.reset(); }
    bool empty() const { return bits_.none(); }
    int count() const { return static_cast<int>(bits_.count()); }

    // First member, or -1 when empty.
    int first() const {
        size_t p = bits_.find_first();
        return p == boost::dynamic_bitset<>::npos ? -1 : static_cast<int>(p);
    }
    // First member greater than v, or -1.
    int next(int v) const {
        size_t p = bits_.find_next(static_cast<size_t>(v));
        return p == boost::dynamic_bitset<>::npos ? -1 : static_cast<int>(p);
    }

    VertexSet& operator|=(const VertexSet& o) { bits_ |= o.bits_; return *this; }
    VertexSet& operator&=(const VertexSet& o) { bits_ &= o.bits_; return *this; }
    VertexSet& operator-=(const VertexSet& o) { bits_ -= o.bits_; return *this; }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { a |= b; return a; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { a &= b; return a; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { a -= b; return a; }
    VertexSet complement() const {
        VertexSet s = *this;
        s.bits_.flip();
        return s;
    }

    bool operator==(const VertexSet& o) const { return bits_ == o.bits_; }
    bool operator!=(const VertexSet& o) const { return bits_ != o.bits_; }
    bool subset_of(const VertexSet& o) const { return bits_.is_subset_of(o.bits_); }
    bool intersects(const VertexSet& o) const { return bits_.intersects(o.bits_); }

    std::vector<int> to_vector() const {
        std::vector<int> v;
        v.reserve(static_cast<size_t>(count()));
        for (int x = first(); x >= 0; x = next(x)) v.push_back(x);
        return v;
    }

    template <class F>
    void for_each(F f) const {
        for (int x = first(); x >= 0; x = next(x)) f(x);
    }

private:
    boost::dynamic_bitset<uint64_t> bits_;
};

}  // namespace winset
