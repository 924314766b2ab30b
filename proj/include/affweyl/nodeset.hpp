#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

// Subsets of the node set I of a Cartan diagram, as bitmasks. Node indices
// are small (at most 16 in practice), so a 32-bit mask is plenty.

namespace affweyl {

class NodeSet {
public:
    NodeSet() : bits_(0) {}
    explicit NodeSet(uint32_t bits) : bits_(bits) {}

    static NodeSet empty() { return NodeSet(); }
    static NodeSet full(int n) { return NodeSet((n == 32) ? ~0u : ((1u << n) - 1)); }
    static NodeSet of(std::initializer_list<int> nodes) {
        NodeSet s;
        for (int i : nodes) s = s.with(i);
        return s;
    }
    static NodeSet from_vector(const std::vector<int>& nodes) {
        NodeSet s;
        for (int i : nodes) {
            if (i < 0 || i >= 32) throw std::invalid_argument("NodeSet: node out of range");
            s = s.with(i);
        }
        return s;
    }

    uint32_t bits() const { return bits_; }
    bool contains(int i) const { return (bits_ >> i) & 1u; }
    NodeSet with(int i) const { return NodeSet(bits_ | (1u << i)); }
    NodeSet without(int i) const { return NodeSet(bits_ & ~(1u << i)); }
    int size() const { return __builtin_popcount(bits_); }
    bool is_empty() const { return bits_ == 0; }
    bool subset_of(NodeSet o) const { return (bits_ & ~o.bits_) == 0; }
    bool is_proper_subset_of_full(int n) const { return bits_ != full(n).bits_; }

    NodeSet operator&(NodeSet o) const { return NodeSet(bits_ & o.bits_); }
    NodeSet operator|(NodeSet o) const { return NodeSet(bits_ | o.bits_); }
    bool operator==(NodeSet o) const { return bits_ == o.bits_; }
    bool operator!=(NodeSet o) const { return bits_ != o.bits_; }
    bool operator<(NodeSet o) const { return bits_ < o.bits_; }

    std::vector<int> to_vector() const {
        std::vector<int> v;
        for (int i = 0; i < 32; ++i)
            if (contains(i)) v.push_back(i);
        return v;
    }

private:
    uint32_t bits_;
};

} // namespace affweyl
