#pragma once

#include "cinfty/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace cinfty {

// Set partition of {1..n}. Canonical form: blocks sorted by their minimum
// element, elements inside a block ascending. Elements are 1-based.
struct Partition {
    std::size_t n = 0;
    std::vector<std::vector<std::size_t>> blocks;

    Partition() = default;
    Partition(std::size_t n_, std::vector<std::vector<std::size_t>> blocks_)
        : n(n_), blocks(std::move(blocks_)) {
        canonicalize();
        validate();
    }

    std::size_t block_count() const { return blocks.size(); }

    void canonicalize() {
        for (auto& b : blocks) std::sort(b.begin(), b.end());
        std::sort(blocks.begin(), blocks.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
    }

    void validate() const {
        std::vector<bool> seen(n, false);
        for (const auto& b : blocks) {
            if (b.empty()) throw std::invalid_argument("partition: empty block");
            for (std::size_t e : b) {
                if (e < 1 || e > n) throw std::invalid_argument("partition: element out of range");
                if (seen[e - 1]) throw std::invalid_argument("partition: repeated element");
                seen[e - 1] = true;
            }
        }
        for (bool s : seen) {
            if (!s) throw std::invalid_argument("partition: not covering {1..n}");
        }
    }

    // Index (within the canonical block list) of the block containing e.
    std::size_t block_of(std::size_t e) const {
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (std::binary_search(blocks[i].begin(), blocks[i].end(), e)) return i;
        }
        throw std::invalid_argument("partition: element not found");
    }

    bool operator==(const Partition& o) const { return n == o.n && blocks == o.blocks; }
    bool operator<(const Partition& o) const {
        return std::tie(n, blocks) < std::tie(o.n, o.blocks);
    }

    std::string to_string() const {
        std::string s;
        for (const auto& b : blocks) {
            s += "{";
            for (std::size_t i = 0; i < b.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(b[i]);
            }
            s += "}";
        }
        return s;
    }
};

// All set partitions of {1..n} via restricted-growth strings, in canonical
// (lexicographic RGS) order. Count is the n-th Bell number.
inline std::vector<Partition> enumerate_partitions(std::size_t n) {
    if (n < 1 || n > 8) throw std::length_error("enumerate_partitions: n out of supported range");
    std::vector<Partition> out;
    std::vector<std::size_t> rgs(n, 0);
    auto emit = [&]() {
        std::size_t k = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<std::vector<std::size_t>> blocks(k);
        for (std::size_t i = 0; i < n; ++i) blocks[rgs[i]].push_back(i + 1);
        out.emplace_back(n, std::move(blocks));
    };
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t maxv) {
        if (i == n) {
            emit();
            return;
        }
        for (std::size_t v = 0; v <= maxv + 1; ++v) {
            rgs[i] = v;
            rec(i + 1, std::max(maxv, v));
        }
    };
    rgs[0] = 0;
    rec(1, 0);
    return out;
}

// (|pi|-1)! * (-1)^{|pi|-1}
inline Scalar mobius_coefficient(const Partition& pi) {
    std::size_t k = pi.block_count();
    Scalar f = factorial(k - 1);
    return (k % 2 == 1) ? f : -f;
}

// Does fine refine coarse by splitting exactly one block of coarse into two?
// Returns the index of the split block of coarse, or -1.
inline int single_split_block(const Partition& coarse, const Partition& fine) {
    if (coarse.n != fine.n || fine.block_count() != coarse.block_count() + 1) return -1;
    int split = -1;
    // Every block of fine must sit inside a block of coarse; exactly one
    // coarse block is covered by two fine blocks, the rest by one.
    std::vector<std::size_t> cover(coarse.block_count(), 0);
    for (const auto& fb : fine.blocks) {
        std::size_t cb = coarse.block_of(fb.front());
        for (std::size_t e : fb) {
            if (coarse.block_of(e) != cb) return -1;
        }
        cover[cb]++;
    }
    for (std::size_t i = 0; i < cover.size(); ++i) {
        if (cover[i] == 2) {
            if (split != -1) return -1;
            split = static_cast<int>(i);
        } else if (cover[i] != 1) {
            return -1;
        }
    }
    return split;
}

}  // namespace cinfty
