#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "soc/errors.hpp"

namespace soc {

using BigInt = boost::multiprecision::cpp_int;

/// Hard cap on the partition ground-set size; Bell(12) ~ 4.2M partitions is
/// the largest enumeration we allow by default.
inline constexpr int kPartitionCap = 12;

/**
 * Unordered partition of {1..n} in canonical restricted-growth form: block
 * indices start at 0 and each new index is exactly one more than the maximum
 * seen so far. Two partitions are equal iff their assignments are equal.
 */
struct SetPartition {
    int n = 0;
    std::vector<int> block_assignment;

    int block_count() const {
        int mx = -1;
        for (int b : block_assignment) mx = b > mx ? b : mx;
        return mx + 1;
    }
};

inline bool is_valid_rgs(const std::vector<int>& a) {
    int mx = -1;
    for (int b : a) {
        if (b < 0 || b > mx + 1) return false;
        if (b == mx + 1) mx = b;
    }
    return true;
}

inline void validate(const SetPartition& p) {
    if (p.n < 0 || static_cast<int>(p.block_assignment.size()) != p.n) {
        throw validation_error("SetPartition: assignment length does not match n");
    }
    if (!is_valid_rgs(p.block_assignment)) {
        throw validation_error("SetPartition: assignment is not in restricted-growth form");
    }
}

struct PartitionBlock {
    int size = 0;
    std::vector<int> members;  // 1-based, sorted
};

/// Blocks in order of first appearance (equivalently, by block index).
inline std::vector<PartitionBlock> blocks_of(const SetPartition& p) {
    validate(p);
    std::vector<PartitionBlock> blocks(static_cast<std::size_t>(p.block_count()));
    for (int i = 0; i < p.n; ++i) {
        PartitionBlock& b = blocks[static_cast<std::size_t>(p.block_assignment[i])];
        b.size += 1;
        b.members.push_back(i + 1);
    }
    return blocks;
}

/**
 * Visits every set partition of {1..n} exactly once, in lexicographic order
 * of restricted-growth strings, without materializing the list. The callback
 * receives the current assignment; it must not retain the reference.
 */
template <class F>
void for_each_set_partition(int n, F&& visit) {
    if (n < 1) throw contract_violation("for_each_set_partition: n must be at least 1");
    if (n > kPartitionCap) {
        throw capacity_error("for_each_set_partition: n = " + std::to_string(n) +
                             " exceeds the enumeration cap of " + std::to_string(kPartitionCap));
    }
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    std::vector<int> prefix_max(static_cast<std::size_t>(n), 0);  // max of a[0..i-1], with prefix_max[0] = 0
    while (true) {
        visit(const_cast<const std::vector<int>&>(a));
        // Advance to the next restricted-growth string.
        int i = n - 1;
        for (; i >= 1; --i) {
            if (a[i] <= prefix_max[i]) break;  // a[i] can be incremented (up to prefix_max[i]+1)
        }
        if (i < 1) return;
        a[i] += 1;
        int mx = a[i] > prefix_max[i] ? a[i] : prefix_max[i];
        for (int j = i + 1; j < n; ++j) {
            a[j] = 0;
            prefix_max[j] = mx;
        }
        if (i + 1 < n) prefix_max[i + 1] = mx;
    }
}

/// All set partitions of {1..n} as canonical RGS, lexicographically ordered.
inline std::vector<SetPartition> enumerate_set_partitions(int n) {
    std::vector<SetPartition> out;
    for_each_set_partition(n, [&](const std::vector<int>& a) {
        out.push_back(SetPartition{n, a});
    });
    return out;
}

/// Bell numbers by the Bell-triangle recurrence.
inline BigInt bell_number(int n) {
    if (n < 0) throw contract_violation("bell_number: n must be nonnegative");
    std::vector<BigInt> row{1};
    for (int i = 0; i < n; ++i) {
        std::vector<BigInt> next;
        next.reserve(row.size() + 1);
        next.push_back(row.back());
        for (const BigInt& v : row) next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.front();
}

/// Bell numbers by B_{m+1} = sum_j C(m,j) B_j; an independent second route.
inline BigInt bell_number_binomial(int n) {
    if (n < 0) throw contract_violation("bell_number_binomial: n must be nonnegative");
    std::vector<BigInt> bell{1};
    for (int m = 0; m < n; ++m) {
        BigInt next = 0;
        BigInt binom = 1;  // C(m, 0)
        for (int j = 0; j <= m; ++j) {
            next += binom * bell[static_cast<std::size_t>(j)];
            binom = binom * (m - j) / (j + 1);
        }
        bell.push_back(next);
    }
    return bell[static_cast<std::size_t>(n)];
}

} // namespace soc
