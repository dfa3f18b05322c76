#pragma once

// Precomputed tables for one (domain, n) universe. Everything downstream
// (axiom evaluation, the backtracking engine, the CNF encoders) works off
// these flat arrays rather than re-deriving rankings per profile.

#include <cstdint>
#include <utility>
#include <vector>

#include "scv/orders.hpp"
#include "scv/rules.hpp"

namespace scv {

struct ProfileSpace {
    Domain domain;
    int n = 0;
    int m = 0;
    std::uint64_t count = 0;  // |D|^n

    std::vector<LinearOrder> all_orders;  // all m! orders, by order_index
    std::vector<int> reversed_index;      // order_index -> index of reversed order

    int pair_count = 0;                        // m*(m-1)/2
    std::vector<std::pair<Alt, Alt>> pairs;    // pair k = (a, b) with a < b
    std::vector<int> pair_index;               // (a*m+b) -> k, either orientation

    // Per order (by order_index): bit k set iff a preferred to b for pair k.
    std::vector<std::uint32_t> order_dirs;
    // Per order: bitmask of alternatives ranked strictly below alt.
    std::vector<std::uint32_t> below;  // index o*m + alt

    // Per profile: domain position of each voter's order (count * n).
    std::vector<int> voter_pos;
    // Per profile and pair: voter direction bits (bit i = voter i prefers a).
    std::vector<std::uint32_t> pattern;  // index p*pair_count + k
    // Per profile: pairs with unanimous agreement and the agreed direction.
    std::vector<std::uint32_t> unanimous_mask;  // bit k set iff pair k unanimous
    std::vector<std::uint32_t> unanimous_dirs;  // agreed direction where mask set
    // Per profile: shared top alternative, or -1 when voters' tops differ.
    std::vector<int> shared_top;
    // Per profile: alternatives that are unanimously strictly dominated.
    std::vector<std::uint32_t> dominated;
    // Per profile: canonical profile of the same voter multiset.
    std::vector<std::uint64_t> orbit_rep;

    ProfileSpace(Domain d, int voters) : domain(std::move(d)), n(voters), m(domain.m) {
        const ProfileCodec codec(domain, n);
        count = codec.profile_count;

        all_orders = enumerate_orders(m);
        const int order_count = static_cast<int>(all_orders.size());
        reversed_index.resize(order_count);
        for (int o = 0; o < order_count; ++o)
            reversed_index[o] = static_cast<int>(all_orders[o].reversed().order_index());

        pair_index.assign(static_cast<std::size_t>(m) * m, -1);
        for (Alt a = 0; a < m; ++a)
            for (Alt b = a + 1; b < m; ++b) {
                pair_index[a * m + b] = pair_count;
                pair_index[b * m + a] = pair_count;
                pairs.emplace_back(a, b);
                ++pair_count;
            }

        order_dirs.assign(order_count, 0);
        below.assign(static_cast<std::size_t>(order_count) * m, 0);
        for (int o = 0; o < order_count; ++o) {
            const auto& ord = all_orders[o];
            for (int k = 0; k < pair_count; ++k)
                if (ord.prefers(pairs[k].first, pairs[k].second))
                    order_dirs[o] |= (1u << k);
            for (Alt a = 0; a < m; ++a)
                for (Alt b = 0; b < m; ++b)
                    if (a != b && ord.prefers(a, b))
                        below[static_cast<std::size_t>(o) * m + a] |= (1u << b);
        }

        voter_pos.resize(count * n);
        pattern.assign(count * pair_count, 0);
        unanimous_mask.assign(count, 0);
        unanimous_dirs.assign(count, 0);
        shared_top.assign(count, -1);
        dominated.assign(count, 0);
        orbit_rep.resize(count);

        std::vector<int> pos(n, 0);
        for (std::uint64_t p = 0; p < count; ++p) {
            for (int i = 0; i < n; ++i) voter_pos[p * n + i] = pos[i];

            const std::uint32_t all_voters = (n >= 32) ? ~0u : ((1u << n) - 1u);
            for (int k = 0; k < pair_count; ++k) {
                std::uint32_t bits = 0;
                for (int i = 0; i < n; ++i)
                    if (domain.orders[pos[i]].prefers(pairs[k].first, pairs[k].second)) bits |= (1u << i);
                pattern[p * pair_count + k] = bits;
                if (bits == all_voters) {
                    unanimous_mask[p] |= (1u << k);
                    unanimous_dirs[p] |= (1u << k);
                } else if (bits == 0) {
                    unanimous_mask[p] |= (1u << k);
                }
            }

            const Alt top0 = domain.orders[pos[0]].top();
            bool same_top = true;
            for (int i = 1; i < n; ++i)
                if (domain.orders[pos[i]].top() != top0) { same_top = false; break; }
            shared_top[p] = same_top ? top0 : -1;

            for (Alt a = 0; a < m; ++a)
                for (Alt b = 0; b < m; ++b) {
                    if (a == b) continue;
                    bool dominates = true;
                    for (int i = 0; i < n; ++i)
                        if (!domain.orders[pos[i]].prefers(b, a)) { dominates = false; break; }
                    if (dominates) { dominated[p] |= (1u << a); break; }
                }

            std::vector<int> sorted(pos);
            std::sort(sorted.begin(), sorted.end());
            std::uint64_t rep = 0;
            for (int i = 0; i < n; ++i)
                rep = rep * static_cast<std::uint64_t>(domain.size()) + static_cast<std::uint64_t>(sorted[i]);
            orbit_rep[p] = rep;

            for (int i = n - 1; i >= 0; --i) {
                if (++pos[i] < domain.size()) break;
                pos[i] = 0;
            }
        }
    }

    const LinearOrder& voter_order(std::uint64_t p, int voter) const {
        return domain.orders[voter_pos[p * n + voter]];
    }

    int voter_order_index(std::uint64_t p, int voter) const {
        return static_cast<int>(voter_order(p, voter).order_index());
    }

    // Profile index reached from p when `voter` switches to domain position q.
    std::uint64_t variant(std::uint64_t p, int voter, int q) const {
        std::uint64_t stride = 1;
        for (int i = n - 1; i > voter; --i) stride *= static_cast<std::uint64_t>(domain.size());
        const int cur = voter_pos[p * n + voter];
        return p + (static_cast<std::uint64_t>(q) - static_cast<std::uint64_t>(cur)) * stride;
    }

    // Does alternative a keep or extend its beaten set for every voter when
    // moving from profile p to profile q?
    bool weakly_improves(std::uint64_t p, std::uint64_t q, Alt a) const {
        for (int i = 0; i < n; ++i) {
            const auto op = static_cast<std::size_t>(domain.orders[voter_pos[p * n + i]].order_index());
            const auto oq = static_cast<std::size_t>(domain.orders[voter_pos[q * n + i]].order_index());
            if (below[op * m + a] & ~below[oq * m + a]) return false;
        }
        return true;
    }
};

}  // namespace scv
