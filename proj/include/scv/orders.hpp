#pragma once

// Strict linear orders over a finite set of alternatives, their canonical
// enumeration, restricted domains, and indexed preference profiles.
//
// Conventions used everywhere in this library:
//   - alternatives are dense ids 0..m-1, printed as letters a, b, c, ...
//   - an order's "word" lists alternatives best-to-worst ("bac" = b > a > c)
//   - order_index is the position of the word in the lexicographic
//     enumeration of all m! permutations (index 0 = identity word)
//   - profile_index is mixed radix over the active domain, voter 0 in the
//     most significant digit

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace scv {

using Alt = int;

inline std::uint64_t factorial(int m) {
    std::uint64_t f = 1;
    for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

struct LinearOrder {
    int m = 0;
    std::vector<std::int8_t> rank;  // rank[alt] = position, 0 = best

    bool prefers(Alt a, Alt b) const { return rank[a] < rank[b]; }

    Alt top() const {
        for (Alt a = 0; a < m; ++a)
            if (rank[a] == 0) return a;
        throw std::logic_error("order has no top");
    }

    // Alternatives best-to-worst.
    std::vector<Alt> word() const {
        std::vector<Alt> w(m);
        for (Alt a = 0; a < m; ++a) w[rank[a]] = a;
        return w;
    }

    LinearOrder reversed() const {
        LinearOrder r;
        r.m = m;
        r.rank.resize(m);
        for (Alt a = 0; a < m; ++a) r.rank[a] = static_cast<std::int8_t>(m - 1 - rank[a]);
        return r;
    }

    // Lexicographic position of word() among all m! permutation words.
    std::uint64_t order_index() const {
        std::vector<Alt> w = word();
        std::uint64_t idx = 0;
        for (int i = 0; i < m; ++i) {
            int smaller = 0;
            for (int j = i + 1; j < m; ++j)
                if (w[j] < w[i]) ++smaller;
            idx += static_cast<std::uint64_t>(smaller) * factorial(m - 1 - i);
        }
        return idx;
    }

    std::string to_string() const {
        if (m > 26) throw std::invalid_argument("letter rendering supports m <= 26");
        std::string s;
        for (Alt a : word()) s.push_back(static_cast<char>('a' + a));
        return s;
    }

    static LinearOrder from_word(const std::vector<Alt>& w) {
        const int m = static_cast<int>(w.size());
        LinearOrder o;
        o.m = m;
        o.rank.assign(m, -1);
        for (int pos = 0; pos < m; ++pos) {
            Alt a = w[pos];
            if (a < 0 || a >= m || o.rank[a] != -1)
                throw std::invalid_argument("word is not a permutation of 0..m-1");
            o.rank[a] = static_cast<std::int8_t>(pos);
        }
        return o;
    }

    static LinearOrder from_index(int m, std::uint64_t index) {
        if (m < 1) throw std::invalid_argument("m must be >= 1");
        if (index >= factorial(m)) throw std::invalid_argument("order index out of range");
        std::vector<Alt> pool(m);
        std::iota(pool.begin(), pool.end(), 0);
        std::vector<Alt> w;
        w.reserve(m);
        for (int i = m - 1; i >= 0; --i) {
            const std::uint64_t f = factorial(i);
            const auto d = static_cast<std::size_t>(index / f);
            index %= f;
            w.push_back(pool[d]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(d));
        }
        return from_word(w);
    }

    static LinearOrder from_string(const std::string& s) {
        std::vector<Alt> w;
        w.reserve(s.size());
        for (char c : s) {
            if (c < 'a' || c >= 'a' + static_cast<int>(s.size()))
                throw std::invalid_argument("bad order word: " + s);
            w.push_back(c - 'a');
        }
        return from_word(w);
    }

    bool operator==(const LinearOrder& other) const = default;
};

// All m! orders in lexicographic word sequence; order_index == list position.
inline std::vector<LinearOrder> enumerate_orders(int m) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    std::vector<Alt> w(m);
    std::iota(w.begin(), w.end(), 0);
    std::vector<LinearOrder> out;
    out.reserve(static_cast<std::size_t>(factorial(m)));
    do {
        out.push_back(LinearOrder::from_word(w));
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

// Number of unordered pairs the two orders rank oppositely.
inline int kendall_distance(const LinearOrder& p, const LinearOrder& q) {
    if (p.m != q.m) throw std::invalid_argument("kendall_distance: mismatched m");
    int d = 0;
    for (Alt a = 0; a < p.m; ++a)
        for (Alt b = a + 1; b < p.m; ++b)
            if (p.prefers(a, b) != q.prefers(a, b)) ++d;
    return d;
}

enum class PairDir : std::uint8_t { FirstOverSecond, SecondOverFirst };

struct PairRanking {
    Alt a = 0;
    Alt b = 0;
    PairDir dir = PairDir::FirstOverSecond;

    bool operator==(const PairRanking&) const = default;
};

inline PairRanking restrict_to_pair(const LinearOrder& p, Alt a, Alt b) {
    if (a == b) throw std::invalid_argument("restriction requires two distinct alternatives");
    return PairRanking{a, b, p.prefers(a, b) ? PairDir::FirstOverSecond : PairDir::SecondOverFirst};
}

// A non-empty set of admissible orders, canonically sorted by order_index.
struct Domain {
    int m = 0;
    std::vector<LinearOrder> orders;

    static Domain full(int m) {
        Domain d;
        d.m = m;
        d.orders = enumerate_orders(m);
        return d;
    }

    static Domain of(int m, std::vector<LinearOrder> orders) {
        if (orders.empty()) throw std::invalid_argument("domain must be non-empty");
        for (const auto& o : orders)
            if (o.m != m) throw std::invalid_argument("domain order has wrong m");
        std::sort(orders.begin(), orders.end(), [](const LinearOrder& x, const LinearOrder& y) {
            return x.order_index() < y.order_index();
        });
        for (std::size_t i = 1; i < orders.size(); ++i)
            if (orders[i] == orders[i - 1]) throw std::invalid_argument("duplicate order in domain");
        Domain d;
        d.m = m;
        d.orders = std::move(orders);
        return d;
    }

    int size() const { return static_cast<int>(orders.size()); }

    bool is_complete() const { return static_cast<std::uint64_t>(size()) == factorial(m); }

    // Position within the domain of the order with the given global index,
    // or -1 when absent.
    int position_of_index(std::uint64_t order_index) const {
        int lo = 0, hi = size() - 1;
        while (lo <= hi) {
            const int mid = (lo + hi) / 2;
            const std::uint64_t v = orders[mid].order_index();
            if (v == order_index) return mid;
            if (v < order_index)
                lo = mid + 1;
            else
                hi = mid - 1;
        }
        return -1;
    }

    int position_of(const LinearOrder& o) const { return position_of_index(o.order_index()); }

    bool operator==(const Domain&) const = default;
};

// Single-peakedness of p along the line given by `line` (line.rank[x] is the
// spatial position of x; smaller = further left). Peak is p's top; anything
// between another alternative and the peak must beat it.
inline bool is_single_peaked(const LinearOrder& p, const LinearOrder& line) {
    const Alt peak = p.top();
    const auto pos = [&](Alt x) { return line.rank[x]; };
    for (Alt a = 0; a < p.m; ++a) {
        for (Alt b = 0; b < p.m; ++b) {
            if (a == b) continue;
            const bool left_side = pos(a) < pos(b) && pos(b) <= pos(peak);
            const bool right_side = pos(peak) <= pos(b) && pos(b) < pos(a);
            if ((left_side || right_side) && !p.prefers(b, a)) return false;
        }
    }
    return true;
}

inline Domain single_peaked_domain(int m, const LinearOrder& line) {
    std::vector<LinearOrder> keep;
    for (const auto& o : enumerate_orders(m))
        if (is_single_peaked(o, line)) keep.push_back(o);
    return Domain::of(m, std::move(keep));
}

// Default line: alternative i sits at position i.
inline Domain single_peaked_domain(int m) {
    std::vector<Alt> identity(m);
    std::iota(identity.begin(), identity.end(), 0);
    return single_peaked_domain(m, LinearOrder::from_word(identity));
}

struct Profile {
    std::vector<LinearOrder> orders;  // one per voter

    int voters() const { return static_cast<int>(orders.size()); }

    bool operator==(const Profile&) const = default;
};

// Bijection between profiles over a domain and [0, |D|^n).
struct ProfileCodec {
    Domain domain;
    int n = 0;
    std::uint64_t profile_count = 0;

    ProfileCodec(Domain d, int voters) : domain(std::move(d)), n(voters) {
        if (n < 1) throw std::invalid_argument("need at least one voter");
        profile_count = 1;
        const auto size = static_cast<std::uint64_t>(domain.size());
        for (int i = 0; i < n; ++i) {
            if (profile_count > (std::uint64_t{1} << 62) / size)
                throw std::invalid_argument("profile space too large to index");
            profile_count *= size;
        }
    }

    std::uint64_t encode_positions(std::span<const int> positions) const {
        assert(static_cast<int>(positions.size()) == n);
        std::uint64_t idx = 0;
        for (int i = 0; i < n; ++i) {
            assert(positions[i] >= 0 && positions[i] < domain.size());
            idx = idx * static_cast<std::uint64_t>(domain.size()) + static_cast<std::uint64_t>(positions[i]);
        }
        return idx;
    }

    std::vector<int> decode_positions(std::uint64_t index) const {
        if (index >= profile_count) throw std::invalid_argument("profile index out of range");
        std::vector<int> pos(n);
        for (int i = n - 1; i >= 0; --i) {
            pos[i] = static_cast<int>(index % static_cast<std::uint64_t>(domain.size()));
            index /= static_cast<std::uint64_t>(domain.size());
        }
        return pos;
    }

    std::uint64_t encode(const Profile& p) const {
        if (p.voters() != n) throw std::invalid_argument("profile has wrong voter count");
        std::vector<int> pos(n);
        for (int i = 0; i < n; ++i) {
            pos[i] = domain.position_of(p.orders[i]);
            if (pos[i] < 0) throw std::invalid_argument("profile order not in domain");
        }
        return encode_positions(pos);
    }

    Profile decode(std::uint64_t index) const {
        Profile p;
        p.orders.reserve(n);
        for (int pos : decode_positions(index)) p.orders.push_back(domain.orders[pos]);
        return p;
    }
};

}  // namespace scv
