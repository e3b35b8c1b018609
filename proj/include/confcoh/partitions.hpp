#pragma once

#include "confcoh/exact.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace confcoh {

inline constexpr int kDefaultPartitionBound = 9;

// Permutation of {0..n-1}; images[i] = g(i).
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<char> seen(images_.size(), 0);
        for (int x : images_) {
            require(x >= 0 && x < size() && !seen[x], "not a permutation");
            seen[x] = 1;
        }
    }
    static Permutation identity(int n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 0);
        return Permutation(v);
    }
    // Transposition of the 1-based points a and b.
    static Permutation transposition(int n, int a, int b) {
        auto p = identity(n);
        std::swap(p.images_[a - 1], p.images_[b - 1]);
        return p;
    }
    // Built from 1-based cycles, e.g. {{1,2,3},{4,5}}.
    static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
        auto p = identity(n);
        for (const auto& c : cycles)
            for (std::size_t i = 0; i < c.size(); ++i) p.images_[c[i] - 1] = c[(i + 1) % c.size()] - 1;
        return Permutation(p.images_);
    }
    // Lexicographically minimal one-line word with the given cycle type.
    static Permutation of_cycle_type(const std::vector<int>& type) {
        std::vector<int> lens(type.rbegin(), type.rend());
        int n = std::accumulate(lens.begin(), lens.end(), 0);
        std::vector<int> img(n);
        int start = 0;
        for (int len : lens) {
            for (int i = 0; i < len; ++i) img[start + i] = start + (i + 1) % len;
            start += len;
        }
        return Permutation(img);
    }

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[i]; }
    const std::vector<int>& images() const { return images_; }

    // (a * b)(i) = a(b(i))
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        require(a.size() == b.size(), "permutation size mismatch");
        std::vector<int> v(a.size());
        for (int i = 0; i < a.size(); ++i) v[i] = a(b(i));
        return Permutation(v);
    }
    Permutation inverse() const {
        std::vector<int> v(size());
        for (int i = 0; i < size(); ++i) v[images_[i]] = i;
        return Permutation(v);
    }
    std::vector<int> cycle_type() const {
        std::vector<int> t;
        std::vector<char> seen(size(), 0);
        for (int i = 0; i < size(); ++i) {
            if (seen[i]) continue;
            int len = 0;
            for (int j = i; !seen[j]; j = images_[j]) seen[j] = 1, ++len;
            t.push_back(len);
        }
        std::sort(t.rbegin(), t.rend());
        return t;
    }
    int sign() const {
        int s = 1;
        for (int len : cycle_type())
            if (len % 2 == 0) s = -s;
        return s;
    }
    int order() const {
        int o = 1;
        for (int len : cycle_type()) o = std::lcm(o, len);
        return o;
    }
    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> images_;
};

class SetPartition {
public:
    SetPartition() = default;

    // From a restricted-growth string.
    explicit SetPartition(std::vector<std::uint8_t> rgs) : rgs_(std::move(rgs)) {
        int mx = -1;
        for (std::size_t i = 0; i < rgs_.size(); ++i) {
            require(rgs_[i] <= mx + 1, "not a restricted-growth string");
            mx = std::max<int>(mx, rgs_[i]);
        }
    }

    // From arbitrary block labels per element (0-based elements).
    static SetPartition from_labels(const std::vector<int>& labels) {
        std::map<int, std::uint8_t> renum;
        std::vector<std::uint8_t> rgs(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) {
            auto it = renum.find(labels[i]);
            if (it == renum.end()) it = renum.emplace(labels[i], static_cast<std::uint8_t>(renum.size())).first;
            rgs[i] = it->second;
        }
        return SetPartition(rgs);
    }

    // From 1-based blocks.
    static SetPartition from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
        std::vector<int> lab(n, -1);
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (int x : blocks[b]) {
                require(x >= 1 && x <= n, "block element out of range");
                require(lab[x - 1] < 0, "element in two blocks");
                lab[x - 1] = static_cast<int>(b);
            }
        for (int v : lab) require(v >= 0, "blocks do not cover the ground set");
        return from_labels(lab);
    }

    static SetPartition bottom(int n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 0);
        return from_labels(v);
    }
    static SetPartition top(int n) { return SetPartition(std::vector<std::uint8_t>(n, 0)); }

    int n() const { return static_cast<int>(rgs_.size()); }
    const std::vector<std::uint8_t>& rgs() const { return rgs_; }
    int block_count() const {
        int mx = -1;
        for (auto x : rgs_) mx = std::max<int>(mx, x);
        return mx + 1;
    }
    int block_of(int i) const { return rgs_[i]; }

    // 1-based sorted blocks ordered by minimum.
    std::vector<std::vector<int>> blocks() const {
        std::vector<std::vector<int>> b(block_count());
        for (int i = 0; i < n(); ++i) b[rgs_[i]].push_back(i + 1);
        return b;
    }
    // 0-based bitmask per block.
    std::vector<std::uint32_t> block_masks() const {
        std::vector<std::uint32_t> b(block_count(), 0);
        for (int i = 0; i < n(); ++i) b[rgs_[i]] |= 1u << i;
        return b;
    }

    bool is_bottom() const { return block_count() == n(); }
    bool is_top() const { return block_count() <= 1; }

    std::string str() const {
        std::ostringstream os;
        bool first_block = true;
        for (const auto& b : blocks()) {
            if (!first_block) os << '|';
            first_block = false;
            for (int x : b) os << x;
        }
        return os.str();
    }

    friend bool operator==(const SetPartition&, const SetPartition&) = default;
    friend auto operator<=>(const SetPartition&, const SetPartition&) = default;

private:
    std::vector<std::uint8_t> rgs_;
};

inline void same_n(const SetPartition& a, const SetPartition& b) {
    require(a.n() == b.n(), "partitions of different ground sets");
}

inline SetPartition join(const SetPartition& a, const SetPartition& b) {
    same_n(a, b);
    int n = a.n();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<int> first_a(n, -1), first_b(n, -1);
    for (int i = 0; i < n; ++i) {
        int& fa = first_a[a.block_of(i)];
        if (fa < 0) fa = i;
        else parent[find(i)] = find(fa);
        int& fb = first_b[b.block_of(i)];
        if (fb < 0) fb = i;
        else parent[find(i)] = find(fb);
    }
    std::vector<int> lab(n);
    for (int i = 0; i < n; ++i) lab[i] = find(i);
    return SetPartition::from_labels(lab);
}

inline SetPartition meet(const SetPartition& a, const SetPartition& b) {
    same_n(a, b);
    std::vector<int> lab(a.n());
    for (int i = 0; i < a.n(); ++i) lab[i] = a.block_of(i) * 256 + b.block_of(i);
    return SetPartition::from_labels(lab);
}

// a refines b
inline bool leq(const SetPartition& a, const SetPartition& b) {
    same_n(a, b);
    std::vector<int> image(a.n(), -1);
    for (int i = 0; i < a.n(); ++i) {
        int& slot = image[a.block_of(i)];
        if (slot < 0) slot = b.block_of(i);
        else if (slot != b.block_of(i)) return false;
    }
    return true;
}

// g relabels: element i goes to g(i).
inline SetPartition act(const Permutation& g, const SetPartition& x) {
    require(g.size() == x.n(), "permutation size mismatch");
    std::vector<int> lab(x.n());
    for (int i = 0; i < x.n(); ++i) lab[g(i)] = x.block_of(i);
    return SetPartition::from_labels(lab);
}

inline void check_bound(int n, int bound) {
    require(n >= 1, "n must be positive");
    if (n > bound) throw ScaleError("n = " + std::to_string(n) + " exceeds the configured bound " + std::to_string(bound));
}

// All of Pi_n in lexicographic rgs order.
inline std::vector<SetPartition> enumerate_partitions(int n, int bound = kDefaultPartitionBound) {
    check_bound(n, bound);
    std::vector<SetPartition> out;
    std::vector<std::uint8_t> rgs(n, 0);
    std::vector<int> prefix_max(n, 0);
    // iterative generation of restricted-growth strings
    std::function<void(int, int)> rec = [&](int i, int mx) {
        if (i == n) {
            out.emplace_back(rgs);
            return;
        }
        for (int v = 0; v <= mx + 1; ++v) {
            rgs[i] = static_cast<std::uint8_t>(v);
            rec(i + 1, std::max(mx, v));
        }
    };
    rgs[0] = 0;
    rec(1, 0);
    return out;
}

inline std::vector<SetPartition> atoms(int n) {
    std::vector<SetPartition> out;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            std::vector<std::vector<int>> blocks{{i, j}};
            for (int x = 1; x <= n; ++x)
                if (x != i && x != j) blocks.push_back({x});
            out.push_back(SetPartition::from_blocks(n, blocks));
        }
    std::sort(out.begin(), out.end());
    return out;
}

class UpSet {
public:
    UpSet() = default;
    UpSet(int n, std::vector<SetPartition> gens) : n_(n) {
        require(n >= 1, "n must be positive");
        for (const auto& g : gens) require(g.n() == n, "generator on wrong ground set");
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        for (const auto& g : gens) {
            bool redundant = false;
            for (const auto& h : gens)
                if (!(h == g) && leq(h, g)) redundant = true;
            if (!redundant) gens_.push_back(g);
        }
    }

    static UpSet k_equals(int n, int k) {
        require(k >= 2 && k <= n, "k out of range for k-equals");
        std::vector<SetPartition> gens;
        std::vector<int> pick(n, 0);
        std::fill(pick.end() - k, pick.end(), 1);
        do {
            std::vector<std::vector<int>> blocks(1);
            for (int i = 0; i < n; ++i)
                if (pick[i]) blocks[0].push_back(i + 1);
                else blocks.push_back({i + 1});
            gens.push_back(SetPartition::from_blocks(n, blocks));
        } while (std::next_permutation(pick.begin(), pick.end()));
        return UpSet(n, gens);
    }
    static UpSet full(int n) {
        require(n >= 2, "full upset needs n >= 2");
        return k_equals(n, 2);
    }

    int n() const { return n_; }
    const std::vector<SetPartition>& generators() const { return gens_; }
    const std::vector<SetPartition>& minimal_elements() const { return gens_; }

    bool contains(const SetPartition& x) const {
        for (const auto& g : gens_)
            if (leq(g, x)) return true;
        return false;
    }

    std::vector<SetPartition> members(int bound = kDefaultPartitionBound) const {
        std::vector<SetPartition> out;
        for (auto& x : enumerate_partitions(n_, bound))
            if (contains(x)) out.push_back(x);
        return out;
    }

    bool preserved_by(const Permutation& g) const {
        for (const auto& x : gens_)
            if (!contains(act(g, x))) return false;
        return true;
    }

    friend bool operator==(const UpSet&, const UpSet&) = default;

private:
    int n_ = 0;
    std::vector<SetPartition> gens_;
};

// All joins of nonempty subsets of the generators, optionally with the bottom element.
inline std::vector<SetPartition> join_closure(const UpSet& U, bool with_bottom) {
    std::set<SetPartition> seen(U.generators().begin(), U.generators().end());
    std::vector<SetPartition> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
        std::vector<SetPartition> next;
        for (const auto& x : frontier)
            for (const auto& g : U.generators()) {
                auto j = join(x, g);
                if (seen.insert(j).second) next.push_back(j);
            }
        frontier = std::move(next);
    }
    if (with_bottom) seen.insert(SetPartition::bottom(U.n()));
    return {seen.begin(), seen.end()};
}

inline std::vector<SetPartition> lower_interval(const std::vector<SetPartition>& S, const SetPartition& T) {
    require(std::find(S.begin(), S.end(), T) != S.end(), "interval top not in the set");
    std::vector<SetPartition> out;
    for (const auto& x : S)
        if (leq(x, T)) out.push_back(x);
    return out;
}

}  // namespace confcoh
