#pragma once

// Braid group B3 acting on reflection triples and on their fingerprints,
// orbit enumeration for B3 and for the pure braid group P3 = <b1^2, b2^2>,
// and the Riemann-Hurwitz genus of the resulting branched cover.

#include "crpvi/triples.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace crpvi {

enum class BraidLetter { b1, b2, b1_inv, b2_inv };
using BraidWord = std::vector<BraidLetter>;

inline BraidLetter inverse(BraidLetter l) {
    switch (l) {
        case BraidLetter::b1: return BraidLetter::b1_inv;
        case BraidLetter::b2: return BraidLetter::b2_inv;
        case BraidLetter::b1_inv: return BraidLetter::b1;
        case BraidLetter::b2_inv: return BraidLetter::b2;
    }
    return l;
}

inline BraidWord free_reduce(const BraidWord& word) {
    BraidWord out;
    for (BraidLetter l : word) {
        if (!out.empty() && out.back() == inverse(l))
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

inline BraidWord inverse(const BraidWord& word) {
    BraidWord out(word.rbegin(), word.rend());
    for (auto& l : out) l = inverse(l);
    return out;
}

class UnsupportedCase : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class OrbitDiverged : public std::runtime_error {
public:
    explicit OrbitDiverged(std::size_t bound)
        : std::runtime_error("braid orbit exceeded " + std::to_string(bound) + " points; orbit is not finite or input is wrong") {}
};

// b1(r1,r2,r3) = (r2, r2^-1 r1 r2, r3),  b2(r1,r2,r3) = (r1, r3, r3^-1 r2 r3).
inline Triple braid_act(BraidLetter l, const Triple& r) {
    switch (l) {
        case BraidLetter::b1: return {r[1], r[1].inverse() * r[0] * r[1], r[2]};
        case BraidLetter::b2: return {r[0], r[2], r[2].inverse() * r[1] * r[2]};
        case BraidLetter::b1_inv: return {r[0] * r[1] * r[0].inverse(), r[0], r[2]};
        case BraidLetter::b2_inv: return {r[0], r[1] * r[2] * r[1].inverse(), r[1]};
    }
    return r;
}

// Letters are applied first to last.
inline Triple braid_act(const BraidWord& word, Triple r) {
    for (BraidLetter l : word) r = braid_act(l, r);
    return r;
}

// Action on fingerprints of order-two triples (all t_i = -1), chosen so that
// fingerprint(braid_act(l, T)) == braid_act_quintuple(l, fingerprint(T)).
// The inverse letters are the classical polynomial maps
//   (w,x,y,p,q) -> (w, y+p+q+wx, x, -q-wx, -p-wx)
//   (w,x,y,p,q) -> (x+p+q+wy, w, y, -q-wy, -p-wy).
inline Fingerprint braid_act_quintuple(BraidLetter l, const Fingerprint& f) {
    if (!f.all_order_two())
        throw UnsupportedCase("braid_act_quintuple: closed form needs t1 = t2 = t3 = -1; act on triples instead");
    const CycloNum &w = f.w, &x = f.x, &y = f.y, &p = f.p, &q = f.q;
    Fingerprint r = f;
    switch (l) {
        case BraidLetter::b1: {
            const CycloNum wy = w * y;
            r.x = y;
            r.y = x + p + q + wy;
            r.p = -q - wy;
            r.q = -p - wy;
            break;
        }
        case BraidLetter::b2: {
            const CycloNum xy = x * y;
            r.w = x;
            r.x = w + p + q + xy;
            r.p = -q - xy;
            r.q = -p - xy;
            break;
        }
        case BraidLetter::b1_inv: {
            const CycloNum wx = w * x;
            r.x = y + p + q + wx;
            r.y = x;
            r.p = -q - wx;
            r.q = -p - wx;
            break;
        }
        case BraidLetter::b2_inv: {
            const CycloNum wy = w * y;
            r.w = x + p + q + wy;
            r.x = w;
            r.p = -q - wy;
            r.q = -p - wy;
            break;
        }
    }
    // b1 swaps t1,t2 and b2 swaps t2,t3; all equal here.
    return r;
}

enum class BraidGroupKind { full, pure };

using Partition = std::vector<int>;  // descending

inline Partition cycle_type(const std::vector<std::size_t>& perm) {
    std::vector<bool> seen(perm.size(), false);
    Partition parts;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            ++len;
        }
        parts.push_back(len);
    }
    std::sort(parts.rbegin(), parts.rend());
    return parts;
}

// Genus g of a connected cover of the sphere with n sheets branched over
// three points: 2 - 2g = 2n - sum (n - #parts).
inline int cover_genus(int branches, const std::array<Partition, 3>& types) {
    if (branches < 1) throw std::invalid_argument("cover_genus: need at least one branch");
    long ramification = 0;
    for (const auto& part : types) {
        long sum = 0;
        for (int k : part) {
            if (k < 1) throw std::invalid_argument("cover_genus: parts must be positive");
            sum += k;
        }
        if (sum != branches) throw std::invalid_argument("cover_genus: cycle type is not a partition of the branch count");
        ramification += branches - static_cast<long>(part.size());
    }
    const long twice = ramification - 2L * branches + 2;
    if (twice < 0 || twice % 2 != 0) throw std::domain_error("cover_genus: data inconsistent with Riemann-Hurwitz");
    return static_cast<int>(twice / 2);
}

struct OrbitReport {
    BraidGroupKind kind = BraidGroupKind::full;
    bool quintuple_level = false;
    std::vector<Fingerprint> seeds;
    std::vector<Fingerprint> orbit;
    std::vector<Triple> representatives;  // empty at quintuple level
    // Images (0-based) under b1^2, b2^2 and b1^2 followed by b2^2.
    std::vector<std::size_t> sigma1, sigma2, sigma_prod;
    std::array<Partition, 3> cycle_types;
    bool pure_transitive = false;
    std::optional<int> genus;  // when P3 acts transitively
    std::size_t branches() const { return orbit.size(); }
};

namespace detail {

struct OrbitPoint {
    Fingerprint fp;
    std::optional<Triple> triple;
};

inline OrbitPoint act_point(BraidLetter l, const OrbitPoint& pt, bool quintuple) {
    if (quintuple) return {braid_act_quintuple(l, pt.fp), std::nullopt};
    Triple t = braid_act(l, *pt.triple);
    Fingerprint f = fingerprint(t);
    return {std::move(f), std::move(t)};
}

inline OrbitReport orbit_impl(OrbitPoint seed, BraidGroupKind kind, bool quintuple, std::size_t bound) {
    OrbitReport rep;
    rep.kind = kind;
    rep.quintuple_level = quintuple;
    rep.seeds.push_back(seed.fp);
    std::vector<OrbitPoint> pts;
    std::unordered_map<std::string, std::size_t> index;
    auto add = [&](OrbitPoint p) -> std::size_t {
        std::string k = p.fp.key();
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        if (pts.size() >= bound) throw OrbitDiverged(bound);
        index.emplace(std::move(k), pts.size());
        pts.push_back(std::move(p));
        return pts.size() - 1;
    };
    auto square = [&](BraidLetter l, const OrbitPoint& p) { return act_point(l, act_point(l, p, quintuple), quintuple); };

    add(std::move(seed));
    for (std::size_t head = 0; head < pts.size(); ++head) {
        for (BraidLetter l : {BraidLetter::b1, BraidLetter::b2}) {
            OrbitPoint cur = pts[head];
            add(kind == BraidGroupKind::full ? act_point(l, cur, quintuple) : square(l, cur));
        }
    }
    const std::size_t n = pts.size();
    rep.sigma1.resize(n);
    rep.sigma2.resize(n);
    rep.sigma_prod.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        rep.sigma1[i] = index.at(square(BraidLetter::b1, pts[i]).fp.key());
        rep.sigma2[i] = index.at(square(BraidLetter::b2, pts[i]).fp.key());
    }
    for (std::size_t i = 0; i < n; ++i) rep.sigma_prod[i] = rep.sigma2[rep.sigma1[i]];
    rep.cycle_types = {cycle_type(rep.sigma1), cycle_type(rep.sigma2), cycle_type(rep.sigma_prod)};

    // P3 transitivity on the collected points.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    for (std::size_t i = 0; i < n; ++i) {
        parent[find(i)] = find(rep.sigma1[i]);
        parent[find(i)] = find(rep.sigma2[i]);
    }
    std::size_t comps = 0;
    for (std::size_t i = 0; i < n; ++i) comps += find(i) == i;
    rep.pure_transitive = comps == 1;
    if (rep.pure_transitive) rep.genus = cover_genus(static_cast<int>(n), rep.cycle_types);

    for (auto& p : pts) {
        rep.orbit.push_back(p.fp);
        if (p.triple) rep.representatives.push_back(*p.triple);
    }
    return rep;
}

}  // namespace detail

// Orbit of a triple. Uses the polynomial action on fingerprints when every
// t_i = -1, otherwise acts on triples and projects through the fingerprint.
inline OrbitReport orbit(const Triple& seed, BraidGroupKind kind, std::size_t bound = 1000000) {
    Fingerprint f = fingerprint(seed);
    const bool quintuple = f.all_order_two();
    return detail::orbit_impl({std::move(f), seed}, kind, quintuple, bound);
}

inline OrbitReport orbit(const Fingerprint& seed, BraidGroupKind kind, std::size_t bound = 1000000) {
    if (!seed.all_order_two())
        throw UnsupportedCase("orbit: fingerprint-level action needs t1 = t2 = t3 = -1; pass a triple instead");
    return detail::orbit_impl({seed, std::nullopt}, kind, true, bound);
}

// B3 orbits on a class set, as lists of class indices (each sorted,
// orbits ordered by smallest member).
inline std::vector<std::vector<std::size_t>> braid_orbits(const std::vector<TripleClass>& classes) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < classes.size(); ++i) index.emplace(classes[i].fingerprint.key(), i);
    std::vector<std::size_t> parent(classes.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& c = classes[i];
        for (BraidLetter l : {BraidLetter::b1, BraidLetter::b2}) {
            const Fingerprint img = c.fingerprint.all_order_two() ? braid_act_quintuple(l, c.fingerprint)
                                                                  : fingerprint(braid_act(l, c.representative));
            auto it = index.find(img.key());
            if (it == index.end()) throw std::domain_error("braid_orbits: class set is not closed under the braid action");
            parent[find(i)] = find(it->second);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < classes.size(); ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

// Multiset of B3-orbit sizes, ascending.
inline std::vector<std::size_t> orbit_partition(const std::vector<TripleClass>& classes) {
    std::vector<std::size_t> sizes;
    for (const auto& o : braid_orbits(classes)) sizes.push_back(o.size());
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

}  // namespace crpvi
