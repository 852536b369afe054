#pragma once

// Conjugation invariants of reflection triples, computed from traces:
//   Tr(r_i r_j)   = 1 + t_i + t_j + u_ij u_ji
//   Tr(r1 r2 r3)  = t1 + t2 + t3 + w + x + y + p
//   Tr(r3 r2 r1)  = t1 + t2 + t3 + w + x + y + q
// with w = u12 u21, x = u13 u31, y = u23 u32, p = u12 u23 u31, q = u32 u21 u13.

#include "crpvi/reflection_groups.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace crpvi {

struct Fingerprint {
    CycloNum t1, t2, t3;
    CycloNum w, x, y, p, q;

    std::array<CycloNum, 3> t() const { return {t1, t2, t3}; }
    std::array<CycloNum, 5> quintuple() const { return {w, x, y, p, q}; }

    bool all_order_two() const {
        const CycloNum m1(-1);
        return t1 == m1 && t2 == m1 && t3 == m1;
    }

    // Canonical text; equal fingerprints give equal keys.
    std::string key() const {
        std::string s;
        for (const CycloNum* v : {&t1, &t2, &t3, &w, &x, &y, &p, &q}) {
            s += v->key();
            s += '|';
        }
        return s;
    }

    friend bool operator==(const Fingerprint& a, const Fingerprint& b) {
        return a.t1 == b.t1 && a.t2 == b.t2 && a.t3 == b.t3 && a.w == b.w && a.x == b.x && a.y == b.y &&
               a.p == b.p && a.q == b.q;
    }
};

inline Fingerprint fingerprint(const Triple& r) {
    Fingerprint f;
    std::array<CycloNum, 3> t;
    for (std::size_t i = 0; i < 3; ++i) {
        auto ti = is_pseudo_reflection(r[i]);
        if (!ti) throw std::invalid_argument("fingerprint: component " + std::to_string(i + 1) + " is not a pseudo-reflection");
        t[i] = *ti;
    }
    const CycloNum one(1);
    f.t1 = t[0];
    f.t2 = t[1];
    f.t3 = t[2];
    const Mat3 r12 = r[0] * r[1];
    f.w = r12.trace() - one - t[0] - t[1];
    f.x = (r[0] * r[2]).trace() - one - t[0] - t[2];
    f.y = (r[1] * r[2]).trace() - one - t[1] - t[2];
    const CycloNum base = t[0] + t[1] + t[2] + f.w + f.x + f.y;
    f.p = (r12 * r[2]).trace() - base;
    f.q = (r[2] * r[1] * r[0]).trace() - base;
    return f;
}

struct TripleClass {
    Fingerprint fingerprint;
    Triple representative;
    std::size_t multiplicity = 0;
    std::size_t generated_order = 0;
};

// Groups triples of reflections by exact fingerprint. With first_fixed the
// triples are (first_fixed, a, b); otherwise all (a, b, c). Classes are
// sorted by fingerprint key, so the result is independent of jobs.
inline std::vector<TripleClass> classify_triples(const ReflectionGroup& g, const std::optional<Mat3>& first_fixed = std::nullopt,
                                                 unsigned jobs = 1) {
    const auto& refl = g.reflections;
    std::vector<Mat3> firsts;
    if (first_fixed) {
        const Mat3 f = first_fixed->lifted(std::lcm(g.conductor, first_fixed->common_conductor()));
        if (std::find(refl.begin(), refl.end(), f) == refl.end())
            throw std::invalid_argument("classify_triples: first_fixed is not a reflection of the group");
        firsts.push_back(f);
    } else {
        firsts = refl;
    }
    const std::size_t nr = refl.size();
    const std::size_t total = firsts.size() * nr * nr;

    struct Bucket {
        Fingerprint fp;
        std::size_t first_index;  // enumeration index of the representative
        std::size_t count;
    };
    using BucketMap = std::map<std::string, Bucket>;

    auto work = [&](std::size_t begin, std::size_t end, BucketMap& out) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            const std::size_t a = idx / (nr * nr), b = (idx / nr) % nr, c = idx % nr;
            Fingerprint fp = fingerprint({firsts[a], refl[b], refl[c]});
            std::string k = fp.key();
            auto it = out.find(k);
            if (it == out.end())
                out.emplace(std::move(k), Bucket{std::move(fp), idx, 1});
            else
                ++it->second.count;
        }
    };

    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, total))));
    std::vector<BucketMap> partial(jobs);
    {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (total + jobs - 1) / jobs;
        for (unsigned j = 0; j < jobs; ++j) {
            const std::size_t b = std::min(total, j * chunk), e = std::min(total, b + chunk);
            pool.emplace_back([&, b, e, j] { work(b, e, partial[j]); });
        }
    }
    BucketMap merged;
    for (auto& part : partial)
        for (auto& [k, bucket] : part) {
            auto it = merged.find(k);
            if (it == merged.end()) {
                merged.emplace(k, std::move(bucket));
            } else {
                it->second.count += bucket.count;
                it->second.first_index = std::min(it->second.first_index, bucket.first_index);
            }
        }

    std::vector<TripleClass> classes;
    classes.reserve(merged.size());
    for (auto& [k, bucket] : merged) {
        const std::size_t idx = bucket.first_index;
        TripleClass tc;
        tc.fingerprint = std::move(bucket.fp);
        tc.representative = {firsts[idx / (nr * nr)], refl[(idx / nr) % nr], refl[idx % nr]};
        tc.multiplicity = bucket.count;
        tc.generated_order = generated_order(tc.representative, g);
        classes.push_back(std::move(tc));
    }
    return classes;
}

}  // namespace crpvi
