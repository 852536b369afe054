#pragma once

// The triply generated three-dimensional complex reflection groups:
// G(m,1,3), G(m,m,3) and the exceptional groups of orders 120, 336, 648,
// 1296 and 2160, each with a standard generating triple of reflections.

#include "crpvi/mat3.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <numeric>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace crpvi {

using Triple = std::array<Mat3, 3>;

class ClosureBoundExceeded : public std::runtime_error {
public:
    explicit ClosureBoundExceeded(std::size_t bound)
        : std::runtime_error("group closure exceeded " + std::to_string(bound) + " elements"), bound_(bound) {}
    std::size_t bound() const { return bound_; }

private:
    std::size_t bound_;
};

enum class ExceptionalId { icosahedral, G336, G648, G1296, G2160 };

class GroupSpec {
public:
    static GroupSpec imprimitive(int m, int p) {
        if (m < 2) throw std::invalid_argument("G(m,p,3) requires m >= 2");
        if (p != 1 && p != m) throw std::invalid_argument("G(m,p,3) is generated by three reflections only for p = 1 or p = m");
        GroupSpec s;
        s.imprimitive_ = true;
        s.m_ = m;
        s.p_ = p;
        return s;
    }
    static GroupSpec exceptional(ExceptionalId id) {
        GroupSpec s;
        s.imprimitive_ = false;
        s.id_ = id;
        return s;
    }

    // Accepts G(m,p,3), G336, G648, G1296, G2160, icosahedral / H3 / G120.
    static GroupSpec parse(std::string_view text) {
        std::string s(text);
        std::smatch mm;
        static const std::regex imp(R"(\s*G\(\s*(\d+)\s*,\s*(\d+)\s*,\s*3\s*\)\s*)");
        if (std::regex_match(s, mm, imp)) return imprimitive(std::stoi(mm[1]), std::stoi(mm[2]));
        std::string low;
        for (char c : s)
            if (c != ' ') low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (low == "icosahedral" || low == "h3" || low == "g120") return exceptional(ExceptionalId::icosahedral);
        if (low == "g336" || low == "klein") return exceptional(ExceptionalId::G336);
        if (low == "g648") return exceptional(ExceptionalId::G648);
        if (low == "g1296") return exceptional(ExceptionalId::G1296);
        if (low == "g2160") return exceptional(ExceptionalId::G2160);
        throw std::invalid_argument("unknown group spec '" + s + "'");
    }

    bool is_imprimitive() const { return imprimitive_; }
    int m() const { return m_; }
    int p() const { return p_; }
    ExceptionalId id() const { return id_; }

    std::string name() const {
        if (imprimitive_) return "G(" + std::to_string(m_) + "," + std::to_string(p_) + ",3)";
        switch (id_) {
            case ExceptionalId::icosahedral: return "icosahedral";
            case ExceptionalId::G336: return "G336";
            case ExceptionalId::G648: return "G648";
            case ExceptionalId::G1296: return "G1296";
            case ExceptionalId::G2160: return "G2160";
        }
        return "?";
    }

    std::size_t expected_order() const {
        if (imprimitive_) return static_cast<std::size_t>(6 * m_ * m_ * m_ / p_);
        switch (id_) {
            case ExceptionalId::icosahedral: return 120;
            case ExceptionalId::G336: return 336;
            case ExceptionalId::G648: return 648;
            case ExceptionalId::G1296: return 1296;
            case ExceptionalId::G2160: return 2160;
        }
        return 0;
    }

    // Degrees of the basic invariants, ascending.
    std::array<int, 3> degrees() const {
        std::array<int, 3> d{};
        if (imprimitive_) {
            d = p_ == 1 ? std::array<int, 3>{m_, 2 * m_, 3 * m_} : std::array<int, 3>{3, m_, 2 * m_};
        } else {
            switch (id_) {
                case ExceptionalId::icosahedral: d = {2, 6, 10}; break;
                case ExceptionalId::G336: d = {4, 6, 14}; break;
                case ExceptionalId::G648: d = {6, 9, 12}; break;
                case ExceptionalId::G1296: d = {6, 12, 18}; break;
                case ExceptionalId::G2160: d = {6, 12, 30}; break;
            }
        }
        std::sort(d.begin(), d.end());
        return d;
    }

    friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
        if (a.imprimitive_ != b.imprimitive_) return false;
        return a.imprimitive_ ? (a.m_ == b.m_ && a.p_ == b.p_) : a.id_ == b.id_;
    }

private:
    bool imprimitive_ = true;
    int m_ = 2, p_ = 1;
    ExceptionalId id_ = ExceptionalId::G336;
};

// Triple in the normal form r_i = 1 + e_i (x) alpha_i, where the rows of U
// are the forms alpha_i and U_ii = t_i - 1. The torus gauge is fixed by
// u21 = u31 = 1 (w, x nonzero) or, for x = p = q = 0, by u21 = u32 = 1.
inline Triple triple_from_invariants(const std::array<CycloNum, 3>& t, const CycloNum& w, const CycloNum& x,
                                     const CycloNum& y, const CycloNum& p, const CycloNum& q) {
    Mat3 u;
    for (int i = 0; i < 3; ++i) u(i, i) = t[static_cast<std::size_t>(i)] - CycloNum(1);
    if (!w.is_zero() && !x.is_zero()) {
        u(1, 0) = 1;
        u(2, 0) = 1;
        u(0, 1) = w;
        u(0, 2) = x;
        u(1, 2) = p / w;
        u(2, 1) = q / x;
    } else if (x.is_zero() && p.is_zero() && q.is_zero()) {
        u(0, 1) = w;
        u(1, 0) = 1;
        u(1, 2) = y;
        u(2, 1) = 1;
    } else {
        throw std::invalid_argument("triple_from_invariants: unsupported invariant pattern");
    }
    Triple r;
    for (int i = 0; i < 3; ++i) {
        Mat3 m = Mat3::identity();
        for (int j = 0; j < 3; ++j) m(i, j) += u(i, j);
        r[static_cast<std::size_t>(i)] = m;
    }
    return r;
}

inline Triple standard_generators(const GroupSpec& spec) {
    const CycloNum one(1), zero(0);
    if (spec.is_imprimitive()) {
        const int m = spec.m();
        const CycloNum z = root_of_unity(m, 1);
        const Mat3 s12 = Mat3::permutation({1, 0, 2});
        const Mat3 s23 = Mat3::permutation({0, 2, 1});
        if (spec.p() == 1) return {s12, s23, Mat3::diag(one, one, z)};
        Mat3 twisted;
        twisted(0, 0) = one;
        twisted(1, 2) = z.inverse();
        twisted(2, 1) = z;
        return {s12, twisted, s23};
    }
    const CycloNum minus_one(-1);
    switch (spec.id()) {
        case ExceptionalId::icosahedral: {
            // golden ratio + 1 = 4 cos^2(pi/5)
            const CycloNum w = CycloNum(2) + root_of_unity(5, 1) + root_of_unity(5, 4);
            return triple_from_invariants({minus_one, minus_one, minus_one}, w, zero, one, zero, zero);
        }
        case ExceptionalId::G336: {
            const CycloNum p = root_of_unity(7, 1) + root_of_unity(7, 2) + root_of_unity(7, 4);
            return triple_from_invariants({minus_one, minus_one, minus_one}, one, CycloNum(2), one, p, p.conj());
        }
        case ExceptionalId::G648: {
            const CycloNum t = root_of_unity(3, 2);
            return triple_from_invariants({t, t, t}, -t, zero, -t, zero, zero);
        }
        case ExceptionalId::G1296: {
            const CycloNum t = root_of_unity(3, 2);
            return triple_from_invariants({minus_one, t, t}, CycloNum(2) + root_of_unity(3, 1), zero, -t, zero, zero);
        }
        case ExceptionalId::G2160: {
            const CycloNum golden = CycloNum(1) + root_of_unity(30, 6) + root_of_unity(30, 24);
            const CycloNum coxeter_trace = root_of_unity(30, 5) + root_of_unity(30, 11) + root_of_unity(30, 29);
            const CycloNum p = coxeter_trace - golden - one;
            return triple_from_invariants({minus_one, minus_one, minus_one}, golden + one, CycloNum(2), one, p,
                                          p.conj());
        }
    }
    throw std::logic_error("standard_generators: unhandled group");
}

// Breadth-first closure; elements in discovery order, identity first. All
// matrices are lifted to the common conductor of the generators.
inline std::vector<Mat3> enumerate_elements(const std::vector<Mat3>& generators, std::size_t bound = 100000) {
    unsigned n = 1;
    for (const auto& g : generators) n = std::lcm(n, g.common_conductor());
    std::vector<Mat3> gens;
    for (const auto& g : generators) {
        if (g.det().is_zero()) throw std::invalid_argument("enumerate_elements: singular generator");
        gens.push_back(g.lifted(n));
    }
    std::vector<Mat3> elems{Mat3::identity().lifted(n)};
    std::unordered_map<Mat3, std::size_t, Mat3RawHash> seen{{elems[0], 0}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : gens) {
            Mat3 h = elems[head] * g;
            if (seen.contains(h)) continue;
            if (elems.size() >= bound) throw ClosureBoundExceeded(bound);
            seen.emplace(h, elems.size());
            elems.push_back(std::move(h));
        }
    }
    return elems;
}

class ReflectionGroup {
public:
    GroupSpec spec;
    Triple generators;
    std::vector<Mat3> elements;
    std::size_t order = 0;
    std::array<int, 3> degrees{};
    std::vector<Mat3> reflections;
    unsigned conductor = 1;
    std::size_t reflection_class_count = 0;  // conjugacy classes among reflections

    bool contains(const Mat3& m) const { return index_.contains(m.lifted(std::lcm(conductor, m.common_conductor()))); }

    std::size_t index_of(const Mat3& m) const {
        auto it = index_.find(m.lifted(conductor));
        if (it == index_.end()) throw std::out_of_range("element not in group");
        return it->second;
    }

    void build_index() {
        index_.clear();
        for (std::size_t i = 0; i < elements.size(); ++i) index_.emplace(elements[i], i);
    }

private:
    std::unordered_map<Mat3, std::size_t, Mat3RawHash> index_;
};

// All g with rank(g - I) = 1 and det g != 0, in element order.
inline std::vector<Mat3> reflections_of(const ReflectionGroup& g) {
    std::vector<Mat3> out;
    for (const auto& e : g.elements)
        if (is_pseudo_reflection(e)) out.push_back(e);
    return out;
}

inline std::size_t count_conjugacy_classes(const std::vector<Mat3>& members, const Triple& gens,
                                           const ReflectionGroup& g) {
    std::unordered_map<Mat3, std::size_t, Mat3RawHash> idx;
    for (std::size_t i = 0; i < members.size(); ++i) idx.emplace(members[i], i);
    std::vector<std::size_t> parent(members.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    std::array<Mat3, 3> inv;
    std::array<Mat3, 3> lifted;
    for (std::size_t k = 0; k < 3; ++k) {
        lifted[k] = gens[k].lifted(g.conductor);
        inv[k] = lifted[k].inverse();
    }
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t k = 0; k < 3; ++k) {
            auto it = idx.find(lifted[k] * members[i] * inv[k]);
            if (it == idx.end()) throw std::logic_error("conjugate of a reflection is not a reflection");
            parent[find(i)] = find(it->second);
        }
    std::size_t classes = 0;
    for (std::size_t i = 0; i < members.size(); ++i) classes += find(i) == i;
    return classes;
}

// Closure of an arbitrary generating triple, without catalogue validation;
// spec and degrees are left unset.
inline ReflectionGroup group_from_generators(const Triple& gens, std::size_t bound = 100000) {
    ReflectionGroup g;
    g.elements = enumerate_elements({gens[0], gens[1], gens[2]}, bound);
    g.conductor = g.elements.front().common_conductor();
    for (std::size_t k = 0; k < 3; ++k) g.generators[k] = gens[k].lifted(g.conductor);
    g.order = g.elements.size();
    g.build_index();
    g.reflections = reflections_of(g);
    g.reflection_class_count = count_conjugacy_classes(g.reflections, g.generators, g);
    return g;
}

inline ReflectionGroup build_group(const GroupSpec& spec, std::size_t bound_factor = 10) {
    const Triple gens = standard_generators(spec);
    for (const auto& r : gens)
        if (!is_pseudo_reflection(r)) throw std::logic_error(spec.name() + ": generator is not a pseudo-reflection");
    ReflectionGroup g = group_from_generators(gens, bound_factor * spec.expected_order());
    g.spec = spec;
    g.degrees = spec.degrees();
    if (g.order != spec.expected_order())
        throw std::logic_error(spec.name() + ": closure has " + std::to_string(g.order) + " elements, expected " +
                               std::to_string(spec.expected_order()));
    const auto& d = g.degrees;
    if (static_cast<std::size_t>(d[0] * d[1] * d[2]) != g.order)
        throw std::logic_error(spec.name() + ": product of degrees differs from the order");
    if (g.reflections.size() != static_cast<std::size_t>(d[0] + d[1] + d[2] - 3))
        throw std::logic_error(spec.name() + ": reflection count differs from the sum of exponents");
    return g;
}

// Order of the subgroup generated by the triple (closure inside the group).
inline std::size_t generated_order(const Triple& triple, const ReflectionGroup& g) {
    return enumerate_elements({triple[0], triple[1], triple[2]}, g.order + 1).size();
}

}  // namespace crpvi
