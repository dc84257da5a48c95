#pragma once

// Point varieties of S_omega. The reduced point variety is the intersection of
// the hypersurfaces V(X_i X_j X_k) over all triples with q_(ijk) != 1, which
// is a union of coordinate subspaces V(X_S): one for each minimal set S of
// coordinates meeting every such triple.
//
// An independent rank oracle samples points and tests rank A_x <= n - 1,
// where A_x is the C(n,2) x n matrix whose row (i,j) encodes the relation
// x_j y_i - omega_ij x_i y_j.

#include "skewproj/error.hpp"
#include "skewproj/exactnum.hpp"
#include "skewproj/skewalg.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace skewproj {

/// Largest n for which coordinate subsets are enumerated.
inline constexpr std::size_t kMaxSubsetEnumeration = 24;
inline constexpr std::size_t kMaxOracleSize = 6;

struct TripleSet {
    std::size_t n = 0;
    std::set<Triple> triples;
};

inline TripleSet nontrivial_triples(const ParameterMatrix& omega) {
    TripleSet out{omega.n(), {}};
    for (const auto& [t, q] : all_triple_qnumbers(omega))
        if (!q.is_one()) out.triples.insert(t);
    return out;
}

using IndexSet = std::vector<std::size_t>;  // sorted, 0-based

/// Union of coordinate subspaces V(X_S), one per component S.
struct PointVariety {
    std::size_t n = 0;
    std::vector<IndexSet> components;  // sorted by size, then lexicographically

    /// Projective dimension of each component, in component order.
    std::vector<std::size_t> dimensions() const {
        std::vector<std::size_t> d;
        for (const auto& s : components) d.push_back(n - 1 - s.size());
        return d;
    }

    std::vector<std::size_t> dimension_multiset() const {
        auto d = dimensions();
        std::sort(d.begin(), d.end(), std::greater<>());
        return d;
    }

    bool is_whole_space() const { return components.size() == 1 && components.front().empty(); }

    friend bool operator==(const PointVariety&, const PointVariety&) = default;
};

inline void normalize(PointVariety& v) {
    for (auto& s : v.components) std::sort(s.begin(), s.end());
    std::sort(v.components.begin(), v.components.end(), [](const IndexSet& a, const IndexSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    v.components.erase(std::unique(v.components.begin(), v.components.end()), v.components.end());
}

inline std::string render_component(const IndexSet& s, std::size_t n) {
    if (s.empty()) return "P^" + std::to_string(n - 1);
    std::string out = "V(";
    for (std::size_t t = 0; t < s.size(); ++t) out += (t ? ",X" : "X") + std::to_string(s[t] + 1);
    return out + ")";
}

inline std::string render(const PointVariety& v) {
    std::string out;
    for (std::size_t t = 0; t < v.components.size(); ++t)
        out += (t ? " ∪ " : "") + render_component(v.components[t], v.n);
    return out;
}

namespace detail {

inline IndexSet bits_to_set(std::uint32_t mask) {
    IndexSet s;
    for (std::size_t i = 0; mask; ++i, mask >>= 1)
        if (mask & 1) s.push_back(i);
    return s;
}

inline std::uint32_t set_to_bits(const IndexSet& s) {
    std::uint32_t m = 0;
    for (auto i : s) m |= 1u << i;
    return m;
}

// Subsets of {0..n-1} ordered by size, then by their mask value.
inline std::vector<std::uint32_t> subsets_by_size(std::size_t n) {
    std::vector<std::uint32_t> masks(std::size_t{1} << n);
    for (std::uint32_t m = 0; m < masks.size(); ++m) masks[m] = m;
    std::stable_sort(masks.begin(), masks.end(),
                     [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
    return masks;
}

}  // namespace detail

/// Minimal sets meeting every triple.
inline PointVariety minimal_hitting_sets(const TripleSet& ts) {
    if (ts.n > kMaxSubsetEnumeration)
        throw Error(ErrorKind::SearchLimit, "subset enumeration over n = " + std::to_string(ts.n));
    std::vector<std::uint32_t> triple_masks;
    for (const auto& t : ts.triples) triple_masks.push_back(detail::set_to_bits({t.i, t.j, t.k}));
    std::vector<std::uint32_t> minimal;
    for (auto m : detail::subsets_by_size(ts.n)) {
        bool hits = std::all_of(triple_masks.begin(), triple_masks.end(), [m](std::uint32_t t) { return (m & t) != 0; });
        if (!hits) continue;
        bool dominated = std::any_of(minimal.begin(), minimal.end(), [m](std::uint32_t s) { return (s & m) == s; });
        if (!dominated) minimal.push_back(m);
    }
    PointVariety v{ts.n, {}};
    for (auto m : minimal) v.components.push_back(detail::bits_to_set(m));
    normalize(v);
    return v;
}

inline PointVariety point_variety(const ParameterMatrix& omega) {
    if (omega.n() < 3) throw Error(ErrorKind::Domain, "point variety needs n >= 3");
    return minimal_hitting_sets(nontrivial_triples(omega));
}

/// pi . V: every component S becomes pi(S).
inline PointVariety permuted(const PointVariety& v, const Permutation& pi) {
    PointVariety out{v.n, {}};
    for (const auto& s : v.components) {
        IndexSet t;
        for (auto i : s) t.push_back(pi.at(i));
        out.components.push_back(std::move(t));
    }
    normalize(out);
    return out;
}

/// Lexicographically smallest coordinate permutation carrying V onto V'.
inline std::optional<Permutation> compare_point_varieties(const PointVariety& v, const PointVariety& v_p) {
    if (v.n != v_p.n) throw Error(ErrorKind::Domain, "point varieties live in different projective spaces");
    if (v.components.size() != v_p.components.size() || v.dimension_multiset() != v_p.dimension_multiset())
        return std::nullopt;
    std::optional<Permutation> found;
    search_permutations(v.n, [&](const Permutation& pi) {
        if (permuted(v, pi) != v_p) return false;
        found = pi;
        return true;
    });
    return found;
}

// ---------------------------------------------------------------------------
// n = 4 case table

struct P3Case {
    int case_id = 0;
    std::string description;
};

inline std::vector<std::size_t> p3_case_dimensions(int case_id) {
    switch (case_id) {
    case 1: return {3};
    case 2: return {2, 2, 1};
    case 3: return {2, 1, 1, 1};
    case 4: return {1, 1, 1, 1, 1, 1};
    }
    throw Error(ErrorKind::Domain, "no such case");
}

/// Case of the point variety of P^3_omega, read off (q_(123), q_(124), q_(134)).
/// The relation q_(234) = q_(123) q_(134) q_(124)^{-1} fixes the fourth triple, and
/// the table below is exactly the count of nontrivial triples (0, 2, 3 or 4).
inline P3Case classify_p3(const ParameterMatrix& omega) {
    if (omega.n() != 4) throw Error(ErrorKind::Domain, "classification applies to n = 4 only");
    const GroupElement a = q_cycle(omega, {0, 1, 2});
    const GroupElement b = q_cycle(omega, {0, 1, 3});
    const GroupElement c = q_cycle(omega, {0, 2, 3});
    const bool a1 = a.is_one(), b1 = b.is_one(), c1 = c.is_one();

    if (a1 && b1 && c1) return {1, "P^3"};

    const bool case2 = (a1 && b1 && !c1) || (a1 && c1 && !b1) || (b1 && c1 && !a1) || (a1 && !b1 && b == c) ||
                       (b1 && !a1 && a == inv(c)) || (c1 && !a1 && a == b);
    if (case2) return {2, "two planes and one line"};

    const bool case3 = (a1 && !b1 && !c1 && b != c) || (b1 && !a1 && !c1 && a != inv(c)) ||
                       (c1 && !a1 && !b1 && a != b) || (!a1 && !b1 && !c1 && mul(a, c) == b);
    if (case3) return {3, "one plane and three lines"};

    return {4, "six lines"};
}

// ---------------------------------------------------------------------------
// Rank oracle

struct PointMatrix {
    std::size_t n = 0;
    std::vector<std::pair<std::size_t, std::size_t>> row_pairs;  // (i, j), i < j
    std::vector<std::vector<Rational>> entries;                 // C(n,2) x n
};

/// Row (i<j) holds x_j at column i and -omega_ij x_i at column j.
inline PointMatrix build_point_matrix(const ParameterMatrix& omega, const std::vector<Rational>& x, const Assignment& assignment) {
    const std::size_t n = omega.n();
    if (x.size() != n) throw Error(ErrorKind::Domain, "point has the wrong number of coordinates");
    if (std::all_of(x.begin(), x.end(), [](const Rational& v) { return v == 0; }))
        throw Error(ErrorKind::Domain, "the zero vector is not a projective point");
    PointMatrix a;
    a.n = n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<Rational> row(n, Rational(0));
            row[i] = x[j];
            row[j] = -embed_rational(omega.at(i, j), omega.basis(), assignment) * x[i];
            a.row_pairs.emplace_back(i, j);
            a.entries.push_back(std::move(row));
        }
    return a;
}

inline std::size_t rank(const PointMatrix& a) {
    auto m = a.entries;
    std::size_t r = 0;
    for (std::size_t col = 0; col < a.n && r < m.size(); ++col) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][col] == 0) continue;
            Rational f = m[i][col] / m[r][col];
            for (std::size_t j = col; j < a.n; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

/// Distinct primes outside the basis for every formal generator.
inline Assignment fresh_prime_assignment(const GeneratorBasis& basis) {
    Assignment out;
    std::uint64_t p = 1;
    for (const auto& g : basis.generators()) {
        if (g.is_prime()) continue;
        do {
            ++p;
        } while (!detail::is_prime(p) || basis.find(Generator::concrete(p)));
        out[g.symbol] = Rational(BigInt(p));
    }
    return out;
}

/// Point variety estimated from the rank of A_x at sampled points with prescribed zero sets.
inline PointVariety oracle_point_variety(const ParameterMatrix& omega, std::uint64_t seed, int trials) {
    const std::size_t n = omega.n();
    if (n > kMaxOracleSize) throw Error(ErrorKind::SearchLimit, "rank oracle is limited to n <= " + std::to_string(kMaxOracleSize));
    if (trials < 1) throw Error(ErrorKind::Domain, "trials must be >= 1");
    const Assignment assignment = fresh_prime_assignment(omega.basis());
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> coord(-1'000'000, 999'999);  // shifted below to skip 0

    std::vector<std::uint32_t> accepted;
    const std::uint32_t full = (1u << n) - 1;
    for (auto mask : detail::subsets_by_size(n)) {
        if (mask == full) continue;
        bool on_variety = true;
        for (int t = 0; t < trials && on_variety; ++t) {
            std::vector<Rational> x(n, Rational(0));
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (1u << i)) continue;
                long long v = coord(rng);
                x[i] = Rational(v >= 0 ? v + 1 : v);
            }
            on_variety = rank(build_point_matrix(omega, x, assignment)) <= n - 1;
        }
        if (on_variety) accepted.push_back(mask);
    }
    PointVariety v{n, {}};
    for (auto m : accepted) {
        bool minimal = std::none_of(accepted.begin(), accepted.end(),
                                    [m](std::uint32_t s) { return s != m && (s & m) == s; });
        if (minimal) v.components.push_back(detail::bits_to_set(m));
    }
    normalize(v);
    return v;
}

}  // namespace skewproj
