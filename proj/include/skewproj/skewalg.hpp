#pragma once

// Skew polynomial algebras S_omega = K<X_1..X_n> / (X_j X_i - omega_ij X_i X_j):
// cyclic q-numbers, graded isomorphism, graded Morita equivalence and the
// Beilinson quiver presentation of B_omega.
//
// Indices are 0-based in the API and 1-based in every rendered string.

#include "skewproj/error.hpp"
#include "skewproj/exactnum.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace skewproj {

/// Exhaustive searches over the symmetric group refuse sizes above this.
inline constexpr std::size_t kMaxPermutationSearch = 10;

using Permutation = std::vector<std::size_t>;

/// The table omega = (omega_ij) with omega_ii = 1 and omega_ij * omega_ji = 1.
class ParameterMatrix {
public:
    ParameterMatrix(GeneratorBasis basis, std::vector<std::vector<GroupElement>> entries)
        : basis_(std::move(basis)), entries_(std::move(entries)) {
        const std::size_t n = entries_.size();
        if (n < 2) throw Error(ErrorKind::Domain, "parameter matrix needs n >= 2");
        for (std::size_t i = 0; i < n; ++i) {
            if (entries_[i].size() != n) throw Error(ErrorKind::Domain, "parameter matrix is not square");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!entries_[i][i].is_one())
                throw Error(ErrorKind::Domain, "diagonal entry (" + std::to_string(i + 1) + "," + std::to_string(i + 1) + ") must be 1");
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!mul(entries_[i][j], entries_[j][i]).is_one())
                    throw Error(ErrorKind::Domain, "entries (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") and (" +
                                                       std::to_string(j + 1) + "," + std::to_string(i + 1) + ") are not inverse");
            }
        }
    }

    /// Builds the matrix from its strict upper triangle; the rest follows from reciprocity.
    static ParameterMatrix from_upper(GeneratorBasis basis, std::size_t n,
                                      const std::function<GroupElement(std::size_t, std::size_t)>& upper) {
        std::vector<std::vector<GroupElement>> e(n, std::vector<GroupElement>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                e[i][j] = upper(i, j);
                e[j][i] = inv(e[i][j]);
            }
        }
        return ParameterMatrix(std::move(basis), std::move(e));
    }

    std::size_t n() const { return entries_.size(); }
    const GeneratorBasis& basis() const { return basis_; }
    const GroupElement& at(std::size_t i, std::size_t j) const { return entries_.at(i).at(j); }
    const std::vector<std::vector<GroupElement>>& entries() const { return entries_; }

    ParameterMatrix with_basis(const GeneratorBasis& wider) const {
        if (!basis_.is_prefix_of(wider)) throw Error(ErrorKind::Domain, "basis is not an extension");
        return ParameterMatrix(wider, entries_);
    }

    friend bool operator==(const ParameterMatrix& a, const ParameterMatrix& b) { return a.entries_ == b.entries_; }

private:
    GeneratorBasis basis_;
    std::vector<std::vector<GroupElement>> entries_;
};

inline void require_same_size(const ParameterMatrix& a, const ParameterMatrix& b) {
    if (a.n() != b.n())
        throw Error(ErrorKind::Domain, "size mismatch: n = " + std::to_string(a.n()) + " vs n = " + std::to_string(b.n()) +
                                           " (spaces of different dimension are never equivalent)");
    (void)common_basis(a.basis(), b.basis());
}

inline Permutation identity_permutation(std::size_t n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    return p;
}

inline Permutation inverse(const Permutation& p) {
    Permutation q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = i;
    return q;
}

inline bool is_permutation_of_n(const Permutation& p, std::size_t n) {
    if (p.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (auto v : p) {
        if (v >= n || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

/// Calls `visit` on every permutation of {0..n-1} in lexicographic order until it returns true.
inline bool search_permutations(std::size_t n, const std::function<bool(const Permutation&)>& visit) {
    if (n > kMaxPermutationSearch)
        throw Error(ErrorKind::SearchLimit, "permutation search over n = " + std::to_string(n) + " exceeds the limit of " +
                                                std::to_string(kMaxPermutationSearch));
    Permutation p = identity_permutation(n);
    do {
        if (visit(p)) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

/// sigma . omega, defined by (sigma . omega)_{sigma(i) sigma(j)} = omega_ij.
inline ParameterMatrix permuted(const ParameterMatrix& omega, const Permutation& sigma) {
    if (!is_permutation_of_n(sigma, omega.n())) throw Error(ErrorKind::Domain, "not a permutation of the right size");
    std::vector<std::vector<GroupElement>> e(omega.n(), std::vector<GroupElement>(omega.n()));
    for (std::size_t i = 0; i < omega.n(); ++i)
        for (std::size_t j = 0; j < omega.n(); ++j) e[sigma[i]][sigma[j]] = omega.at(i, j);
    return ParameterMatrix(omega.basis(), std::move(e));
}

/// omega'_ij = m_i m_j^{-1} omega_ij.
inline ParameterMatrix scaled(const ParameterMatrix& omega, const std::vector<GroupElement>& m) {
    if (m.size() != omega.n()) throw Error(ErrorKind::Domain, "scale vector has the wrong length");
    std::vector<std::vector<GroupElement>> e(omega.n(), std::vector<GroupElement>(omega.n()));
    for (std::size_t i = 0; i < omega.n(); ++i)
        for (std::size_t j = 0; j < omega.n(); ++j) e[i][j] = mul(div(m[i], m[j]), omega.at(i, j));
    return ParameterMatrix(omega.basis(), std::move(e));
}

// ---------------------------------------------------------------------------
// q-cyclic numbers

/// Product of omega along a_1 -> a_2 -> ... -> a_k -> a_1.
inline GroupElement q_cycle(const ParameterMatrix& omega, std::span<const std::size_t> cycle) {
    const std::size_t k = cycle.size();
    if (k < 2 || k > omega.n()) throw Error(ErrorKind::Domain, "cycle length must be between 2 and n");
    std::vector<bool> seen(omega.n(), false);
    for (auto v : cycle) {
        if (v >= omega.n()) throw Error(ErrorKind::Domain, "cycle index " + std::to_string(v + 1) + " out of range");
        if (seen[v]) throw Error(ErrorKind::Domain, "cycle index " + std::to_string(v + 1) + " repeated");
        seen[v] = true;
    }
    GroupElement q;
    for (std::size_t t = 0; t < k; ++t) q = mul(q, omega.at(cycle[t], cycle[(t + 1) % k]));
    return q;
}

inline GroupElement q_cycle(const ParameterMatrix& omega, std::initializer_list<std::size_t> cycle) {
    return q_cycle(omega, std::span<const std::size_t>(cycle.begin(), cycle.size()));
}

/// An unordered triple i < j < k, canonically oriented as the cycle (i j k).
struct Triple {
    std::size_t i = 0, j = 0, k = 0;

    std::array<std::size_t, 3> as_array() const { return {i, j, k}; }
    bool contains(std::size_t v) const { return v == i || v == j || v == k; }
    std::string label() const {
        return "(" + std::to_string(i + 1) + std::to_string(j + 1) + std::to_string(k + 1) + ")";
    }

    friend auto operator<=>(const Triple&, const Triple&) = default;
};

inline std::vector<Triple> all_triples(std::size_t n) {
    std::vector<Triple> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) out.push_back({i, j, k});
    return out;
}

inline GroupElement q_triple(const ParameterMatrix& omega, const Triple& t) {
    auto c = t.as_array();
    return q_cycle(omega, std::span<const std::size_t>(c));
}

inline std::map<Triple, GroupElement> all_triple_qnumbers(const ParameterMatrix& omega) {
    if (omega.n() < 3) throw Error(ErrorKind::Domain, "triple q-numbers need n >= 3");
    std::map<Triple, GroupElement> out;
    for (const auto& t : all_triples(omega.n())) out.emplace(t, q_triple(omega, t));
    return out;
}

// ---------------------------------------------------------------------------
// Graded isomorphism and graded Morita equivalence

/// Lexicographically smallest sigma with omega'_{sigma(i) sigma(j)} = omega_ij.
inline std::optional<Permutation> check_isomorphism(const ParameterMatrix& omega, const ParameterMatrix& omega_p) {
    require_same_size(omega, omega_p);
    const std::size_t n = omega.n();
    std::optional<Permutation> found;
    search_permutations(n, [&](const Permutation& s) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (omega_p.at(s[i], s[j]) != omega.at(i, j)) return false;
        found = s;
        return true;
    });
    return found;
}

inline bool verify_iso_witness(const ParameterMatrix& omega, const ParameterMatrix& omega_p, const Permutation& sigma) {
    require_same_size(omega, omega_p);
    if (!is_permutation_of_n(sigma, omega.n())) return false;
    for (std::size_t i = 0; i < omega.n(); ++i)
        for (std::size_t j = 0; j < omega.n(); ++j)
            if (omega_p.at(sigma[i], sigma[j]) != omega.at(i, j)) return false;
    return true;
}

/// Certificate for omega'_{sigma(i) sigma(j)} = m_i m_j^{-1} omega_ij.
struct GradedWitness {
    Permutation sigma;
    std::vector<GroupElement> m;

    friend bool operator==(const GradedWitness&, const GradedWitness&) = default;
};

inline bool verify_graded_witness(const ParameterMatrix& omega, const ParameterMatrix& omega_p, const GradedWitness& w) {
    require_same_size(omega, omega_p);
    const std::size_t n = omega.n();
    if (!is_permutation_of_n(w.sigma, n) || w.m.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (omega_p.at(w.sigma[i], w.sigma[j]) != mul(div(w.m[i], w.m[j]), omega.at(i, j))) return false;
    return true;
}

/// Searches sigma lexicographically; for each, m is forced by the first row
/// (m_1 = 1, m_j = omega_1j / omega'_{sigma(1) sigma(j)}) and then checked on all pairs.
inline std::optional<GradedWitness> check_graded_equivalence(const ParameterMatrix& omega, const ParameterMatrix& omega_p) {
    require_same_size(omega, omega_p);
    const std::size_t n = omega.n();
    std::optional<GradedWitness> found;
    search_permutations(n, [&](const Permutation& s) {
        GradedWitness w{s, std::vector<GroupElement>(n)};
        for (std::size_t j = 1; j < n; ++j) w.m[j] = div(omega.at(0, j), omega_p.at(s[0], s[j]));
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (omega_p.at(s[i], s[j]) != mul(div(w.m[i], w.m[j]), omega.at(i, j))) return false;
        found = std::move(w);
        return true;
    });
    return found;
}

/// Smallest sigma with q_(1bc)(omega') = q_(sigma^-1(1) sigma^-1(b) sigma^-1(c))(omega) for
/// all b < c. The 3-cycles through a fixed vertex generate every cyclic q-number.
inline std::optional<Permutation> find_qnumber_permutation(const ParameterMatrix& omega, const ParameterMatrix& omega_p) {
    require_same_size(omega, omega_p);
    const std::size_t n = omega.n();
    if (n == 2) return identity_permutation(2);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<GroupElement> target;
    for (std::size_t b = 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) {
            pairs.emplace_back(b, c);
            target.push_back(q_cycle(omega_p, {0, b, c}));
        }
    std::optional<Permutation> found;
    search_permutations(n, [&](const Permutation& s) {
        Permutation si = inverse(s);
        for (std::size_t t = 0; t < pairs.size(); ++t) {
            auto [b, c] = pairs[t];
            if (q_cycle(omega, {si[0], si[b], si[c]}) != target[t]) return false;
        }
        found = s;
        return true;
    });
    return found;
}

inline bool check_graded_via_qnumbers(const ParameterMatrix& omega, const ParameterMatrix& omega_p) {
    return find_qnumber_permutation(omega, omega_p).has_value();
}

// ---------------------------------------------------------------------------
// Beilinson quiver presentation

struct QuiverArrow {
    std::size_t source = 0;    // vertex k (1-based), arrow goes k -> k+1
    std::size_t variable = 0;  // l (1-based): multiplication by X_l
    std::string label() const { return "a" + std::to_string(source) + "_" + std::to_string(variable); }
};

/// a{k}_{j} a{k-1}_{i} = scalar * a{k}_{i} a{k-1}_{j}, read right to left as paths.
struct QuiverRelation {
    std::size_t vertex = 0;  // inner vertex k (1-based)
    std::size_t i = 0, j = 0;  // 1-based, i < j
    GroupElement scalar;

    QuiverArrow lhs_outer() const { return {vertex, j}; }
    QuiverArrow lhs_inner() const { return {vertex - 1, i}; }
    QuiverArrow rhs_outer() const { return {vertex, i}; }
    QuiverArrow rhs_inner() const { return {vertex - 1, j}; }
};

struct QuiverPresentation {
    std::size_t vertex_count = 0;
    std::vector<QuiverArrow> arrows;
    std::vector<QuiverRelation> relations;
};

inline QuiverPresentation quiver_presentation(const ParameterMatrix& omega) {
    const std::size_t n = omega.n();
    QuiverPresentation q;
    q.vertex_count = n;
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t l = 1; l <= n; ++l) q.arrows.push_back({k, l});
    for (std::size_t k = 2; k + 1 <= n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) q.relations.push_back({k, i + 1, j + 1, omega.at(i, j)});
    return q;
}

inline std::string render_quiver(const QuiverPresentation& q, const GeneratorBasis& basis) {
    std::ostringstream out;
    out << "vertices: " << q.vertex_count << "\n";
    for (std::size_t v = 1; v <= q.vertex_count; ++v) out << "  v" << v << "\n";
    out << "arrows: " << q.arrows.size() << "\n";
    for (const auto& a : q.arrows) out << "  " << a.label() << ": v" << a.source << " -> v" << a.source + 1 << "\n";
    out << "relations: " << q.relations.size() << "\n";
    for (const auto& r : q.relations) {
        out << "  " << r.lhs_outer().label() << " " << r.lhs_inner().label() << " = " << render(r.scalar, basis) << " "
            << r.rhs_outer().label() << " " << r.rhs_inner().label() << "\n";
    }
    return out.str();
}

}  // namespace skewproj
