#pragma once

// Quantum tori and birational classification.
//
// A quantum torus is recorded by the exponents of its commutation scalars: one
// alternating integer matrix per generator of the parameter group, plus a
// mod-2 matrix for the sign. Congruence Q' = A^T Q A with A in GL(Z)
// (applied to every generator at once) is the isomorphism relation; for a
// single generator it is decided by the alternating normal form
// diag([[0,e_1],[-e_1,0]], ..., 0) with e_1 | e_2 | ...

#include "skewproj/error.hpp"
#include "skewproj/exactnum.hpp"
#include "skewproj/intmatrix.hpp"
#include "skewproj/skewalg.hpp"

#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace skewproj {

/// Default entry bound for the GL(Z) search used with several generators or sign torsion.
inline constexpr long long kDefaultSearchBound = 2;
/// Largest candidate-column pool the bounded search will build.
inline constexpr std::size_t kMaxSearchColumns = 2'000'000;
/// Backtracking nodes visited before the bounded search gives up with UNKNOWN.
inline constexpr std::size_t kSearchNodeBudget = 50'000'000;

struct ExponentForm {
    std::size_t size = 0;
    GeneratorBasis basis;
    std::map<std::size_t, IntMatrix> per_generator;  // nonzero matrices only, keyed by basis index
    IntMatrix sign;                                  // symmetric, entries in {0,1}, zero diagonal

    bool has_sign_torsion() const { return !sign.is_zero(); }

    IntMatrix generator_matrix(std::size_t g) const {
        auto it = per_generator.find(g);
        return it == per_generator.end() ? IntMatrix(size, size) : it->second;
    }

    std::set<std::size_t> generators() const {
        std::set<std::size_t> out;
        for (const auto& [g, m] : per_generator) out.insert(g);
        return out;
    }
};

/// Exponent data of an alternating table: entry(i, j) with entry(j, i) = entry(i, j)^{-1}.
inline ExponentForm make_exponent_form(std::size_t size, const GeneratorBasis& basis,
                                       const std::function<GroupElement(std::size_t, std::size_t)>& entry) {
    ExponentForm f;
    f.size = size;
    f.basis = basis;
    f.sign = IntMatrix(size, size);
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = i + 1; j < size; ++j) {
            GroupElement e = entry(i, j);
            if (e.sign() < 0) f.sign(i, j) = f.sign(j, i) = 1;
            for (std::size_t g = 0; g < e.exponents().size(); ++g) {
                long long x = e.exponents()[g];
                if (x == 0) continue;
                auto [it, inserted] = f.per_generator.try_emplace(g, size, size);
                it->second(i, j) = x;
                it->second(j, i) = -x;
            }
        }
    return f;
}

/// Exponents of q_ij = q_(1ij)(omega) for i, j in 2..n (index 0 here is vertex 2).
inline ExponentForm q_exponent_form(const ParameterMatrix& omega) {
    if (omega.n() < 3) throw Error(ErrorKind::Domain, "q-form needs n >= 3");
    return make_exponent_form(omega.n() - 1, omega.basis(),
                              [&](std::size_t a, std::size_t b) { return q_cycle(omega, {0, a + 1, b + 1}); });
}

inline ExponentForm omega_exponent_form(const ParameterMatrix& omega) {
    return make_exponent_form(omega.n(), omega.basis(), [&](std::size_t i, std::size_t j) { return omega.at(i, j); });
}

// ---------------------------------------------------------------------------
// Alternating normal form over Z

struct SkewNormalForm {
    std::vector<long long> divisors;
    std::size_t rank = 0;
    IntMatrix transform;          // U with U^T M U = canonical form
    IntMatrix transform_inverse;  // U^{-1}
};

inline IntMatrix canonical_skew_form(std::size_t size, const std::vector<long long>& divisors) {
    IntMatrix c(size, size);
    for (std::size_t t = 0; t < divisors.size(); ++t) {
        c(2 * t, 2 * t + 1) = divisors[t];
        c(2 * t + 1, 2 * t) = -divisors[t];
    }
    return c;
}

namespace detail {

// Tracks W = U^T M U and U^{-1} under changes of basis.
class CongruenceReducer {
public:
    explicit CongruenceReducer(const IntMatrix& m)
        : w_(m), u_(IntMatrix::identity(m.rows())), u_inv_(IntMatrix::identity(m.rows())) {}

    // basis[target] += c * basis[source]
    void add(std::size_t target, std::size_t source, long long c) {
        if (c == 0) return;
        u_.add_col_multiple(target, source, c);
        w_.add_col_multiple(target, source, c);
        w_.add_row_multiple(target, source, c);
        u_inv_.add_row_multiple(source, target, -c);
    }

    void swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        u_.swap_cols(a, b);
        w_.swap_cols(a, b);
        w_.swap_rows(a, b);
        u_inv_.swap_rows(a, b);
    }

    const IntMatrix& form() const { return w_; }
    const IntMatrix& transform() const { return u_; }
    const IntMatrix& transform_inverse() const { return u_inv_; }

private:
    IntMatrix w_, u_, u_inv_;
};

}  // namespace detail

inline SkewNormalForm skew_normal_form(const IntMatrix& m) {
    if (!is_alternating(m)) throw Error(ErrorKind::Domain, "matrix is not alternating");
    const std::size_t n = m.rows();
    detail::CongruenceReducer red(m);
    SkewNormalForm out;
    std::size_t s = 0;
    while (s + 1 < n) {
        const IntMatrix& w = red.form();
        std::size_t p = n, q = n;
        for (std::size_t i = s; i < n; ++i)
            for (std::size_t j = s; j < n; ++j)
                if (w(i, j) != 0 && (p == n || std::llabs(w(i, j)) < std::llabs(w(p, q)))) {
                    p = i;
                    q = j;
                }
        if (p == n) break;
        red.swap(s, p);
        if (q == s) q = p;
        red.swap(s + 1, q);
        if (red.form()(s, s + 1) < 0) red.swap(s, s + 1);

        const long long e = red.form()(s, s + 1);
        bool reduced = true;
        for (std::size_t j = s + 2; j < n; ++j) {
            red.add(j, s + 1, -(red.form()(s, j) / e));
            red.add(j, s, red.form()(s + 1, j) / e);
            if (red.form()(s, j) != 0 || red.form()(s + 1, j) != 0) reduced = false;
        }
        if (!reduced) continue;

        // Every remaining entry must be a multiple of e; otherwise pull the
        // offending row into the pivot and reduce again with a smaller pivot.
        bool divides = true;
        for (std::size_t i = s + 2; i < n && divides; ++i)
            for (std::size_t j = s + 2; j < n; ++j)
                if (red.form()(i, j) % e != 0) {
                    red.add(s, i, 1);
                    divides = false;
                    break;
                }
        if (!divides) continue;

        out.divisors.push_back(e);
        s += 2;
    }
    out.rank = 2 * out.divisors.size();
    out.transform = red.transform();
    out.transform_inverse = red.transform_inverse();
    return out;
}

// ---------------------------------------------------------------------------
// Simplicity

/// A nonzero a in Z^size with prod_i entry(i, j)^{a_i} = 1 for every j, if one exists.
/// Such an a yields a central monomial, so the torus is simple iff none exists.
inline std::optional<IntVector> central_exponent_vector(const ExponentForm& f) {
    std::vector<IntVector> rows;
    for (const auto& [g, m] : f.per_generator)
        for (std::size_t j = 0; j < f.size; ++j) {
            IntVector row(f.size);
            for (std::size_t i = 0; i < f.size; ++i) row[i] = m(i, j);
            rows.push_back(std::move(row));
        }
    std::vector<IntVector> kernel;
    if (rows.empty()) {
        for (std::size_t i = 0; i < f.size; ++i) {
            IntVector e(f.size, 0);
            e[i] = 1;
            kernel.push_back(std::move(e));
        }
    } else {
        kernel = integer_kernel(IntMatrix::from_rows(rows));
    }
    if (kernel.empty()) return std::nullopt;
    // Any kernel vector works up to the sign; doubling it kills the sign.
    IntVector a = kernel.front();
    for (std::size_t j = 0; j < f.size; ++j) {
        long long parity = 0;
        for (std::size_t i = 0; i < f.size; ++i) parity += (a[i] & 1) * f.sign(i, j);
        if (parity % 2 != 0) {
            for (auto& x : a) x = detail::checked_mul(x, 2);
            break;
        }
    }
    return a;
}

inline bool is_torus_simple(const ParameterMatrix& omega) {
    return !central_exponent_vector(omega_exponent_form(omega)).has_value();
}

/// Genericity of the q-torus (simplicity of the torus built from q_(1ij)).
inline bool is_q_generic(const ParameterMatrix& omega) {
    return !central_exponent_vector(q_exponent_form(omega)).has_value();
}

// ---------------------------------------------------------------------------
// Birational equivalence

namespace detail {

inline long long mod2(long long x) { return ((x % 2) + 2) % 2; }

inline IntMatrix reduce_mod2(const IntMatrix& m) {
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = mod2(m(i, j));
    return r;
}

inline std::set<std::size_t> generator_union(const ExponentForm& a, const ExponentForm& b) {
    std::set<std::size_t> g = a.generators();
    for (auto x : b.generators()) g.insert(x);
    return g;
}

}  // namespace detail

/// det A = +-1 and A^T Q_g A = Q'_g for every generator g, with the sign data congruent mod 2.
inline bool forms_related_by(const ExponentForm& q, const ExponentForm& q_p, const IntMatrix& a) {
    if (a.rows() != q.size || a.cols() != q.size || q_p.size != q.size)
        throw Error(ErrorKind::Domain, "witness must be " + std::to_string(q.size) + "x" + std::to_string(q.size));
    if (!is_unimodular(a)) return false;
    const IntMatrix at = a.transpose();
    for (auto g : detail::generator_union(q, q_p))
        if (at * q.generator_matrix(g) * a != q_p.generator_matrix(g)) return false;
    return detail::reduce_mod2(at * q.sign * a) == q_p.sign;
}

inline bool verify_birational_witness(const ParameterMatrix& omega, const ParameterMatrix& omega_p, const IntMatrix& a) {
    require_same_size(omega, omega_p);
    return forms_related_by(q_exponent_form(omega), q_exponent_form(omega_p), a);
}

/// The q-torus map induced by a graded-equivalence permutation: Y_i = X_i X_1^{-1}
/// goes to the monomial with exponent e_{sigma^-1(i)} - e_{sigma^-1(1)} (e_1 = 0).
inline IntMatrix induced_birational_witness(const Permutation& sigma) {
    const std::size_t n = sigma.size();
    if (n < 3) throw Error(ErrorKind::Domain, "induced witness needs n >= 3");
    const Permutation si = inverse(sigma);
    IntMatrix a(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        if (si[i] != 0) a(si[i] - 1, i - 1) += 1;
        if (si[0] != 0) a(si[0] - 1, i - 1) -= 1;
    }
    return a;
}

struct BirationalVerdict {
    enum class Status { Equivalent, NotEquivalent, Unknown };

    Status status = Status::Unknown;
    std::optional<IntMatrix> witness;
    bool generic = false;
    std::string note;
};

inline const char* to_string(BirationalVerdict::Status s) {
    switch (s) {
    case BirationalVerdict::Status::Equivalent: return "EQUIVALENT";
    case BirationalVerdict::Status::NotEquivalent: return "NOT_EQUIVALENT";
    case BirationalVerdict::Status::Unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

namespace detail {

inline std::vector<IntVector> candidate_columns(std::size_t r, long long bound) {
    const std::size_t base = static_cast<std::size_t>(2 * bound + 1);
    std::size_t total = 1;
    for (std::size_t t = 0; t < r; ++t) {
        if (total > kMaxSearchColumns / base)
            throw Error(ErrorKind::SearchLimit, "bounded GL(Z) search: candidate pool exceeds " + std::to_string(kMaxSearchColumns));
        total *= base;
    }
    std::vector<IntVector> out;
    out.reserve(total);
    IntVector v(r, -bound);
    while (true) {
        bool zero = std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
        if (!zero) out.push_back(v);
        std::size_t t = r;
        while (t > 0) {
            --t;
            if (v[t] < bound) {
                ++v[t];
                break;
            }
            v[t] = -bound;
            if (t == 0) return out;
        }
        if (r == 0) return out;
    }
}

inline IntVector row_times(const IntVector& x, const IntMatrix& m) {
    IntVector out(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] = checked_add(out[j], checked_mul(x[i], m(i, j)));
    }
    return out;
}

inline long long dot(const IntVector& a, const IntVector& b) {
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
    return s;
}

struct BoundedSearch {
    const ExponentForm& q;
    const ExponentForm& q_p;
    std::vector<std::size_t> gens;
    std::vector<IntVector> pool;
    std::vector<std::size_t> chosen;
    std::vector<std::vector<IntVector>> row_forms;  // per chosen column: (c^T Q_g) per g, then c^T S last
    std::size_t nodes = 0;
    bool exhausted_budget = false;

    bool extend(std::size_t j) {
        const std::size_t r = q.size;
        if (j == r) {
            IntMatrix a(r, r);
            for (std::size_t c = 0; c < r; ++c)
                for (std::size_t i = 0; i < r; ++i) a(i, c) = pool[chosen[c]][i];
            return is_unimodular(a);
        }
        for (std::size_t idx = 0; idx < pool.size(); ++idx) {
            if (++nodes > kSearchNodeBudget) {
                exhausted_budget = true;
                return false;
            }
            const IntVector& c = pool[idx];
            bool ok = true;
            for (std::size_t i = 0; i < j && ok; ++i) {
                for (std::size_t g = 0; g < gens.size() && ok; ++g)
                    ok = dot(row_forms[i][g], c) == q_p.generator_matrix(gens[g])(i, j);
                if (ok) ok = mod2(dot(row_forms[i].back(), c)) == q_p.sign(i, j);
            }
            if (!ok) continue;
            chosen.push_back(idx);
            std::vector<IntVector> forms;
            for (auto g : gens) forms.push_back(row_times(c, q.generator_matrix(g)));
            forms.push_back(row_times(c, q.sign));
            row_forms.push_back(std::move(forms));
            if (extend(j + 1)) return true;
            chosen.pop_back();
            row_forms.pop_back();
            if (exhausted_budget) return false;
        }
        return false;
    }
};

}  // namespace detail

/// Searches A with entries in [-bound, bound], column by column, for A^T Q A = Q'.
/// Returns the witness, or nullopt with `budget_hit` reporting an incomplete search.
inline std::optional<IntMatrix> bounded_congruence_search(const ExponentForm& q, const ExponentForm& q_p, long long bound,
                                                          bool* budget_hit = nullptr) {
    if (bound < 1) throw Error(ErrorKind::Domain, "search bound must be >= 1");
    auto gens = detail::generator_union(q, q_p);
    detail::BoundedSearch search{q, q_p, {gens.begin(), gens.end()}, detail::candidate_columns(q.size, bound), {}, {}};
    bool found = search.extend(0);
    if (budget_hit) *budget_hit = search.exhausted_budget;
    if (!found) return std::nullopt;
    IntMatrix a(q.size, q.size);
    for (std::size_t c = 0; c < q.size; ++c)
        for (std::size_t i = 0; i < q.size; ++i) a(i, c) = search.pool[search.chosen[c]][i];
    return a;
}

inline std::string render_divisors(const std::vector<long long>& d) {
    std::string s = "[";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + "]";
}

/// Birational equivalence of P(omega) and P(omega') through congruence of their q-tori.
/// A found congruence proves equivalence; non-congruence proves inequivalence only when
/// the q-torus of omega is generic, and is reported as UNKNOWN otherwise.
inline BirationalVerdict check_birational(const ParameterMatrix& omega, const ParameterMatrix& omega_p,
                                          long long search_bound = kDefaultSearchBound) {
    require_same_size(omega, omega_p);
    if (omega.n() < 3) throw Error(ErrorKind::Domain, "birational check needs n >= 3");
    if (search_bound < 1) throw Error(ErrorKind::Domain, "search bound must be >= 1");

    const GeneratorBasis& basis = common_basis(omega.basis(), omega_p.basis());
    const ExponentForm q = q_exponent_form(omega);
    const ExponentForm q_p = q_exponent_form(omega_p);
    BirationalVerdict v;
    v.generic = is_q_generic(omega);
    const auto gens = detail::generator_union(q, q_p);

    auto inequivalent = [&](std::string why) {
        v.status = v.generic ? BirationalVerdict::Status::NotEquivalent : BirationalVerdict::Status::Unknown;
        v.note = why + (v.generic ? "" : "; q-torus is not generic, so non-congruence is inconclusive");
        return v;
    };

    // Divisor chains of each generator are congruence invariants in every case.
    std::map<std::size_t, SkewNormalForm> nf, nf_p;
    for (auto g : gens) {
        nf[g] = skew_normal_form(q.generator_matrix(g));
        nf_p[g] = skew_normal_form(q_p.generator_matrix(g));
        if (nf[g].divisors != nf_p[g].divisors)
            return inequivalent("divisors " + render_divisors(nf[g].divisors) + " vs " + render_divisors(nf_p[g].divisors) +
                                " for generator " + basis[g].name());
    }

    if (!q.has_sign_torsion() && !q_p.has_sign_torsion() && gens.size() <= 1) {
        IntMatrix a = IntMatrix::identity(q.size);
        if (gens.size() == 1) {
            const auto g = *gens.begin();
            a = nf[g].transform * nf_p[g].transform_inverse;
            v.note = "single generator " + basis[g].name() + ": divisors " + render_divisors(nf[g].divisors) +
                     ", rank " + std::to_string(nf[g].rank) + " on both sides";
        } else {
            v.note = "both q-tori are commutative";
        }
        if (!forms_related_by(q, q_p, a)) throw Error(ErrorKind::Domain, "internal: normal-form witness failed to verify");
        v.status = BirationalVerdict::Status::Equivalent;
        v.witness = std::move(a);
        return v;
    }

    bool budget_hit = false;
    if (auto a = bounded_congruence_search(q, q_p, search_bound, &budget_hit)) {
        v.status = BirationalVerdict::Status::Equivalent;
        v.witness = std::move(*a);
        v.note = "found by bounded search with entries in [-" + std::to_string(search_bound) + ", " + std::to_string(search_bound) + "]";
        return v;
    }
    v.status = BirationalVerdict::Status::Unknown;
    v.note = budget_hit ? "bounded search stopped at its node budget" :
                          "no witness with entries in [-" + std::to_string(search_bound) + ", " + std::to_string(search_bound) + "]";
    return v;
}

}  // namespace skewproj
