#pragma once

// Exact multiplicative arithmetic on the subgroup of K* generated by the
// parameters of a skew polynomial algebra.
//
// An element is stored as sign * prod_g g^e_g over a GeneratorBasis whose
// generators are either concrete primes (from rational entries) or formal
// symbols (from symbolic entries). Formal symbols are taken to be
// multiplicatively independent of each other and of every prime, which is
// what makes equality to 1 decidable. Torsion is limited to the sign; the
// base field is only ever accessed through this finitely generated group,
// so algebraic closure plays no role in any computation.

#include "skewproj/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace skewproj {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline std::uint64_t pollard_rho(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
        std::uint64_t x = 2, y = 2, d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

inline void factor_into(std::uint64_t n, std::map<std::uint64_t, long long>& out) {
    if (n == 1) return;
    for (std::uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    std::uint64_t d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorization of a positive 64-bit integer as prime -> multiplicity.
inline std::map<std::uint64_t, long long> factorize(std::uint64_t n) {
    std::map<std::uint64_t, long long> out;
    detail::factor_into(n, out);
    return out;
}

/// A generator of the parameter group: a concrete prime or a formal symbol.
struct Generator {
    enum class Kind { Prime, Symbol };

    Kind kind = Kind::Prime;
    std::uint64_t prime = 0;
    std::string symbol;

    static Generator concrete(std::uint64_t p) { return Generator{Kind::Prime, p, {}}; }
    static Generator formal(std::string name) { return Generator{Kind::Symbol, 0, std::move(name)}; }

    bool is_prime() const { return kind == Kind::Prime; }
    std::string name() const { return is_prime() ? std::to_string(prime) : symbol; }

    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Ordered, append-only list of generators. Indices never change once assigned.
class GeneratorBasis {
public:
    std::size_t size() const { return gens_.size(); }
    const Generator& operator[](std::size_t i) const { return gens_.at(i); }
    const std::vector<Generator>& generators() const { return gens_; }

    std::optional<std::size_t> find(const Generator& g) const {
        auto it = std::find(gens_.begin(), gens_.end(), g);
        if (it == gens_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - gens_.begin());
    }

    std::size_t intern(const Generator& g) {
        if (auto i = find(g)) return *i;
        if (g.is_prime() && !detail::is_prime(g.prime))
            throw Error(ErrorKind::Domain, std::to_string(g.prime) + " is not prime");
        gens_.push_back(g);
        return gens_.size() - 1;
    }

    std::size_t intern_prime(std::uint64_t p) { return intern(Generator::concrete(p)); }
    std::size_t intern_symbol(const std::string& s) { return intern(Generator::formal(s)); }

    /// True when every generator of this basis sits at the same index in `other`.
    bool is_prefix_of(const GeneratorBasis& other) const {
        return gens_.size() <= other.gens_.size() &&
               std::equal(gens_.begin(), gens_.end(), other.gens_.begin());
    }

    friend bool operator==(const GeneratorBasis&, const GeneratorBasis&) = default;

private:
    std::vector<Generator> gens_;
};

/// Returns the longer of two compatible bases; throws if neither extends the other.
inline const GeneratorBasis& common_basis(const GeneratorBasis& a, const GeneratorBasis& b) {
    if (a.is_prefix_of(b)) return b;
    if (b.is_prefix_of(a)) return a;
    throw Error(ErrorKind::Domain, "parameter matrices were built over incompatible generator bases");
}

/// sign * prod_i basis[i]^exponents[i]. Exponent vectors are kept without
/// trailing zeros, so elements from an earlier snapshot of an append-only
/// basis compare equal to their counterparts over the extended basis.
class GroupElement {
public:
    GroupElement() = default;
    GroupElement(int sign, std::vector<long long> exponents) : sign_(sign < 0 ? -1 : 1), exps_(std::move(exponents)) {
        trim();
    }

    static GroupElement one() { return {}; }
    static GroupElement minus_one() { return GroupElement(-1, {}); }
    static GroupElement power_of(std::size_t generator, long long exponent) {
        std::vector<long long> e(generator + 1, 0);
        e[generator] = exponent;
        return GroupElement(1, std::move(e));
    }

    int sign() const { return sign_; }
    const std::vector<long long>& exponents() const { return exps_; }
    long long exponent(std::size_t i) const { return i < exps_.size() ? exps_[i] : 0; }
    bool is_one() const { return sign_ == 1 && exps_.empty(); }
    bool is_torsion_free() const { return sign_ == 1; }

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement& a, const GroupElement& b) {
        if (auto c = a.sign_ <=> b.sign_; c != 0) return c;
        return a.exps_ <=> b.exps_;
    }

private:
    void trim() {
        while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
    }

    int sign_ = 1;
    std::vector<long long> exps_;
};

inline GroupElement mul(const GroupElement& a, const GroupElement& b) {
    std::vector<long long> e(std::max(a.exponents().size(), b.exponents().size()), 0);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = detail::checked_add(a.exponent(i), b.exponent(i));
    return GroupElement(a.sign() * b.sign(), std::move(e));
}

inline GroupElement inv(const GroupElement& a) {
    std::vector<long long> e(a.exponents());
    for (auto& x : e) x = detail::checked_sub(0, x);
    return GroupElement(a.sign(), std::move(e));
}

inline GroupElement div(const GroupElement& a, const GroupElement& b) { return mul(a, inv(b)); }

inline GroupElement pow(const GroupElement& a, long long k) {
    std::vector<long long> e(a.exponents());
    for (auto& x : e) x = detail::checked_mul(x, k);
    int sign = (a.sign() < 0 && (k % 2 != 0)) ? -1 : 1;
    return GroupElement(sign, std::move(e));
}

namespace detail {

class ScalarParser {
public:
    ScalarParser(std::string_view text, GeneratorBasis& basis) : text_(text), basis_(basis) {}

    GroupElement parse() {
        skip_space();
        if (pos_ == text_.size()) fail("empty scalar");
        GroupElement result;
        while (true) {
            result = mul(result, factor());
            skip_space();
            if (pos_ == text_.size()) break;
            if (text_[pos_] != '*') fail("expected '*'");
            ++pos_;
            skip_space();
        }
        return result;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw Error(ErrorKind::Parse, why + " at position " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek_digit() const { return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])); }

    std::uint64_t integer() {
        if (!peek_digit()) fail("expected digits");
        std::uint64_t v = 0;
        while (peek_digit()) {
            auto d = static_cast<std::uint64_t>(text_[pos_] - '0');
            if (v > (UINT64_MAX - d) / 10) fail("integer does not fit in 64 bits");
            v = v * 10 + d;
            ++pos_;
        }
        return v;
    }

    GroupElement from_integer(std::uint64_t v, int direction) {
        if (v == 0) throw Error(ErrorKind::Domain, "zero is not a unit: \"" + std::string(text_) + "\"");
        GroupElement out;
        for (auto [p, k] : factorize(v)) {
            out = mul(out, GroupElement::power_of(basis_.intern_prime(p), direction * k));
        }
        return out;
    }

    GroupElement factor() {
        GroupElement sign;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            sign = GroupElement::minus_one();
            ++pos_;
        }
        if (peek_digit()) {
            GroupElement value = from_integer(integer(), 1);
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                value = mul(value, from_integer(integer(), -1));
            }
            if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == '^')) fail("rationals take no decimals or exponents");
            return mul(sign, value);
        }
        if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            long long exponent = 1;
            if (pos_ < text_.size() && text_[pos_] == '^') {
                ++pos_;
                bool negative = false;
                if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
                    negative = text_[pos_] == '-';
                    ++pos_;
                }
                std::uint64_t magnitude = integer();
                if (magnitude > static_cast<std::uint64_t>(INT64_MAX)) fail("exponent too large");
                exponent = negative ? -static_cast<long long>(magnitude) : static_cast<long long>(magnitude);
                if (pos_ < text_.size() && (text_[pos_] == '/' || text_[pos_] == '.')) fail("non-integer exponent");
            }
            return mul(sign, GroupElement::power_of(basis_.intern_symbol(name), exponent));
        }
        fail("expected a rational or a symbol");
    }

    std::string_view text_;
    GeneratorBasis& basis_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses RATIONAL / SYMBOL^INT products, extending `basis` with any new
/// primes and symbols.
inline GroupElement parse_scalar(std::string_view text, GeneratorBasis& basis) {
    return detail::ScalarParser(text, basis).parse();
}

/// Canonical text form; reparses to an equal element.
inline std::string render(const GroupElement& a, const GeneratorBasis& basis) {
    BigInt num = 1, den = 1;
    std::ostringstream formal;
    for (std::size_t i = 0; i < a.exponents().size(); ++i) {
        long long e = a.exponents()[i];
        if (e == 0) continue;
        const Generator& g = basis[i];
        if (g.is_prime()) {
            BigInt power = boost::multiprecision::pow(BigInt(g.prime), static_cast<unsigned>(e > 0 ? e : -e));
            (e > 0 ? num : den) *= power;
        } else {
            formal << '*' << g.symbol;
            if (e != 1) formal << '^' << e;
        }
    }
    std::ostringstream out;
    if (a.sign() < 0) out << '-';
    std::string tail = formal.str();
    bool concrete_trivial = (num == 1 && den == 1);
    if (!concrete_trivial || tail.empty()) {
        out << num;
        if (den != 1) out << '/' << den;
        out << tail;
    } else {
        out << tail.substr(1);
    }
    return out.str();
}

/// Values for formal symbols; concrete primes always evaluate to themselves.
using Assignment = std::map<std::string, Rational>;

/// Evaluation homomorphism into Q.
inline Rational embed_rational(const GroupElement& a, const GeneratorBasis& basis, const Assignment& assignment) {
    Rational value = a.sign();
    for (std::size_t i = 0; i < a.exponents().size(); ++i) {
        long long e = a.exponents()[i];
        if (e == 0) continue;
        const Generator& g = basis[i];
        Rational base;
        if (g.is_prime()) {
            base = Rational(BigInt(g.prime));
            if (auto it = assignment.find(g.name()); it != assignment.end() && it->second != base)
                throw Error(ErrorKind::Domain, "concrete prime " + g.name() + " must map to itself");
        } else {
            auto it = assignment.find(g.symbol);
            if (it == assignment.end()) throw Error(ErrorKind::Domain, "no value assigned to generator " + g.symbol);
            if (it->second == 0) throw Error(ErrorKind::Domain, "generator " + g.symbol + " assigned zero");
            base = it->second;
        }
        unsigned k = static_cast<unsigned>(e > 0 ? e : -e);
        Rational power = boost::multiprecision::pow(boost::multiprecision::numerator(base), k);
        power /= boost::multiprecision::pow(boost::multiprecision::denominator(base), k);
        value *= (e > 0) ? power : Rational(1) / power;
    }
    return value;
}

}  // namespace skewproj
