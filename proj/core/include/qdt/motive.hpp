#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "qdt/errors.hpp"

namespace qdt {

/// Univariate polynomial in the half-Lefschetz variable v, with exact
/// rational coefficients. coeffs[i] is the coefficient of v^i; the leading
/// coefficient is nonzero (the zero polynomial has an empty vector).
class Poly {
public:
    Poly() = default;
    explicit Poly(const mpq_class& c);
    static Poly monomial(const mpq_class& c, int degree);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const mpq_class& coeff(int i) const;
    const std::vector<mpq_class>& coeffs() const { return coeffs_; }
    const mpq_class& leading() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }

    Poly scaled(const mpq_class& c) const;
    // Substitute v -> c * v^k.
    Poly substitute(const mpq_class& c, int k) const;
    mpq_class eval(const mpq_class& x) const;

    static void divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem);
    // Monic gcd.
    static Poly gcd(Poly a, Poly b);

private:
    std::vector<mpq_class> coeffs_;
    void trim();
    friend class MotivicScalar;
};

/// An element of the coefficient ring: a rational function in v, where
/// v = L^(1/2). Always stored reduced with a monic denominator, so equality
/// is plain structural comparison.
class MotivicScalar {
public:
    MotivicScalar() : num_(), den_(Poly(mpq_class(1))) {}
    MotivicScalar(const mpq_class& c) : num_(Poly(c)), den_(Poly(mpq_class(1))) {}
    MotivicScalar(long c) : MotivicScalar(mpq_class(c)) {}
    MotivicScalar(const Poly& num, const Poly& den);

    static MotivicScalar lefschetz();            // L = v^2
    static MotivicScalar half_lefschetz();       // v
    // (-v)^e or v^e for any integer e, negative exponents allowed.
    static MotivicScalar v_pow(long e);
    static MotivicScalar neg_v_pow(long e);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;

    friend MotivicScalar operator+(const MotivicScalar& a, const MotivicScalar& b);
    friend MotivicScalar operator-(const MotivicScalar& a, const MotivicScalar& b);
    friend MotivicScalar operator*(const MotivicScalar& a, const MotivicScalar& b);
    friend MotivicScalar operator/(const MotivicScalar& a, const MotivicScalar& b);
    MotivicScalar operator-() const;
    bool operator==(const MotivicScalar& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }

    MotivicScalar pow(long e) const;

    /// Adams operation psi_k: v -> v^k, i.e. both L and L^(1/2) are line
    /// elements. Verified against brute-force counts; the alternative sign
    /// convention fails them in the families with odd half-powers.
    MotivicScalar adams(int k) const;

    /// True iff the class lies in the pure-L subfield (invariant under v -> -v).
    bool is_even() const;

    /// Value at L = p; requires is_even() and no pole at L = p.
    mpq_class specialize_at_prime(long p) const;

    /// Euler-characteristic specialization, v -> -1.
    mpq_class euler_specialize() const;

    /// Canonical textual rendering in terms of L and L^(1/2).
    std::string to_string() const;
    /// Parse the same grammar that to_string emits (plus whitespace,
    /// parentheses and rational constants).
    static MotivicScalar parse(const std::string& text);

private:
    Poly num_;
    Poly den_; // monic, nonzero
    void reduce();
};

} // namespace qdt
