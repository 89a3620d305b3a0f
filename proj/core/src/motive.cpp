#include "qdt/motive.hpp"

#include <cassert>
#include <cctype>
#include <sstream>

namespace qdt {

// ---------------------------------------------------------------- Poly

Poly::Poly(const mpq_class& c) {
    if (c != 0) coeffs_.push_back(c);
}

Poly Poly::monomial(const mpq_class& c, int degree) {
    Poly p;
    if (c != 0) {
        p.coeffs_.assign(degree + 1, mpq_class(0));
        p.coeffs_[degree] = c;
    }
    return p;
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const mpq_class& Poly::coeff(int i) const {
    static const mpq_class zero(0);
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return zero;
    return coeffs_[i];
}

const mpq_class& Poly::leading() const {
    assert(!coeffs_.empty());
    return coeffs_.back();
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), mpq_class(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) r.coeffs_[i] += a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
    r.trim();
    return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j)
            r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    r.trim();
    return r;
}

Poly Poly::scaled(const mpq_class& c) const {
    Poly r;
    if (c == 0) return r;
    r.coeffs_ = coeffs_;
    for (auto& x : r.coeffs_) x *= c;
    return r;
}

Poly Poly::substitute(const mpq_class& c, int k) const {
    Poly r;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        mpq_class ci = coeffs_[i];
        // c^i
        mpq_class cp(1);
        for (size_t j = 0; j < i; ++j) cp *= c;
        r = r + Poly::monomial(ci * cp, static_cast<int>(i) * k);
    }
    return r;
}

mpq_class Poly::eval(const mpq_class& x) const {
    mpq_class v(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
    return v;
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem) {
    assert(!b.is_zero());
    quot = Poly();
    rem = a;
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int d = rem.degree() - b.degree();
        mpq_class c = rem.leading() / b.leading();
        Poly t = Poly::monomial(c, d);
        quot = quot + t;
        rem = rem - t * b;
    }
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly q, r;
        divmod(a, b, q, r);
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return a.scaled(1 / a.leading());
}

// ------------------------------------------------------- MotivicScalar

MotivicScalar::MotivicScalar(const Poly& num, const Poly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw DivisionByZero();
    reduce();
}

void MotivicScalar::reduce() {
    if (num_.is_zero()) {
        den_ = Poly(mpq_class(1));
        return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0) {
        Poly q, r;
        Poly::divmod(num_, g, q, r);
        num_ = q;
        Poly::divmod(den_, g, q, r);
        den_ = q;
    }
    mpq_class lead = den_.leading();
    if (lead != 1) {
        mpq_class inv = 1 / lead;
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

MotivicScalar MotivicScalar::lefschetz() {
    return MotivicScalar(Poly::monomial(1, 2), Poly(mpq_class(1)));
}

MotivicScalar MotivicScalar::half_lefschetz() {
    return MotivicScalar(Poly::monomial(1, 1), Poly(mpq_class(1)));
}

MotivicScalar MotivicScalar::v_pow(long e) {
    if (e >= 0)
        return MotivicScalar(Poly::monomial(1, static_cast<int>(e)), Poly(mpq_class(1)));
    return MotivicScalar(Poly(mpq_class(1)), Poly::monomial(1, static_cast<int>(-e)));
}

MotivicScalar MotivicScalar::neg_v_pow(long e) {
    MotivicScalar r = v_pow(e);
    return (e % 2 != 0) ? -r : r;
}

bool MotivicScalar::is_one() const {
    return den_.degree() == 0 && num_.degree() == 0 && !num_.is_zero() &&
           num_.coeff(0) == 1;
}

MotivicScalar operator+(const MotivicScalar& a, const MotivicScalar& b) {
    return MotivicScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

MotivicScalar operator-(const MotivicScalar& a, const MotivicScalar& b) {
    return MotivicScalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

MotivicScalar operator*(const MotivicScalar& a, const MotivicScalar& b) {
    return MotivicScalar(a.num_ * b.num_, a.den_ * b.den_);
}

MotivicScalar operator/(const MotivicScalar& a, const MotivicScalar& b) {
    if (b.is_zero()) throw DivisionByZero();
    return MotivicScalar(a.num_ * b.den_, a.den_ * b.num_);
}

MotivicScalar MotivicScalar::operator-() const {
    MotivicScalar r(*this);
    r.num_ = -r.num_;
    return r;
}

MotivicScalar MotivicScalar::pow(long e) const {
    if (e < 0) return (MotivicScalar(1) / *this).pow(-e);
    MotivicScalar r(1);
    MotivicScalar base(*this);
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

MotivicScalar MotivicScalar::adams(int k) const {
    assert(k >= 1);
    return MotivicScalar(num_.substitute(mpq_class(1), k), den_.substitute(mpq_class(1), k));
}

namespace {
// 0: all terms of even degree, 1: all odd, -1: mixed (or meaningless for 0).
int parity(const Poly& p) {
    int par = -2;
    for (int i = 0; i <= p.degree(); ++i) {
        if (p.coeff(i) == 0) continue;
        int pi = i % 2;
        if (par == -2) par = pi;
        else if (par != pi) return -1;
    }
    return par == -2 ? 0 : par;
}

// Value of an even-support polynomial at v^2 = x.
mpq_class eval_even(const Poly& p, const mpq_class& x) {
    mpq_class v(0), xp(1);
    for (int i = 0; i <= p.degree(); i += 2) {
        v += p.coeff(i) * xp;
        xp *= x;
    }
    return v;
}
} // namespace

bool MotivicScalar::is_even() const {
    if (num_.is_zero()) return true;
    int pn = parity(num_), pd = parity(den_);
    return pn == pd && pn != -1;
}

mpq_class MotivicScalar::specialize_at_prime(long p) const {
    if (num_.is_zero()) return mpq_class(0);
    if (!is_even()) throw OddHalfPower();
    Poly n = num_, d = den_;
    if (parity(num_) == 1) {
        // v*n and v*d have even support and represent the same fraction.
        n = n * Poly::monomial(1, 1);
        d = d * Poly::monomial(1, 1);
    }
    mpq_class L(p);
    mpq_class dv = eval_even(d, L);
    if (dv == 0) throw PoleAtPrime(p);
    return eval_even(n, L) / dv;
}

mpq_class MotivicScalar::euler_specialize() const {
    mpq_class dv = den_.eval(mpq_class(-1));
    if (dv == 0) throw PoleAtMinusOne();
    return num_.eval(mpq_class(-1)) / dv;
}

// ---------------------------------------------------------- rendering

namespace {

std::string rational_str(const mpq_class& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

// One monomial c*v^d rendered in L / L^(1/2); c is nonzero and positive
// (the sign is handled by the caller).
std::string term_str(const mpq_class& c, int d) {
    std::vector<std::string> parts;
    bool frac = c.get_den() != 1;
    if (c != 1 || d == 0) {
        std::string cs = rational_str(c);
        parts.push_back(frac ? "(" + cs + ")" : cs);
    }
    int k = d / 2, odd = d % 2;
    if (k == 1) parts.push_back("L");
    else if (k > 1) parts.push_back("L^" + std::to_string(k));
    if (odd) parts.push_back("L^(1/2)");
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += "*";
        out += parts[i];
    }
    return out;
}

// Polynomial rendered as a sum of L-terms, highest degree first.
std::string poly_str(const Poly& p, int* nterms) {
    if (p.is_zero()) {
        if (nterms) *nterms = 1;
        return "0";
    }
    std::string out;
    int count = 0;
    for (int d = p.degree(); d >= 0; --d) {
        const mpq_class& c = p.coeff(d);
        if (c == 0) continue;
        mpq_class a = abs(c);
        if (count == 0)
            out += (c < 0 ? "-" : "") + term_str(a, d);
        else
            out += (c < 0 ? " - " : " + ") + term_str(a, d);
        ++count;
    }
    if (nterms) *nterms = count;
    return out;
}

} // namespace

std::string MotivicScalar::to_string() const {
    int nt = 0;
    std::string ns = poly_str(num_, &nt);
    if (den_.degree() == 0 && !den_.is_zero() && den_.coeff(0) == 1) return ns;
    if (nt > 1 || (nt == 1 && ns[0] == '-')) ns = "(" + ns + ")";
    return ns + "/(" + poly_str(den_, nullptr) + ")";
}

// ------------------------------------------------------------ parsing

namespace {

struct Lexer {
    const std::string& s;
    size_t i = 0;
    explicit Lexer(const std::string& str) : s(str) {}
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }
    char next() {
        char c = peek();
        if (i < s.size()) ++i;
        return c;
    }
    bool eat(char c) {
        if (peek() == c) {
            ++i;
            return true;
        }
        return false;
    }
    mpz_class integer() {
        skip();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            throw std::invalid_argument("expected integer in scalar expression");
        size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        mpz_class v(s.substr(i, j - i));
        i = j;
        return v;
    }
};

MotivicScalar parse_expr(Lexer& lx);

// Exponent: integer, or a parenthesized rational with denominator 1 or 2.
// Returns (numerator, halves) where halves means the exponent is num/2.
std::pair<long, bool> parse_exponent(Lexer& lx) {
    bool neg = false;
    if (lx.eat('(')) {
        if (lx.eat('-')) neg = true;
        long a = lx.integer().get_si();
        bool half = false;
        if (lx.eat('/')) {
            long b = lx.integer().get_si();
            if (b == 2) half = true;
            else if (b != 1) throw std::invalid_argument("unsupported exponent denominator");
        }
        if (!lx.eat(')')) throw std::invalid_argument("expected ')' in exponent");
        return {neg ? -a : a, half};
    }
    if (lx.eat('-')) neg = true;
    long a = lx.integer().get_si();
    return {neg ? -a : a, false};
}

MotivicScalar parse_factor(Lexer& lx) {
    MotivicScalar base;
    bool is_L = false;
    char c = lx.peek();
    if (c == '(') {
        lx.next();
        base = parse_expr(lx);
        if (!lx.eat(')')) throw std::invalid_argument("expected ')'");
    } else if (c == 'L') {
        lx.next();
        base = MotivicScalar::lefschetz();
        is_L = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
        base = MotivicScalar(mpq_class(lx.integer()));
    } else {
        throw std::invalid_argument(std::string("unexpected character '") + c +
                                    "' in scalar expression");
    }
    if (lx.peek() == '^') {
        lx.next();
        auto [e, half] = parse_exponent(lx);
        if (half) {
            if (!is_L) throw std::invalid_argument("half-integer exponent requires base L");
            return MotivicScalar::v_pow(e);
        }
        return base.pow(e);
    }
    return base;
}

MotivicScalar parse_term(Lexer& lx) {
    MotivicScalar v = parse_factor(lx);
    for (;;) {
        char c = lx.peek();
        if (c == '*') {
            lx.next();
            v = v * parse_factor(lx);
        } else if (c == '/') {
            lx.next();
            v = v / parse_factor(lx);
        } else {
            return v;
        }
    }
}

MotivicScalar parse_expr(Lexer& lx) {
    bool neg = lx.eat('-');
    MotivicScalar v = parse_term(lx);
    if (neg) v = -v;
    for (;;) {
        char c = lx.peek();
        if (c == '+') {
            lx.next();
            v = v + parse_term(lx);
        } else if (c == '-') {
            lx.next();
            v = v - parse_term(lx);
        } else {
            return v;
        }
    }
}

} // namespace

MotivicScalar MotivicScalar::parse(const std::string& text) {
    Lexer lx(text);
    MotivicScalar v = parse_expr(lx);
    if (lx.peek() != '\0')
        throw std::invalid_argument("trailing characters in scalar expression: " +
                                    text.substr(lx.i));
    return v;
}

} // namespace qdt
