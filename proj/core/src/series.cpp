#include "qdt/series.hpp"

#include <sstream>

#include "qdt/errors.hpp"

namespace qdt {

int total_degree(const DimVec& a) {
    int s = 0;
    for (int x : a) s += x;
    return s;
}

DimVec scaled(const DimVec& a, int k) {
    DimVec r(a);
    for (int& x : r) x *= k;
    return r;
}

DimVec operator+(const DimVec& a, const DimVec& b) {
    DimVec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

MSeries::MSeries(int num_vars, int truncation) : vars_(num_vars), trunc_(truncation) {}

MSeries MSeries::one(int num_vars, int truncation) {
    MSeries s(num_vars, truncation);
    s.set_coeff(DimVec(num_vars, 0), MotivicScalar(1));
    return s;
}

MotivicScalar MSeries::coeff(const DimVec& alpha) const {
    auto it = coef_.find(alpha);
    return it == coef_.end() ? MotivicScalar() : it->second;
}

void MSeries::set_coeff(const DimVec& alpha, const MotivicScalar& c) {
    if (total_degree(alpha) > trunc_) return;
    if (c.is_zero()) coef_.erase(alpha);
    else coef_[alpha] = c;
}

void MSeries::add_coeff(const DimVec& alpha, const MotivicScalar& c) {
    if (total_degree(alpha) > trunc_) return;
    auto it = coef_.find(alpha);
    if (it == coef_.end()) {
        if (!c.is_zero()) coef_[alpha] = c;
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) coef_.erase(it);
}

bool MSeries::operator==(const MSeries& o) const {
    return vars_ == o.vars_ && trunc_ == o.trunc_ && coef_ == o.coef_;
}

namespace {
void check_shape(const MSeries& f, const MSeries& g) {
    if (f.num_vars() != g.num_vars() || f.truncation() != g.truncation())
        throw ShapeMismatch("series shapes differ");
}
} // namespace

MSeries operator+(const MSeries& f, const MSeries& g) {
    check_shape(f, g);
    MSeries r(f);
    for (const auto& [a, c] : g.coefficients()) r.add_coeff(a, c);
    return r;
}

MSeries operator-(const MSeries& f, const MSeries& g) {
    check_shape(f, g);
    MSeries r(f);
    for (const auto& [a, c] : g.coefficients()) r.add_coeff(a, -c);
    return r;
}

MSeries operator*(const MSeries& f, const MSeries& g) {
    check_shape(f, g);
    MSeries r(f.num_vars(), f.truncation());
    for (const auto& [a, ca] : f.coefficients()) {
        int da = total_degree(a);
        for (const auto& [b, cb] : g.coefficients()) {
            if (da + total_degree(b) > f.truncation()) continue;
            r.add_coeff(a + b, ca * cb);
        }
    }
    return r;
}

MSeries MSeries::operator*(const MotivicScalar& c) const {
    MSeries r(vars_, trunc_);
    if (c.is_zero()) return r;
    for (const auto& [a, ca] : coef_) r.set_coeff(a, ca * c);
    return r;
}

MSeries adams_series(int k, const MSeries& f) {
    MSeries r(f.num_vars(), f.truncation());
    for (const auto& [a, c] : f.coefficients()) {
        DimVec ka = scaled(a, k);
        if (total_degree(ka) > f.truncation()) continue;
        r.set_coeff(ka, c.adams(k));
    }
    return r;
}

namespace {

// Ordinary truncated exponential of a series with zero constant term.
MSeries series_exp(const MSeries& g) {
    MSeries r = MSeries::one(g.num_vars(), g.truncation());
    MSeries powk = MSeries::one(g.num_vars(), g.truncation());
    mpz_class fact(1);
    for (int m = 1; m <= g.truncation(); ++m) {
        powk = powk * g;
        fact *= m;
        r = r + powk * MotivicScalar(mpq_class(mpz_class(1), fact));
    }
    return r;
}

// Ordinary truncated log of a series with constant term 1.
MSeries series_log(const MSeries& f) {
    MSeries h = f - MSeries::one(f.num_vars(), f.truncation());
    MSeries r(f.num_vars(), f.truncation());
    MSeries powk = MSeries::one(f.num_vars(), f.truncation());
    for (int m = 1; m <= f.truncation(); ++m) {
        powk = powk * h;
        mpq_class c(m % 2 == 1 ? 1 : -1, m);
        r = r + powk * MotivicScalar(c);
    }
    return r;
}

int moebius(int n) {
    int mu = 1;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

} // namespace

MSeries plethystic_exp(const MSeries& f) {
    if (!f.coeff(DimVec(f.num_vars(), 0)).is_zero()) throw NonzeroConstantTerm();
    MSeries s(f.num_vars(), f.truncation());
    for (int k = 1; k <= f.truncation(); ++k)
        s = s + adams_series(k, f) * MotivicScalar(mpq_class(1, k));
    return series_exp(s);
}

MSeries plethystic_log(const MSeries& f) {
    if (!f.coeff(DimVec(f.num_vars(), 0)).is_one()) throw ConstantTermNotOne();
    MSeries lg = series_log(f);
    MSeries r(f.num_vars(), f.truncation());
    for (int k = 1; k <= f.truncation(); ++k) {
        int mu = moebius(k);
        if (mu == 0) continue;
        r = r + adams_series(k, lg) * MotivicScalar(mpq_class(mu, k));
    }
    return r;
}

MSeries expand_closed_form(const std::vector<ClosedFormTerm>& terms, int num_vars,
                           int truncation) {
    MSeries r(num_vars, truncation);
    for (const auto& t : terms) {
        if (total_degree(t.numerator_exponent) == 0)
            throw std::invalid_argument("closed-form term with zero numerator exponent");
        if (total_degree(t.period) == 0)
            throw std::invalid_argument("closed-form term with zero period");
        DimVec a = t.numerator_exponent;
        while (total_degree(a) <= truncation) {
            r.add_coeff(a, t.motive);
            a = a + t.period;
        }
    }
    return r;
}

std::string MSeries::to_json() const {
    std::ostringstream os;
    os << "{\"truncation\": " << trunc_ << ", \"vars\": " << vars_ << ", \"coeffs\": [";
    bool first = true;
    for (const auto& [a, c] : coef_) {
        if (!first) os << ", ";
        first = false;
        os << "{\"alpha\": [";
        for (size_t i = 0; i < a.size(); ++i) os << (i ? ", " : "") << a[i];
        os << "], \"value\": \"" << c.to_string() << "\"}";
    }
    os << "]}";
    return os.str();
}

} // namespace qdt
