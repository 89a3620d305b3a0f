#pragma once

#include <map>
#include <string>
#include <vector>

#include "qdt/motive.hpp"

namespace qdt {

using DimVec = std::vector<int>;

int total_degree(const DimVec& a);
DimVec scaled(const DimVec& a, int k);
DimVec operator+(const DimVec& a, const DimVec& b);

/// One summand M * t^a / (1 - t^b) of an Exp argument.
struct ClosedFormTerm {
    MotivicScalar motive;
    DimVec numerator_exponent; // a, nonzero
    DimVec period;             // b, nonzero
};

/// Multivariate power series over MotivicScalar, truncated at total degree N.
/// Absent keys are zero; stored keys never exceed the bound.
class MSeries {
public:
    MSeries(int num_vars, int truncation);

    int num_vars() const { return vars_; }
    int truncation() const { return trunc_; }
    const std::map<DimVec, MotivicScalar>& coefficients() const { return coef_; }

    MotivicScalar coeff(const DimVec& alpha) const;
    void set_coeff(const DimVec& alpha, const MotivicScalar& c);
    void add_coeff(const DimVec& alpha, const MotivicScalar& c);

    bool operator==(const MSeries& o) const;

    static MSeries one(int num_vars, int truncation);

    friend MSeries operator+(const MSeries& f, const MSeries& g);
    friend MSeries operator-(const MSeries& f, const MSeries& g);
    friend MSeries operator*(const MSeries& f, const MSeries& g);
    MSeries operator*(const MotivicScalar& c) const;

    /// Byte-stable JSON rendering; keys in lexicographic order.
    std::string to_json() const;

private:
    int vars_;
    int trunc_;
    std::map<DimVec, MotivicScalar> coef_;
};

/// Induced Adams operation: c_a t^a  ->  adams(k, c_a) t^{k a}.
MSeries adams_series(int k, const MSeries& f);

/// Exp(f) = exp(sum_k adams_series(k, f)/k); f must have zero constant term.
MSeries plethystic_exp(const MSeries& f);

/// Formal inverse of plethystic_exp; f must have constant term 1.
MSeries plethystic_log(const MSeries& f);

/// Expand sum of M * t^a/(1 - t^b) truncated at total degree N.
MSeries expand_closed_form(const std::vector<ClosedFormTerm>& terms, int num_vars,
                           int truncation);

} // namespace qdt
