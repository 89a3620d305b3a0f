#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdt/errors.hpp"
#include "qdt/series.hpp"

namespace qdt {

/// Rational constant times a monomial in the declared parameters,
/// e.g. -(1/3)*c or q^2.
struct ParamMonomial {
    mpq_class constant{1};
    std::map<std::string, int> powers;

    bool operator==(const ParamMonomial& o) const = default;
    std::string to_string() const; // without sign, caller handles it
};

struct Arrow {
    std::string name;
    int src;
    int dst;
    bool operator==(const Arrow& o) const = default;
};

/// coefficient * composable word of arrow indices. Inside an NCPoly all
/// words share start and end vertices.
struct NCTerm {
    ParamMonomial coef;
    std::vector<int> word;
    bool operator==(const NCTerm& o) const = default;
};

using NCPoly = std::vector<NCTerm>;

struct QuiverModel {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<std::string> params;
    std::string potential_name;
    NCPoly potential; // cyclically closed words
    std::optional<std::vector<int>> cut;

    int vertex_index(const std::string& name) const; // -1 if absent
    int arrow_index(const std::string& name) const;  // -1 if absent

    bool operator==(const QuiverModel& o) const = default;
};

struct CutCheck {
    bool valid;
    std::string reason; // empty when valid
};

QuiverModel parse_model(const std::string& text);
std::string render_model(const QuiverModel& m);
std::string render_ncpoly(const QuiverModel& m, const NCPoly& p);

/// Formal cyclic derivative of the potential with respect to one arrow.
NCPoly cyclic_derivative(const QuiverModel& m, int arrow);

/// Euler-Ringel form chi(alpha, beta).
long euler_form(const QuiverModel& m, const DimVec& alpha, const DimVec& beta);

/// A cut is valid iff every potential word contains exactly one arrow of I,
/// counted with multiplicity.
CutCheck validate_cut(const QuiverModel& m, const std::vector<int>& I);

/// d_I(alpha) = sum over cut arrows a: i->j of alpha_i * alpha_j.
long cut_degree(const QuiverModel& m, const std::vector<int>& I, const DimVec& alpha);

/// The cut quiver Q_I together with the relations {dW/da : a in I},
/// rewritten over the arrows of Q_I.
struct ReducedPresentation {
    QuiverModel quiver;              // arrows of I removed, no potential
    std::vector<NCPoly> relations;   // words use the new arrow indices
};

ReducedPresentation reduced_presentation(const QuiverModel& m, const std::vector<int>& I);

/// DSL text for the deformed cyclic quiver Q_{n+1} with its loop cut.
std::string cyclic_model_text(int n);

} // namespace qdt
