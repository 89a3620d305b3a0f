#pragma once

#include <string>
#include <vector>

#include "qdt/quiver.hpp"
#include "qdt/series.hpp"

namespace qdt {

enum class Family { QuantumC3, Jordan, Conifold, Cyclic };

std::string family_name(Family f, int n);

struct Branch {
    bool generic = true;
    int root_order = 0; // r, when not generic

    static Branch Generic() { return {true, 0}; }
    static Branch RootOfUnity(int r) { return {false, r}; }
};

struct TheoremSpec {
    Family family;
    int n = 0; // cyclic quiver parameter; vertices = n + 1
    Branch branch;

    int num_vars() const;
    /// The summand list inside Exp for this family and branch.
    std::vector<ClosedFormTerm> terms() const;
    /// Total degree of the root-of-unity correction support at r = 1
    /// (1 for quantum affine space, 2 for the conifold, n+1 for cyclic).
    int correction_support() const;
};

/// Exp of the expanded closed form, truncated at total degree N.
MSeries theorem_series(const TheoremSpec& spec, int truncation);

/// (-L^(1/2))^(chi(alpha,alpha) + 2 d_I(alpha)).
MotivicScalar dimred_prefactor(const QuiverModel& m, const std::vector<int>& I,
                               const DimVec& alpha);

/// Coefficient of t^alpha divided by the prefactor; the result is asserted
/// to lie in the pure-L subfield.
MotivicScalar reduced_class(const MSeries& series, const QuiverModel& m,
                            const std::vector<int>& I, const DimVec& alpha);

/// Recognize which closed-form family a parsed model belongs to.
/// Throws std::invalid_argument for models outside the covered families.
TheoremSpec infer_family(const QuiverModel& m);

} // namespace qdt
