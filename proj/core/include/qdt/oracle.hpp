#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "qdt/dt_series.hpp"
#include "qdt/quiver.hpp"

namespace qdt {

/// Least r >= 1 with q^r = 1 mod p; q must be nonzero mod p.
long multiplicative_order(long q, long p);

/// |G_alpha| = prod_i prod_{j < alpha_i} (p^{alpha_i} - p^j).
mpz_class count_gl(const DimVec& alpha, long p);

struct CountTask {
    ReducedPresentation presentation;
    DimVec alpha;
    long p;
    std::map<std::string, long> param_values; // nonzero mod p
    double cap = 1e8;
    int jobs = 1;
};

struct OracleReport {
    mpz_class representation_count;
    mpz_class gl_count;
    mpq_class ratio;
    long p = 0;
    DimVec alpha;
    long q = -1;       // -1 when the model has no parameter q
    long order_q = -1;
};

/// Exhaustive count of matrix assignments over F_p satisfying every relation.
OracleReport count_representations(const CountTask& task);

enum class Stratum { Any, Invertible, Nilpotent };

/// Constraint on the endomorphism obtained by summing the named arrows'
/// blocks inside End of the direct sum of the involved vertex spaces.
struct MapConstraint {
    std::vector<std::string> arrows;
    Stratum kind = Stratum::Any;
};

OracleReport stratified_count(const CountTask& task,
                              const std::vector<MapConstraint>& strata);

enum class BranchMode { Auto, Generic, Root };

struct VerificationReport {
    TheoremSpec spec;
    DimVec alpha;
    long p = 0;
    long q = -1;
    long order_q = -1;
    mpq_class predicted;
    mpq_class observed;
    mpz_class representation_count;
    mpz_class gl_count;
    bool pass = false;
    long elapsed_ms = 0;
};

/// End-to-end check of a closed-form theorem against brute-force counts.
/// The model must carry a declared cut.
VerificationReport verify_theorem(const QuiverModel& model, const DimVec& alpha, long p,
                                  const std::map<std::string, long>& param_values,
                                  BranchMode mode = BranchMode::Auto, int root_r = 0,
                                  int truncation = 0, double cap = 1e8, int jobs = 1);

} // namespace qdt
