#include "qdt/dt_series.hpp"

#include <algorithm>
#include <set>

namespace qdt {

std::string family_name(Family f, int n) {
    switch (f) {
        case Family::QuantumC3: return "quantum-affine-3-space";
        case Family::Jordan: return "jordan";
        case Family::Conifold: return "conifold";
        case Family::Cyclic: return "cyclic-" + std::to_string(n);
    }
    return "?";
}

int TheoremSpec::num_vars() const {
    switch (family) {
        case Family::QuantumC3:
        case Family::Jordan: return 1;
        case Family::Conifold: return 2;
        case Family::Cyclic: return n + 1;
    }
    return 0;
}

int TheoremSpec::correction_support() const {
    switch (family) {
        case Family::QuantumC3: return 1;
        case Family::Jordan: return 0; // no root-of-unity correction
        case Family::Conifold: return 2;
        case Family::Cyclic: return n + 1;
    }
    return 0;
}

namespace {

MotivicScalar over_L_minus_1(long a, long b) {
    // (a*L + b) / (L - 1)
    MotivicScalar L = MotivicScalar::lefschetz();
    return (L * MotivicScalar(a) + MotivicScalar(b)) / (L - MotivicScalar(1));
}

} // namespace

std::vector<ClosedFormTerm> TheoremSpec::terms() const {
    std::vector<ClosedFormTerm> out;
    MotivicScalar L = MotivicScalar::lefschetz();
    MotivicScalar Lm1 = L - MotivicScalar(1);
    switch (family) {
        case Family::QuantumC3: {
            out.push_back({over_L_minus_1(2, -1), {1}, {1}});
            if (!branch.generic) {
                int r = branch.root_order;
                out.push_back({Lm1, {r}, {r}});
            }
            break;
        }
        case Family::Jordan: {
            out.push_back({over_L_minus_1(1, 0), {1}, {1}});
            break;
        }
        case Family::Conifold: {
            // -1/(L^(1/2) - L^(-1/2)) = -L^(1/2)/(L - 1)
            MotivicScalar m = -MotivicScalar::half_lefschetz() / Lm1;
            out.push_back({over_L_minus_1(3, -1), {1, 1}, {1, 1}});
            out.push_back({m, {1, 0}, {1, 1}});
            out.push_back({m, {0, 1}, {1, 1}});
            if (!branch.generic) {
                int r = branch.root_order;
                out.push_back({Lm1, {r, r}, {r, r}});
            }
            break;
        }
        case Family::Cyclic: {
            int k = n + 1;
            DimVec delta(k, 1);
            out.push_back({over_L_minus_1(k, -1), delta, delta});
            // Delta = sums of consecutive delta_i, indices mod n+1, up to the
            // full cycle delta (which enters once).
            std::set<DimVec> support;
            for (int i = 0; i < k; ++i)
                for (int j = 0; j <= n; ++j) {
                    DimVec a(k, 0);
                    for (int s = 0; s <= j; ++s) a[(i + s) % k] = 1;
                    support.insert(a);
                }
            MotivicScalar m = over_L_minus_1(1, 0); // L/(L-1)
            for (const auto& a : support) out.push_back({m, a, delta});
            if (!branch.generic) {
                int r = branch.root_order;
                out.push_back({Lm1, scaled(delta, r), scaled(delta, r)});
            }
            break;
        }
    }
    return out;
}

MSeries theorem_series(const TheoremSpec& spec, int truncation) {
    return plethystic_exp(
        expand_closed_form(spec.terms(), spec.num_vars(), truncation));
}

MotivicScalar dimred_prefactor(const QuiverModel& m, const std::vector<int>& I,
                               const DimVec& alpha) {
    CutCheck ck = validate_cut(m, I);
    if (!ck.valid) throw InvalidCut(ck.reason);
    long e = euler_form(m, alpha, alpha) + 2 * cut_degree(m, I, alpha);
    return MotivicScalar::neg_v_pow(e);
}

MotivicScalar reduced_class(const MSeries& series, const QuiverModel& m,
                            const std::vector<int>& I, const DimVec& alpha) {
    long e = euler_form(m, alpha, alpha) + 2 * cut_degree(m, I, alpha);
    MotivicScalar r = series.coeff(alpha) * MotivicScalar::neg_v_pow(-e);
    if (!r.is_even()) throw OddHalfPower();
    return r;
}

namespace {

bool word_has_repeat(const std::vector<int>& w) {
    std::set<int> s(w.begin(), w.end());
    return s.size() < w.size();
}

} // namespace

TheoremSpec infer_family(const QuiverModel& m) {
    size_t nv = m.vertices.size(), na = m.arrows.size();
    if (nv == 1 && na == 3) {
        if (m.potential.size() == 2) return {Family::QuantumC3, 0, Branch::Generic()};
        if (m.potential.size() == 3) {
            for (const auto& t : m.potential) {
                if (!word_has_repeat(t.word)) continue;
                std::set<int> distinct(t.word.begin(), t.word.end());
                if (distinct.size() == 2) return {Family::Jordan, 0, Branch::Generic()};
                throw std::invalid_argument(
                    "no closed form is available for this potential");
            }
        }
        throw std::invalid_argument("unrecognized one-vertex potential");
    }
    if (nv == 2 && na == 4) {
        int fwd = 0, back = 0;
        for (const auto& a : m.arrows) {
            if (a.src == 0 && a.dst == 1) ++fwd;
            else if (a.src == 1 && a.dst == 0) ++back;
        }
        if (fwd == 2 && back == 2) return {Family::Conifold, 0, Branch::Generic()};
    }
    // cyclic quiver with one loop per vertex and arrows both ways around
    if (nv >= 2 && na == 3 * nv) {
        int loops = 0;
        for (const auto& a : m.arrows)
            if (a.src == a.dst) ++loops;
        if (loops == static_cast<int>(nv))
            return {Family::Cyclic, static_cast<int>(nv) - 1, Branch::Generic()};
    }
    throw std::invalid_argument("model does not match any covered theorem family");
}

} // namespace qdt
