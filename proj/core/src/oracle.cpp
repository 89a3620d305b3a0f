#include "qdt/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <set>
#include <thread>

namespace qdt {

long multiplicative_order(long q, long p) {
    long v = ((q % p) + p) % p;
    if (v == 0) throw std::invalid_argument("parameter is zero mod p");
    long x = v, r = 1;
    while (x != 1) {
        x = (x * v) % p;
        ++r;
    }
    return r;
}

mpz_class count_gl(const DimVec& alpha, long p) {
    mpz_class out(1);
    for (int n : alpha) {
        mpz_class pn;
        mpz_ui_pow_ui(pn.get_mpz_t(), p, n);
        mpz_class pj(1);
        for (int j = 0; j < n; ++j) {
            out *= pn - pj;
            pj *= p;
        }
    }
    return out;
}

namespace {

long mod_pow(long b, long e, long p) {
    long r = 1 % p;
    b %= p;
    while (e > 0) {
        if (e & 1) r = (r * b) % p;
        b = (b * b) % p;
        e >>= 1;
    }
    return r;
}

long mod_inv(long a, long p) { return mod_pow(((a % p) + p) % p, p - 2, p); }

// ParamMonomial -> element of F_p.
long eval_coeff(const ParamMonomial& pm, const std::map<std::string, long>& vals, long p) {
    mpz_class num = pm.constant.get_num() % p;
    long c = num.get_si();
    c = ((c % p) + p) % p;
    mpz_class den = pm.constant.get_den() % p;
    long d = den.get_si();
    if (d == 0) throw std::invalid_argument("coefficient denominator vanishes mod p");
    c = (c * mod_inv(d, p)) % p;
    for (const auto& [name, e] : pm.powers) {
        auto it = vals.find(name);
        if (it == vals.end())
            throw std::invalid_argument("parameter '" + name + "' not assigned");
        long v = ((it->second % p) + p) % p;
        if (v == 0) throw std::invalid_argument("parameter '" + name + "' assigned zero");
        c = (c * mod_pow(v, e, p)) % p;
    }
    return c;
}

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Compiled relation term.
struct RelTerm {
    u64 coeff; // in F_p, nonzero
    std::vector<int> word;
};

struct Relation {
    std::vector<RelTerm> terms;
    int rows = 0, cols = 0;
    bool short_words = false; // every word has length <= 2
    bool trivial = false;     // 0x0 output or no terms survive mod p
};

struct ConstraintC {
    std::vector<int> arrows;
    Stratum kind;
    std::vector<int> vrows; // block row offset per involved vertex (-1 if not)
    int dim = 0;
};

// Flattened enumeration state for one search over F_p assignments.
struct Engine {
    long p;
    int num_arrows;
    std::vector<int> rows, cols, cells, offset;
    int total_cells = 0;
    // per enumeration depth: relations / constraints that become checkable
    std::vector<std::vector<Relation>> rel_at;
    std::vector<std::vector<ConstraintC>> cons_at;

    std::vector<u32> buf;       // all matrix entries, row-major per arrow
    std::vector<u32> scratch1, scratch2, block;
    unsigned long long count = 0;

    // Product of the word's matrices into `out` (rows r x cols c); returns
    // false when some inner dimension is zero (product is the zero matrix).
    bool word_product(const std::vector<int>& word, std::vector<u32>& out, int& r, int& c) {
        int a0 = word[0];
        r = rows[a0];
        c = cols[a0];
        if (r == 0 || c == 0) return false;
        out.assign(buf.begin() + offset[a0], buf.begin() + offset[a0] + cells[a0]);
        for (size_t w = 1; w < word.size(); ++w) {
            int a = word[w];
            int k = rows[a], c2 = cols[a];
            if (k == 0 || c2 == 0) {
                c = c2;
                if (c == 0) return false;
                out.assign(r * c, 0);
                return true;
            }
            scratch2.assign(r * c2, 0);
            const u32* m = buf.data() + offset[a];
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c2; ++j) {
                    u64 acc = 0;
                    for (int t = 0; t < k; ++t)
                        acc += static_cast<u64>(out[i * c + t]) * m[t * c2 + j];
                    scratch2[i * c2 + j] = static_cast<u32>(acc % p);
                }
            out.swap(scratch2);
            c = c2;
        }
        return true;
    }

    bool relation_holds(const Relation& rel) {
        if (rel.trivial) return true;
        if (rel.short_words) {
            // entry-wise with early exit; words have length 1 or 2
            for (int i = 0; i < rel.rows; ++i)
                for (int j = 0; j < rel.cols; ++j) {
                    u64 acc = 0;
                    for (const auto& t : rel.terms) {
                        u64 e;
                        if (t.word.size() == 1) {
                            int a = t.word[0];
                            e = buf[offset[a] + i * cols[a] + j];
                        } else {
                            int a = t.word[0], b = t.word[1];
                            int k = cols[a];
                            if (k == 0) continue;
                            const u32* ma = buf.data() + offset[a] + i * k;
                            const u32* mb = buf.data() + offset[b] + j;
                            int cb = cols[b];
                            u64 s = 0;
                            for (int t2 = 0; t2 < k; ++t2)
                                s += static_cast<u64>(ma[t2]) * mb[t2 * cb];
                            e = s % p;
                        }
                        acc += t.coeff * e;
                    }
                    if (acc % p != 0) return false;
                }
            return true;
        }
        // general path: accumulate coeff * word products
        std::vector<u64> acc(rel.rows * rel.cols, 0);
        for (const auto& t : rel.terms) {
            int r = 0, c = 0;
            if (!word_product(t.word, scratch1, r, c)) continue;
            for (int i = 0; i < rel.rows * rel.cols; ++i)
                acc[i] += t.coeff * scratch1[i];
        }
        for (u64 v : acc)
            if (v % p != 0) return false;
        return true;
    }

    bool constraint_holds(const ConstraintC& cons) {
        int D = cons.dim;
        if (D == 0) return true; // zero map: nilpotent, and vacuously invertible
        block.assign(D * D, 0);
        for (int ai : cons.arrows) {
            int r0 = cons.vrows[ /*src*/ 2 * ai ];
            int c0 = cons.vrows[2 * ai + 1];
            for (int i = 0; i < rows[ai]; ++i)
                for (int j = 0; j < cols[ai]; ++j)
                    block[(r0 + i) * D + (c0 + j)] = buf[offset[ai] + i * cols[ai] + j];
        }
        if (cons.kind == Stratum::Invertible) return det_nonzero(block, D);
        return is_nilpotent(block, D);
    }

    bool det_nonzero(std::vector<u32> m, int D) {
        for (int col = 0; col < D; ++col) {
            int piv = -1;
            for (int r = col; r < D; ++r)
                if (m[r * D + col] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return false;
            if (piv != col)
                for (int j = 0; j < D; ++j) std::swap(m[piv * D + j], m[col * D + j]);
            u64 inv = static_cast<u64>(mod_inv(m[col * D + col], p));
            for (int r = col + 1; r < D; ++r) {
                u64 f = (m[r * D + col] * inv) % p;
                if (f == 0) continue;
                for (int j = col; j < D; ++j) {
                    u64 v = m[r * D + j] + p * p -
                            (f * m[col * D + j]) % p;
                    m[r * D + j] = static_cast<u32>(v % p);
                }
            }
        }
        return true;
    }

    bool is_nilpotent(const std::vector<u32>& m, int D) {
        // Cayley-Hamilton bound: nilpotent iff m^D = 0
        std::vector<u32> acc(m);
        std::vector<u32> tmp(D * D);
        for (int s = 1; s < D; ++s) {
            for (int i = 0; i < D; ++i)
                for (int j = 0; j < D; ++j) {
                    u64 v = 0;
                    for (int k = 0; k < D; ++k)
                        v += static_cast<u64>(acc[i * D + k]) * m[k * D + j];
                    tmp[i * D + j] = static_cast<u32>(v % p);
                }
            acc.swap(tmp);
        }
        for (u32 v : acc)
            if (v != 0) return false;
        return true;
    }

    bool checks_pass(int depth) {
        for (const auto& rel : rel_at[depth])
            if (!relation_holds(rel)) return false;
        for (const auto& cons : cons_at[depth])
            if (!constraint_holds(cons)) return false;
        return true;
    }

    void descend(int depth) {
        if (depth == num_arrows) {
            ++count;
            return;
        }
        int c = cells[depth], off = offset[depth];
        if (c == 0) {
            if (checks_pass(depth)) descend(depth + 1);
            return;
        }
        std::fill(buf.begin() + off, buf.begin() + off + c, 0);
        const long pp = p;
        for (;;) {
            if (checks_pass(depth)) descend(depth + 1);
            int k = c - 1;
            while (k >= 0) {
                if (static_cast<long>(++buf[off + k]) < pp) break;
                buf[off + k] = 0;
                --k;
            }
            if (k < 0) break;
        }
    }

    // Enumerate with the entries of the leading nonempty arrow fixed to the
    // base-p digits of `index`; used for parallel slicing. Arrows before
    // `lead` all have zero cells but may still carry checks.
    void descend_sliced(int lead, unsigned long long index) {
        for (int d = 0; d < lead; ++d)
            if (!checks_pass(d)) return;
        int c = cells[lead], off = offset[lead];
        for (int k = c - 1; k >= 0; --k) {
            buf[off + k] = static_cast<u32>(index % p);
            index /= p;
        }
        if (!checks_pass(lead)) return;
        descend(lead + 1);
    }
};

Engine build_engine(const CountTask& task) {
    const ReducedPresentation& rp = task.presentation;
    const QuiverModel& q = rp.quiver;
    Engine e{};
    e.p = task.p;
    e.num_arrows = static_cast<int>(q.arrows.size());
    e.rows.resize(e.num_arrows);
    e.cols.resize(e.num_arrows);
    e.cells.resize(e.num_arrows);
    e.offset.resize(e.num_arrows);
    for (int a = 0; a < e.num_arrows; ++a) {
        e.rows[a] = task.alpha[q.arrows[a].src];
        e.cols[a] = task.alpha[q.arrows[a].dst];
        e.cells[a] = e.rows[a] * e.cols[a];
        e.offset[a] = e.total_cells;
        e.total_cells += e.cells[a];
    }
    e.buf.assign(std::max(e.total_cells, 1), 0);
    e.rel_at.resize(e.num_arrows);
    e.cons_at.resize(e.num_arrows);

    for (const auto& rel : rp.relations) {
        Relation r;
        int last = -1;
        bool shortw = true;
        for (const auto& t : rel) {
            long c = eval_coeff(t.coef, task.param_values, task.p);
            if (c == 0) continue;
            for (int a : t.word) last = std::max(last, a);
            if (t.word.size() > 2) shortw = false;
            r.terms.push_back({static_cast<u64>(c), t.word});
        }
        if (r.terms.empty()) continue;
        int a0 = r.terms[0].word.front(), a1 = r.terms[0].word.back();
        r.rows = e.rows[a0];
        r.cols = e.cols[a1];
        r.short_words = shortw;
        r.trivial = (r.rows == 0 || r.cols == 0);
        e.rel_at[last].push_back(std::move(r));
    }
    return e;
}

void attach_constraints(Engine& e, const CountTask& task,
                        const std::vector<MapConstraint>& strata) {
    const QuiverModel& q = task.presentation.quiver;
    for (const auto& mc : strata) {
        if (mc.kind == Stratum::Any) continue;
        ConstraintC c;
        c.kind = mc.kind;
        std::set<int> verts;
        int last = -1;
        for (const auto& name : mc.arrows) {
            int ai = q.arrow_index(name);
            if (ai < 0) throw std::invalid_argument("unknown arrow '" + name + "'");
            c.arrows.push_back(ai);
            verts.insert(q.arrows[ai].src);
            verts.insert(q.arrows[ai].dst);
            last = std::max(last, ai);
        }
        // the block sum must be an endomorphism of the involved summand
        std::map<int, int> voff;
        int D = 0;
        for (int v : verts) {
            voff[v] = D;
            D += task.alpha[v];
        }
        c.dim = D;
        c.vrows.assign(2 * e.num_arrows, -1);
        for (int ai : c.arrows) {
            c.vrows[2 * ai] = voff[q.arrows[ai].src];
            c.vrows[2 * ai + 1] = voff[q.arrows[ai].dst];
        }
        if (last < 0) continue;
        e.cons_at[last].push_back(std::move(c));
    }
}

OracleReport finish_report(const CountTask& task, unsigned long long count) {
    OracleReport rep;
    rep.representation_count = mpz_class(static_cast<unsigned long>(count));
    rep.gl_count = count_gl(task.alpha, task.p);
    rep.ratio = mpq_class(rep.representation_count, rep.gl_count);
    rep.ratio.canonicalize();
    rep.p = task.p;
    rep.alpha = task.alpha;
    auto it = task.param_values.find("q");
    if (it != task.param_values.end()) {
        rep.q = ((it->second % task.p) + task.p) % task.p;
        rep.order_q = multiplicative_order(rep.q, task.p);
    }
    return rep;
}

void check_cap(const CountTask& task, const Engine& e) {
    double space = 1.0;
    for (int c : e.cells) space *= std::pow(static_cast<double>(task.p), c);
    if (space > task.cap)
        throw SearchSpaceTooLarge("search space " + std::to_string(space) +
                                  " exceeds cap " + std::to_string(task.cap));
}

unsigned long long run_engine(Engine& proto, const CountTask& task) {
    int lead = -1;
    for (int a = 0; a < proto.num_arrows; ++a)
        if (proto.cells[a] != 0) {
            lead = a;
            break;
        }
    int jobs = std::max(task.jobs, 1);
    if (lead < 0 || jobs == 1) {
        proto.descend(0);
        return proto.count;
    }
    // check zero-cell arrows before the slicing point once
    unsigned long long lead_space = 1;
    for (int i = 0; i < proto.cells[lead]; ++i) lead_space *= task.p;
    std::vector<std::thread> workers;
    std::vector<unsigned long long> partial(jobs, 0);
    for (int t = 0; t < jobs; ++t) {
        workers.emplace_back([&, t]() {
            Engine local(proto);
            for (unsigned long long idx = t; idx < lead_space; idx += jobs)
                local.descend_sliced(lead, idx);
            partial[t] = local.count;
        });
    }
    for (auto& w : workers) w.join();
    unsigned long long total = 0;
    for (auto v : partial) total += v;
    return total;
}

} // namespace

OracleReport count_representations(const CountTask& task) {
    Engine e = build_engine(task);
    check_cap(task, e);
    return finish_report(task, run_engine(e, task));
}

OracleReport stratified_count(const CountTask& task,
                              const std::vector<MapConstraint>& strata) {
    Engine e = build_engine(task);
    check_cap(task, e);
    attach_constraints(e, task, strata);
    return finish_report(task, run_engine(e, task));
}

VerificationReport verify_theorem(const QuiverModel& model, const DimVec& alpha, long p,
                                  const std::map<std::string, long>& param_values,
                                  BranchMode mode, int root_r, int truncation, double cap,
                                  int jobs) {
    auto t0 = std::chrono::steady_clock::now();
    if (!model.cut) throw InvalidCut("model declares no cut");
    TheoremSpec spec = infer_family(model);

    VerificationReport rep;
    rep.alpha = alpha;
    rep.p = p;
    auto it = param_values.find("q");
    if (it != param_values.end()) {
        rep.q = ((it->second % p) + p) % p;
        rep.order_q = multiplicative_order(rep.q, p);
    }

    int degree = total_degree(alpha);
    int corr = spec.correction_support();
    if (corr > 0 && rep.order_q < 0)
        throw std::invalid_argument("family requires a value for parameter q");
    switch (mode) {
        case BranchMode::Auto:
            if (corr > 0 && rep.order_q * corr <= degree)
                spec.branch = Branch::RootOfUnity(static_cast<int>(rep.order_q));
            else
                spec.branch = Branch::Generic();
            break;
        case BranchMode::Generic:
            if (corr > 0 && rep.order_q * corr <= degree)
                throw BranchMismatch(
                    "order(q) = " + std::to_string(rep.order_q) +
                    " is too small for the generic branch at |alpha| = " +
                    std::to_string(degree));
            spec.branch = Branch::Generic();
            break;
        case BranchMode::Root:
            if (corr == 0)
                throw BranchMismatch("family has no root-of-unity branch");
            if (rep.order_q != root_r)
                throw BranchMismatch("order(q) = " + std::to_string(rep.order_q) +
                                     " but branch root:" + std::to_string(root_r) +
                                     " was requested");
            spec.branch = Branch::RootOfUnity(root_r);
            break;
    }
    rep.spec = spec;

    int N = truncation > 0 ? truncation : degree;
    MSeries series = theorem_series(spec, N);
    MotivicScalar cls = reduced_class(series, model, *model.cut, alpha);
    rep.predicted = cls.specialize_at_prime(p);

    CountTask task{reduced_presentation(model, *model.cut), alpha, p, param_values, cap,
                   jobs};
    OracleReport oc = count_representations(task);
    rep.observed = oc.ratio;
    rep.representation_count = oc.representation_count;
    rep.gl_count = oc.gl_count;
    rep.pass = (rep.predicted == rep.observed);
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

} // namespace qdt
