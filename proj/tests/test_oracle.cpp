#include "doctest.h"

#include <fstream>
#include <sstream>

#include "qdt/oracle.hpp"

using namespace qdt;

namespace {

QuiverModel load(const std::string& name) {
    std::ifstream in(std::string(QDT_MODEL_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return parse_model(os.str());
}

CountTask task_for(const QuiverModel& m, DimVec alpha, long p,
                   std::map<std::string, long> params = {}) {
    CountTask t;
    t.presentation = reduced_presentation(m, *m.cut);
    t.alpha = std::move(alpha);
    t.p = p;
    t.param_values = std::move(params);
    return t;
}

} // namespace

TEST_CASE("multiplicative order") {
    CHECK(multiplicative_order(2, 7) == 3);
    CHECK(multiplicative_order(1, 5) == 1);
    CHECK(multiplicative_order(4, 5) == 2);
    CHECK(multiplicative_order(9, 7) == 3); // reduced mod p first
    CHECK_THROWS(multiplicative_order(0, 5));
}

TEST_CASE("general linear group orders") {
    CHECK(count_gl({2}, 3) == 48);
    CHECK(count_gl({1, 1}, 3) == 4);
    CHECK(count_gl({1}, 7) == 6);
    CHECK(count_gl({2, 1}, 5) == mpz_class(24) * 20 * 4);
}

TEST_CASE("scalar counts for the three cut models") {
    auto quantum = load("q1_quantum.qp");
    auto r1 = count_representations(task_for(quantum, {1}, 3, {{"q", 2}}));
    CHECK(r1.representation_count == 5);
    CHECK(r1.gl_count == 2);
    CHECK(r1.ratio == mpq_class(5, 2));
    CHECK(r1.q == 2);
    CHECK(r1.order_q == 2);

    auto jordan = load("q1_jordan.qp");
    auto r2 = count_representations(task_for(jordan, {1}, 5));
    CHECK(r2.representation_count == 5);
    CHECK(r2.q == -1);

    auto con = load("conifold.qp");
    auto r3 = count_representations(task_for(con, {1, 1}, 3, {{"q", 2}}));
    CHECK(r3.representation_count == 19);
    CHECK(r3.gl_count == 4);
}

TEST_CASE("zero parameter is rejected") {
    auto quantum = load("q1_quantum.qp");
    CHECK_THROWS(count_representations(task_for(quantum, {1}, 3, {{"q", 3}})));
}

TEST_CASE("search space cap") {
    auto quantum = load("q1_quantum.qp");
    auto t = task_for(quantum, {2}, 11, {{"q", 2}});
    t.cap = 1e6; // 11^8 exceeds this
    CHECK_THROWS_AS(count_representations(t), SearchSpaceTooLarge);
}

TEST_CASE("determinism across worker counts") {
    auto quantum = load("q1_quantum.qp");
    auto con = load("conifold.qp");
    for (int jobs : {1, 2, 3, 5}) {
        auto t = task_for(quantum, {2}, 3, {{"q", 2}});
        t.jobs = jobs;
        auto r = count_representations(t);
        CHECK(r.representation_count ==
              count_representations(task_for(quantum, {2}, 3, {{"q", 2}}))
                  .representation_count);
        auto t2 = task_for(con, {1, 2}, 3, {{"q", 2}});
        t2.jobs = jobs;
        CHECK(count_representations(t2).representation_count ==
              count_representations(task_for(con, {1, 2}, 3, {{"q", 2}}))
                  .representation_count);
    }
}

TEST_CASE("swapping the loops with q inverted preserves counts") {
    auto quantum = load("q1_quantum.qp");
    for (long p : {3L, 5L}) {
        for (long q = 1; q < p; ++q) {
            long qinv = 1;
            while ((qinv * q) % p != 1) ++qinv;
            for (int n = 1; n <= 2; ++n) {
                auto a = count_representations(task_for(quantum, {n}, p, {{"q", q}}));
                auto b =
                    count_representations(task_for(quantum, {n}, p, {{"q", qinv}}));
                CHECK(a.representation_count == b.representation_count);
            }
        }
    }
}

TEST_CASE("commutative point counts") {
    auto quantum = load("q1_quantum.qp");
    // q = 1: commuting pairs; at n = 1 every pair commutes.
    for (long p : {3L, 5L}) {
        auto r = count_representations(task_for(quantum, {1}, p, {{"q", 1}}));
        CHECK(r.representation_count == p * p);
    }
    // n = 2 over F_2 against the commutative-branch prediction.
    auto rep = verify_theorem(quantum, {2}, 2, {{"q", 1}}, BranchMode::Root, 1);
    CHECK(rep.pass);
}

TEST_CASE("strata counts at dimension one") {
    auto quantum = load("q1_quantum.qp");
    auto t = task_for(quantum, {1}, 3, {{"q", 2}});
    auto strat = [&](Stratum a, Stratum b) {
        std::vector<MapConstraint> cs{{{"x"}, a}, {{"y"}, b}};
        return stratified_count(t, cs).representation_count;
    };
    CHECK(strat(Stratum::Invertible, Stratum::Invertible) == 0);
    CHECK(strat(Stratum::Invertible, Stratum::Nilpotent) == 2);
    CHECK(strat(Stratum::Nilpotent, Stratum::Invertible) == 2);
    CHECK(strat(Stratum::Nilpotent, Stratum::Nilpotent) == 1);
    // the four strata partition the n = 1 variety
    CHECK(strat(Stratum::Invertible, Stratum::Invertible) +
              strat(Stratum::Invertible, Stratum::Nilpotent) +
              strat(Stratum::Nilpotent, Stratum::Invertible) +
              strat(Stratum::Nilpotent, Stratum::Nilpotent) ==
          count_representations(t).representation_count);
}

TEST_CASE("nilpotent strata do not depend on q") {
    auto quantum = load("q1_quantum.qp");
    for (long p : {3L, 5L}) {
        for (int n = 1; n <= 2; ++n) {
            std::vector<mpz_class> nn, ni, in_;
            for (long q = 1; q < p; ++q) {
                auto t = task_for(quantum, {n}, p, {{"q", q}});
                auto run = [&](Stratum a, Stratum b) {
                    std::vector<MapConstraint> cs{{{"x"}, a}, {{"y"}, b}};
                    return stratified_count(t, cs).representation_count;
                };
                nn.push_back(run(Stratum::Nilpotent, Stratum::Nilpotent));
                ni.push_back(run(Stratum::Nilpotent, Stratum::Invertible));
                in_.push_back(run(Stratum::Invertible, Stratum::Nilpotent));
            }
            for (const auto* v : {&nn, &ni, &in_})
                for (const auto& x : *v) CHECK(x == (*v)[0]);
        }
    }
}

TEST_CASE("conifold block-sum stratification") {
    // Constraint on a2 + b2 embedded in End(V_1 + V_2): both direction blocks.
    auto con = load("conifold.qp");
    auto t = task_for(con, {1, 1}, 3, {{"q", 2}});
    std::vector<MapConstraint> inv{{{"a2", "b2"}, Stratum::Invertible}};
    std::vector<MapConstraint> nil{{{"a2", "b2"}, Stratum::Nilpotent}};
    auto ri = stratified_count(t, inv).representation_count;
    auto rn = stratified_count(t, nil).representation_count;
    CHECK(ri + rn == count_representations(t).representation_count);
}

TEST_CASE("end to end verification") {
    auto quantum = load("q1_quantum.qp");
    auto rep = verify_theorem(quantum, {1}, 3, {{"q", 2}});
    CHECK(rep.pass);
    CHECK(rep.predicted == mpq_class(5, 2));
    CHECK(rep.observed == mpq_class(5, 2));

    auto con = load("conifold.qp");
    auto rep2 = verify_theorem(con, {1, 1}, 3, {{"q", 2}});
    CHECK(rep2.pass);
    CHECK(rep2.observed == mpq_class(19, 4));

    // branch mismatch: q = 1 has order 1, generic needs order > |alpha|
    CHECK_THROWS_AS(verify_theorem(quantum, {1}, 3, {{"q", 1}}, BranchMode::Generic),
                    BranchMismatch);
    // root branch with the wrong order
    CHECK_THROWS_AS(verify_theorem(quantum, {1}, 5, {{"q", 2}}, BranchMode::Root, 2),
                    BranchMismatch);
}
