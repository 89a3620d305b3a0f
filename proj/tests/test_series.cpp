#include "doctest.h"

#include <random>

#include "qdt/series.hpp"

using namespace qdt;

namespace {

MotivicScalar L() { return MotivicScalar::lefschetz(); }

MSeries random_ideal_series(std::mt19937& rng, int vars, int trunc, int max_terms) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> vdeg(0, 2);
    MSeries f(vars, trunc);
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        DimVec a(vars, 0);
        int total = 0;
        for (int i = 0; i < vars; ++i) {
            std::uniform_int_distribution<int> d(0, trunc - total);
            a[i] = d(rng);
            total += a[i];
        }
        if (total == 0) a[0] = 1;
        auto c = MotivicScalar(coeff(rng)) * MotivicScalar::v_pow(vdeg(rng));
        f.add_coeff(a, c);
    }
    return f;
}

// sigma_n from Adams operations by the Newton recurrence,
// applied to a single-term series c * t^a.
MotivicScalar sigma_from_adams(const MotivicScalar& c, int n) {
    if (n == 0) return MotivicScalar(1);
    std::vector<MotivicScalar> sigma(n + 1);
    sigma[0] = MotivicScalar(1);
    for (int m = 1; m <= n; ++m) {
        MotivicScalar acc;
        for (int k = 1; k <= m; ++k) acc = acc + c.adams(k) * sigma[m - k];
        sigma[m] = acc / MotivicScalar(m);
    }
    return sigma[n];
}

} // namespace

TEST_CASE("series arithmetic") {
    auto one = MotivicScalar(1);
    MSeries f(1, 2), g(1, 2);
    f.set_coeff({0}, one);
    f.set_coeff({1}, one);
    g.set_coeff({0}, one);
    g.set_coeff({1}, -one);
    MSeries expect(1, 2);
    expect.set_coeff({0}, one);
    expect.set_coeff({2}, -one);
    CHECK(f * g == expect);

    MSeries t0(2, 2), t1(2, 2);
    t0.set_coeff({1, 0}, one);
    t1.set_coeff({0, 1}, one);
    MSeries t0t1(2, 2);
    t0t1.set_coeff({1, 1}, one);
    CHECK(t0 * t1 == t0t1);

    // telescoping: (sum_{n<=N} t^n) * (1 - t) = 1 after truncation
    int N = 5;
    MSeries geo(1, N), omt(1, N);
    for (int n = 0; n <= N; ++n) geo.set_coeff({n}, one);
    omt.set_coeff({0}, one);
    omt.set_coeff({1}, -one);
    CHECK(geo * omt == MSeries::one(1, N));

    MSeries other(1, 3);
    CHECK_THROWS_AS(f + other, ShapeMismatch);
    MSeries wide(2, 2);
    CHECK_THROWS_AS(f + wide, ShapeMismatch);
}

TEST_CASE("adams on series") {
    auto one = MotivicScalar(1);
    MSeries f(1, 4);
    auto a = (L() * 2 - one) / (L() - one);
    f.set_coeff({1}, a);
    auto g = adams_series(2, f);
    CHECK(g.coeff({2}) == a.adams(2));
    CHECK(g.coeff({1}).is_zero());

    MSeries lt(1, 4);
    lt.set_coeff({1}, L());
    CHECK(adams_series(2, lt).coeff({2}) == L() * L());

    MSeries h(2, 3);
    h.set_coeff({1, 0}, one);
    h.set_coeff({0, 1}, one);
    auto k = adams_series(3, h);
    CHECK(k.coeff({3, 0}) == one);
    CHECK(k.coeff({0, 3}) == one);
    CHECK(k.coefficients().size() == 2);
}

TEST_CASE("adams_series is multiplicative") {
    std::mt19937 rng(31337);
    for (int i = 0; i < 20; ++i) {
        auto f = random_ideal_series(rng, 2, 6, 3);
        auto g = random_ideal_series(rng, 2, 6, 3);
        for (int k = 2; k <= 3; ++k)
            CHECK(adams_series(k, f * g) == adams_series(k, f) * adams_series(k, g));
    }
}

TEST_CASE("plethystic exp basics") {
    auto one = MotivicScalar(1);
    MSeries t(1, 6);
    t.set_coeff({1}, one);
    auto e = plethystic_exp(t);
    for (int n = 0; n <= 6; ++n) CHECK(e.coeff({n}) == one);

    MSeries lt(1, 5);
    lt.set_coeff({1}, L());
    auto el = plethystic_exp(lt);
    for (int n = 0; n <= 5; ++n) CHECK(el.coeff({n}) == L().pow(n));

    MSeries bad(1, 3);
    bad.set_coeff({0}, one);
    CHECK_THROWS_AS(plethystic_exp(bad), NonzeroConstantTerm);
}

TEST_CASE("exp coefficient of t^2 for the geometric argument") {
    auto one = MotivicScalar(1);
    auto a = (L() * 2 - one) / (L() - one);
    MSeries f(1, 2);
    f.set_coeff({1}, a);
    f.set_coeff({2}, a);
    auto e = plethystic_exp(f);
    auto expect = a + (a.adams(2) + a * a) / MotivicScalar(2);
    CHECK(e.coeff({2}) == expect);
}

TEST_CASE("plethystic log") {
    auto one = MotivicScalar(1);
    MSeries geo(1, 5);
    for (int n = 0; n <= 5; ++n) geo.set_coeff({n}, one);
    MSeries t(1, 5);
    t.set_coeff({1}, one);
    CHECK(plethystic_log(geo) == t);

    MSeries bad(1, 3);
    bad.set_coeff({1}, one);
    CHECK_THROWS_AS(plethystic_log(bad), ConstantTermNotOne);
}

TEST_CASE("exp and log are inverse") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 25; ++i) {
        auto f = random_ideal_series(rng, 2, 6, 3);
        CHECK(plethystic_log(plethystic_exp(f)) == f);
    }
    for (int i = 0; i < 10; ++i) {
        auto f = random_ideal_series(rng, 1, 6, 3);
        auto e = plethystic_exp(f);
        CHECK(plethystic_exp(plethystic_log(e)) == e);
    }
}

TEST_CASE("exp turns sums into products") {
    std::mt19937 rng(55);
    for (int i = 0; i < 25; ++i) {
        auto f = random_ideal_series(rng, 2, 6, 3);
        auto g = random_ideal_series(rng, 2, 6, 3);
        CHECK(plethystic_exp(f + g) == plethystic_exp(f) * plethystic_exp(g));
    }
}

TEST_CASE("exp agrees with the sigma sum on single terms") {
    std::mt19937 rng(808);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> vdeg(0, 3);
    for (int i = 0; i < 20; ++i) {
        auto c = MotivicScalar(coeff(rng)) * MotivicScalar::v_pow(vdeg(rng));
        MSeries f(1, 6);
        f.set_coeff({1}, c);
        auto e = plethystic_exp(f);
        for (int n = 0; n <= 6; ++n) CHECK(e.coeff({n}) == sigma_from_adams(c, n));
    }
}

TEST_CASE("specialization commutes with exp") {
    // Constant coefficients: evaluating at L = p before or after Exp agrees,
    // since the Adams operations fix rationals.
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coeff(-2, 2);
    for (int rep = 0; rep < 10; ++rep) {
        MSeries f(1, 5);
        std::vector<mpq_class> vals(6);
        for (int n = 1; n <= 5; ++n) {
            int c = coeff(rng);
            f.set_coeff({n}, MotivicScalar(c));
            vals[n] = c;
        }
        auto e = plethystic_exp(f);
        // Rational-number Exp: adams is identity on constants.
        std::vector<mpq_class> logsum(6);
        for (int n = 1; n <= 5; ++n)
            for (int k = 1; k * n <= 5; ++k) logsum[k * n] += vals[n] / k;
        std::vector<mpq_class> expq(6);
        expq[0] = 1;
        for (int n = 1; n <= 5; ++n) {
            mpq_class acc;
            for (int k = 1; k <= n; ++k) acc += mpq_class(k) * logsum[k] * expq[n - k];
            expq[n] = acc / n;
        }
        for (int n = 0; n <= 5; ++n)
            CHECK(e.coeff({n}).specialize_at_prime(5) == expq[n]);
    }
}

TEST_CASE("closed form expansion") {
    auto one = MotivicScalar(1);
    ClosedFormTerm plain{one, {1}, {1}};
    auto s = expand_closed_form({plain}, 1, 3);
    for (int n = 1; n <= 3; ++n) CHECK(s.coeff({n}) == one);
    CHECK(s.coeff({0}).is_zero());

    // M * t0/(1 - t0 t1)
    auto m = -one / (MotivicScalar::half_lefschetz() -
                     one / MotivicScalar::half_lefschetz());
    ClosedFormTerm conifold{m, {1, 0}, {1, 1}};
    auto c = expand_closed_form({conifold}, 2, 4);
    CHECK(c.coeff({1, 0}) == m);
    CHECK(c.coeff({2, 1}) == m);
    CHECK(c.coeff({1, 1}).is_zero());
    CHECK(c.coeff({3, 2}).is_zero()); // beyond truncation
}

TEST_CASE("series json rendering is stable") {
    auto one = MotivicScalar(1);
    MSeries f(2, 2);
    f.set_coeff({0, 1}, L());
    f.set_coeff({1, 0}, one);
    auto s1 = f.to_json();
    MSeries g(2, 2);
    g.set_coeff({1, 0}, one);
    g.set_coeff({0, 1}, L());
    CHECK(s1 == g.to_json());
    CHECK(s1.find("\"truncation\": 2") != std::string::npos);
}
