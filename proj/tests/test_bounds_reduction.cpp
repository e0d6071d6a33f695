#include <doctest.h>

#include <cmath>
#include <random>

#include "gcm/bounds.hpp"
#include "gcm/interval.hpp"
#include "gcm/reduction.hpp"

using namespace gcm;

namespace {

ReductionProblem make_problem(double k, double l, BoundFunction g,
                              BoundFunction rho, double c = 2) {
    ReductionProblem p;
    p.k = k;
    p.l = l;
    p.g = std::move(g);
    p.rho = std::move(rho);
    p.target_c = c;
    return p;
}

}  // namespace

TEST_CASE("triangle supersaturation floor") {
    CHECK(rho_k3(-0.5) == 0);
    CHECK(rho_k3(0) == doctest::Approx(0));
    // both branch formulas meet at x = 1/3 with value 16/9
    CHECK(rho_k3(1.0 / 3.0) == doctest::Approx(16.0 / 9.0));
    CHECK(rho_k3(std::nextafter(1.0 / 3.0, 1.0)) == doctest::Approx(16.0 / 9.0));
    CHECK(rho_k3(1) == doctest::Approx(16.0 / 3.0));
    double prev = 0;
    for (int i = 0; i <= 1000; ++i) {
        double x = -1 + 2.0 * i / 1000;
        double r = rho_k3(x);
        CHECK(r >= prev);  // monotone non-decreasing
        CHECK(r <= std::pow(1 + x, 3) + 1e-12);
        prev = r;
    }
    CHECK_THROWS_AS(rho_k3(1.5), domain_error);
}

TEST_CASE("bound function kinds and json") {
    BoundFunction g = BoundFunction::power(3);
    CHECK(g.eval(1.5) == doctest::Approx(3.375));
    CHECK(g.power_exponent() == 3);
    BoundFunction pm = BoundFunction::piecewise_max(
        {BoundFunction::fisher_k3(), BoundFunction::bollobas_linear()});
    for (int i = 0; i <= 100; ++i) {
        double z = 2.0 * i / 100;
        CHECK(pm.eval(z) ==
              doctest::Approx(std::max(BoundFunction::fisher_k3().eval(z),
                                       BoundFunction::bollobas_linear().eval(z))));
    }
    BoundFunction back = BoundFunction::from_json(pm.to_json());
    CHECK(back.to_json() == pm.to_json());
    CHECK_THROWS_AS(BoundFunction::power(-1), domain_error);
}

TEST_CASE("interval evaluation encloses point evaluation") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(0, 2);
    for (const BoundFunction& f :
         {BoundFunction::power(3), BoundFunction::fisher_k3(),
          BoundFunction::bollobas_linear()}) {
        for (int trial = 0; trial < 200; ++trial) {
            double a = u(rng), b = u(rng);
            if (a > b) std::swap(a, b);
            Interval r = f.eval(Interval(a, b));
            for (double t : {0.0, 0.3, 0.7, 1.0}) {
                // a + (b - a) can land just past b in floating point
                double z = std::min(std::max(a + t * (b - a), a), b);
                double v = f.eval(z);
                CHECK(r.lo <= v);
                CHECK(v <= r.hi);
            }
        }
    }
}

TEST_CASE("f and its y derivative") {
    ReductionProblem p = make_problem(2, 2, BoundFunction::power(3),
                                      BoundFunction::fisher_k3());
    CHECK(f_gkl(p, 0, 0) == doctest::Approx(2));
    CHECK_THROWS_AS(f_gkl(p, 0, -0.1), domain_error);
    CHECK_THROWS_AS(f_gkl(p, 0, 1.5), domain_error);  // y > g(1)
    CHECK_THROWS_AS(f_gkl(p, 1.5, 0), domain_error);

    ReductionProblem neg = make_problem(2, -1, BoundFunction::power(3),
                                        BoundFunction::fisher_k3());
    CHECK_THROWS_AS(f_gkl(neg, 1, 0), domain_error);  // singular at x = 1
    CHECK_NOTHROW(f_gkl(neg, 0.5, 0));

    // derivative vanishes at the interior critical point
    for (double x : {0.1, 0.3, 0.6, 0.9}) {
        double y0 = critical_y0(p, x);
        CHECK(f_gkl_dy(p, x, y0) == doctest::Approx(0).epsilon(1e-9));
        // and f is locally minimal there in y
        double ymax = p.g.eval(1 + x);
        if (y0 > 1e-6 && y0 < ymax - 1e-6) {
            CHECK(f_gkl(p, x, y0) <= f_gkl(p, x, y0 + 1e-6));
            CHECK(f_gkl(p, x, y0) <= f_gkl(p, x, y0 - 1e-6));
        }
    }
}

TEST_CASE("second critical point stays above the feasible region") {
    for (double l : {0.5, 1.0, 2.0, 13.0 / 3.0}) {
        ReductionProblem p = make_problem(3, l, BoundFunction::power(3),
                                          BoundFunction::fisher_k3());
        for (double x : {0.05, 0.2, 0.5, 0.8, 0.99}) {
            double y1 = critical_y1(p, x);
            CHECK(y1 >= p.g.eval(1 + x) - p.rho.eval(1 + x) - 1e-9);
        }
        CHECK(critical_y1(p, 0) == std::numeric_limits<double>::infinity());
    }
}

TEST_CASE("condition margins match the worked signs") {
    // k = 3, l = 13/3: condition (x~1) flips from violated to satisfied
    // between 0.13 and 0.1397
    ReductionProblem p = make_problem(3, 13.0 / 3.0, BoundFunction::power(3),
                                      BoundFunction::fisher_k3());
    CHECK(cond_x1(p, 0.13) < 0);
    CHECK(cond_x1(p, 0.1397) > 0);

    // appendix (x~1*) for the 16x/3 branch: satisfied exactly on [x1, 1]
    // with x1 = (8 - sqrt(37))/9
    ReductionProblem q = make_problem(2, 1, BoundFunction::power(3),
                                      BoundFunction::bollobas_linear());
    double x1 = (8 - std::sqrt(37.0)) / 9;
    CHECK(cond_appendix(q, x1 - 1e-6, AppendixVariant::x1_star, 0) < 0);
    CHECK(cond_appendix(q, x1 + 1e-6, AppendixVariant::x1_star, 0) > 0);
    CHECK(cond_appendix(q, 1, AppendixVariant::x1_star, 0) > 0);

    CHECK_THROWS_AS(cond_appendix(q, 0.5, AppendixVariant::x0_star, 0.5),
                    domain_error);  // l0 < l
    CHECK_THROWS_AS(cond_appendix(q, 0.5, AppendixVariant::x0_dagger, 2),
                    domain_error);  // g is z^3, not z^2
}

TEST_CASE("interval condition margins enclose the scalar margins") {
    ReductionProblem p = make_problem(3, 2, BoundFunction::power(3),
                                      BoundFunction::fisher_k3());
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int trial = 0; trial < 300; ++trial) {
        double a = u(rng), b = u(rng);
        if (a > b) std::swap(a, b);
        Interval xi(a, b);
        double mid = 0.5 * (a + b);
        Interval m0 = cond_x0(p, xi);
        CHECK(m0.lo <= cond_x0(p, mid));
        CHECK(cond_x0(p, mid) <= m0.hi);
        Interval m1 = cond_x1(p, xi);
        CHECK(m1.lo <= cond_x1(p, mid));
        CHECK(cond_x1(p, mid) <= m1.hi);
        Interval m1p = cond_x1prime(p, xi);
        CHECK(m1p.lo <= cond_x1prime(p, mid));
        CHECK(cond_x1prime(p, mid) <= m1p.hi);
    }
}

TEST_CASE("verification verdicts") {
    ReductionProblem holds = make_problem(2, 2, BoundFunction::power(3),
                                          BoundFunction::fisher_k3());
    Certificate g = verify_reduction(holds, VerifyStrategy::grid_with_margin);
    Certificate i = verify_reduction(holds, VerifyStrategy::certified_interval);
    CHECK(g.holds());
    CHECK(i.holds());
    CHECK(g.intervals.front().condition == "x0_boundary");
    CHECK(g.intervals.front().x_lo == 0);
    CHECK(g.intervals.back().x_hi == doctest::Approx(1));
    CHECK(i.intervals.back().x_hi == doctest::Approx(1));
    CHECK(g.x0_crossover > 0.5);

    ReductionProblem fails = make_problem(2, 3, BoundFunction::power(3),
                                          BoundFunction::zero());
    Certificate f = verify_reduction(fails, VerifyStrategy::grid_with_margin);
    CHECK(f.verdict == CertVerdict::fails_at);
    CHECK(f.fail_value < 2);
    CHECK(f_gkl(fails, f.fail_x, f.fail_y) == doctest::Approx(f.fail_value));

    CHECK_THROWS_AS(
        verify_reduction(make_problem(2, -1, BoundFunction::power(3),
                                      BoundFunction::fisher_k3()),
                         VerifyStrategy::grid_with_margin),
        domain_error);
}

TEST_CASE("certificate json and replay") {
    ReductionProblem p = make_problem(2, 1, BoundFunction::power(3),
                                      BoundFunction::fisher_k3());
    Certificate c = verify_reduction(p, VerifyStrategy::grid_with_margin);
    Certificate back = Certificate::from_json(c.to_json());
    CHECK(back.to_json() == c.to_json());
    CHECK(replay_certificate(back));

    Certificate tampered = back;
    tampered.verdict = CertVerdict::fails_at;
    CHECK_FALSE(replay_certificate(tampered));

    Certificate relabeled = back;
    relabeled.intervals.back().condition = "x0";
    relabeled.intervals.back().x_lo = 0.999;
    relabeled.intervals.back().x_hi = 1.0;
    CHECK_FALSE(replay_certificate(relabeled));  // x0 margin is negative there
}

TEST_CASE("exact lower bound pipeline") {
    K3K2LowerBound b = lower_bound_k3_k2();
    CHECK(b.all_checks_pass);
    CHECK(b.endpoint_value == Rational(5, 27));
    CHECK(b.h_at_lo < 0);
    CHECK(b.h_at_hi > 0);
    CHECK(b.final_bound > Rational(121423, 1000000));
    CHECK(b.final_bound < Rational(5, 27));  // the quartic case is the binding one
}

TEST_CASE("inequality helper domains") {
    CHECK(bernoulli_ineq(2, -1, 3));
    CHECK_THROWS_AS(bernoulli_ineq(-1, 0, 2), domain_error);
    CHECK_THROWS_AS(bernoulli_ineq(1, 1, 1), domain_error);
    CHECK(rearrange_ineq(1, 2, 1, 1, 3, 1));
    CHECK_THROWS_AS(rearrange_ineq(1, 1, 1, 2, 3, 1), domain_error);  // b < d
    CHECK(holder_claim(0.3, 0.8, 1, 2.5));
    CHECK_THROWS_AS(holder_claim(1, 1, 2, 1), domain_error);  // m < s
}

TEST_CASE("problem json round trip") {
    ReductionProblem p = make_problem(3, 13.0 / 3.0, BoundFunction::power(3),
                                      BoundFunction::fisher_k3());
    ReductionProblem back = ReductionProblem::from_json(p.to_json());
    CHECK(back.to_json() == p.to_json());
    CHECK(back.k == 3);
    CHECK(back.l == doctest::Approx(13.0 / 3.0));
}
