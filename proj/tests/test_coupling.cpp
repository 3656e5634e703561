#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kuramoto/coupling.hpp"
#include "kuramoto/errors.hpp"
#include "support.hpp"

using namespace kuramoto;

namespace {

FrequencySpec spec_of(std::initializer_list<double> vals) {
    return center(std::vector<double>(vals));
}

} // namespace

TEST_CASE("sign vectors") {
    const SignVector a = SignVector::from_mask(4, 0b0100);
    CHECK(a.pattern() == "++-+");
    CHECK(a.mean() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(a[2] == -1);
    CHECK(SignVector::all_plus(3).pattern() == "+++");
    CHECK(SignVector::from_mask(3, 0).pattern() == "+++");
    CHECK_THROWS_AS(SignVector({1, 0, -1}), std::invalid_argument);
    CHECK_THROWS_AS(SignVector({}), std::invalid_argument);
}

TEST_CASE("lower bounds") {
    const auto [li, ls] = lower_bounds(spec_of({-1.0, 0.0, 1.0}));
    CHECK(li == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ls == doctest::Approx(2.0 * std::sqrt(2.0 / 3.0)).epsilon(1e-15));

    const auto [li2, ls2] = lower_bounds(spec_of({1.0, -1.0}));
    CHECK(li2 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ls2 == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("upper bound") {
    CHECK(upper_bound(spec_of({-1.0, 0.0, 1.0})) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::isinf(upper_bound(spec_of({1.0, -1.0}))));
    CHECK(std::isinf(upper_bound(spec_of({2.5, -2.5}))));
    CHECK_THROWS_AS(upper_bound(spec_of({0.0, 0.0})), std::invalid_argument);
}

TEST_CASE("offset cosine curves are monotone and cross once") {
    const FrequencySpec spec = sample_normal(12, 0.0, 1.0, 21);
    const double m = inf_norm(spec.view());
    double prev_v = -INFINITY, prev_w = INFINITY;
    int sign_changes = 0;
    bool prev_positive = false;
    for (int i = 1; i <= 400; ++i) {
        const double u = m * (1.0 + 0.42 * i / 400.0); // spans (m, 1.42 m], past sqrt(2) m
        const double v = 2.0 * mean_offset_cosine(spec.view(), u);
        const double w = mean_inverse_offset_cosine(spec.view(), u);
        CHECK(v > prev_v);  // strictly increasing
        CHECK(w < prev_w);  // strictly decreasing
        const bool positive = v - w > 0.0;
        if (i > 1 && positive != prev_positive) ++sign_changes;
        prev_v = v;
        prev_w = w;
        prev_positive = positive;
    }
    CHECK(sign_changes == 1);
    // P tends to 1 from below as u grows
    CHECK(mean_offset_cosine(spec.view(), 1e9 * m) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mean_offset_cosine(spec.view(), 2.0 * m) < 1.0);
}

TEST_CASE("exact critical coupling for the even split") {
    for (double c : {0.5, 1.0, 3.0}) {
        const CouplingReport rep = compute_kc(spec_of({c, -c}));
        CHECK(rep.kc == doctest::Approx(2.0 * c).epsilon(1e-9));
        CHECK(rep.u_star == doctest::Approx(std::sqrt(2.0) * c).epsilon(1e-9));
        CHECK(rep.lower_sigma == doctest::Approx(2.0 * c).epsilon(1e-12));
        CHECK(!rep.degenerate);
    }
}

TEST_CASE("exact critical coupling for the symmetric triple") {
    for (double c : {0.5, 1.0, 2.0}) {
        const CouplingReport rep = compute_kc(spec_of({-c, 0.0, c}));
        CHECK(rep.kc == doctest::Approx(testsupport::kc3_oracle(c)).epsilon(1e-9));
    }
    // the quadratic oracle itself, at the precision its digits support
    CHECK(testsupport::kc3_oracle(1.0) == doctest::Approx(1.70438).epsilon(5e-6));
}

TEST_CASE("critical coupling report invariants on random specs") {
    std::mt19937_64 seeds(31);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 3 + trial % 30;
        const FrequencySpec spec = sample_normal(n, 0.0, 1.0, seeds());
        const CouplingReport rep = compute_kc(spec);
        const double m = rep.lower_inf;
        CHECK(rep.kc >= std::max(rep.lower_inf, rep.lower_sigma) * (1.0 - 1e-12));
        CHECK(rep.kc <= std::min(rep.upper, 2.0 * m) * (1.0 + 1e-12));
        CHECK(rep.u_star > m);
        CHECK(rep.u_star <= std::sqrt(2.0) * m * (1.0 + 1e-12));
        const int budget =
            static_cast<int>(std::ceil(std::log2((std::sqrt(2.0) - 1.0) * m / rep.tolerance))) + 1;
        CHECK(rep.iterations <= budget);
    }
}

TEST_CASE("kc is insensitive to the bracket width") {
    // the crossing is a stationary point of u/P(u), so a much looser bracket
    // still nails kc
    const FrequencySpec spec = sample_normal(17, 0.0, 1.0, 77);
    const double m = inf_norm(spec.view());
    const CouplingReport tight = compute_kc(spec);
    const CouplingReport loose = compute_kc(spec, 1e-6 * m);
    CHECK(loose.kc == doctest::Approx(tight.kc).epsilon(1e-9));
    CHECK(loose.iterations < tight.iterations);
}

TEST_CASE("degenerate and invalid kc inputs") {
    const CouplingReport rep = compute_kc(spec_of({3.0, 3.0, 3.0}));
    CHECK(rep.degenerate);
    CHECK(rep.kc == 0.0);
    CHECK(rep.iterations == 0);
    CHECK_THROWS_AS(compute_kc(spec_of({1.0, -1.0}), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(compute_kc(spec_of({1.0, -1.0}), -1e-5), std::invalid_argument);
    CHECK_THROWS_AS(compute_kc(FrequencySpec{{1.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("existence at specific couplings for the pair") {
    const FrequencySpec spec = spec_of({1.0, -1.0});

    const auto at_kc = existence_at(spec, 2.0);
    REQUIRE(at_kc.has_value());
    CHECK(*at_kc == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));

    CHECK(!existence_at(spec, 1.9).has_value());
    CHECK(!existence_at(spec, 0.5).has_value()); // beta range empty

    const auto at_4 = existence_at(spec, 4.0);
    REQUIRE(at_4.has_value());
    CHECK(*at_4 == doctest::Approx(testsupport::existence_root_hi_n2_k4()).epsilon(1e-10));

    CHECK_THROWS_AS(existence_at(spec, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(existence_at(spec, -2.0), std::invalid_argument);
}

TEST_CASE("existence for the homogeneous system") {
    const auto beta = existence_at(spec_of({0.0, 0.0, 0.0}), 0.7);
    REQUIRE(beta.has_value());
    CHECK(*beta == 1.0);
}

TEST_CASE("existence dichotomy around kc") {
    std::mt19937_64 seeds(32);
    for (int trial = 0; trial < 20; ++trial) {
        const FrequencySpec spec = sample_normal(3 + trial % 12, 0.0, 1.0, seeds());
        const double kc = compute_kc(spec).kc;
        CHECK(!existence_at(spec, 0.999 * kc).has_value());
        const auto beta = existence_at(spec, 1.001 * kc);
        REQUIRE(beta.has_value());
        CHECK(*beta > 0.0);
        CHECK(*beta <= 1.0);
    }
}

TEST_CASE("signed existence scan") {
    const FrequencySpec spec = spec_of({1.0, -1.0});
    const auto both = existence_with_signs(spec, 4.0, SignVector::all_plus(2));
    REQUIRE(both.size() == 2);
    CHECK(both[0] == doctest::Approx(testsupport::existence_root_lo_n2_k4()).epsilon(1e-10));
    CHECK(both[1] == doctest::Approx(testsupport::existence_root_hi_n2_k4()).epsilon(1e-10));

    // equal magnitudes make every mixed or negative pattern rootless
    CHECK(existence_with_signs(spec, 4.0, SignVector({1, -1})).empty());
    CHECK(existence_with_signs(spec, 4.0, SignVector({-1, 1})).empty());
    CHECK(existence_with_signs(spec, 4.0, SignVector({-1, -1})).empty());

    // the all-plus largest root is what existence_at reports
    const auto top = existence_at(spec, 4.0);
    CHECK(*top == doctest::Approx(both.back()).epsilon(1e-10));

    CHECK(existence_with_signs(spec, 1.9, SignVector::all_plus(2)).empty());
    CHECK_THROWS_AS(existence_with_signs(spec, 4.0, SignVector::all_plus(3)),
                    std::invalid_argument);
}

TEST_CASE("signed existence for the homogeneous system") {
    const FrequencySpec spec = spec_of({0.0, 0.0, 0.0, 0.0});
    const auto plus = existence_with_signs(spec, 1.0, SignVector::all_plus(4));
    REQUIRE(plus.size() == 1);
    CHECK(plus[0] == 1.0);
    CHECK(existence_with_signs(spec, 1.0, SignVector({1, 1, -1, -1})).empty());
    CHECK(existence_with_signs(spec, 1.0, SignVector({-1, -1, -1, -1})).empty());
}

TEST_CASE("fixed point construction for the pair") {
    const FrequencySpec spec = spec_of({1.0, -1.0});
    const double beta = testsupport::existence_root_hi_n2_k4();
    const FixedPointCertificate cert =
        construct_fixed_point(spec, 4.0, SignVector::all_plus(2), beta);

    // closed form: x* = (s, -s) with s = arcsin(1/(k beta))
    const double s = std::asin(1.0 / (4.0 * beta));
    CHECK(s == doctest::Approx(M_PI / 12.0).epsilon(1e-12));
    CHECK(std::abs(cert.x_star.x[0] - s) <= 1e-12);
    CHECK(std::abs(cert.x_star.x[1] + s) <= 1e-12);
    CHECK(cert.residual_inf <= 1e-12);
    CHECK(cert.order_R == doctest::Approx(beta).epsilon(1e-12));
}

TEST_CASE("construction verifies its inputs") {
    const FrequencySpec spec = spec_of({1.0, -1.0});
    CHECK_THROWS_AS(construct_fixed_point(spec, 4.0, SignVector::all_plus(2), 0.9),
                    certification_error);
    CHECK_THROWS_AS(construct_fixed_point(spec, 4.0, SignVector::all_plus(3), 0.9),
                    std::invalid_argument);
    CHECK_THROWS_AS(construct_fixed_point(spec, -4.0, SignVector::all_plus(2), 0.9),
                    std::invalid_argument);
    CHECK_THROWS_AS(construct_fixed_point(spec, 4.0, SignVector::all_plus(2), 1.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(construct_fixed_point(spec, 4.0, SignVector::all_plus(2), 0.0),
                    std::invalid_argument);
    // k*beta below the frequency range
    CHECK_THROWS_AS(construct_fixed_point(spec, 4.0, SignVector::all_plus(2), 0.2),
                    std::invalid_argument);
}

TEST_CASE("construction for the homogeneous system") {
    const FrequencySpec spec = spec_of({0.0, 0.0});
    const auto aligned = construct_fixed_point(spec, 1.0, SignVector::all_plus(2), 1.0);
    CHECK(aligned.x_star.x[0] == 0.0);
    CHECK(aligned.x_star.x[1] == 0.0);
    CHECK(aligned.residual_inf == 0.0);

    const auto antipodal = construct_fixed_point(spec, 1.0, SignVector({1, -1}), 0.0);
    CHECK(antipodal.order_R <= 1e-12);
    CHECK(antipodal.residual_inf <= 1e-12);
    CHECK(std::abs(std::abs(antipodal.x_star.x[0] - antipodal.x_star.x[1]) - M_PI) <= 1e-12);
}

TEST_CASE("enumeration for the pair at k=4") {
    const Enumeration e = enumerate_fixed_points(spec_of({1.0, -1.0}), 4.0);
    // Only the all-plus pattern produces verifiable locked states here: the
    // mirrored sign vectors solve k f = +Omega, not -Omega.
    REQUIRE(e.certificates.size() == 2);
    CHECK(e.certificates[0].a.pattern() == "++");
    CHECK(e.certificates[1].a.pattern() == "++");
    CHECK(e.certificates[0].beta ==
          doctest::Approx(testsupport::existence_root_hi_n2_k4()).epsilon(1e-10));
    CHECK(e.certificates[1].beta ==
          doctest::Approx(testsupport::existence_root_lo_n2_k4()).epsilon(1e-10));
    REQUIRE(e.classes.size() == 2);
    CHECK(e.classes[0] == std::vector<std::size_t>{0});
    CHECK(e.classes[1] == std::vector<std::size_t>{1});
}

TEST_CASE("enumeration for the homogeneous pair") {
    const Enumeration e = enumerate_fixed_points(spec_of({0.0, 0.0}), 1.0);
    REQUIRE(e.certificates.size() == 4);
    CHECK(e.certificates[0].beta == 1.0);  // ++
    CHECK(e.certificates[1].beta == 0.0);  // -+
    CHECK(e.certificates[2].beta == 0.0);  // +-
    CHECK(e.certificates[3].beta == 1.0);  // --
    REQUIRE(e.classes.size() == 2);
    CHECK(e.classes[0] == std::vector<std::size_t>{0, 3});
    CHECK(e.classes[1] == std::vector<std::size_t>{1, 2});
}

TEST_CASE("enumeration respects the capacity limit") {
    CHECK_THROWS_AS(enumerate_fixed_points(spec_of({-1.0, 0.0, 1.0}), 10.0, 2), capacity_error);
}

TEST_CASE("enumeration at strong coupling produces verified certificates") {
    std::mt19937_64 seeds(33);
    for (int trial = 0; trial < 4; ++trial) {
        const std::size_t n = 4 + trial;
        const FrequencySpec spec = sample_normal(n, 0.0, 1.0, seeds());
        const double k =
            10.0 * std::max(upper_bound(spec), 2.0 * inf_norm(spec.view()));
        const Enumeration e = enumerate_fixed_points(spec, k);
        CHECK(e.certificates.size() >= (std::size_t{1} << (n - 1)));
        for (const auto& c : e.certificates) {
            CHECK(c.residual_inf < 1e-8 * k);
            CHECK(std::abs(c.order_R - c.beta) <= 1e-8);
        }
        // classes partition the certificates
        std::size_t total = 0;
        for (const auto& cls : e.classes) {
            total += cls.size();
            for (std::size_t idx : cls) {
                CHECK(std::abs(e.certificates[idx].order_R -
                               e.certificates[cls.front()].order_R) <= 1e-8);
            }
        }
        CHECK(total == e.certificates.size());
    }
}

TEST_CASE("order band") {
    const auto [lo, hi] = order_band(spec_of({1.0, -1.0}), 2.5);
    CHECK(lo == doctest::Approx(std::sqrt(0.2)).epsilon(1e-9));
    CHECK(hi == doctest::Approx(std::sqrt(0.8)).epsilon(1e-9));

    const auto [at_lo, at_hi] = order_band(spec_of({1.0, -1.0}), 2.0);
    CHECK(at_lo == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(at_hi == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

    CHECK_THROWS_AS(order_band(spec_of({1.0, -1.0}), 1.5), std::invalid_argument);
}

TEST_CASE("certificates stay inside the order band") {
    std::mt19937_64 seeds(34);
    for (int trial = 0; trial < 10; ++trial) {
        const FrequencySpec spec = sample_normal(3 + trial, 0.0, 1.0, seeds());
        const double k = 1.2 * compute_kc(spec).kc;
        const auto beta = existence_at(spec, k);
        REQUIRE(beta.has_value());
        const auto cert = construct_fixed_point(spec, k, SignVector::all_plus(spec.size()), *beta);
        const auto [lo, hi] = order_band(spec, k);
        CHECK(cert.order_R >= lo - 1e-8);
        CHECK(cert.order_R <= hi + 1e-8);
    }
}
