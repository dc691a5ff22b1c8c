#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "mdhits/mapcore.hpp"
#include "mdhits/parallel.hpp"

using namespace mdhits;
using namespace mdhits::testing;

namespace {

CentralityTuple tuple2(std::vector<double> a, std::vector<double> b) {
    CentralityTuple x;
    x.slices = {std::move(a), std::move(b)};
    return x;
}

}  // namespace

TEST_CASE("apply_F_alpha at all-ones raises the marginals") {
    SparseTensor t = multilayer_fixture();
    ExponentConfig cfg = ExponentConfig::from_alpha({0.2, 0.2, 0.2, 0.2, 0.2});
    CentralityTuple out = apply_F_alpha(t, cfg, CentralityTuple::ones(t.shape()));
    for (Index s = 0; s < 5; ++s) {
        const auto& marg = t.mode_marginal(s);
        for (std::size_t i = 0; i < marg.size(); ++i) {
            CHECK(out.slices[static_cast<std::size_t>(s)][i] ==
                  doctest::Approx(std::pow(marg[i], 0.2)).epsilon(1e-14));
        }
    }
}

TEST_CASE("apply_F_alpha maps the curse fixed point to lambda times itself") {
    SparseTensor t = curse_graph();
    ExponentConfig cfg = ExponentConfig::from_alpha({1.0 / 3, 1.0 / 3});
    const double c = 1.0 / std::sqrt(2.0);
    CentralityTuple fp = tuple2({1, c, c, c, c, 0}, {0, c, c, c, c, 1});
    CentralityTuple out = apply_F_alpha(t, cfg, fp);
    const double lambda = std::pow(4.0 * c, 1.0 / 3);  // = sqrt(2) ~ 1.4142
    CHECK(lambda == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    for (Index s = 0; s < 2; ++s) {
        for (std::size_t i = 0; i < 6; ++i) {
            CHECK(out.slices[static_cast<std::size_t>(s)][i] ==
                  doctest::Approx(lambda * fp.slices[static_cast<std::size_t>(s)][i])
                      .epsilon(1e-13));
        }
    }
}

TEST_CASE("apply_F_alpha of the zero tensor is all zero") {
    SparseTensor t = SparseTensor::from_edge_list({}, TensorShape({3, 3}));
    ExponentConfig cfg = ExponentConfig::from_alpha({0.5, 0.5});
    CentralityTuple out = apply_F_alpha(t, cfg, CentralityTuple::ones(t.shape()));
    for (const auto& slice : out.slices) {
        for (double v : slice) CHECK(v == 0.0);
    }
}

TEST_CASE("normalize_G") {
    CentralityTuple y = tuple2({2, 4, 0}, {3, 3});
    CentralityTuple n = normalize_G(y);
    CHECK(n.slices[0] == std::vector<double>{0.5, 1.0, 0.0});
    CHECK(n.slices[1] == std::vector<double>{1.0, 1.0});
    CHECK(is_normalized(n));

    SUBCASE("idempotent") { CHECK(normalize_G(n).slices == n.slices); }
    SUBCASE("scale invariant") {
        CentralityTuple scaled = y;
        for (auto& slice : scaled.slices) {
            for (double& v : slice) v *= 5.0;
        }
        CHECK(normalize_G(scaled).slices == n.slices);
    }
    SUBCASE("identically zero slice names the mode") {
        CentralityTuple bad = tuple2({1, 2, 3}, {0, 0});
        CHECK_THROWS_AS((void)normalize_G(bad), InactiveModeError);
        try {
            (void)normalize_G(bad);
        } catch (const InactiveModeError& e) {
            CHECK(e.mode() == 1);
        }
    }
}

TEST_CASE("beta_norm") {
    const double half[] = {0.5, 0.5};
    SUBCASE("normalized tuple has norm 1") {
        CentralityTuple x = tuple2({1, 0.25}, {0.5, 1});
        CHECK(beta_norm(x, half) == 1.0);
    }
    SUBCASE("zero tuple") {
        CentralityTuple x = tuple2({0, 0}, {0, 0, 0});
        CHECK(beta_norm(x, half) == 0.0);
    }
    SUBCASE("worked example") {
        CentralityTuple x = tuple2({0, 2}, {1, 3});
        CHECK(beta_norm(x, half) == 2.5);
    }
    SUBCASE("norm axioms on random tuples") {
        detail::SplitMix64 rng(5);
        for (int trial = 0; trial < 20; ++trial) {
            CentralityTuple x = tuple2(random_positive_vector(4, rng.next()),
                                       random_positive_vector(3, rng.next()));
            CentralityTuple y = tuple2(random_positive_vector(4, rng.next()),
                                       random_positive_vector(3, rng.next()));
            const double gamma = 0.1 + 3.0 * rng.next_unit();
            CentralityTuple gx = x;
            CentralityTuple sum = x;
            for (std::size_t s = 0; s < 2; ++s) {
                for (std::size_t i = 0; i < x.slices[s].size(); ++i) {
                    gx.slices[s][i] *= gamma;
                    sum.slices[s][i] += y.slices[s][i];
                }
            }
            CHECK(beta_norm(gx, half) == doctest::Approx(gamma * beta_norm(x, half)).epsilon(1e-12));
            CHECK(beta_norm(sum, half) <= beta_norm(x, half) + beta_norm(y, half) + 1e-12);
        }
    }
}

TEST_CASE("hilbert_distance basics") {
    SparseTensor dense = [] {
        std::vector<EdgeRecord> records;
        for (Index i = 0; i < 2; ++i) {
            for (Index j = 0; j < 2; ++j) records.push_back({{i, j}, 1.0});
        }
        return SparseTensor::from_edge_list(records, TensorShape({2, 2}));
    }();
    SupportSet support(dense);
    const double half[] = {0.5, 0.5};

    SUBCASE("identity and projective invariance") {
        CentralityTuple x = tuple2({1, 2}, {1, 1});
        CHECK(hilbert_distance(x, x, half, support) == 0.0);
        CentralityTuple y = tuple2({3, 6}, {0.2, 0.2});  // per-slice multiples of x
        CHECK(hilbert_distance(x, y, half, support) == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("worked example") {
        CentralityTuple x = tuple2({1, 2}, {1, 1});
        CentralityTuple y = tuple2({2, 2}, {1, 1});
        CHECK(hilbert_distance(x, y, half, support) ==
              doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
    }
    SUBCASE("nonconforming input is rejected") {
        CentralityTuple x = tuple2({1, 0}, {1, 1});  // zero on an active index
        CentralityTuple y = tuple2({1, 1}, {1, 1});
        CHECK_THROWS_AS((void)hilbert_distance(x, y, half, support), InvalidArgument);
    }
}

TEST_CASE("hilbert_distance is a projective metric on random conforming tuples") {
    SparseTensor t = random_tensor(TensorShape({7, 7, 3, 3, 2}), 15, 61);
    SupportSet support(t);
    ExponentConfig cfg = ExponentConfig::from_alpha({0.2, 0.2, 0.2, 0.2, 0.2});
    detail::SplitMix64 rng(62);
    for (int trial = 0; trial < 25; ++trial) {
        CentralityTuple x = random_conforming(t, rng.next());
        CentralityTuple y = random_conforming(t, rng.next());
        CentralityTuple z = random_conforming(t, rng.next());
        const double dxy = hilbert_distance(x, y, cfg.beta, support);
        const double dyx = hilbert_distance(y, x, cfg.beta, support);
        const double dxz = hilbert_distance(x, z, cfg.beta, support);
        const double dyz = hilbert_distance(y, z, cfg.beta, support);
        CHECK(dxy == doctest::Approx(dyx).epsilon(1e-12));
        CHECK(dxy >= 0.0);
        CHECK(dxz <= dxy + dyz + 1e-12);
    }
}

TEST_CASE("slice homogeneity, multilinear and powered forms") {
    SparseTensor t = random_tensor(TensorShape({5, 5, 3, 3, 2}), 20, 71);
    ExponentConfig cfg = ExponentConfig::from_alpha({0.3, 0.25, 0.2, 0.15, 0.1});
    CentralityTuple x = random_conforming(t, 72);
    const double mu[] = {1.7, 0.6, 2.2, 0.9, 1.3};
    CentralityTuple scaled = x;
    for (Index s = 0; s < 5; ++s) {
        for (double& v : scaled.slices[static_cast<std::size_t>(s)]) v *= mu[s];
    }
    for (Index s = 0; s < 5; ++s) {
        double factor = 1.0;
        for (Index u = 0; u < 5; ++u) {
            if (u != s) factor *= mu[u];
        }
        // raw slices are multilinear: f_s(mu (x) x) = prod_{t != s} mu_t f_s(x)
        std::vector<double> base = t.contract(s, x.slices);
        std::vector<double> out = t.contract(s, scaled.slices);
        for (std::size_t i = 0; i < base.size(); ++i) {
            CHECK(out[i] == doctest::Approx(factor * base[i]).epsilon(1e-12));
        }
    }
    // powered form: slice s of F(mu (x) x) = (prod_{t != s} mu_t)^alpha_s * slice s of F(x)
    CentralityTuple fx = apply_F_alpha(t, cfg, x);
    CentralityTuple fscaled = apply_F_alpha(t, cfg, scaled);
    for (Index s = 0; s < 5; ++s) {
        double factor = 1.0;
        for (Index u = 0; u < 5; ++u) {
            if (u != s) factor *= mu[u];
        }
        const double powered = std::pow(factor, cfg.alpha[static_cast<std::size_t>(s)]);
        for (std::size_t i = 0; i < fx.slices[static_cast<std::size_t>(s)].size(); ++i) {
            CHECK(fscaled.slices[static_cast<std::size_t>(s)][i] ==
                  doctest::Approx(powered * fx.slices[static_cast<std::size_t>(s)][i])
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("one normalized map application contracts the metric by rho") {
    detail::SplitMix64 rng(81);
    for (int fixture = 0; fixture < 3; ++fixture) {
        SparseTensor t = random_tensor(TensorShape({6, 6, 3, 3, 2}), 18 + 4 * fixture,
                                       500 + static_cast<std::uint64_t>(fixture));
        SupportSet support(t);
        std::vector<double> alpha(5);
        for (double& a : alpha) a = 0.05 + 0.17 * rng.next_unit();
        ExponentConfig cfg = ExponentConfig::from_alpha(alpha);
        REQUIRE(cfg.feasible());
        for (int pair = 0; pair < 15; ++pair) {
            CentralityTuple x = random_conforming(t, rng.next());
            CentralityTuple y = random_conforming(t, rng.next());
            const double before = hilbert_distance(x, y, cfg.beta, support);
            if (before == 0.0) continue;
            CentralityTuple gx = normalize_G(apply_F_alpha(t, cfg, x));
            CentralityTuple gy = normalize_G(apply_F_alpha(t, cfg, y));
            const double after = hilbert_distance(gx, gy, cfg.beta, support);
            CHECK(after <= cfg.rho * before + 1e-10);
        }
    }
}

TEST_CASE("conformance predicate") {
    SparseTensor t = curse_graph();
    SupportSet support(t);
    const double c = 1.0 / std::sqrt(2.0);
    CHECK(conforms_to(tuple2({1, c, c, c, c, 0}, {0, c, c, c, c, 1}), support));
    CHECK_FALSE(conforms_to(tuple2({1, c, c, c, c, 0.1}, {0, c, c, c, c, 1}), support));
    CHECK_FALSE(conforms_to(tuple2({1, 0, c, c, c, 0}, {0, c, c, c, c, 1}), support));
}
