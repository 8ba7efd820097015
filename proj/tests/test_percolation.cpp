#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "slelab/percolation.hpp"

using namespace slelab;

static constexpr std::uint64_t kSeed = 0x5ce1ab5eedULL;

TEST_CASE("axial embedding: lattice neighbors are at unit distance") {
    LatticeSite o{0, 0};
    for (LatticeSite d : {LatticeSite{1, 0}, LatticeSite{0, 1}, LatticeSite{-1, 1}})
        CHECK(std::abs(site_position({o.a + d.a, o.b + d.b}) - site_position(o)) ==
              doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("color field: deterministic, cached, boundary conditioned") {
    SiteColorField f(kSeed, 3);
    LatticeSite s{5, 7};
    bool c1 = f.grey(s);
    std::size_t revealed = f.revealed();
    CHECK(f.grey(s) == c1);
    CHECK(f.revealed() == revealed);  // re-reads never re-draw
    // Chordal boundary on row b <= 0.
    CHECK(f.grey({-1, 0}));
    CHECK(!f.grey({0, 0}));
    CHECK(f.grey({-7, -2}));
    // Different samples decorrelate: some site differs.
    SiteColorField g(kSeed, 4);
    bool differs = false;
    for (int a = 0; a < 32 && !differs; ++a) differs = g.grey({a, 1}) != f.grey({a, 1});
    CHECK(differs);
}

TEST_CASE("interface exploration: starts on the axis, exits, unit steps") {
    SiteColorField f(kSeed, 0);
    ExplorationResult res = explore_interface(f, 30.0);
    REQUIRE(res.exited);
    REQUIRE(res.path.size() > 30);
    CHECK(res.path.front() == cplx(-0.5, 0.0));
    CHECK(std::abs(res.path.back()) >= 30.0);
    // First hop goes from the boundary edge midpoint to a triangle
    // centroid (half a dual step); every later hop joins adjacent centroids.
    for (std::size_t k = 2; k < res.path.size(); ++k) {
        double step = std::abs(res.path[k] - res.path[k - 1]);
        CHECK(step == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
        CHECK(res.path[k].imag() > -1e-9);
    }
}

TEST_CASE("interface is edge-self-avoiding") {
    SiteColorField f(kSeed, 1);
    ExplorationResult res = explore_interface(f, 40.0);
    REQUIRE(res.exited);
    auto key = [](cplx a, cplx b) {
        auto q = [](cplx z) {
            // centroids sit on the grid (1/6) x (sqrt(3)/6)
            return std::llround(z.real() * 6.0) * 1000003LL +
                   std::llround(z.imag() * 2.0 * std::sqrt(3.0));
        };
        long long u = q(a), v = q(b);
        return std::pair<long long, long long>(std::min(u, v), std::max(u, v));
    };
    std::set<std::pair<long long, long long>> edges;
    for (std::size_t k = 1; k < res.path.size(); ++k) {
        auto e = key(res.path[k - 1], res.path[k]);
        CHECK(edges.find(e) == edges.end());
        edges.insert(e);
    }
}

TEST_CASE("exploration state pairs stay adjacent grey/white") {
    SiteColorField f(kSeed, 2);
    ExplorationResult res = explore_interface(f, 20.0, 50000000, true);
    REQUIRE(!res.states.empty());
    for (const ExplorationState& st : res.states) {
        CHECK(std::abs(site_position(st.left) - site_position(st.right)) ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(f.grey(st.left));
        CHECK(!f.grey(st.right));
    }
}

TEST_CASE("winding side test on hand-built paths") {
    // A path going straight up passes right of anything on the left half.
    std::vector<cplx> up;
    for (int k = 0; k <= 50; ++k) up.emplace_back(0.0, static_cast<double>(k));
    CHECK(!path_passes_left(up, cplx(-3.0, 5.0)));
    CHECK(path_passes_left(up, cplx(3.0, 5.0)));
}

TEST_CASE("lattice left passage smoke") {
    Estimate e = lattice_left_passage(cplx(0.0, 6.0), 300, kSeed);
    CHECK(*e.target == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(std::abs(e.value - 0.5) < 5.0 * e.std_error + 0.02);
    CHECK_THROWS(lattice_left_passage(cplx(1.0, -1.0), 10, kSeed));
}

TEST_CASE("lattice box dimension rejects below-resolution radii") {
    CHECK_THROWS(lattice_box_dimension(32.0, 10, kSeed));
}
