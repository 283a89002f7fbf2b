#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "framekit/localization.hpp"
#include "framekit/sampling.hpp"

using namespace framekit;

namespace {

LocalizationMap identity_map(int length) {
    LocalizationMap a;
    a.group = IndexGroup(1, length, 1);
    a.targets.resize(static_cast<std::size_t>(length));
    std::iota(a.targets.begin(), a.targets.end(), std::size_t{0});
    return a;
}

Frame onb(std::size_t n) {
    Frame f(n, n);
    f.synthesis = ComplexMatrix::identity(n);
    return f;
}

} // namespace

TEST_CASE("cyclic group geometry: norms, boxes, diameters") {
    const IndexGroup g(1, 16, 1);
    CHECK(g.size() == 16);
    CHECK(g.diameter() == 8);
    CHECK(g.report_radius() == 4);
    CHECK(g.norm(0) == 0);
    CHECK(g.norm(1) == 1);
    CHECK(g.norm(15) == 1);
    CHECK(g.norm(8) == 8);

    const std::vector<std::size_t> ball = g.box(0, 3);
    CHECK(ball.size() == 7);
    for (std::size_t v : ball) CHECK(g.norm(v) <= 3);
    CHECK(g.box_size(3) == 7);
    CHECK(g.box_size(8) == 16);  // saturated
    CHECK(g.box_size(-1) == 0);
    CHECK(g.box(5, 3).size() == 7); // cardinality is translation invariant

    CHECK(g.add(10, 9) == 3);
    CHECK(g.sub(3, 10) == 9);
    CHECK(g.neg(3) == 13);
}

TEST_CASE("planar group: sizes and box cardinalities") {
    const IndexGroup g(2, 8, 1);
    CHECK(g.size() == 64);
    CHECK(g.diameter() == 4);
    CHECK(g.report_radius() == 2);
    CHECK(g.box_size(2) == 25);

    // flat layout: first free coordinate is most significant
    const std::vector<int> c = g.coords(8 * 3 + 5);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == 3);
    CHECK(c[1] == 5);
    CHECK(c[2] == 0);
    CHECK(g.flat(c) == 8 * 3 + 5);
}

TEST_CASE("torsion component enters norms and box sizes") {
    const IndexGroup g(1, 8, 3);
    CHECK(g.size() == 24);
    CHECK(g.diameter() == 4);
    CHECK(g.box_size(1) == 9); // 3 free offsets x full torsion block of 3
    const std::vector<int> c = g.coords(3 * 5 + 2);
    CHECK(c[0] == 5);
    CHECK(c[1] == 2);
}

TEST_CASE("group constructor rejects degenerate shapes") {
    CHECK_THROWS_AS(IndexGroup(0, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(IndexGroup(1, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(IndexGroup(1, 4, 0), std::invalid_argument);
    CHECK_NOTHROW(IndexGroup(0, 4, 12));
}

TEST_CASE("localization map validation") {
    LocalizationMap a = identity_map(8);
    CHECK_NOTHROW(a.validate());
    a.targets[3] = 99;
    CHECK_THROWS_AS(a.validate(), std::invalid_argument);
}

TEST_CASE("cross-localization sequence of a single decaying vector") {
    const IndexGroup g(1, 4, 1);
    const Frame e = onb(4);
    Frame f(4, 1);
    f.synthesis.at(0, 0) = 1.0;
    f.synthesis.at(1, 0) = 0.5;
    f.synthesis.at(3, 0) = 0.25;
    LocalizationMap a;
    a.group = g;
    a.targets = {0};

    const GroupSequence r = localization_sequence(f, a, e);
    REQUIRE(r.values.size() == 4);
    CHECK(r.values[0] == doctest::Approx(1.0));   // offset 0
    CHECK(r.values[3] == doctest::Approx(0.5));   // a(i) - k = 0 - 1
    CHECK(r.values[1] == doctest::Approx(0.25));  // 0 - 3 = 1 mod 4
    CHECK(r.values[2] == doctest::Approx(0.0));
    CHECK(r.l1() == doctest::Approx(1.75));
    CHECK(tail_sum(r, 0) == doctest::Approx(r.l1()));
    CHECK(tail_sum(r, 1) == doctest::Approx(0.75));
    CHECK(tail_sum(r, 2) == doctest::Approx(0.0));
    CHECK(tail_sum(r, 99) == 0.0);
}

TEST_CASE("self-localization of an orthonormal basis is a point mass") {
    const IndexGroup g(1, 8, 1);
    const GroupSequence s = self_localization_sequence(onb(8), g);
    CHECK(s.values[0] == doctest::Approx(1.0));
    for (std::size_t k = 1; k < 8; ++k) CHECK(s.values[k] == doctest::Approx(0.0));
    CHECK(s.l1() == doctest::Approx(1.0));
}

TEST_CASE("localization profile bundles the pieces consistently") {
    SplitMix64 rng(71);
    const int length = 16;
    LocalizationMap a = identity_map(length);
    const Frame e = onb(length);
    Frame raw(length, length);
    for (int i = 0; i < length; ++i)
        for (int k = 0; k < length; ++k) {
            const int dist = a.group.norm(a.group.sub(k, i));
            cx v = 0.4 * std::exp(-0.9 * dist) * rng.next_gaussian();
            if (k == i) v += 1.0;
            raw.synthesis.at(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) = v;
        }
    const Frame f = parseval_normalize(raw);

    const LocalizationProfile p = localization_profile(f, a, e);
    const GroupSequence r = localization_sequence(f, a, e);
    const GroupSequence s = self_localization_sequence(e, a.group);
    CHECK(p.r_l1 == doctest::Approx(r.l1()));
    CHECK(p.s_l1 == doctest::Approx(s.l1()));
    CHECK(p.k_a == doctest::Approx(1.0));
    for (std::size_t k = 0; k < r.values.size(); ++k)
        CHECK(p.r.values[k] == doctest::Approx(r.values[k]));

    // the truncation scale is 3 K_a tail ||s||_1 by definition
    CHECK(truncation_error_scale(p, 2) ==
          doctest::Approx(3.0 * p.k_a * tail_sum(p.r, 2) * p.s_l1));
}

TEST_CASE("covering constant: identity map 1, two-to-one map 2") {
    CHECK(covering_constant(identity_map(16)) == doctest::Approx(1.0));
    LocalizationMap two;
    two.group = IndexGroup(1, 16, 1);
    two.targets.resize(32);
    for (std::size_t i = 0; i < 32; ++i) two.targets[i] = i / 2;
    CHECK(covering_constant(two) == doctest::Approx(2.0));
}

TEST_CASE("density table of the even residues on a 64-cycle") {
    LocalizationMap a = identity_map(64);
    std::vector<std::size_t> evens;
    for (std::size_t i = 0; i < 64; i += 2) evens.push_back(i);
    const DensityTable t = density_table(a, evens);
    CHECK(t.report_radius == 16);
    REQUIRE(t.rows.size() == 17);
    CHECK(t.rows[0].sup_ratio == doctest::Approx(1.0));
    CHECK(t.rows[0].inf_ratio == doctest::Approx(0.0));
    CHECK(t.upper == doctest::Approx(17.0 / 33.0).epsilon(1e-15));
    CHECK(t.lower == doctest::Approx(16.0 / 33.0).epsilon(1e-15));
}

TEST_CASE("windowed density ratios and input validation") {
    LocalizationMap a = identity_map(16);
    std::vector<std::size_t> evens;
    for (std::size_t i = 0; i < 16; i += 2) evens.push_back(i);

    const WindowedDensity w = windowed_density(a, evens, {0, 1}, {2, 2});
    REQUIRE(w.ratios.size() == 2);
    CHECK(w.ratios[0] == doctest::Approx(3.0 / 5.0)); // {0,2,14} in the 5-ball at 0
    CHECK(w.ratios[1] == doctest::Approx(2.0 / 5.0)); // {0,2} in the 5-ball at 1
    CHECK(w.lo == doctest::Approx(0.4));
    CHECK(w.hi == doctest::Approx(0.6));

    CHECK_THROWS_AS(windowed_density(a, evens, {0, 1}, {2}), std::invalid_argument);
    CHECK_THROWS_AS(windowed_density(a, evens, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(windowed_density(a, evens, {16}, {1}), std::invalid_argument);
}

TEST_CASE("truncation at radius zero clears the family; beyond the diameter it is exact") {
    SplitMix64 rng(72);
    const int length = 8;
    LocalizationMap a = identity_map(length);
    const Frame e = onb(length);
    const Frame f = random_parseval_frame(length, length, rng);

    const Frame zero = truncate_frame(f, e, a, 0);
    double mass = 0.0;
    for (std::size_t i = 0; i < zero.size(); ++i) mass += norm_sq(zero.vector(i));
    CHECK(mass == 0.0);

    const Frame full = truncate_frame(f, e, a, a.group.diameter() + 1);
    CHECK((full.synthesis + f.synthesis.scaled(-1.0)).max_abs() <= 1e-12);
}

TEST_CASE("truncation keeps strictly closer coefficients only") {
    const IndexGroup g(1, 8, 1);
    LocalizationMap a = identity_map(8);
    const Frame e = onb(8);
    Frame f(8, 8);
    // each vector: unit at its index plus mass at wrapped distance exactly 1
    for (std::size_t i = 0; i < 8; ++i) {
        f.synthesis.at(i, i) = 1.0;
        f.synthesis.at((i + 1) % 8, i) = 0.5;
    }
    const Frame t1 = truncate_frame(f, e, a, 1); // keeps distance < 1, so only the center
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(std::abs(t1.synthesis.at(i, i) - cx(1.0, 0.0)) <= 1e-15);
        CHECK(std::abs(t1.synthesis.at((i + 1) % 8, i)) == 0.0);
    }
    const Frame t2 = truncate_frame(f, e, a, 2); // distance <= 1 is now inside
    CHECK((t2.synthesis + f.synthesis.scaled(-1.0)).max_abs() == 0.0);
}

TEST_CASE("truncation horizon of a point-mass sequence is zero") {
    GroupSequence r;
    r.group = IndexGroup(1, 8, 1);
    r.values.assign(8, 0.0);
    r.values[0] = 1.0;
    CHECK(truncation_r0(r, 1.0, 1.0) == 0);
    // halving the budget pushes the horizon past the point mass
    CHECK(truncation_r0(r, 2.0, 1.0) == 1);
}

TEST_CASE("truncation error check on the identity configuration") {
    const int length = 8;
    LocalizationMap a = identity_map(length);
    const Frame e = onb(length);
    std::vector<std::size_t> j = {0, 2, 3, 7};

    const TruncationCheck c1 = truncation_error_check(e, e, a, 1, j);
    CHECK(c1.parseval_input);
    CHECK(c1.factor == doctest::Approx(3.0));
    CHECK(c1.lhs <= 1e-12);
    CHECK(c1.holds);
    CHECK(c1.guaranteed);

    // radius 0 wipes the truncated side: lhs = ||S_J|| = 1, bound = 3
    const TruncationCheck c0 = truncation_error_check(e, e, a, 0, j);
    CHECK(c0.lhs == doctest::Approx(1.0));
    CHECK(c0.bound == doctest::Approx(3.0));
    CHECK(c0.tail == doctest::Approx(1.0));
    CHECK(c0.holds);
}

TEST_CASE("non-Parseval input swaps the constant for computed analysis norms") {
    const int length = 8;
    LocalizationMap a = identity_map(length);
    const Frame e = onb(length);
    Frame f = onb(length);
    f.synthesis = f.synthesis.scaled(2.0);
    std::vector<std::size_t> j = {1, 4};

    const TruncationCheck c = truncation_error_check(f, e, a, 1, j);
    CHECK_FALSE(c.parseval_input);
    CHECK(c.factor == doctest::Approx(4.0)); // ||T_J|| + ||T_{R,J}|| = 2 + 2
    CHECK(c.holds);
}

TEST_CASE("analysis gap obeys the row/column bound on a random localized family") {
    SplitMix64 rng(73);
    const int length = 16;
    LocalizationMap a = identity_map(length);
    const Frame e = onb(length);
    Frame raw(length, length);
    for (int i = 0; i < length; ++i)
        for (int k = 0; k < length; ++k) {
            const int dist = a.group.norm(a.group.sub(k, i));
            cx v = 0.3 * std::exp(-dist) * rng.next_gaussian();
            if (k == i) v += 1.0;
            raw.synthesis.at(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) = v;
        }
    const Frame f = parseval_normalize(raw);
    std::vector<std::size_t> j = {0, 1, 5, 9, 10, 15};

    for (int radius = 0; radius <= a.group.diameter() + 1; ++radius) {
        const TruncationCheck c = truncation_error_check(f, e, a, radius, j);
        CHECK(c.analysis_gap <= c.schur_bound + 1e-9);
        CHECK(c.schur_bound <= c.analysis_bound + 1e-9);
        CHECK(c.lhs <= c.bound + 1e-9);
        CHECK(c.holds);
    }
}
