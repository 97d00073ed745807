#include <doctest.h>

#include <random>
#include <string>

#include "align.hpp"
#include "error.hpp"
#include "sw_oracle.hpp"
#include "testdata.hpp"

using namespace divscope;

TEST_CASE("align: identical sequences") {
    AlignmentResult r = sw_align("ACGT", "ACGT");
    CHECK(r.score == 4);
    CHECK(r.distance == 0);
    CHECK(r.a_begin == 0);
    CHECK(r.a_end == 4);
    CHECK(r.b_begin == 0);
    CHECK(r.b_end == 4);
}

TEST_CASE("align: single substitution kept inside the traceback") {
    // The best cell is the bottom-right corner (score 2); the traceback
    // walks back through the mismatch even though the running score dips,
    // so the distance is 1, not 0.
    AlignmentResult r = sw_align("ACGT", "AGGT");
    CHECK(r.score == 2);
    CHECK(r.distance == 1);
    CHECK(r.a_begin == 0);
    CHECK(r.a_end == 4);
    CHECK(r.b_begin == 0);
    CHECK(r.b_end == 4);
}

TEST_CASE("align: no positive-score alignment") {
    AlignmentResult r = sw_align("AAAA", "TTTT");
    CHECK(r.score == 0);
    CHECK(r.distance == 0);
    CHECK(r.a_begin == r.a_end);
    CHECK(r.b_begin == r.b_end);
}

TEST_CASE("align: interior substitution in longer context") {
    AlignmentResult r = sw_align("ACGTACGT", "ACGAACGT");
    CHECK(r.score == 6);
    CHECK(r.distance == 1);
}

TEST_CASE("align: clean prefix alignment has distance 0") {
    AlignmentResult r = sw_align("ACGT", "ACG");
    CHECK(r.score == 3);
    CHECK(r.distance == 0);
    CHECK(r.a_end - r.a_begin == 3);
}

TEST_CASE("align: N never matches, not even N") {
    AlignmentResult nn = sw_align("NNNN", "NNNN");
    CHECK(nn.score == 0);
    CHECK(nn.distance == 0);

    // A N A vs itself: best is the single leading A (first maximum in
    // row-major order), distance 0.
    AlignmentResult r = sw_align("ANA", "ANA");
    CHECK(r.score == 1);
    CHECK(r.distance == 0);
    CHECK(r.a_begin == 0);
    CHECK(r.a_end == 1);
}

TEST_CASE("align: self distance is zero") {
    std::mt19937_64 eng(4321);
    for (int t = 0; t < 100; ++t) {
        std::string s = testdata::random_dna(eng, 1 + t % 80);
        CHECK(sw_distance(s, s) == 0);
        // appending a tail never disturbs the identical local core
        CHECK(sw_distance(s, s + "ACGTACGT") == 0);
    }
}

TEST_CASE("align: distance is symmetric") {
    std::mt19937_64 eng(777);
    for (int t = 0; t < 500; ++t) {
        std::string a = testdata::random_dna(eng, 1 + t % 60, 0.05);
        std::string b = testdata::random_dna(eng, 1 + (t * 7) % 60, 0.05);
        CHECK(sw_distance(a, b) == sw_distance(b, a));
    }
}

TEST_CASE("align: agrees with the naive reference everywhere") {
    std::mt19937_64 eng(90210);
    for (int t = 0; t < 2000; ++t) {
        std::size_t la = 1 + eng() % 30;
        std::size_t lb = 1 + eng() % 30;
        double n_rate = (t % 4 == 0) ? 0.1 : 0.0;
        std::string a = testdata::random_dna(eng, la, n_rate);
        std::string b = testdata::random_dna(eng, lb, n_rate);

        AlignmentResult got = sw_align(a, b);
        swo::OracleResult want = swo::oracle_align(a, b);
        REQUIRE(got.score == want.score);
        REQUIRE(got.distance == want.distance);
        REQUIRE(got.a_begin == want.a_begin);
        REQUIRE(got.a_end == want.a_end);
        REQUIRE(got.b_begin == want.b_begin);
        REQUIRE(got.b_end == want.b_end);
        REQUIRE(sw_distance(a, b) == swo::oracle_distance(a, b));
    }
}

TEST_CASE("align: agrees with the reference under other scoring schemes") {
    std::mt19937_64 eng(5150);
    const ScoringScheme schemes[] = {{2, -3, -1}, {5, -4, -6}, {1, -2, -1}};
    for (const ScoringScheme& s : schemes) {
        for (int t = 0; t < 400; ++t) {
            std::string a = testdata::random_dna(eng, 1 + eng() % 25);
            std::string b = testdata::random_dna(eng, 1 + eng() % 25);
            AlignmentResult got = sw_align(a, b, s);
            swo::OracleResult want =
                swo::oracle_align(a, b, s.match, s.mismatch, s.gap);
            REQUIRE(got.score == want.score);
            REQUIRE(got.distance == want.distance);
        }
    }
}

TEST_CASE("align: input and scheme validation") {
    CHECK_THROWS_AS(sw_align("", "ACGT"), Error);
    CHECK_THROWS_AS(sw_align("ACGT", ""), Error);
    try {
        sw_align("", "A");
        FAIL("expected empty_sequence");
    } catch (const Error& e) {
        CHECK(e.code() == errc::empty_sequence);
    }

    CHECK_THROWS_AS(sw_align("A", "A", ScoringScheme{0, -1, -2}), Error);
    CHECK_THROWS_AS(sw_align("A", "A", ScoringScheme{1, 0, -2}), Error);
    CHECK_THROWS_AS(sw_align("A", "A", ScoringScheme{1, -1, 0}), Error);
    CHECK_THROWS_AS(sw_align("A", "A", ScoringScheme{-1, -1, -2}), Error);
    try {
        sw_align("A", "A", ScoringScheme{1, 1, -2});
        FAIL("expected invalid_argument");
    } catch (const Error& e) {
        CHECK(e.code() == errc::invalid_argument);
    }
}
