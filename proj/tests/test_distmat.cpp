#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "align.hpp"
#include "distmat.hpp"
#include "error.hpp"
#include "testdata.hpp"

using namespace divscope;

TEST_CASE("distmat: duplicated read gives an all-zero matrix") {
    ReadSet rs;
    for (int i = 0; i < 3; ++i)
        rs.reads.push_back({"r" + std::to_string(i), "ACGTACGTAC"});
    DistanceMatrix d = pairwise_self(rs, {}, 2);
    CHECK(d.rows == 3);
    CHECK(d.cols == 3);
    CHECK(d.symmetric);
    for (double v : d.values) CHECK(v == 0.0);
}

TEST_CASE("distmat: thread count does not change a single value") {
    ReadSet rs = testdata::random_reads(40, 90, 2024, 0.01);
    DistanceMatrix d1 = pairwise_self(rs, {}, 1);
    for (unsigned threads : {2u, 4u, 8u, 16u}) {
        DistanceMatrix dt = pairwise_self(rs, {}, threads);
        REQUIRE(dt.values.size() == d1.values.size());
        for (std::size_t k = 0; k < d1.values.size(); ++k)
            REQUIRE(dt.values[k] == d1.values[k]);
    }
}

TEST_CASE("distmat: entries match direct alignment calls") {
    ReadSet rs = testdata::random_reads(30, 70, 555);
    DistanceMatrix d = pairwise_self(rs, {}, 4);
    std::mt19937_64 eng(1);
    for (int t = 0; t < 100; ++t) {
        std::size_t i = eng() % rs.size();
        std::size_t j = eng() % rs.size();
        double want = i == j ? 0.0
                             : static_cast<double>(sw_distance(
                                   rs[i].sequence, rs[j].sequence));
        CHECK(d.at(i, j) == want);
        CHECK(d.at(i, j) == d.at(j, i));
    }
    for (std::size_t i = 0; i < rs.size(); ++i) CHECK(d.at(i, i) == 0.0);
}

TEST_CASE("distmat: exactly n(n-1)/2 alignments for the self case") {
    ReadSet rs = testdata::random_reads(25, 40, 9);
    PairwiseStats st;
    pairwise_self(rs, {}, 3, &st);
    CHECK(st.alignment_calls == 25u * 24u / 2u);

    PairwiseStats cst;
    ReadSet qs = testdata::random_reads(7, 40, 10);
    pairwise_cross(qs, rs, {}, 3, &cst);
    CHECK(cst.alignment_calls == 7u * 25u);
}

TEST_CASE("distmat: cross of a set against itself equals self") {
    ReadSet rs = testdata::random_reads(15, 60, 31);
    DistanceMatrix self = pairwise_self(rs, {}, 2);
    DistanceMatrix cross = pairwise_cross(rs, rs, {}, 2);
    CHECK(cross.rows == self.rows);
    CHECK(cross.cols == self.cols);
    CHECK_FALSE(cross.symmetric);
    for (std::size_t k = 0; k < self.values.size(); ++k)
        REQUIRE(cross.values[k] == self.values[k]);
}

TEST_CASE("distmat: cross shapes and spot values") {
    ReadSet qs = testdata::random_reads(20, 50, 77);
    ReadSet refs = testdata::random_reads(10, 50, 78);
    DistanceMatrix d = pairwise_cross(qs, refs, {}, 5);
    REQUIRE(d.rows == 20);
    REQUIRE(d.cols == 10);
    for (std::size_t i = 0; i < d.rows; ++i)
        for (std::size_t j = 0; j < d.cols; ++j)
            REQUIRE(d.at(i, j) == static_cast<double>(sw_distance(
                                      qs[i].sequence, refs[j].sequence)));

    ReadSet q1, r1;
    q1.reads.push_back({"q", "ACGT"});
    r1.reads.push_back({"r", "AGGT"});
    DistanceMatrix one = pairwise_cross(q1, r1, {}, 1);
    REQUIRE(one.values.size() == 1);
    CHECK(one.values[0] == 1.0);
}

TEST_CASE("distmat: argument validation") {
    ReadSet one;
    one.reads.push_back({"a", "ACGT"});
    CHECK_THROWS_AS(pairwise_self(one, {}, 1), Error);

    ReadSet empty;
    CHECK_THROWS_AS(pairwise_cross(empty, one, {}, 1), Error);
    CHECK_THROWS_AS(pairwise_cross(one, empty, {}, 1), Error);

    ReadSet with_empty = one;
    with_empty.reads.push_back({"b", ""});
    try {
        pairwise_self(with_empty, {}, 1);
        FAIL("expected empty_sequence");
    } catch (const Error& e) {
        CHECK(e.code() == errc::empty_sequence);
    }
}

TEST_CASE("distmat: binary round trip preserves every field") {
    ReadSet rs = testdata::random_reads(12, 55, 17);
    DistanceMatrix d = pairwise_self(rs, {}, 2);
    const std::string dir = testdata::scratch_dir("distmat");
    const std::string path = dir + "/m.dvs";
    write_matrix(d, path);
    DistanceMatrix back = read_matrix(path);
    CHECK(back.rows == d.rows);
    CHECK(back.cols == d.cols);
    CHECK(back.symmetric == d.symmetric);
    REQUIRE(back.values.size() == d.values.size());
    for (std::size_t k = 0; k < d.values.size(); ++k)
        REQUIRE(back.values[k] == d.values[k]);
    std::filesystem::remove_all(dir);
}

TEST_CASE("distmat: binary layout is exactly 32 + 8*rows*cols bytes") {
    DistanceMatrix d;
    d.rows = d.cols = 2;
    d.symmetric = true;
    d.values = {0.0, 3.0, 3.0, 0.0};
    const std::string dir = testdata::scratch_dir("distmat");
    const std::string path = dir + "/two.dvs";
    write_matrix(d, path);
    CHECK(std::filesystem::file_size(path) == 32 + 4 * 8);

    std::ifstream in(path, std::ios::binary);
    char head[8];
    in.read(head, 8);
    CHECK(head[0] == 'D');
    CHECK(head[1] == 'V');
    CHECK(head[2] == 'S');
    CHECK(head[3] == '1');
    CHECK(head[4] == 1);  // version, little endian
    CHECK(head[5] == 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("distmat: corrupted files are rejected") {
    const std::string dir = testdata::scratch_dir("distmat");
    DistanceMatrix d;
    d.rows = d.cols = 2;
    d.symmetric = true;
    d.values = {0.0, 1.0, 1.0, 0.0};
    const std::string good = dir + "/good.dvs";
    write_matrix(d, good);

    auto clone_prefix = [&](const std::string& name, std::size_t n) {
        std::ifstream in(good, std::ios::binary);
        std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
        std::ofstream out(dir + "/" + name, std::ios::binary);
        out.write(bytes.data(), static_cast<std::streamsize>(n));
        return dir + "/" + name;
    };

    try {
        read_matrix(clone_prefix("short_header.dvs", 20));
        FAIL("expected truncated");
    } catch (const Error& e) {
        CHECK(e.code() == errc::truncated);
    }
    try {
        read_matrix(clone_prefix("short_payload.dvs", 32 + 17));
        FAIL("expected truncated");
    } catch (const Error& e) {
        CHECK(e.code() == errc::truncated);
    }

    {
        std::ifstream in(good, std::ios::binary);
        std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
        bytes[0] = 'X';
        std::ofstream out(dir + "/magic.dvs", std::ios::binary);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }
    try {
        read_matrix(dir + "/magic.dvs");
        FAIL("expected bad_format");
    } catch (const Error& e) {
        CHECK(e.code() == errc::bad_format);
    }

    {
        std::ifstream in(good, std::ios::binary);
        std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
        bytes[4] = 2;  // unsupported version
        std::ofstream out(dir + "/ver.dvs", std::ios::binary);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }
    try {
        read_matrix(dir + "/ver.dvs");
        FAIL("expected bad_format");
    } catch (const Error& e) {
        CHECK(e.code() == errc::bad_format);
    }

    try {
        read_matrix(dir + "/does_not_exist.dvs");
        FAIL("expected io_error");
    } catch (const Error& e) {
        CHECK(e.code() == errc::io_error);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("distmat: tsv export") {
    DistanceMatrix d;
    d.rows = 2;
    d.cols = 2;
    d.symmetric = true;
    d.values = {0.0, 1.5, 1.5, 0.0};
    const std::string dir = testdata::scratch_dir("distmat");
    const std::string path = dir + "/m.tsv";
    write_matrix_tsv(d, {"a", "b"}, {"a", "b"}, path);
    std::ifstream in(path);
    std::string l1, l2, l3;
    std::getline(in, l1);
    std::getline(in, l2);
    std::getline(in, l3);
    CHECK(l1 == "id\ta\tb");
    CHECK(l2 == "a\t0\t1.5");
    CHECK(l3 == "b\t1.5\t0");

    CHECK_THROWS_AS(write_matrix_tsv(d, {"a"}, {"a", "b"}, path), Error);
    std::filesystem::remove_all(dir);
}
