#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "error.hpp"
#include "rng.hpp"
#include "rsvd.hpp"

using namespace divscope;

namespace {

SymView view(const std::vector<double>& v, std::size_t n) {
    return SymView{v.data(), n};
}

std::vector<double> diag_matrix(const std::vector<double>& d) {
    const std::size_t n = d.size();
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = d[i];
    return m;
}

// random symmetric matrix with a prescribed spectrum: V diag(w) V^T
std::vector<double> with_spectrum(const std::vector<double>& w,
                                  std::uint64_t seed) {
    const std::size_t n = w.size();
    std::mt19937_64 eng(seed);
    RowMatrix a(n, n);
    std::vector<double> buf(n * n);
    fill_gaussian(eng, buf.data(), buf.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = buf[i * n + j];
    Eigen::HouseholderQR<RowMatrix> qr(a);
    RowMatrix v = qr.householderQ() * RowMatrix::Identity(n, n);
    RowMatrix g = v * Eigen::Map<const Eigen::VectorXd>(w.data(), n).asDiagonal() *
                  v.transpose();
    g = ((g + g.transpose()) / 2.0).eval();
    std::vector<double> out(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i * n + j] = g(i, j);
    return out;
}

}  // namespace

TEST_CASE("rsvd: range basis is orthonormal") {
    std::vector<double> g = with_spectrum({9, 7, 5, 3, 1, 0.5, 0.1, 0.05}, 4);
    SolverOptions opts;
    opts.rank = 3;
    opts.oversampling = 2;
    RowMatrix q = randomized_range(view(g, 8), opts);
    REQUIRE(q.rows() == 8);
    REQUIRE(q.cols() == 5);
    RowMatrix qtq = q.transpose() * q;
    for (int i = 0; i < qtq.rows(); ++i)
        for (int j = 0; j < qtq.cols(); ++j)
            CHECK(std::abs(qtq(i, j) - (i == j ? 1.0 : 0.0)) < 1e-8);
}

TEST_CASE("rsvd: range captures a dominant diagonal subspace") {
    // spectrum 10, 5, 1 then zeros: the range must contain e0, e1, e2
    std::vector<double> d = {10, 5, 1, 0, 0, 0, 0, 0, 0, 0};
    std::vector<double> g = diag_matrix(d);
    SolverOptions opts;
    opts.rank = 3;
    opts.oversampling = 5;
    RowMatrix q = randomized_range(view(g, 10), opts);
    for (int axis = 0; axis < 3; ++axis) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(10);
        e(axis) = 1.0;
        // projection of e onto span(Q) should be e itself
        Eigen::VectorXd proj = q * (q.transpose() * e);
        CHECK((proj - e).norm() < 1e-10);
    }
}

TEST_CASE("rsvd: identical output for every thread count") {
    std::vector<double> g = with_spectrum({12, 8, 4, 2, 1, 0.5, 0.2, 0.1, 0.01, 0.001,
                                           0.0001, 0},
                                          99);
    SolverOptions opts;
    opts.rank = 4;
    opts.oversampling = 6;
    opts.seed = 7;
    Spectrum s1 = eigs_sym(view(g, 12), opts, 1);
    for (unsigned t : {2u, 5u, 16u}) {
        Spectrum st = eigs_sym(view(g, 12), opts, t);
        REQUIRE(st.eigenvalues.size() == s1.eigenvalues.size());
        for (std::size_t k = 0; k < s1.eigenvalues.size(); ++k)
            REQUIRE(st.eigenvalues[k] == s1.eigenvalues[k]);
        REQUIRE(st.vectors.rows() == s1.vectors.rows());
        for (int i = 0; i < s1.vectors.rows(); ++i)
            for (int j = 0; j < s1.vectors.cols(); ++j)
                REQUIRE(st.vectors(i, j) == s1.vectors(i, j));
        REQUIRE(st.resid == s1.resid);
    }
}

TEST_CASE("rsvd: signed eigenvalues on a small diagonal case") {
    std::vector<double> g = diag_matrix({3, -2, 1});
    SolverOptions opts;
    opts.rank = 2;
    opts.oversampling = 1;  // full width 3
    Spectrum s = eigs_sym(view(g, 3), opts);
    REQUIRE(s.eigenvalues.size() == 2);
    CHECK(s.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(s.eigenvalues[1] == doctest::Approx(-2.0).epsilon(1e-12));

    // eigenvectors are +-e0 and +-e1
    CHECK(std::abs(std::abs(s.vectors(0, 0)) - 1.0) < 1e-10);
    CHECK(std::abs(s.vectors(1, 0)) < 1e-10);
    CHECK(std::abs(s.vectors(2, 0)) < 1e-10);
    CHECK(std::abs(std::abs(s.vectors(1, 1)) - 1.0) < 1e-10);
}

TEST_CASE("rsvd: magnitude ordering puts the positive twin first") {
    std::vector<double> g = diag_matrix({2, -2, 1});
    SolverOptions opts;
    opts.rank = 3;
    opts.oversampling = 0;
    Spectrum s = eigs_sym(view(g, 3), opts);
    REQUIRE(s.eigenvalues.size() == 3);
    CHECK(s.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.eigenvalues[1] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(s.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rsvd: rank-one matrix is recovered exactly") {
    std::mt19937_64 eng(3);
    const std::size_t n = 40;
    std::vector<double> x(n);
    fill_gaussian(eng, x.data(), n);
    double norm = 0.0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : x) v /= norm;

    std::vector<double> g(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g[i * n + j] = x[i] * x[j];

    SolverOptions opts;
    opts.rank = 1;
    Spectrum s = eigs_sym(view(g, n), opts);
    REQUIRE(s.eigenvalues.size() == 1);
    CHECK(s.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-10));
    // u = +-x
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += s.vectors(i, 0) * x[i];
    CHECK(std::abs(std::abs(dot) - 1.0) < 1e-8);
    CHECK(s.resid < 1e-6);
}

TEST_CASE("rsvd: agrees with a dense solver on well-separated spectra") {
    std::vector<double> w(60, 0.0);
    for (int i = 0; i < 20; ++i) w[i] = 100.0 * std::pow(0.7, i);
    std::vector<double> g = with_spectrum(w, 12345);

    SolverOptions opts;
    opts.rank = 10;
    opts.oversampling = 10;
    opts.power_iters = 3;
    Spectrum s = eigs_sym(view(g, 60), opts);

    Eigen::MatrixXd m(60, 60);
    for (int i = 0; i < 60; ++i)
        for (int j = 0; j < 60; ++j) m(i, j) = g[i * 60 + j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    // dense solver sorts ascending; ours descending by magnitude
    for (std::size_t k = 0; k < 10; ++k) {
        double want = es.eigenvalues()(59 - static_cast<int>(k));
        CHECK(s.eigenvalues[k] ==
              doctest::Approx(want).epsilon(1e-6));
        // matched eigenvector up to sign
        Eigen::VectorXd u = s.vectors.col(static_cast<int>(k));
        Eigen::VectorXd v = es.eigenvectors().col(59 - static_cast<int>(k));
        CHECK(std::abs(std::abs(u.dot(v)) - 1.0) < 1e-6);
    }
}

TEST_CASE("rsvd: rayleigh quotient matches each eigenvalue") {
    std::vector<double> g = with_spectrum({50, 20, 10, 5, 2, 1, 0.5, 0.1, 0, 0},
                                          321);
    SolverOptions opts;
    opts.rank = 5;
    opts.oversampling = 5;
    Spectrum s = eigs_sym(view(g, 10), opts);
    Eigen::MatrixXd m(10, 10);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) m(i, j) = g[i * 10 + j];
    for (std::size_t k = 0; k < 5; ++k) {
        Eigen::VectorXd u = s.vectors.col(static_cast<int>(k));
        double rq = u.dot(m * u) / u.dot(u);
        CHECK(rq == doctest::Approx(s.eigenvalues[k]).epsilon(1e-8));
    }
}

TEST_CASE("rsvd: residual is the tail energy") {
    // exact rank-3: keeping rank 3 leaves ~zero residual; rank 2 leaves |w3|
    std::vector<double> g = with_spectrum({6, 5, 4, 0, 0, 0, 0, 0}, 8);
    SolverOptions opts;
    opts.rank = 3;
    opts.oversampling = 5;
    Spectrum s3 = eigs_sym(view(g, 8), opts);
    CHECK(s3.resid < 1e-6);

    opts.rank = 2;
    opts.oversampling = 0;
    opts.power_iters = 6;
    Spectrum s2 = eigs_sym(view(g, 8), opts);
    CHECK(s2.resid == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("rsvd: errors") {
    std::vector<double> g = diag_matrix({1, 2, 3});
    SolverOptions opts;
    opts.rank = 3;
    opts.oversampling = 1;  // width 4 > n = 3
    try {
        eigs_sym(view(g, 3), opts);
        FAIL("expected rank_too_large");
    } catch (const Error& e) {
        CHECK(e.code() == errc::rank_too_large);
    }

    opts.rank = 0;
    CHECK_THROWS_AS(eigs_sym(view(g, 3), opts), Error);

    std::vector<double> asym = {0, 1, 2, 0};  // not symmetric
    SolverOptions o2;
    o2.rank = 1;
    o2.oversampling = 0;
    try {
        eigs_sym(view(asym, 2), o2);
        FAIL("expected not_symmetric");
    } catch (const Error& e) {
        CHECK(e.code() == errc::not_symmetric);
    }

    try {
        eigs_sym(SymView{nullptr, 0}, o2);
        FAIL("expected empty input rejection");
    } catch (const Error& e) {
        CHECK(e.code() == errc::invalid_argument);
    }
}

TEST_CASE("rsvd: stable rank") {
    std::vector<double> g = diag_matrix({10, 5, 1});
    CHECK(stable_rank(view(g, 3)) == doctest::Approx(1.26).epsilon(1e-11));

    // rank one: exactly 1
    std::vector<double> x = {0.5, -1.25, 2.0, 0.75};
    std::vector<double> r1(16);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r1[i * 4 + j] = x[i] * x[j];
    CHECK(stable_rank(view(r1, 4)) == doctest::Approx(1.0).epsilon(1e-9));

    // identity: n
    std::vector<double> eye = diag_matrix({1, 1, 1, 1, 1, 1, 1});
    CHECK(stable_rank(view(eye, 7)) == doctest::Approx(7.0).epsilon(1e-9));

    std::vector<double> zero(9, 0.0);
    try {
        stable_rank(view(zero, 3));
        FAIL("expected zero_matrix");
    } catch (const Error& e) {
        CHECK(e.code() == errc::zero_matrix);
    }

    // spectrum proxy variant
    Spectrum s;
    s.eigenvalues = {10, 5, 1};
    CHECK(stable_rank(s) == doctest::Approx(1.26).epsilon(1e-12));
}

TEST_CASE("rsvd: frobenius norm is exact and thread independent") {
    std::vector<double> g = with_spectrum({3, 2, 1, 0.5}, 77);
    double f1 = frobenius_sq(view(g, 4), 1);
    double f8 = frobenius_sq(view(g, 4), 8);
    CHECK(f1 == f8);
    double direct = 0.0;
    for (double v : g) direct += v * v;
    CHECK(f1 == doctest::Approx(direct).epsilon(1e-15));
    // sum of squared eigenvalues
    CHECK(f1 == doctest::Approx(9 + 4 + 1 + 0.25).epsilon(1e-12));
}
