// test_frames.cpp — Frame angles, eigenstates and frame maps

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "berrydeco/errors.hpp"
#include "berrydeco/frames.hpp"

using namespace berrydeco;

namespace {

DensityMatrix2 some_state() {
    Vector2c v;
    v << cplx(0.6, 0.1), cplx(-0.3, 0.7);
    const DensityMatrix2 pure = DensityMatrix2::pure(v);
    return {0.8 * pure.p00() + 0.1, 0.8 * pure.c01()};
}

}  // namespace

TEST_CASE("frame angles for an aligned field") {
    const FrameAngles a = frame_angles({100.0, 0.0, 2.0});
    CHECK(a.alpha == 0.0);
    CHECK(a.gap == doctest::Approx(98.0));
    CHECK(a.zeta == 0.0);
}

TEST_CASE("frame angles at B=100, omega0=2, theta=pi/4") {
    const DriveParams d{100.0, M_PI / 4, 2.0};
    const FrameAngles a = frame_angles(d);
    CHECK(a.alpha == doctest::Approx(0.799742184175918).epsilon(1e-13));
    CHECK(a.gap == doctest::Approx(98.59592936589918).epsilon(1e-13));
    CHECK(a.zeta == doctest::Approx(0.799742184175918 - M_PI / 4).epsilon(1e-12));

    // Cross-check against diagonalizing the rotating-frame Hamiltonian.
    Eigen::Matrix2d H;
    const double hx = 0.5 * d.B * std::sin(d.theta), hz = 0.5 * (d.B * std::cos(d.theta) - d.omega0);
    H << hz, hx, hx, -hz;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(H);
    CHECK(es.eigenvalues()(1) - es.eigenvalues()(0) == doctest::Approx(a.gap).epsilon(1e-13));
    const Eigen::Vector2d up = es.eigenvectors().col(1);
    CHECK(std::abs(std::abs(up(0)) - std::cos(a.alpha / 2)) < 1e-12);
    CHECK(std::abs(std::abs(up(1)) - std::sin(a.alpha / 2)) < 1e-12);
}

TEST_CASE("frame angle branch at B cos theta = omega0") {
    const double th = 1.1;
    const FrameAngles a = frame_angles({10.0, th, 10.0 * std::cos(th)});
    CHECK(a.alpha == doctest::Approx(M_PI / 2).epsilon(1e-14));
    const FrameAngles b = frame_angles({10.0, th, 10.0});
    CHECK(b.alpha > M_PI / 2);
}

TEST_CASE("resonant degenerate point") {
    CHECK_THROWS_AS(frame_angles({5.0, 0.0, 5.0}), DegenerateFrameError);
}

TEST_CASE("zeta shrinks with omega0 / B") {
    const double B = 100.0, w = 1.0;
    for (double th = 0.1; th < M_PI - 0.05; th += 0.1) {
        const FrameAngles a = frame_angles({B, th, w});
        CHECK(std::abs(a.zeta) <= 1.02 * w * std::sin(th) / B);
        CHECK(std::abs(a.zeta) >= 0.98 * w * std::sin(th) / B);
    }
}

TEST_CASE("eigenstate phase convention") {
    const Eigenpair p0 = instantaneous_eigenstates({100.0, 0.0, 2.0}, 0.3);
    CHECK(std::abs(p0.excited(0) - 1.0) < 1e-15);
    CHECK(std::abs(p0.excited(1)) < 1e-15);
    CHECK(std::abs(p0.ground(0)) < 1e-15);
    CHECK(std::abs(p0.ground(1) + 1.0) < 1e-15);

    const Eigenpair eq = instantaneous_eigenstates({100.0, M_PI / 2, 2.0}, 0.0);
    CHECK(std::abs(eq.excited(0) - M_SQRT1_2) < 1e-15);
    CHECK(std::abs(eq.excited(1) - M_SQRT1_2) < 1e-15);
}

TEST_CASE("eigenstates are orthonormal eigenvectors of H_s(t)") {
    for (double th : {0.2, 1.0, 2.5}) {
        for (double t : {0.0, 0.4, 2.2}) {
            const DriveParams d{7.0, th, 1.3};
            const Eigenpair p = instantaneous_eigenstates(d, t);
            CHECK(std::abs(p.excited.norm() - 1.0) < 1e-14);
            CHECK(std::abs(p.ground.norm() - 1.0) < 1e-14);
            CHECK(std::abs(p.ground.dot(p.excited)) < 1e-14);
            const Matrix2c H = drive_hamiltonian(d, t);
            CHECK((H * p.excited - 3.5 * p.excited).norm() < 1e-13);
            CHECK((H * p.ground + 3.5 * p.ground).norm() < 1e-13);
        }
    }
}

TEST_CASE("density matrix algebra") {
    const DensityMatrix2 r = some_state();
    const DensityMatrix2 back = DensityMatrix2::from_matrix(r.matrix());
    CHECK(back.p00() == r.p00());
    CHECK(back.c01() == r.c01());
    CHECK((r.matrix().trace() - cplx(1.0)).real() == 0.0);
    CHECK(DensityMatrix2::maximally_mixed().purity() == doctest::Approx(0.5));
    CHECK(trace_distance(r, r) == 0.0);

    Vector2c a, b;
    a << 1, 0;
    b << 0, 1;
    CHECK(trace_distance(DensityMatrix2::pure(a), DensityMatrix2::pure(b)) == doctest::Approx(1.0));
    CHECK(DensityMatrix2(1.2, 0.0).min_eigenvalue() == doctest::Approx(-0.2));
    CHECK_FALSE(DensityMatrix2(1.2, 0.0).is_physical());
}

TEST_CASE("to_original_frame preserves the maximally mixed state") {
    const DriveParams d{100.0, 0.9, 2.0};
    for (double t : {0.0, 0.7, 3.0}) {
        const DensityMatrix2 r = to_original_frame(DensityMatrix2::maximally_mixed(), d, t);
        CHECK(std::abs(r.p00() - 0.5) < 1e-15);
        CHECK(std::abs(r.c01()) < 1e-15);
    }
}

TEST_CASE("to_original_frame at t=0 with alpha=0 is the identity") {
    const DensityMatrix2 r = some_state();
    const DensityMatrix2 out = to_original_frame(r, {100.0, 0.0, 2.0}, 0.0);
    CHECK(out.p00() == doctest::Approx(r.p00()).epsilon(1e-15));
    CHECK(std::abs(out.c01() - r.c01()) < 1e-15);
}

TEST_CASE("frame maps are unitary and invertible") {
    const DriveParams d{100.0, 0.9, 2.0};
    const DensityMatrix2 pure = initial_state(d);
    const DensityMatrix2 mixed = some_state();
    for (double t : {0.0, 0.3, 1.7, 3.1}) {
        CHECK(std::abs(to_original_frame(pure, d, t).purity() - 1.0) < 1e-12);
        const DensityMatrix2 rt = to_rotated_frame(to_original_frame(mixed, d, t), d, t);
        CHECK(trace_distance(rt, mixed) < 1e-12);
    }
}

TEST_CASE("initial state is the equal superposition") {
    const DriveParams d{100.0, 0.0, 2.0};
    const DensityMatrix2 r = initial_state(d);
    CHECK(r.p00() == doctest::Approx(0.5));
    CHECK(std::abs(r.c01() + 0.5) < 1e-15);
    CHECK(std::abs(r.purity() - 1.0) < 1e-15);

    const DriveParams e{100.0, 1.2, 2.0};
    const Eigenpair p = instantaneous_eigenstates(e, 0.0);
    const Matrix2c m = initial_state(e).matrix();
    CHECK(std::abs((p.ground.adjoint() * m * p.ground)(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs((p.excited.adjoint() * m * p.excited)(0, 0) - 0.5) < 1e-15);
}

TEST_CASE("drive validation") {
    CHECK_THROWS_AS((DriveParams{0.0, 0.1, 1.0}.validate()), ConfigError);
    CHECK_THROWS_AS((DriveParams{1.0, 4.0, 1.0}.validate()), ConfigError);
    CHECK_THROWS_AS((DriveParams{1.0, 0.1, 0.0}.validate()), ConfigError);
    CHECK(DriveParams{1.0, 0.1, -2.0}.period() == doctest::Approx(M_PI));
}
