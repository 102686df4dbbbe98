#include <doctest.h>

#include <cmath>

#include "qfilter/errors.hpp"
#include "qfilter/vectors.hpp"
#include "qfilter/walsh_basis.hpp"

using namespace qfilter;

namespace {

// Deterministic pseudo-random doubles for property checks.
double test_rand(std::uint64_t& state) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>(state >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

StateVector random_unit(std::size_t dim, std::uint64_t& state) {
    StateVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = test_rand(state);
    v.scale(1.0 / v.norm());
    return v;
}

// The 4x4 matrix of the worked k=2 example, built from its printed entries
// (independent of reduced_gram).
SymmetricMatrix worked_example_matrix(double q1) {
    const double x = 1.0 / (4.0 * q1);
    SymmetricMatrix m(4);
    m.set(0, 0, 1.0 - q1);
    m.set(1, 1, 1.0 - x);
    m.set(2, 2, 1.0 - x);
    m.set(3, 3, 1.0 - x);
    m.set(1, 2, -x);
    m.set(1, 3, x);
    m.set(2, 3, x);
    return m;
}

}  // namespace

TEST_CASE("inner products of basis members and w_k") {
    CHECK(inner(basis_vector(3, {0, 1}), basis_vector(3, {1, 1})) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(inner(wk_vector(3, 2), basis_vector(3, {0, 1})) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(inner(wk_vector(3, 2), wk_vector(3, 2)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("inner rejects dimension mismatch") {
    CHECK_THROWS_AS(inner(StateVector(3), StateVector(4)), std::invalid_argument);
}

TEST_CASE("project_parallel onto the balanced subspace") {
    const auto basis = full_basis(3);
    const std::vector<StateVector> hb(basis.begin() + 1, basis.end());

    SUBCASE("w_2 has parallel weight 3/4") {
        const auto proj = project_parallel(wk_vector(3, 2), hb);
        CHECK(proj.norm_sq == doctest::Approx(0.75).epsilon(1e-13));
    }
    SUBCASE("a member projects to itself") {
        const auto proj = project_parallel(basis[1], hb);
        CHECK(proj.norm_sq == doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("the constant vector is orthogonal") {
        const auto proj = project_parallel(basis[0], hb);
        CHECK(proj.norm_sq == doctest::Approx(0.0).epsilon(1e-13));
    }
}

TEST_CASE("project_parallel rejects a non-orthonormal subspace") {
    std::vector<StateVector> bad{wk_vector(3, 2), basis_vector(3, {1, 1})};
    CHECK_THROWS_AS(project_parallel(basis_vector(3, {0, 1}), bad), std::invalid_argument);
}

TEST_CASE("projection residual and Pythagoras") {
    std::uint64_t state = 99;
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<StateVector> raw;
        for (int i = 0; i < 4; ++i) raw.push_back(random_unit(9, state));
        const auto sub = orthonormalize(raw);
        REQUIRE(sub.size() == 4);

        const StateVector v = random_unit(9, state);
        const auto proj = project_parallel(v, sub);

        StateVector residual = v;
        residual.add_scaled(proj.component, -1.0);
        for (const auto& b : sub) CHECK(std::abs(inner(b, residual)) <= 1e-10);
        CHECK(v.norm_sq() ==
              doctest::Approx(proj.norm_sq + residual.norm_sq()).epsilon(1e-10));
    }
}

TEST_CASE("psd_factor of the identity") {
    SymmetricMatrix id(4);
    for (int i = 0; i < 4; ++i) id.set(i, i, 1.0);
    const Matrix b = psd_factor(id, 1e-12);
    CHECK(max_abs_diff(b, Matrix::identity(4)) <= 1e-12);
}

TEST_CASE("worked example matrix across the feasibility edge") {
    SUBCASE("q1 = 3/4 is factorable with one zero eigenvalue") {
        const auto eig = eigen_sym(worked_example_matrix(0.75));
        CHECK(eig.values[0] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(eig.values[1] == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(eig.values[2] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(eig.values[3] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK_NOTHROW(psd_factor(worked_example_matrix(0.75), 1e-10));
    }
    SUBCASE("q1 = 1/2 is rejected with eigenvalue -1/2") {
        try {
            psd_factor(worked_example_matrix(0.5), 1e-10);
            FAIL("expected NotPsdError");
        } catch (const NotPsdError& e) {
            CHECK(e.min_eigenvalue() == doctest::Approx(-0.5).epsilon(1e-10));
        }
    }
}

TEST_CASE("psd_factor reconstructs random Gram matrices") {
    std::uint64_t state = 7;
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t n = 2 + rep % 7;
        SymmetricMatrix m(n);
        std::vector<StateVector> rows;
        for (std::size_t i = 0; i < n; ++i) rows.push_back(random_unit(n + 2, state));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) m.set(i, j, inner(rows[i], rows[j]));

        const Matrix b = psd_factor(m, 1e-10);
        CHECK(max_abs_diff(multiply(transpose(b), b), m.dense()) <= 1e-10);
        CHECK(max_abs_diff(multiply(b, b), m.dense()) <= 1e-10);
    }
}

TEST_CASE("orthonormalize drops dependent inputs") {
    StateVector a(std::vector<double>{1.0, 0.0, 0.0});
    StateVector b(std::vector<double>{0.0, 1.0, 0.0});
    StateVector c(std::vector<double>{std::sqrt(0.5), std::sqrt(0.5), 0.0});
    const auto basis = orthonormalize(std::vector<StateVector>{a, b, c});
    CHECK(basis.size() == 2);
}

TEST_CASE("orthonormal_completion spans the rest of the space") {
    std::uint64_t state = 5;
    const auto frame = orthonormalize(std::vector<StateVector>{random_unit(6, state), random_unit(6, state)});
    const auto pads = orthonormal_completion(frame, 6, 4);
    REQUIRE(pads.size() == 4);

    std::vector<StateVector> all(frame.begin(), frame.end());
    all.insert(all.end(), pads.begin(), pads.end());
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < all.size(); ++j)
            CHECK(std::abs(inner(all[i], all[j]) - (i == j ? 1.0 : 0.0)) <= 1e-12);
}
