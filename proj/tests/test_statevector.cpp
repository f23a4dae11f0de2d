#include "doctest.h"

#include <cmath>

#include "qaae/errors.hpp"
#include "qaae/statevector.hpp"

using namespace qaae;

TEST_CASE("basis states and dimensions") {
    const StateVector s = basis_state(3, 5);
    CHECK(s.dim() == 8);
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(s.amps[i] == (i == 5 ? cplx(1, 0) : cplx(0, 0)));
}

TEST_CASE("inner product conjugates the first argument") {
    StateVector a(1), b(1);
    a.amps = {cplx(0, 1), 0.0};
    b.amps = {1.0, 0.0};
    CHECK(std::abs(inner(a, b) - cplx(0, -1)) < 1e-15);
    CHECK(std::abs(inner(b, a) - cplx(0, 1)) < 1e-15);
}

TEST_CASE("normalize rescales and rejects the zero vector") {
    StateVector s(2);
    s.amps = {3.0, 0.0, 4.0, 0.0};
    normalize(s);
    CHECK(norm(s) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(s.amps[0] - cplx(0.6, 0)) < 1e-15);
    StateVector z(1);
    CHECK_THROWS_AS(normalize(z), NumericError);
}

TEST_CASE("fidelity is symmetric and bounded") {
    StateVector a(1), b(1);
    a.amps = {1.0, 0.0};
    b.amps = {std::sqrt(0.3), std::sqrt(0.7)};
    CHECK(fidelity(a, b) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(fidelity(b, a) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(fidelity(b, b) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("plus-ancilla embedding copies the system into both halves") {
    StateVector sys(2);
    sys.amps = {0.1, 0.2, 0.3, cplx(0.0, 0.4)};
    normalize(sys);
    const StateVector joint = join_plus_ancilla(sys);
    CHECK(joint.num_qubits == 3);
    const double r = std::sqrt(0.5);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(joint.amps[i] - sys.amps[i] * r) < 1e-15);
        CHECK(std::abs(joint.amps[i + 4] - sys.amps[i] * r) < 1e-15);
    }
}

TEST_CASE("branch extraction inverts the embedding") {
    StateVector sys(1);
    sys.amps = {0.6, 0.8};
    const StateVector joint = join_plus_ancilla(sys);
    const StateVector b0 = ancilla_branch(joint, 0);
    const StateVector b1 = ancilla_branch(joint, 1);
    const double r = std::sqrt(0.5);
    CHECK(std::abs(b0.amps[0] - 0.6 * r) < 1e-15);
    CHECK(std::abs(b0.amps[1] - 0.8 * r) < 1e-15);
    CHECK(std::abs(b1.amps[0] - 0.6 * r) < 1e-15);
    CHECK(std::abs(b1.amps[1] - 0.8 * r) < 1e-15);
}
