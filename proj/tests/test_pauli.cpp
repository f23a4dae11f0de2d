#include "doctest.h"

#include <cmath>
#include <sstream>

#include "oracle_helpers.hpp"
#include "qaae/errors.hpp"
#include "qaae/pauli.hpp"

using namespace qaae;

TEST_CASE("term strings map leftmost letter to qubit 0") {
    const PauliTerm t = term_from_string(1.5, "XIZY");
    CHECK(t.coeff == 1.5);
    CHECK(t.x_mask == 0b1001);          // X on 0, Y on 3
    CHECK(t.z_mask == 0b1100);          // Z on 2, Y on 3
    CHECK(term_to_string(t, 4) == "XIZY");
    CHECK_THROWS_AS(term_from_string(1.0, "XA"), ConfigError);
}

TEST_CASE("dense matrices of the single-qubit letters") {
    PauliHamiltonian h;
    h.num_qubits = 1;
    h.terms.push_back(term_from_string(1.0, "Y"));
    const Eigen::MatrixXcd m = dense_matrix(h);
    CHECK(std::abs(m(0, 1) - cplx(0, -1)) < 1e-15);
    CHECK(std::abs(m(1, 0) - cplx(0, 1)) < 1e-15);
    CHECK(std::abs(m(0, 0)) < 1e-15);
}

TEST_CASE("two-level builder and its spectrum") {
    const PauliHamiltonian h = build_two_level(0.5, {0.25, 0.0, 0.0});
    const Eigen::MatrixXcd m = dense_matrix(h);
    CHECK(std::abs(m(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(m(0, 1) - 0.25) < 1e-15);
    const Spectrum s = spectrum(h);
    CHECK(s.values(0) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(s.values(1) == doctest::Approx(0.75).epsilon(1e-13));
    CHECK_THROWS_AS(build_two_level(0.5, {0.0, 0.0, 0.0}), ConfigError);
}

TEST_CASE("chain builder term count and frozen small spectrum") {
    CHECK(build_ltfim(10, 1.0, 1.0).terms.size() == 29); // 9 + 10 + 10
    CHECK(build_ltfim(3, 0.0, 1.0).terms.size() == 5);   // X terms dropped
    const Spectrum s = spectrum(build_ltfim(2, 1.0, 0.0));
    const double r5 = 2.2360679774997898; // sqrt(5)
    CHECK(s.values(0) == doctest::Approx(-r5).epsilon(1e-13));
    CHECK(s.values(1) == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(s.values(2) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(s.values(3) == doctest::Approx(r5).epsilon(1e-13));
    CHECK_THROWS_AS(build_ltfim(1, 1.0, 1.0), ConfigError);
}

TEST_CASE("parser requires the qubit header and reports line numbers") {
    std::istringstream missing("0.5 XZ\n");
    CHECK_THROWS_AS(parse_pauli_stream(missing), ParseError);
    std::istringstream bad("# qubits: 2\n0.5 XZ\noops\n");
    try {
        parse_pauli_stream(bad);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("parser merges duplicates and drops zeros") {
    std::istringstream in(
        "# qubits: 2\n"
        "# a comment\n"
        "0.5 XZ\n"
        "0.25 XZ\n"
        "0.75 ZI\n"
        "-0.75 ZI\n"
        "0 YY\n");
    const PauliHamiltonian h = parse_pauli_stream(in);
    REQUIRE(h.terms.size() == 1);
    CHECK(h.terms[0].coeff == 0.75);
    CHECK(term_to_string(h.terms[0], 2) == "XZ");
}

TEST_CASE("parser rejects malformed lines") {
    std::istringstream wrong_len("# qubits: 3\n0.5 XZ\n");
    CHECK_THROWS_AS(parse_pauli_stream(wrong_len), ParseError);
    std::istringstream trailing("# qubits: 2\n0.5 XZ extra\n");
    CHECK_THROWS_AS(parse_pauli_stream(trailing), ParseError);
    std::istringstream nan_coeff("# qubits: 2\nnan XZ\n");
    CHECK_THROWS_AS(parse_pauli_stream(nan_coeff), ParseError);
}

TEST_CASE("serialize and parse round-trip preserves coefficients exactly") {
    PauliHamiltonian h;
    h.num_qubits = 3;
    h.terms.push_back(term_from_string(0.1234567890123456789, "XYZ"));
    h.terms.push_back(term_from_string(-2.0 / 3.0, "ZZI"));
    h.terms.push_back(term_from_string(1e-15, "IIX"));
    std::istringstream in(serialize_pauli(h));
    const PauliHamiltonian back = parse_pauli_stream(in);
    REQUIRE(back.terms.size() == h.terms.size());
    for (std::size_t i = 0; i < h.terms.size(); ++i) {
        CHECK(back.terms[i].coeff == h.terms[i].coeff); // bitwise via 17 digits
        CHECK(back.terms[i].x_mask == h.terms[i].x_mask);
        CHECK(back.terms[i].z_mask == h.terms[i].z_mask);
    }
}

TEST_CASE("window rescale pins the spectral edges") {
    const PauliHamiltonian h = normalize_affine(build_ltfim(2, 1.0, 0.0), 0.05, 0.95);
    REQUIRE(h.norm.has_value());
    CHECK(h.norm->a == doctest::Approx(0.20124611797498107).epsilon(1e-13));
    CHECK(h.norm->b == doctest::Approx(0.5).epsilon(1e-13));
    const Spectrum s = spectrum(h);
    CHECK(s.values(0) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(s.values(3) == doctest::Approx(0.95).epsilon(1e-12));
}

TEST_CASE("window parameters are validated") {
    const PauliHamiltonian h = build_two_level(0.5, {0.25, 0.0, 0.0});
    CHECK_THROWS_AS(normalize_affine(h, 0.0, 0.95), ConfigError);
    CHECK_THROWS_AS(normalize_affine(h, 0.9, 0.5), ConfigError);
    CHECK_THROWS_AS(normalize_affine(h, 0.05, 1.5), ConfigError);
    // flat spectrum: identity only
    PauliHamiltonian flat;
    flat.num_qubits = 1;
    flat.terms.push_back(PauliTerm{0.7, 0, 0});
    CHECK_THROWS_AS(normalize_affine(flat, 0.05, 0.95), DegeneracyError);
}

TEST_CASE("fixed affine map shifts the spectrum as stated") {
    const PauliHamiltonian h = apply_affine(build_ltfim(2, 1.0, 0.0), 1.0 / 40.0, 0.5);
    REQUIRE(h.norm.has_value());
    CHECK(h.norm->a == 1.0 / 40.0);
    CHECK(h.norm->b == 0.5);
    const Spectrum s = spectrum(h);
    CHECK(s.values(0) == doctest::Approx(0.5 - 2.2360679774997898 / 40.0).epsilon(1e-13));
    CHECK(s.values(3) == doctest::Approx(0.5 + 2.2360679774997898 / 40.0).epsilon(1e-13));
}

TEST_CASE("expectation values against hand results") {
    StateVector plus(1);
    plus.amps = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    PauliHamiltonian x;
    x.num_qubits = 1;
    x.terms.push_back(term_from_string(1.0, "X"));
    CHECK(expectation(x, plus) == doctest::Approx(1.0).epsilon(1e-14));
    PauliHamiltonian z;
    z.num_qubits = 1;
    z.terms.push_back(term_from_string(1.0, "Z"));
    CHECK(expectation(z, zero_state(1)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(expectation(x, zero_state(2)), ConfigError);
}

TEST_CASE("term-wise application matches the dense matrix") {
    CounterRng rng(5, 11);
    const PauliHamiltonian h = build_ltfim(3, 0.8, -0.6);
    const Eigen::MatrixXcd m = dense_matrix(h);
    const StateVector s = oracle::random_state(3, rng);
    const StateVector hs = apply_hamiltonian(h, s);
    Eigen::Map<const Eigen::VectorXcd> v(s.amps.data(), 8);
    const Eigen::VectorXcd ref = m * v;
    for (int i = 0; i < 8; ++i)
        CHECK(std::abs(hs.amps[i] - ref(i)) < 1e-13);
}

TEST_CASE("spectrum orders eigenvalues ascending with unitary vectors") {
    const Spectrum s = spectrum(build_ltfim(4, 1.0, 1.0));
    for (int j = 1; j < s.levels(); ++j) CHECK(s.values(j) >= s.values(j - 1));
    const Eigen::MatrixXcd gram =
        s.vectors.adjoint() * s.vectors -
        Eigen::MatrixXcd::Identity(s.levels(), s.levels());
    CHECK(gram.cwiseAbs().maxCoeff() < 1e-12);
}
