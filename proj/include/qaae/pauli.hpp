#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qaae {

struct StateVector;

// One Pauli string with a real coefficient. Bit j of x_mask / z_mask says
// whether the string acts with X / Z on qubit j; both bits set means Y.
struct PauliTerm {
    double coeff = 0.0;
    std::uint64_t x_mask = 0;
    std::uint64_t z_mask = 0;

    bool operator==(const PauliTerm&) const = default;
};

// Affine record H' = a*H + b*I kept alongside a rescaled Hamiltonian so
// physical energies can be recovered as (E' - b) / a.
struct NormRecord {
    double a = 1.0;
    double b = 0.0;
};

// Real-coefficient Pauli-sum Hamiltonian. Terms are unique by mask pair and
// zero coefficients are dropped; list order is meaningful (product formulas
// sweep terms in this order).
struct PauliHamiltonian {
    int num_qubits = 0;
    std::vector<PauliTerm> terms;
    std::optional<NormRecord> norm;

    std::size_t dim() const { return std::size_t{1} << num_qubits; }
};

// Exact eigensystem of a Hamiltonian, eigenvalues ascending. Column j of
// `vectors` is the eigenvector of values[j].
struct Spectrum {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;

    int levels() const { return static_cast<int>(values.size()); }
};

// Dense diagonalization is capped at this many qubits.
inline constexpr int kMaxDenseQubits = 14;

// --- construction ---------------------------------------------------------

// Parses the text format:
//   # qubits: <q>
//   <coeff> <string>
// where <string> is q letters from {I,X,Y,Z} and the leftmost letter acts on
// qubit 0. '#' lines are comments; duplicate strings merge by summation.
PauliHamiltonian parse_pauli_file(const std::string& path);
PauliHamiltonian parse_pauli_stream(std::istream& in);

// Inverse of parsing: header plus one term per line, coefficients with 17
// significant digits. parse(serialize(H)) reproduces H exactly.
std::string serialize_pauli(const PauliHamiltonian& h);

// Single qubit: alpha*I + rx*X + ry*Y + rz*Z. |r| must be positive.
PauliHamiltonian build_two_level(double alpha, const std::array<double, 3>& r);

// Open-chain Ising model with transverse field g and longitudinal field h:
// sum_j Z_j Z_{j+1} + sum_j (g X_j + h Z_j). Zero couplings are dropped.
PauliHamiltonian build_ltfim(int n, double g, double h);

// Builds a term from its letter string ("IXYZ", leftmost = qubit 0).
PauliTerm term_from_string(double coeff, const std::string& letters);
std::string term_to_string(const PauliTerm& t, int num_qubits);

// Adds a term into the list, merging with an existing mask pair and dropping
// exact zeros.
void accumulate_term(PauliHamiltonian& h, const PauliTerm& t);

// --- spectral tools -------------------------------------------------------

// 2^q x 2^q dense matrix of H.
Eigen::MatrixXcd dense_matrix(const PauliHamiltonian& h);

// Exact dense eigensystem (ascending). Throws CapabilityError above
// kMaxDenseQubits and NumericError if the reconstruction drifts.
Spectrum spectrum(const PauliHamiltonian& h);

// Rescales H so the spectrum spans exactly [lo, hi], 0 < lo < hi <= 1.
// Bounds come from the dense oracle unless supplied by the caller.
PauliHamiltonian normalize_affine(const PauliHamiltonian& h, double lo, double hi);
PauliHamiltonian normalize_affine(const PauliHamiltonian& h, double lo, double hi,
                                  double lambda_min, double lambda_max);

// Applies a fixed affine map a*H + b*I and records it. When the dense oracle
// is available the rescaled spectrum is checked to lie inside (0, 1].
PauliHamiltonian apply_affine(const PauliHamiltonian& h, double a, double b);

// <s|H|s>. Throws NumericError if the value has a non-real residue above
// 1e-8, which can only happen through corrupted state data.
double expectation(const PauliHamiltonian& h, const StateVector& s);

// <s|P|s> for a single string (unit coefficient is implied by the mask pair).
std::complex<double> pauli_matrix_element(const PauliTerm& t, const StateVector& s);

// H|s> accumulated term by term.
StateVector apply_hamiltonian(const PauliHamiltonian& h, const StateVector& s);

} // namespace qaae
