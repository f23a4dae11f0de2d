#include "qaae/pauli.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qaae/errors.hpp"
#include "qaae/statevector.hpp"
#include "qaae/util.hpp"

namespace qaae {

namespace {

// i^k for k = 0..3.
const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// Phase picked up by P|i>: P|i> = phase(i) |i ^ x_mask>, with a global i^{#Y}
// from Y = iXZ and a sign from the Z part.
inline cplx term_phase(const PauliTerm& t, std::uint64_t i) {
    int ny = std::popcount(t.x_mask & t.z_mask);
    cplx ph = kIPow[ny & 3];
    if (std::popcount(i & t.z_mask) & 1) ph = -ph;
    return ph;
}

void check_qubit_count(int q, const char* where) {
    if (q < 1 || q > 64)
        throw ConfigError(std::string(where) + ": qubit count out of range");
}

} // namespace

// --- construction ---------------------------------------------------------

PauliTerm term_from_string(double coeff, const std::string& letters) {
    PauliTerm t;
    t.coeff = coeff;
    for (std::size_t j = 0; j < letters.size(); ++j) {
        const std::uint64_t bit = std::uint64_t{1} << j;
        switch (letters[j]) {
            case 'I': break;
            case 'X': t.x_mask |= bit; break;
            case 'Y': t.x_mask |= bit; t.z_mask |= bit; break;
            case 'Z': t.z_mask |= bit; break;
            default:
                throw ConfigError("term_from_string: letter must be one of IXYZ");
        }
    }
    return t;
}

std::string term_to_string(const PauliTerm& t, int num_qubits) {
    std::string s(num_qubits, 'I');
    for (int j = 0; j < num_qubits; ++j) {
        const std::uint64_t bit = std::uint64_t{1} << j;
        const bool x = t.x_mask & bit, z = t.z_mask & bit;
        if (x && z) s[j] = 'Y';
        else if (x) s[j] = 'X';
        else if (z) s[j] = 'Z';
    }
    return s;
}

void accumulate_term(PauliHamiltonian& h, const PauliTerm& t) {
    if (t.coeff == 0.0) return;
    for (auto& u : h.terms) {
        if (u.x_mask == t.x_mask && u.z_mask == t.z_mask) {
            u.coeff += t.coeff;
            if (u.coeff == 0.0) {
                // Exact cancellation removes the term entirely.
                auto it = h.terms.begin() + (&u - h.terms.data());
                h.terms.erase(it);
            }
            return;
        }
    }
    h.terms.push_back(t);
}

PauliHamiltonian parse_pauli_stream(std::istream& in) {
    PauliHamiltonian h;
    bool have_header = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // Trim both ends.
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t\r");
        std::string body = line.substr(b, e - b + 1);

        if (body[0] == '#') {
            // Only the qubit header is significant among comment lines.
            std::istringstream hs(body.substr(1));
            std::string key;
            hs >> key;
            if (key == "qubits:" || key == "qubits") {
                if (key == "qubits") {
                    std::string colon;
                    hs >> colon;
                    if (colon != ":") continue;
                }
                int q = 0;
                if (!(hs >> q)) throw ParseError("malformed qubit header", lineno);
                if (q < 1 || q > 64) throw ParseError("qubit count out of range", lineno);
                if (have_header && q != h.num_qubits)
                    throw ParseError("conflicting qubit header", lineno);
                h.num_qubits = q;
                have_header = true;
            }
            continue;
        }

        if (!have_header)
            throw ParseError("term before '# qubits:' header", lineno);

        std::istringstream ts(body);
        double coeff = 0.0;
        std::string letters;
        if (!(ts >> coeff >> letters))
            throw ParseError("expected '<coeff> <string>'", lineno);
        std::string tail;
        if (ts >> tail) throw ParseError("trailing content after term", lineno);
        if (static_cast<int>(letters.size()) != h.num_qubits)
            throw ParseError("string length does not match qubit count", lineno);
        if (!std::isfinite(coeff))
            throw ParseError("coefficient is not finite", lineno);
        PauliTerm t;
        try {
            t = term_from_string(coeff, letters);
        } catch (const ConfigError&) {
            throw ParseError("string letters must be I, X, Y or Z", lineno);
        }
        accumulate_term(h, t);
    }
    if (!have_header) throw ParseError("missing '# qubits:' header", lineno);
    return h;
}

PauliHamiltonian parse_pauli_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("parse_pauli_file: cannot open " + path);
    return parse_pauli_stream(in);
}

std::string serialize_pauli(const PauliHamiltonian& h) {
    std::string out = "# qubits: " + std::to_string(h.num_qubits) + "\n";
    for (const auto& t : h.terms)
        out += format_real17(t.coeff) + " " + term_to_string(t, h.num_qubits) + "\n";
    return out;
}

PauliHamiltonian build_two_level(double alpha, const std::array<double, 3>& r) {
    const double rn = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    if (!(rn > 0.0))
        throw ConfigError("build_two_level: |r| must be positive");
    PauliHamiltonian h;
    h.num_qubits = 1;
    accumulate_term(h, PauliTerm{alpha, 0, 0});
    accumulate_term(h, term_from_string(r[0], "X"));
    accumulate_term(h, term_from_string(r[1], "Y"));
    accumulate_term(h, term_from_string(r[2], "Z"));
    return h;
}

PauliHamiltonian build_ltfim(int n, double g, double h_field) {
    if (n < 2) throw ConfigError("build_ltfim: need at least two sites");
    check_qubit_count(n, "build_ltfim");
    PauliHamiltonian h;
    h.num_qubits = n;
    for (int j = 0; j + 1 < n; ++j) {
        PauliTerm t;
        t.coeff = 1.0;
        t.z_mask = (std::uint64_t{1} << j) | (std::uint64_t{1} << (j + 1));
        accumulate_term(h, t);
    }
    for (int j = 0; j < n; ++j)
        accumulate_term(h, PauliTerm{g, std::uint64_t{1} << j, 0});
    for (int j = 0; j < n; ++j)
        accumulate_term(h, PauliTerm{h_field, 0, std::uint64_t{1} << j});
    return h;
}

// --- spectral tools -------------------------------------------------------

Eigen::MatrixXcd dense_matrix(const PauliHamiltonian& h) {
    if (h.num_qubits > kMaxDenseQubits)
        throw CapabilityError("dense_matrix: qubit count above dense cap");
    check_qubit_count(h.num_qubits, "dense_matrix");
    const std::size_t d = h.dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& t : h.terms) {
        for (std::uint64_t i = 0; i < d; ++i)
            m(i ^ t.x_mask, i) += t.coeff * term_phase(t, i);
    }
    return m;
}

Spectrum spectrum(const PauliHamiltonian& h) {
    Eigen::MatrixXcd m = dense_matrix(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success)
        throw NumericError("spectrum: eigensolver failed");
    Spectrum s;
    s.values = solver.eigenvalues();
    s.vectors = solver.eigenvectors();
    // Reconstruction guard; failure indicates a broken term table.
    const double scale = std::max(1.0, s.values.cwiseAbs().maxCoeff());
    Eigen::MatrixXcd rec =
        s.vectors * s.values.asDiagonal().toDenseMatrix().cast<cplx>() * s.vectors.adjoint();
    if ((rec - m).cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw NumericError("spectrum: reconstruction drift above tolerance");
    return s;
}

namespace {

PauliHamiltonian affine_impl(const PauliHamiltonian& h, double a, double b,
                             bool check_window) {
    PauliHamiltonian out;
    out.num_qubits = h.num_qubits;
    for (const auto& t : h.terms)
        accumulate_term(out, PauliTerm{a * t.coeff, t.x_mask, t.z_mask});
    accumulate_term(out, PauliTerm{b, 0, 0});
    out.norm = NormRecord{a, b};
    if (check_window && h.num_qubits <= kMaxDenseQubits) {
        Spectrum s = spectrum(out);
        const double lo = s.values(0), hi = s.values(s.levels() - 1);
        if (!(lo > 0.0) || !(hi <= 1.0 + 1e-12))
            throw NumericError("affine rescale left the spectrum outside (0, 1]");
    }
    return out;
}

} // namespace

PauliHamiltonian normalize_affine(const PauliHamiltonian& h, double lo, double hi,
                                  double lambda_min, double lambda_max) {
    if (!(lo > 0.0) || !(lo < hi) || !(hi <= 1.0))
        throw ConfigError("normalize_affine: need 0 < lo < hi <= 1");
    const double width = lambda_max - lambda_min;
    if (!(width > 1e-12))
        throw DegeneracyError("normalize_affine: spectral width below 1e-12");
    const double a = (hi - lo) / width;
    const double b = lo - a * lambda_min;
    return affine_impl(h, a, b, true);
}

PauliHamiltonian normalize_affine(const PauliHamiltonian& h, double lo, double hi) {
    if (h.num_qubits > kMaxDenseQubits)
        throw CapabilityError(
            "normalize_affine: no dense oracle at this size; supply bounds");
    Spectrum s = spectrum(h);
    return normalize_affine(h, lo, hi, s.values(0), s.values(s.levels() - 1));
}

PauliHamiltonian apply_affine(const PauliHamiltonian& h, double a, double b) {
    if (a == 0.0) throw ConfigError("apply_affine: scale must be nonzero");
    return affine_impl(h, a, b, true);
}

// --- expectation ----------------------------------------------------------

std::complex<double> pauli_matrix_element(const PauliTerm& t, const StateVector& s) {
    cplx acc{0.0, 0.0};
    const std::size_t d = s.dim();
    for (std::uint64_t i = 0; i < d; ++i)
        acc += std::conj(s.amps[i ^ t.x_mask]) * term_phase(t, i) * s.amps[i];
    return acc;
}

StateVector apply_hamiltonian(const PauliHamiltonian& h, const StateVector& s) {
    if (s.num_qubits != h.num_qubits)
        throw ConfigError("apply_hamiltonian: state dimension mismatch");
    StateVector out(s.num_qubits);
    const std::size_t d = s.dim();
    for (const auto& t : h.terms)
        for (std::uint64_t i = 0; i < d; ++i)
            out.amps[i ^ t.x_mask] += t.coeff * term_phase(t, i) * s.amps[i];
    return out;
}

double expectation(const PauliHamiltonian& h, const StateVector& s) {
    if (s.num_qubits != h.num_qubits)
        throw ConfigError("expectation: state dimension does not match Hamiltonian");
    cplx acc{0.0, 0.0};
    for (const auto& t : h.terms) acc += t.coeff * pauli_matrix_element(t, s);
    if (std::abs(acc.imag()) > 1e-8)
        throw NumericError("expectation: non-real residue above 1e-8");
    return acc.real();
}

} // namespace qaae
