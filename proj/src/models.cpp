// Copyright 2026 The projecho Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "projecho/models.hpp"

#include <algorithm>
#include <cmath>

#include "projecho/error.hpp"

namespace projecho {

Bipartition::Bipartition(int n_a, int n_b, std::vector<int> b_qubits)
    : n_a_(n_a), n_b_(n_b), b_qubits_(std::move(b_qubits)) {
    if (n_a < 1 || n_b < 1) {
        throw_invalid("bipartition requires n_a >= 1 and n_b >= 1 (got n_a=" + std::to_string(n_a) +
                      ", n_b=" + std::to_string(n_b) + ")");
    }
    if (n_a + n_b > kMaxQubits) {
        throw_invalid("bipartition exceeds the configured maximum of " + std::to_string(kMaxQubits) + " qubits");
    }
    if (b_qubits_.empty()) {
        for (int k = 0; k < n_b; ++k) {
            b_qubits_.push_back(k);
        }
    }
    if (static_cast<int>(b_qubits_.size()) != n_b) {
        throw_invalid("bipartition lists " + std::to_string(b_qubits_.size()) + " B qubits but n_b=" +
                      std::to_string(n_b));
    }
    std::vector<int> sorted = b_qubits_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw_invalid("bipartition B qubits must be distinct");
    }
    if (sorted.front() < 0 || sorted.back() >= n_a + n_b) {
        throw_invalid("bipartition B qubit index outside the A u B register");
    }
    for (int q = 0; q < n_a + n_b; ++q) {
        if (!std::binary_search(sorted.begin(), sorted.end(), q)) {
            a_qubits_.push_back(q);
        }
    }
}

bool Bipartition::is_b(int qubit) const {
    return std::find(b_qubits_.begin(), b_qubits_.end(), qubit) != b_qubits_.end();
}

Hamiltonian::Hamiltonian(ComplexMatrix matrix, Bipartition bipartition, std::string label)
    : matrix_(std::move(matrix)), bipartition_(std::move(bipartition)), label_(std::move(label)) {
    Eigen::Index expected = Eigen::Index{1} << bipartition_.num_qubits();
    if (matrix_.rows() != expected || matrix_.cols() != expected) {
        throw_invalid("Hamiltonian dimension does not match its bipartition");
    }
    if (!is_hermitian(matrix_, kHermitianTol)) {
        throw_invalid("Hamiltonian '" + label_ + "' is not Hermitian");
    }
    spectrum_ = std::make_shared<const Propagator>(matrix_);
}

bool is_prime(int p) {
    if (p < 2) {
        return false;
    }
    for (int k = 2; k * k <= p; ++k) {
        if (p % k == 0) {
            return false;
        }
    }
    return true;
}

bool is_power_of(int d, int p) {
    if (d < 1 || p < 2) {
        return false;
    }
    while (d % p == 0) {
        d /= p;
    }
    return d == 1;
}

int site_distance(int i, int j, int n_sites, bool periodic) {
    int d = std::abs(i - j);
    return periodic ? std::min(d, n_sites - d) : d;
}

PadicCouplings PadicCouplings::make(int n_sites, int p, double s, bool periodic) {
    if (!is_prime(p)) {
        throw_invalid("p-adic couplings require a prime p (got " + std::to_string(p) + ")");
    }
    if (n_sites < 1) {
        throw_invalid("p-adic chain needs at least one site");
    }
    PadicCouplings c;
    c.n_sites = n_sites;
    c.p = p;
    c.s = s;
    c.periodic = periodic;
    c.chi = Eigen::MatrixXd::Zero(n_sites, n_sites);
    for (int i = 0; i < n_sites; ++i) {
        for (int j = 0; j < n_sites; ++j) {
            int d = site_distance(i, j, n_sites, periodic);
            if (i != j && is_power_of(d, p)) {
                c.chi(i, j) = std::pow(static_cast<double>(d), s);
            }
        }
    }
    return c;
}

ComplexMatrix pauli_operator(int num_qubits, const std::vector<std::pair<int, char>> &factors) {
    std::vector<ComplexMatrix> site(num_qubits, pauli::identity());
    for (const auto &[q, kind] : factors) {
        if (q < 0 || q >= num_qubits) {
            throw_invalid("Pauli factor on qubit " + std::to_string(q) + " outside register");
        }
        switch (kind) {
            case 'x':
            case 'X':
                site[q] = site[q] * pauli::x();
                break;
            case 'y':
            case 'Y':
                site[q] = site[q] * pauli::y();
                break;
            case 'z':
            case 'Z':
                site[q] = site[q] * pauli::z();
                break;
            case '+':
                site[q] = site[q] * pauli::raise();
                break;
            case '-':
                site[q] = site[q] * pauli::lower();
                break;
            default:
                throw_invalid(std::string("unknown Pauli factor '") + kind + "'");
        }
    }
    // Qubit 0 is the least significant index bit, so it is the rightmost factor.
    ComplexMatrix out = site[num_qubits - 1];
    for (int q = num_qubits - 2; q >= 0; --q) {
        out = kron(out, site[q]);
    }
    return out;
}

Hamiltonian build_tfim(int n, double j, double h, const Bipartition &bipartition, double cross_scale) {
    if (n < 2 || n != bipartition.num_qubits()) {
        throw_invalid("TFIM chain length must equal n_a + n_b >= 2");
    }
    Eigen::Index dim = Eigen::Index{1} << n;
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (int i = 0; i + 1 < n; ++i) {
        double scale = bipartition.is_b(i) != bipartition.is_b(i + 1) ? cross_scale : 1.0;
        m -= j * scale * pauli_operator(n, {{i, 'z'}, {i + 1, 'z'}});
    }
    for (int i = 0; i < n; ++i) {
        m -= h * pauli_operator(n, {{i, 'x'}});
    }
    return Hamiltonian(std::move(m), bipartition, "tfim");
}

Hamiltonian build_padic_xy(const PadicCouplings &couplings, const Bipartition &bipartition) {
    int n = bipartition.num_qubits();
    if (couplings.n_sites != n || couplings.chi.rows() != n || couplings.chi.cols() != n) {
        throw_invalid("p-adic coupling matrix does not match the register size");
    }
    if (!is_prime(couplings.p)) {
        throw_invalid("p-adic couplings require a prime p (got " + std::to_string(couplings.p) + ")");
    }
    Eigen::Index dim = Eigen::Index{1} << n;
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        for (int k = i + 1; k < n; ++k) {
            double c = couplings.chi(i, k);
            if (c != 0.0) {
                m += c * (pauli_operator(n, {{i, '+'}, {k, '-'}}) + pauli_operator(n, {{i, '-'}, {k, '+'}}));
            }
        }
        if (couplings.onsite != 0.0) {
            m += couplings.onsite * pauli_operator(n, {{i, '+'}, {i, '-'}});
        }
    }
    return Hamiltonian(std::move(m), bipartition, "padic-xy");
}

PadicCouplings padic_with_bath(int p, double s, bool periodic, const Bipartition &bipartition,
                               double bath_coupling) {
    PadicCouplings chain = PadicCouplings::make(bipartition.n_a(), p, s, periodic);
    PadicCouplings out;
    out.n_sites = bipartition.num_qubits();
    out.p = p;
    out.s = s;
    out.periodic = periodic;
    out.chi = Eigen::MatrixXd::Zero(out.n_sites, out.n_sites);
    const auto &a = bipartition.a_qubits();
    for (int i = 0; i < bipartition.n_a(); ++i) {
        for (int k = 0; k < bipartition.n_a(); ++k) {
            out.chi(a[i], a[k]) = chain.chi(i, k);
        }
    }
    int first = a.front();
    int last = a.back();
    for (int b : bipartition.b_qubits()) {
        out.chi(b, first) = out.chi(first, b) = bath_coupling;
        out.chi(b, last) = out.chi(last, b) = bath_coupling;
    }
    return out;
}

Hamiltonian build_perturbed(const Hamiltonian &h1, const Hamiltonian &v) {
    if (h1.dim() != v.dim()) {
        throw_invalid("perturbation dimension does not match the Hamiltonian");
    }
    return Hamiltonian(h1.matrix() + v.matrix(), h1.bipartition(), h1.label() + "+" + v.label());
}

Hamiltonian build_local(const ComplexMatrix &h_a, const ComplexMatrix &h_b, const Bipartition &bipartition) {
    int n = bipartition.num_qubits();
    ComplexMatrix m = embed_on_qubits(h_a, bipartition.a_qubits(), n) + embed_on_qubits(h_b, bipartition.b_qubits(), n);
    return Hamiltonian(std::move(m), bipartition, "local");
}

}  // namespace projecho
