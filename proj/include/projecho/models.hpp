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

#ifndef PROJECHO_MODELS_HPP
#define PROJECHO_MODELS_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "projecho/qlinalg.hpp"

namespace projecho {

/// Split of an A u B register. `b_qubits[k]` is the register index carrying
/// bit k of a subsystem-B basis label; A qubits are the remaining indices in
/// ascending order.
class Bipartition {
   public:
    /// Empty `b_qubits` selects the chain edge sites 0..n_b-1.
    Bipartition(int n_a, int n_b, std::vector<int> b_qubits = {});

    int n_a() const noexcept {
        return n_a_;
    }
    int n_b() const noexcept {
        return n_b_;
    }
    int num_qubits() const noexcept {
        return n_a_ + n_b_;
    }
    const std::vector<int> &b_qubits() const noexcept {
        return b_qubits_;
    }
    const std::vector<int> &a_qubits() const noexcept {
        return a_qubits_;
    }
    std::uint64_t dim_a() const noexcept {
        return std::uint64_t{1} << n_a_;
    }
    std::uint64_t dim_b() const noexcept {
        return std::uint64_t{1} << n_b_;
    }
    bool is_b(int qubit) const;

    bool operator==(const Bipartition &) const = default;

   private:
    int n_a_;
    int n_b_;
    std::vector<int> b_qubits_;
    std::vector<int> a_qubits_;
};

/// Hermitian operator on A u B together with its bipartition. The spectral
/// decomposition is computed once at construction and shared by copies.
class Hamiltonian {
   public:
    Hamiltonian(ComplexMatrix matrix, Bipartition bipartition, std::string label);

    const ComplexMatrix &matrix() const noexcept {
        return matrix_;
    }
    const Bipartition &bipartition() const noexcept {
        return bipartition_;
    }
    const std::string &label() const noexcept {
        return label_;
    }
    Eigen::Index dim() const noexcept {
        return matrix_.rows();
    }
    /// exp(-i H t).
    ComplexMatrix propagator(double t) const {
        return spectrum_->at(t);
    }
    const RealVector &eigenvalues() const noexcept {
        return spectrum_->eigenvalues();
    }

   private:
    ComplexMatrix matrix_;
    Bipartition bipartition_;
    std::string label_;
    std::shared_ptr<const Propagator> spectrum_;
};

/// chi[i][j] = d^s when the (optionally periodic) distance d = |i - j| is a
/// power of p, else 0.
struct PadicCouplings {
    int n_sites = 0;
    int p = 2;
    double s = 0.0;
    bool periodic = true;
    Eigen::MatrixXd chi;
    /// Coefficient of the on-site sigma^+ sigma^- term; zero disables it.
    double onsite = 0.0;

    static PadicCouplings make(int n_sites, int p, double s, bool periodic = true);
};

bool is_prime(int p);
/// True when d = p^k for some k >= 0.
bool is_power_of(int d, int p);
int site_distance(int i, int j, int n_sites, bool periodic);

/// Tensor product of single-qubit Paulis, e.g. {{0,'z'},{1,'z'}} on n qubits.
ComplexMatrix pauli_operator(int num_qubits, const std::vector<std::pair<int, char>> &factors);

/// H = -j sum_i Z_i Z_{i+1} - h sum_i X_i on an open chain of
/// n = n_a + n_b sites. Bonds joining an A site to a B site are scaled by
/// `cross_scale`; zero yields a non-interacting A,B pair.
Hamiltonian build_tfim(int n, double j, double h, const Bipartition &bipartition, double cross_scale = 1.0);

/// H = sum_{i<j} chi_ij (s+_i s-_j + s-_i s+_j) + onsite sum_i s+_i s-_i,
/// chi indexed by register qubit.
Hamiltonian build_padic_xy(const PadicCouplings &couplings, const Bipartition &bipartition);

/// Couplings for a p-adic chain living on the A qubits (chain site k is
/// a_qubits()[k]), with every B qubit attached to both A edge sites with
/// strength `bath_coupling`.
PadicCouplings padic_with_bath(int p, double s, bool periodic, const Bipartition &bipartition,
                               double bath_coupling);

/// H2 = H1 + V.
Hamiltonian build_perturbed(const Hamiltonian &h1, const Hamiltonian &v);

/// H_A (x) 1 + 1 (x) H_B placed on the bipartition's qubits.
Hamiltonian build_local(const ComplexMatrix &h_a, const ComplexMatrix &h_b, const Bipartition &bipartition);

}  // namespace projecho

#endif
