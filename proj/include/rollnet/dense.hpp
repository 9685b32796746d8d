// Copyright 2026 The rollnet Authors
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


#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "rollnet/graph.hpp"
#include "rollnet/measurement.hpp"
#include "rollnet/nsf.hpp"
#include "rollnet/pauli.hpp"

namespace rollnet {

using cplx = std::complex<double>;
using Mat2 = std::array<cplx, 4>;  // row-major

constexpr std::size_t kMaxDenseQubits = 12;
constexpr std::size_t kMaxDensityQubits = 11;

/// Brute-force state on at most 12 qubits. Bit i of a basis index belongs
/// to qubits[i]; qubits are kept in increasing id order. In density mode
/// entry (r, c) lives at r * dim + c.
class DenseState {
   public:
    enum class Mode { Vector, Density };

    DenseState() = default;
    DenseState(Mode mode, std::vector<VertexId> qubits);

    Mode mode() const { return mode_; }
    const std::vector<VertexId> &qubits() const { return qubits_; }
    std::size_t num_qubits() const { return qubits_.size(); }
    std::size_t dim() const { return std::size_t{1} << qubits_.size(); }
    std::size_t position(VertexId v) const;

    std::vector<cplx> &data() { return data_; }
    const std::vector<cplx> &data() const { return data_; }

    /// Squared norm (vector) or trace (density).
    double weight() const;
    DenseState to_density() const;

    void apply(VertexId q, const Mat2 &u);
    void apply_z_string(const VertexSet &support);

   private:
    Mode mode_ = Mode::Vector;
    std::vector<VertexId> qubits_;
    std::vector<cplx> data_;
};

Mat2 correction_matrix(Correction c);

DenseState dense_graph_state(const Graph &g);

/// Density mode only.
DenseState apply_channel(DenseState s, const NoiseMap &m);

struct DenseMeasurement {
    double probability = 0;
    std::optional<DenseState> state;  // empty when the outcome cannot occur
};

/// Projects qubit a onto the outcome's eigenvector, renormalizes, applies the
/// corrections and removes a.
DenseMeasurement measure_dense(const DenseState &s, VertexId a, Basis basis, Outcome outcome,
                               const std::vector<CorrectionOp> &corrections);

/// Density mode: sum over both outcomes of the corrected, unnormalized
/// post-measurement states, with corrections from the graph-state rules on g.
DenseState measure_dense_averaged(const DenseState &s, const Graph &g, const MeasurementStep &m);

/// <psi|P|psi> or tr(P rho); imaginary part dropped.
double expectation(const DenseState &s, const PauliString &p);

/// |<a|b>| for vector states on the same qubits.
double overlap_abs(const DenseState &a, const DenseState &b);

/// <G_T| rho_T |G_T> where G_T is the graph state of g induced on targets and
/// rho_T the reduced state of s.
double dense_fidelity(const DenseState &s, const Graph &g, const VertexSet &targets);

struct DenseFidelities {
    std::vector<VertexSet> targets;
    std::vector<double> fidelity;
};

/// Full noisy pipeline on the density matrix: channels on the initial graph
/// state, then every measurement averaged over outcomes with corrections.
DenseFidelities dense_pipeline_density(const Graph &g, const std::vector<NoiseMap> &maps,
                                       const std::vector<MeasurementStep> &seq, const std::vector<VertexSet> &targets);

/// Same result from state vectors: the maps are folded into one distribution
/// over Z-error patterns, and every pattern is run through every outcome path.
DenseFidelities dense_pipeline_branches(const Graph &g, const std::vector<NoiseMap> &maps,
                                        const std::vector<MeasurementStep> &seq,
                                        const std::vector<VertexSet> &targets);

}  // namespace rollnet
