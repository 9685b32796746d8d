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


#include "rollnet/dense.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "rollnet/errors.hpp"

namespace rollnet {

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;
const cplx kI{0, 1};

std::size_t insert_bit(std::size_t x, std::size_t pos, std::size_t bit) {
    std::size_t low = x & ((std::size_t{1} << pos) - 1);
    return ((x >> pos) << (pos + 1)) | (bit << pos) | low;
}

void apply_on_bit(std::vector<cplx> &data, std::size_t bit, const Mat2 &u) {
    const std::size_t step = std::size_t{1} << bit;
    for (std::size_t base = 0; base < data.size(); base += 2 * step) {
        for (std::size_t k = base; k < base + step; ++k) {
            cplx a0 = data[k], a1 = data[k + step];
            data[k] = u[0] * a0 + u[1] * a1;
            data[k + step] = u[2] * a0 + u[3] * a1;
        }
    }
}

std::array<cplx, 2> eigenvector(Basis basis, Outcome outcome) {
    double s = outcome == Outcome::Plus ? 1.0 : -1.0;
    switch (basis) {
        case Basis::X:
            return {kSqrtHalf, s * kSqrtHalf};
        case Basis::Y:
            return {kSqrtHalf, s * kSqrtHalf * kI};
        case Basis::Z:
            break;
    }
    return outcome == Outcome::Plus ? std::array<cplx, 2>{1, 0} : std::array<cplx, 2>{0, 1};
}

std::size_t mask_of(const DenseState &s, const VertexSet &vs) {
    std::size_t m = 0;
    for (auto v : vs) m |= std::size_t{1} << s.position(v);
    return m;
}

int parity(std::size_t x) { return std::popcount(x) & 1; }

}  // namespace

DenseState::DenseState(Mode mode, std::vector<VertexId> qubits) : mode_(mode), qubits_(std::move(qubits)) {
    std::sort(qubits_.begin(), qubits_.end());
    auto cap = mode == Mode::Vector ? kMaxDenseQubits : kMaxDensityQubits;
    if (qubits_.size() > cap) {
        throw DomainError(fmt::format("dense state limited to {} qubits, got {}", cap, qubits_.size()));
    }
    data_.assign(mode == Mode::Vector ? dim() : dim() * dim(), cplx{0});
}

std::size_t DenseState::position(VertexId v) const {
    auto it = std::lower_bound(qubits_.begin(), qubits_.end(), v);
    if (it == qubits_.end() || *it != v) throw DomainError(fmt::format("qubit {} not in dense state", index(v)));
    return static_cast<std::size_t>(it - qubits_.begin());
}

double DenseState::weight() const {
    double w = 0;
    if (mode_ == Mode::Vector) {
        for (auto a : data_) w += std::norm(a);
    } else {
        for (std::size_t r = 0; r < dim(); ++r) w += data_[r * dim() + r].real();
    }
    return w;
}

DenseState DenseState::to_density() const {
    if (mode_ == Mode::Density) return *this;
    DenseState out(Mode::Density, qubits_);
    const auto d = dim();
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) out.data_[r * d + c] = data_[r] * std::conj(data_[c]);
    }
    return out;
}

void DenseState::apply(VertexId q, const Mat2 &u) {
    auto p = position(q);
    if (mode_ == Mode::Vector) {
        apply_on_bit(data_, p, u);
        return;
    }
    apply_on_bit(data_, p + num_qubits(), u);
    Mat2 uc{std::conj(u[0]), std::conj(u[1]), std::conj(u[2]), std::conj(u[3])};
    apply_on_bit(data_, p, uc);
}

void DenseState::apply_z_string(const VertexSet &support) {
    auto m = mask_of(*this, support);
    if (mode_ == Mode::Vector) {
        for (std::size_t r = 0; r < data_.size(); ++r) {
            if (parity(r & m)) data_[r] = -data_[r];
        }
        return;
    }
    const auto d = dim();
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            if (parity((r ^ c) & m)) data_[r * d + c] = -data_[r * d + c];
        }
    }
}

Mat2 correction_matrix(Correction c) {
    // exp(i s pi/4 P) = (I + i s P) / sqrt(2)
    const double h = kSqrtHalf;
    switch (c) {
        case Correction::Z:
            return {1, 0, 0, -1};
        case Correction::RotZPos:
            return {h * (1.0 + kI), 0, 0, h * (1.0 - kI)};
        case Correction::RotZNeg:
            return {h * (1.0 - kI), 0, 0, h * (1.0 + kI)};
        case Correction::RotYPos:  // i*Y = [[0,1],[-1,0]]
            return {h, h, -h, h};
        case Correction::RotYNeg:
            return {h, -h, h, h};
    }
    throw InternalError("unknown correction");
}

DenseState dense_graph_state(const Graph &g) {
    DenseState s(DenseState::Mode::Vector, g.live().to_vector());
    const auto d = s.dim();
    std::vector<std::size_t> masks;
    for (auto [u, v] : g.edges()) masks.push_back((std::size_t{1} << s.position(u)) | (std::size_t{1} << s.position(v)));
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t r = 0; r < d; ++r) {
        int sign = 0;
        for (auto m : masks) sign ^= (r & m) == m ? 1 : 0;
        s.data()[r] = sign ? -amp : amp;
    }
    return s;
}

DenseState apply_channel(DenseState s, const NoiseMap &m) {
    if (s.mode() != DenseState::Mode::Density) throw DomainError("apply_channel needs a density-mode state");
    const auto d = s.dim();
    std::vector<double> factor(d, 0.0);
    for (const auto &b : m.branches) {
        auto mask = mask_of(s, b.support);
        for (std::size_t x = 0; x < d; ++x) factor[x] += parity(x & mask) ? -b.probability : b.probability;
    }
    auto &data = s.data();
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) data[r * d + c] *= factor[r ^ c];
    }
    return s;
}

DenseMeasurement measure_dense(const DenseState &s, VertexId a, Basis basis, Outcome outcome,
                               const std::vector<CorrectionOp> &corrections) {
    const auto p = s.position(a);
    const auto v = eigenvector(basis, outcome);
    const cplx v0 = std::conj(v[0]), v1 = std::conj(v[1]);
    auto rest = s.qubits();
    rest.erase(rest.begin() + static_cast<long>(p));
    DenseState out(s.mode(), rest);
    const auto nd = out.dim();
    const auto &in = s.data();
    auto &od = out.data();
    if (s.mode() == DenseState::Mode::Vector) {
        for (std::size_t r = 0; r < nd; ++r) od[r] = v0 * in[insert_bit(r, p, 0)] + v1 * in[insert_bit(r, p, 1)];
    } else {
        const auto d = s.dim();
        const cplx w[2] = {v0, v1};
        const cplx wc[2] = {v[0], v[1]};
        for (std::size_t r = 0; r < nd; ++r) {
            for (std::size_t c = 0; c < nd; ++c) {
                cplx acc = 0;
                for (std::size_t b = 0; b < 2; ++b) {
                    for (std::size_t bc = 0; bc < 2; ++bc) {
                        acc += w[b] * wc[bc] * in[insert_bit(r, p, b) * d + insert_bit(c, p, bc)];
                    }
                }
                od[r * nd + c] = acc;
            }
        }
    }
    DenseMeasurement res;
    res.probability = out.weight();
    if (res.probability < 1e-12) return res;
    if (out.mode() == DenseState::Mode::Vector) {
        double norm = std::sqrt(res.probability);
        for (auto &x : od) x /= norm;
    } else {
        for (auto &x : od) x /= res.probability;
    }
    for (const auto &c : corrections) out.apply(c.qubit, correction_matrix(c.tag));
    res.state = std::move(out);
    return res;
}

DenseState measure_dense_averaged(const DenseState &s, const Graph &g, const MeasurementStep &m) {
    if (s.mode() != DenseState::Mode::Density) throw DomainError("averaged measurement needs a density-mode state");
    std::optional<DenseState> acc;
    for (auto o : {Outcome::Plus, Outcome::Minus}) {
        auto corr = corrections_for(g, m.qubit, m.basis, m.support, o);
        auto r = measure_dense(s, m.qubit, m.basis, o, corr);
        if (!r.state) continue;
        for (auto &x : r.state->data()) x *= r.probability;
        if (!acc) {
            acc = std::move(r.state);
        } else {
            auto &ad = acc->data();
            const auto &rd = r.state->data();
            for (std::size_t k = 0; k < ad.size(); ++k) ad[k] += rd[k];
        }
    }
    if (!acc) throw InternalError("measurement with no possible outcome");
    return std::move(*acc);
}

double expectation(const DenseState &s, const PauliString &p) {
    auto xm = mask_of(s, p.x);
    auto zm = mask_of(s, p.z);
    static const cplx kPow[4] = {1, kI, -1, -kI};
    const cplx ph = kPow[p.phase % 4];
    const auto d = s.dim();
    const auto &a = s.data();
    cplx acc = 0;
    for (std::size_t r = 0; r < d; ++r) {
        cplx coef = ph * (parity(r & zm) ? -1.0 : 1.0);  // P|r> = coef |r^x>
        if (s.mode() == DenseState::Mode::Vector) {
            acc += std::conj(a[r ^ xm]) * coef * a[r];
        } else {
            acc += coef * a[r * d + (r ^ xm)];
        }
    }
    return acc.real();
}

double overlap_abs(const DenseState &a, const DenseState &b) {
    if (a.mode() != DenseState::Mode::Vector || b.mode() != DenseState::Mode::Vector || a.qubits() != b.qubits()) {
        throw DomainError("overlap_abs needs vector states on the same qubits");
    }
    cplx acc = 0;
    for (std::size_t k = 0; k < a.data().size(); ++k) acc += std::conj(a.data()[k]) * b.data()[k];
    return std::abs(acc);
}

double dense_fidelity(const DenseState &s, const Graph &g, const VertexSet &targets) {
    auto gt = dense_graph_state(g.induced(targets));
    const auto &tq = gt.qubits();
    const auto k = tq.size();
    std::vector<std::size_t> tpos, rpos;
    for (auto v : tq) tpos.push_back(s.position(v));
    for (std::size_t i = 0; i < s.num_qubits(); ++i) {
        if (!targets.contains(s.qubits()[i])) rpos.push_back(i);
    }
    auto scatter = [](std::size_t x, const std::vector<std::size_t> &pos) {
        std::size_t out = 0;
        for (std::size_t j = 0; j < pos.size(); ++j) {
            if ((x >> j) & 1U) out |= std::size_t{1} << pos[j];
        }
        return out;
    };
    const std::size_t tk = std::size_t{1} << k;
    const std::size_t rk = std::size_t{1} << rpos.size();
    std::vector<std::size_t> toff(tk);
    for (std::size_t t = 0; t < tk; ++t) toff[t] = scatter(t, tpos);
    const auto &gv = gt.data();
    const auto &a = s.data();
    const auto d = s.dim();
    double f = 0;
    for (std::size_t rr = 0; rr < rk; ++rr) {
        auto roff = scatter(rr, rpos);
        if (s.mode() == DenseState::Mode::Vector) {
            cplx amp = 0;
            for (std::size_t t = 0; t < tk; ++t) amp += std::conj(gv[t]) * a[toff[t] | roff];
            f += std::norm(amp);
        } else {
            cplx acc = 0;
            for (std::size_t t = 0; t < tk; ++t) {
                for (std::size_t u = 0; u < tk; ++u) {
                    acc += std::conj(gv[t]) * a[(toff[t] | roff) * d + (toff[u] | roff)] * gv[u];
                }
            }
            f += acc.real();
        }
    }
    return f;
}

DenseFidelities dense_pipeline_density(const Graph &g, const std::vector<NoiseMap> &maps,
                                       const std::vector<MeasurementStep> &seq, const std::vector<VertexSet> &targets) {
    auto s = dense_graph_state(g).to_density();
    for (const auto &m : maps) s = apply_channel(std::move(s), m);
    Graph cur = g;
    for (const auto &m : seq) {
        s = measure_dense_averaged(s, cur, m);
        cur = measured_graph(cur, m.qubit, m.basis, m.support);
    }
    DenseFidelities out{targets, {}};
    for (const auto &t : targets) out.fidelity.push_back(dense_fidelity(s, cur, t));
    return out;
}

DenseFidelities dense_pipeline_branches(const Graph &g, const std::vector<NoiseMap> &maps,
                                        const std::vector<MeasurementStep> &seq,
                                        const std::vector<VertexSet> &targets) {
    auto base = dense_graph_state(g);
    // Fold every map into one distribution over Z patterns on the initial qubits.
    std::map<std::size_t, double> patterns{{0, 1.0}};
    for (const auto &m : maps) {
        std::map<std::size_t, double> next;
        for (const auto &b : m.branches) {
            auto bm = mask_of(base, b.support);
            for (auto [x, w] : patterns) next[x ^ bm] += w * b.probability;
        }
        patterns.swap(next);
    }
    std::vector<Graph> graphs{g};
    std::vector<std::vector<std::vector<CorrectionOp>>> corr;
    for (const auto &m : seq) {
        const auto &cur = graphs.back();
        corr.push_back({corrections_for(cur, m.qubit, m.basis, m.support, Outcome::Plus),
                        corrections_for(cur, m.qubit, m.basis, m.support, Outcome::Minus)});
        graphs.push_back(measured_graph(cur, m.qubit, m.basis, m.support));
    }
    DenseFidelities out{targets, std::vector<double>(targets.size(), 0.0)};
    for (auto [mask, w] : patterns) {
        if (w == 0.0) continue;
        DenseState psi = base;
        for (std::size_t r = 0; r < psi.dim(); ++r) {
            if (parity(r & mask)) psi.data()[r] = -psi.data()[r];
        }
        std::vector<std::pair<double, DenseState>> paths{{w, std::move(psi)}};
        for (std::size_t k = 0; k < seq.size(); ++k) {
            std::vector<std::pair<double, DenseState>> next;
            for (auto &[pw, st] : paths) {
                for (int o = 0; o < 2; ++o) {
                    auto outcome = o == 0 ? Outcome::Plus : Outcome::Minus;
                    auto r = measure_dense(st, seq[k].qubit, seq[k].basis, outcome, corr[k][o]);
                    if (r.state) next.emplace_back(pw * r.probability, std::move(*r.state));
                }
            }
            paths.swap(next);
        }
        for (const auto &[pw, st] : paths) {
            for (std::size_t t = 0; t < targets.size(); ++t) {
                out.fidelity[t] += pw * dense_fidelity(st, graphs.back(), targets[t]);
            }
        }
    }
    return out;
}

}  // namespace rollnet
