// Copyright 2026 The fhsim Authors
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

#include "fhsim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fhsim {

void Circuit::append_moment(std::vector<PlacedGate> gates) {
    if (gates.empty()) return;
    moments.push_back(Moment{std::move(gates)});
}

void Circuit::append(const Circuit& other) {
    if (other.n_qubits > n_qubits) n_qubits = other.n_qubits;
    moments.insert(moments.end(), other.moments.begin(), other.moments.end());
}

void Circuit::validate() const {
    for (const Moment& m : moments) {
        std::vector<bool> used(n_qubits, false);
        for (const PlacedGate& g : m.gates) {
            const int qs[2] = {g.q0, g.q1};
            const int nq = g.two_qubit() ? 2 : 1;
            for (int k = 0; k < nq; ++k) {
                const int q = qs[k];
                if (q < 0 || q >= n_qubits) throw std::invalid_argument("circuit: qubit out of range");
                if (used[q]) throw std::invalid_argument("circuit: qubit used twice in one moment");
                used[q] = true;
            }
            if (g.two_qubit() && g.q0 == g.q1) throw std::invalid_argument("circuit: q0 == q1");
        }
    }
}

namespace {

std::string format_params(const PlacedGate& g) {
    std::ostringstream os;
    os.precision(17);
    switch (g.kind) {
        case GateKind::X:
        case GateKind::ISWAP:
            return "";
        case GateKind::NATIVE:
            os << "(" << g.p0 << "," << g.p1 << ")";
            return os.str();
        default:
            os << "(" << g.p0 << ")";
            return os.str();
    }
}

GateKind parse_kind(const std::string& name) {
    if (name == "X") return GateKind::X;
    if (name == "RX") return GateKind::RX;
    if (name == "RZ") return GateKind::RZ;
    if (name == "K") return GateKind::K;
    if (name == "CPHASE") return GateKind::CPHASE;
    if (name == "G") return GateKind::GIVENS;
    if (name == "ISWAP") return GateKind::ISWAP;
    if (name == "NATIVE") return GateKind::NATIVE;
    throw std::invalid_argument("unknown gate name: " + name);
}

}  // namespace

std::string Circuit::to_text() const {
    std::ostringstream os;
    os << "# fhsim circuit v1 qubits=" << n_qubits << "\n";
    for (const Moment& m : moments) {
        bool first = true;
        for (const PlacedGate& g : m.gates) {
            if (!first) os << " ";
            first = false;
            os << gate_kind_name(g.kind) << format_params(g) << "@" << g.q0;
            if (g.two_qubit()) os << "," << g.q1;
        }
        os << "\n";
    }
    return os.str();
}

Circuit Circuit::from_text(const std::string& text) {
    Circuit c;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (const auto pos = line.find('#'); pos != std::string::npos) {
            if (!header_seen && line.find("qubits=") != std::string::npos) {
                c.n_qubits = std::stoi(line.substr(line.find("qubits=") + 7));
                header_seen = true;
            }
            line = line.substr(0, pos);
        }
        std::istringstream ls(line);
        std::string tok;
        Moment m;
        while (ls >> tok) {
            const auto at = tok.find('@');
            if (at == std::string::npos) throw std::invalid_argument("bad gate token: " + tok);
            std::string head = tok.substr(0, at);
            std::string qs = tok.substr(at + 1);
            PlacedGate g{};
            const auto paren = head.find('(');
            if (paren != std::string::npos) {
                if (head.back() != ')') throw std::invalid_argument("bad gate token: " + tok);
                std::string params = head.substr(paren + 1, head.size() - paren - 2);
                head = head.substr(0, paren);
                const auto comma = params.find(',');
                if (comma == std::string::npos) {
                    g.p0 = std::stod(params);
                } else {
                    g.p0 = std::stod(params.substr(0, comma));
                    g.p1 = std::stod(params.substr(comma + 1));
                }
            }
            g.kind = parse_kind(head);
            const auto qcomma = qs.find(',');
            if (qcomma == std::string::npos) {
                g.q0 = std::stoi(qs);
            } else {
                g.q0 = std::stoi(qs.substr(0, qcomma));
                g.q1 = std::stoi(qs.substr(qcomma + 1));
            }
            if (g.two_qubit() && g.q1 < 0) throw std::invalid_argument("two-qubit gate needs two qubits: " + tok);
            m.gates.push_back(g);
            c.n_qubits = std::max({c.n_qubits, g.q0 + 1, g.q1 + 1});
        }
        if (!m.gates.empty()) c.moments.push_back(std::move(m));
    }
    c.validate();
    return c;
}

GateCounts count_gates(const Circuit& c) {
    GateCounts gc;
    // depth/time: greedy per-qubit critical path. A native gate occupies a
    // 2-slot window (Z-prep + entangle, 32 ns); a microwave gate 1 slot
    // (25 ns); Rz gates ride along with the next slot on that qubit.
    std::vector<long> qubit_slot(c.n_qubits, 0);
    std::vector<double> qubit_time(c.n_qubits, 0.0);
    for (const Moment& m : c.moments) {
        for (const PlacedGate& g : m.gates) {
            switch (g.kind) {
                case GateKind::NATIVE: {
                    gc.two_qubit_native++;
                    const long s = std::max(qubit_slot[g.q0], qubit_slot[g.q1]) + 2;
                    qubit_slot[g.q0] = qubit_slot[g.q1] = s;
                    const double t = std::max(qubit_time[g.q0], qubit_time[g.q1]) + 32.0;
                    qubit_time[g.q0] = qubit_time[g.q1] = t;
                    break;
                }
                case GateKind::K:
                case GateKind::CPHASE:
                case GateKind::GIVENS:
                case GateKind::ISWAP: {
                    gc.two_qubit_logical++;
                    // logical gates count as their two-native expansion
                    const long s = std::max(qubit_slot[g.q0], qubit_slot[g.q1]) +
                                   (g.kind == GateKind::CPHASE ? 7 : 4);
                    qubit_slot[g.q0] = qubit_slot[g.q1] = s;
                    const double dt = (g.kind == GateKind::CPHASE ? 139.0 : 64.0);
                    const double t = std::max(qubit_time[g.q0], qubit_time[g.q1]) + dt;
                    qubit_time[g.q0] = qubit_time[g.q1] = t;
                    break;
                }
                case GateKind::X:
                case GateKind::RX:
                    gc.microwave++;
                    qubit_slot[g.q0] += 1;
                    qubit_time[g.q0] += 25.0;
                    break;
                case GateKind::RZ:
                    gc.rz++;
                    break;
            }
        }
    }
    for (int q = 0; q < c.n_qubits; ++q) {
        gc.depth_slots = std::max(gc.depth_slots, qubit_slot[q]);
        gc.circuit_time_ns = std::max(gc.circuit_time_ns, qubit_time[q]);
    }
    return gc;
}

void apply_circuit(const Circuit& c, StateVector& state) {
    for (const Moment& m : c.moments) {
        for (const PlacedGate& g : m.gates) {
            if (g.two_qubit())
                state.apply_2q(gates::gate_matrix_2q(g), g.q0, g.q1);
            else
                state.apply_1q(gates::gate_matrix_1q(g), g.q0);
        }
    }
}

Circuit compile_circuit(const Circuit& c, const gates::NativeGateParams& native, bool clamp_infeasible_cphase) {
    Circuit out;
    out.n_qubits = c.n_qubits;
    for (const Moment& m : c.moments) {
        // Expand every gate of the moment into frames, then emit frames in
        // lockstep so parallel logical gates stay parallel.
        std::vector<std::vector<std::vector<PlacedGate>>> expanded;  // per gate: frames
        std::size_t max_frames = 0;
        for (const PlacedGate& g : m.gates) {
            std::vector<std::vector<PlacedGate>> frames;
            switch (g.kind) {
                case GateKind::K:
                case GateKind::ISWAP:
                case GateKind::GIVENS: {
                    const double theta = (g.kind == GateKind::ISWAP) ? -M_PI / 2 : g.p0;
                    const auto plan = (g.kind == GateKind::GIVENS) ? gates::decompose_givens(theta, native)
                                                                   : gates::decompose_k(theta, native);
                    frames = plan.gate_sequence;
                    break;
                }
                case GateKind::CPHASE: {
                    const auto plan = clamp_infeasible_cphase ? gates::decompose_cphase_clamped(g.p0, native)
                                                              : gates::decompose_cphase(g.p0, native);
                    frames = plan.gate_sequence;
                    break;
                }
                default:
                    frames = {{g}};
                    break;
            }
            // Remap the plan's abstract qubits (0, 1) onto (g.q0, g.q1).
            if (g.two_qubit()) {
                for (auto& frame : frames)
                    for (PlacedGate& pg : frame) {
                        const int a = pg.q0 == 0 ? g.q0 : g.q1;
                        const int b = pg.two_qubit() ? (pg.q1 == 0 ? g.q0 : g.q1) : -1;
                        pg.q0 = a;
                        pg.q1 = b;
                    }
            }
            max_frames = std::max(max_frames, frames.size());
            expanded.push_back(std::move(frames));
        }
        for (std::size_t f = 0; f < max_frames; ++f) {
            Moment mm;
            for (const auto& frames : expanded)
                if (f < frames.size())
                    mm.gates.insert(mm.gates.end(), frames[f].begin(), frames[f].end());
            if (!mm.gates.empty()) out.moments.push_back(std::move(mm));
        }
    }
    out.validate();
    return out;
}

}  // namespace fhsim
