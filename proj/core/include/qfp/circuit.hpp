#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qfp/coeffgen.hpp"

namespace qfp {

enum class GateKind { H, RY, RZ, Phase, CX, CRY, MCRY };

const char* to_string(GateKind k);

// One gate on a fixed qubit line. Controls are ordered; pattern holds the
// required basis value per control (1 = |1>, 0 = |0>). CX carries one
// control with pattern 1. Angle is radians, 0 for H/CX.
struct Gate {
  GateKind kind = GateKind::H;
  int target = 0;
  std::vector<int> controls;
  std::vector<std::uint8_t> pattern;
  double angle = 0.0;

  bool operator==(const Gate&) const = default;
};

Gate make_h(int target);
Gate make_ry(int target, double angle);
Gate make_rz(int target, double angle);
Gate make_phase(int target, double angle);
Gate make_cx(int control, int target);
Gate make_cry(int control, int target, double angle, bool polarity = true);
Gate make_mcry(std::span<const int> controls, std::span<const std::uint8_t> pattern, int target,
               double angle);

struct CircuitMeta {
  std::int64_t p = 0;
  std::int64_t x = 0;                 // word exponent baked into the angles
  std::string construction;           // "deep", "shallow", "aikps", ...
  int padded = 0;                     // coefficients repeated to reach a power of two
  int truncation = 0;                 // extra multipliers realized beyond |S| (aikps)
  std::int64_t letters = 0;           // per-letter repetition count; 0 = collapsed
  bool includes_inverse_prep = false; // final H layer already part of the circuit
};

// Layered circuit: gates within a layer act on disjoint qubits, depth is
// the layer count, width the qubit count. Convention: qubits 0..n-2 are
// the control register, qubit n-1 is the rotation target.
struct Circuit {
  int num_qubits = 0;
  std::vector<std::vector<Gate>> layers;
  CircuitMeta metadata;

  int depth() const { return static_cast<int>(layers.size()); }
};

// Throws PreconditionError on overlapping gates within a layer or
// out-of-range qubit indices.
void validate(const Circuit& c);

// Fig-1-style construction: one Hadamard layer on m controls, then one
// MCRY per coefficient, control pattern = binary string of the
// coefficient index. |K| is padded to a power of two by repeating the
// last coefficient (recorded in metadata.padded).
Circuit build_deep(const CoefficientSet& K, std::int64_t x);

// Fig-2-style construction: Hadamards, one CRY per generator (control j
// to the target), and a final unconditional RY for the offset.
// Depth m + 2.
Circuit build_shallow(const ParamVector& params, std::int64_t x);

// Blocks C_j per small prime r_j: binary-weighted controlled rotations
// 2^(k-1) * 4 pi r_j^{-1} x / p plus one unconditional rotation, all
// sharing one Hadamard layer. Block depth w = ceil((1+2 eps) log2 log2 p) + 1.
Circuit build_aikps(const Prime& p, double eps, std::int64_t x);

// Rewrites {H, RY, CRY, CX} circuits into {H, RZ, Phase, CX}: RY by basis
// conjugation, CRY by the standard two-CX controlled-rotation form.
// Statevector preserved up to global phase.
Circuit transpile_ry_to_rz(const Circuit& c);

// Expands every MCRY into CRY/RY/CX (recursive half-angle form; control
// polarities folded into rotation signs). Needed before noisy simulation.
Circuit decompose_multicontrolled(const Circuit& c);

// CX count on a linear chain under the given layout (layout[logical] =
// chain position, a permutation). CRY costs 2 CX; routing moves the
// rotation target with swaps at 3 CX, or 1 when the swap immediately
// follows a CX on the same pair (CX * SWAP = 2 CX). Complete MCRY
// multiplexor runs are counted via their Gray-code CX sequence with
// ladder costs for long-range pairs.
std::int64_t nn_cx_count(const Circuit& c, std::span<const int> layout);

// Minimum nn_cx_count over all layouts (<= 9 qubits); over a fixed
// candidate family for wider circuits.
std::int64_t best_nn_cx_count(const Circuit& c);

struct CircuitMetrics {
  int depth = 0;
  int width = 0;
  int rotation_depth = 0;  // layers containing at least one rotation gate
  std::map<GateKind, int> gate_counts;
};

CircuitMetrics metrics(const Circuit& c);

// Line-oriented text format: `KIND target [controls...] angle`, one gate
// per line, layers separated by `---`. Negative-polarity controls carry a
// '!' prefix. Round-trips exactly (angles printed with %.17g).
std::string to_text(const Circuit& c);
Circuit circuit_from_text(std::string_view text);

}  // namespace qfp
