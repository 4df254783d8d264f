#include "qfp/circuit.hpp"

#include <numbers>

namespace qfp {

namespace {

// Greedy ASAP re-layering of a flat gate sequence.
Circuit pack(int num_qubits, CircuitMeta meta, const std::vector<Gate>& seq) {
  Circuit c;
  c.num_qubits = num_qubits;
  c.metadata = std::move(meta);
  std::vector<std::size_t> frontier(static_cast<std::size_t>(num_qubits), 0);
  for (const Gate& g : seq) {
    std::size_t idx = frontier[static_cast<std::size_t>(g.target)];
    for (int q : g.controls) idx = std::max(idx, frontier[static_cast<std::size_t>(q)]);
    if (idx == c.layers.size()) c.layers.emplace_back();
    c.layers[idx].push_back(g);
    frontier[static_cast<std::size_t>(g.target)] = idx + 1;
    for (int q : g.controls) frontier[static_cast<std::size_t>(q)] = idx + 1;
  }
  return c;
}

void emit_ry_as_rz(int target, double angle, std::vector<Gate>& out) {
  if (angle == 0.0) return;
  // RY(a) = S H RZ(a) H S^dagger, applied right to left.
  const double half_pi = std::numbers::pi / 2.0;
  out.push_back(make_phase(target, -half_pi));
  out.push_back(make_h(target));
  out.push_back(make_rz(target, angle));
  out.push_back(make_h(target));
  out.push_back(make_phase(target, half_pi));
}

void emit_cry_as_rz(int control, int target, double angle, bool polarity, std::vector<Gate>& out) {
  if (angle == 0.0) return;
  if (!polarity) {
    // Control-on-zero: run the control-on-one form with the opposite
    // angle, then rotate unconditionally.
    emit_cry_as_rz(control, target, -angle, true, out);
    emit_ry_as_rz(target, angle, out);
    return;
  }
  // CRY(a) = RY(a/2) CX RY(-a/2) CX; exactly two CX survive.
  out.push_back(make_cx(control, target));
  emit_ry_as_rz(target, -angle / 2.0, out);
  out.push_back(make_cx(control, target));
  emit_ry_as_rz(target, angle / 2.0, out);
}

void emit_mcry_decomposed(double angle, std::span<const int> controls,
                          std::span<const std::uint8_t> pattern, int target,
                          std::vector<Gate>& out) {
  if (controls.empty()) {
    if (angle != 0.0) out.push_back(make_ry(target, angle));
    return;
  }
  const int last = controls.back();
  const bool polarity = pattern.back() != 0;
  const auto rest_c = controls.first(controls.size() - 1);
  const auto rest_p = pattern.first(pattern.size() - 1);
  // Half-angle ladder; a control-on-zero flips the second half's sign
  // instead of conjugating with X.
  emit_mcry_decomposed(angle / 2.0, rest_c, rest_p, target, out);
  out.push_back(make_cx(last, target));
  emit_mcry_decomposed(polarity ? -angle / 2.0 : angle / 2.0, rest_c, rest_p, target, out);
  out.push_back(make_cx(last, target));
}

}  // namespace

Circuit transpile_ry_to_rz(const Circuit& c) {
  std::vector<Gate> seq;
  for (const auto& layer : c.layers) {
    for (const Gate& g : layer) {
      switch (g.kind) {
        case GateKind::H:
        case GateKind::CX:
          seq.push_back(g);
          break;
        case GateKind::RY:
          emit_ry_as_rz(g.target, g.angle, seq);
          break;
        case GateKind::CRY:
          emit_cry_as_rz(g.controls[0], g.target, g.angle, g.pattern[0] != 0, seq);
          break;
        default:
          throw PreconditionError(std::string("unsupported gate kind for rz transpilation: ") +
                                  to_string(g.kind));
      }
    }
  }
  CircuitMeta meta = c.metadata;
  meta.construction += "+rz";
  return pack(c.num_qubits, std::move(meta), seq);
}

Circuit decompose_multicontrolled(const Circuit& c) {
  std::vector<Gate> seq;
  for (const auto& layer : c.layers) {
    for (const Gate& g : layer) {
      if (g.kind == GateKind::MCRY) {
        emit_mcry_decomposed(g.angle, g.controls, g.pattern, g.target, seq);
      } else {
        seq.push_back(g);
      }
    }
  }
  return pack(c.num_qubits, c.metadata, seq);
}

}  // namespace qfp
