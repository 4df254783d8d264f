#include "qfp/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qfp/rng.hpp"

namespace qfp {

namespace {

using cd = std::complex<double>;

constexpr int kMaxPureQubits = 24;
constexpr int kMaxNoisyQubits = 12;

void gate_matrix(const Gate& g, cd u[2][2]) {
  switch (g.kind) {
    case GateKind::H: {
      const double s = 1.0 / std::sqrt(2.0);
      u[0][0] = s; u[0][1] = s;
      u[1][0] = s; u[1][1] = -s;
      return;
    }
    case GateKind::RY:
    case GateKind::CRY:
    case GateKind::MCRY: {
      const double c = std::cos(g.angle / 2.0);
      const double s = std::sin(g.angle / 2.0);
      u[0][0] = c; u[0][1] = -s;
      u[1][0] = s; u[1][1] = c;
      return;
    }
    case GateKind::RZ: {
      u[0][0] = std::polar(1.0, -g.angle / 2.0); u[0][1] = 0.0;
      u[1][0] = 0.0; u[1][1] = std::polar(1.0, g.angle / 2.0);
      return;
    }
    case GateKind::Phase: {
      u[0][0] = 1.0; u[0][1] = 0.0;
      u[1][0] = 0.0; u[1][1] = std::polar(1.0, g.angle);
      return;
    }
    case GateKind::CX: {
      u[0][0] = 0.0; u[0][1] = 1.0;
      u[1][0] = 1.0; u[1][1] = 0.0;
      return;
    }
  }
}

void control_masks(const Gate& g, std::uint64_t& mask, std::uint64_t& val) {
  mask = 0;
  val = 0;
  for (std::size_t i = 0; i < g.controls.size(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << g.controls[i];
    mask |= bit;
    if (g.pattern[i]) val |= bit;
  }
}

}  // namespace

StateVector::StateVector(int num_qubits) : n_(num_qubits) {
  amp_.assign(std::size_t{1} << n_, cd(0.0, 0.0));
  amp_[0] = cd(1.0, 0.0);
}

void StateVector::apply_1q(const cd u[2][2], int q) {
  const std::uint64_t tbit = std::uint64_t{1} << q;
  const std::uint64_t size = amp_.size();
  for (std::uint64_t i = 0; i < size; ++i) {
    if (i & tbit) continue;
    const cd a0 = amp_[i];
    const cd a1 = amp_[i | tbit];
    amp_[i] = u[0][0] * a0 + u[0][1] * a1;
    amp_[i | tbit] = u[1][0] * a0 + u[1][1] * a1;
  }
}

void StateVector::apply(const Gate& g) {
  cd u[2][2];
  gate_matrix(g, u);
  if (g.controls.empty()) {
    apply_1q(u, g.target);
    return;
  }
  std::uint64_t cmask, cval;
  control_masks(g, cmask, cval);
  const std::uint64_t tbit = std::uint64_t{1} << g.target;
  const std::uint64_t size = amp_.size();
  for (std::uint64_t i = 0; i < size; ++i) {
    if ((i & tbit) || (i & cmask) != cval) continue;
    const cd a0 = amp_[i];
    const cd a1 = amp_[i | tbit];
    amp_[i] = u[0][0] * a0 + u[0][1] * a1;
    amp_[i | tbit] = u[1][0] * a0 + u[1][1] * a1;
  }
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const cd& a : amp_) s += std::norm(a);
  return s;
}

DensityMatrix::DensityMatrix(int num_qubits) : n_(num_qubits), dim_(std::size_t{1} << num_qubits) {
  rho_.assign(dim_ * dim_, cd(0.0, 0.0));
  rho_[0] = cd(1.0, 0.0);
}

void DensityMatrix::left_apply_1q(const cd u[2][2], int q, std::uint64_t cmask, std::uint64_t cval) {
  const std::uint64_t tbit = std::uint64_t{1} << q;
  for (std::uint64_t r = 0; r < dim_; ++r) {
    if ((r & tbit) || (r & cmask) != cval) continue;
    cd* row0 = rho_.data() + r * dim_;
    cd* row1 = rho_.data() + (r | tbit) * dim_;
    for (std::size_t c = 0; c < dim_; ++c) {
      const cd a0 = row0[c];
      const cd a1 = row1[c];
      row0[c] = u[0][0] * a0 + u[0][1] * a1;
      row1[c] = u[1][0] * a0 + u[1][1] * a1;
    }
  }
}

void DensityMatrix::right_apply_1q(const cd u[2][2], int q, std::uint64_t cmask, std::uint64_t cval) {
  const std::uint64_t tbit = std::uint64_t{1} << q;
  for (std::uint64_t r = 0; r < dim_; ++r) {
    cd* row = rho_.data() + r * dim_;
    for (std::uint64_t c = 0; c < dim_; ++c) {
      if ((c & tbit) || (c & cmask) != cval) continue;
      const cd a0 = row[c];
      const cd a1 = row[c | tbit];
      row[c] = a0 * std::conj(u[0][0]) + a1 * std::conj(u[0][1]);
      row[c | tbit] = a0 * std::conj(u[1][0]) + a1 * std::conj(u[1][1]);
    }
  }
}

void DensityMatrix::apply_unitary(const Gate& g) {
  cd u[2][2];
  gate_matrix(g, u);
  std::uint64_t cmask = 0, cval = 0;
  if (!g.controls.empty()) control_masks(g, cmask, cval);
  left_apply_1q(u, g.target, cmask, cval);
  right_apply_1q(u, g.target, cmask, cval);
}

void DensityMatrix::depolarize_1q(int q, double prob) {
  if (prob == 0.0) return;
  const std::uint64_t tbit = std::uint64_t{1} << q;
  const double keep = 1.0 - 4.0 * prob / 3.0;
  const double mixw = 2.0 * prob / 3.0;  // applied to the block trace
  for (std::uint64_t r = 0; r < dim_; ++r) {
    if (r & tbit) continue;
    for (std::uint64_t c = 0; c < dim_; ++c) {
      if (c & tbit) continue;
      cd& b00 = rho_[r * dim_ + c];
      cd& b01 = rho_[r * dim_ + (c | tbit)];
      cd& b10 = rho_[(r | tbit) * dim_ + c];
      cd& b11 = rho_[(r | tbit) * dim_ + (c | tbit)];
      const cd t = (b00 + b11) * mixw;
      b00 = keep * b00 + t;
      b11 = keep * b11 + t;
      b01 *= keep;
      b10 *= keep;
    }
  }
}

void DensityMatrix::depolarize_2q(int q1, int q2, double prob) {
  if (prob == 0.0) return;
  const std::uint64_t b1 = std::uint64_t{1} << q1;
  const std::uint64_t b2 = std::uint64_t{1} << q2;
  const std::uint64_t both = b1 | b2;
  const double keep = 1.0 - 16.0 * prob / 15.0;
  const double mixw = 4.0 * prob / 15.0;  // applied to the block trace
  const std::uint64_t sub[4] = {0, b1, b2, both};
  for (std::uint64_t r = 0; r < dim_; ++r) {
    if (r & both) continue;
    for (std::uint64_t c = 0; c < dim_; ++c) {
      if (c & both) continue;
      cd trace(0.0, 0.0);
      for (const std::uint64_t s : sub) trace += rho_[(r | s) * dim_ + (c | s)];
      const cd t = trace * mixw;
      for (const std::uint64_t sr : sub) {
        for (const std::uint64_t sc : sub) {
          cd& cell = rho_[(r | sr) * dim_ + (c | sc)];
          cell *= keep;
          if (sr == sc) cell += t;
        }
      }
    }
  }
}

void DensityMatrix::symmetrize() {
  for (std::uint64_t r = 0; r < dim_; ++r) {
    for (std::uint64_t c = r; c < dim_; ++c) {
      const cd a = rho_[r * dim_ + c];
      const cd b = rho_[c * dim_ + r];
      const cd avg = 0.5 * (a + std::conj(b));
      rho_[r * dim_ + c] = avg;
      rho_[c * dim_ + r] = std::conj(avg);
    }
  }
}

double DensityMatrix::trace_real() const {
  double t = 0.0;
  for (std::uint64_t r = 0; r < dim_; ++r) t += rho_[r * dim_ + r].real();
  return t;
}

double DensityMatrix::accept_probability(double p_meas) const {
  double total = 0.0;
  for (std::uint64_t b = 0; b < dim_; ++b) {
    double w = 1.0;
    for (int q = 0; q < n_; ++q) {
      w *= (b >> q) & 1 ? p_meas : 1.0 - p_meas;
    }
    total += rho_[b * dim_ + b].real() * w;
  }
  return total;
}

namespace {

void check_pure_budget(const Circuit& c) {
  if (c.num_qubits < 1 || c.num_qubits > kMaxPureQubits) {
    throw PreconditionError("statevector simulation limited to 24 qubits");
  }
}

void apply_gate_noisy(DensityMatrix& dm, const Gate& g, const NoiseModel& nm) {
  dm.apply_unitary(g);
  switch (g.kind) {
    case GateKind::H:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::Phase:
      dm.depolarize_1q(g.target, nm.p1);
      break;
    case GateKind::CX:
    case GateKind::CRY:
      dm.depolarize_2q(g.controls[0], g.target, nm.p2);
      break;
    case GateKind::MCRY:
      throw PreconditionError("decompose first: MCRY has no noise rule");
  }
  dm.symmetrize();
}

// Flat per-letter gate block (x = 1 angles) for either construction.
std::vector<Gate> letter_block(const ParamVector& params) {
  Circuit one = build_shallow(params, 1);
  std::vector<Gate> out;
  for (std::size_t l = 1; l < one.layers.size(); ++l) {
    for (const Gate& g : one.layers[l]) out.push_back(g);
  }
  return out;
}

std::vector<Gate> letter_block(const CoefficientSet& K) {
  Circuit one = decompose_multicontrolled(build_deep(K, 1));
  std::vector<Gate> out;
  for (std::size_t l = 1; l < one.layers.size(); ++l) {
    for (const Gate& g : one.layers[l]) out.push_back(g);
  }
  return out;
}

Circuit assemble_per_letter(int num_qubits, const std::vector<std::vector<Gate>>& block_layers,
                            std::int64_t length, CircuitMeta meta) {
  Circuit c;
  c.num_qubits = num_qubits;
  c.metadata = std::move(meta);
  std::vector<Gate> hs;
  for (int q = 0; q + 1 < num_qubits; ++q) hs.push_back(make_h(q));
  c.layers.push_back(hs);
  for (std::int64_t i = 0; i < length; ++i) {
    for (const auto& layer : block_layers) c.layers.push_back(layer);
  }
  c.layers.push_back(hs);
  return c;
}

std::vector<double> noisy_profile_impl(int num_qubits, const std::vector<Gate>& block,
                                       std::int64_t max_length, const NoiseModel& nm) {
  if (num_qubits > kMaxNoisyQubits) {
    throw PreconditionError("density-matrix simulation limited to 12 qubits");
  }
  DensityMatrix dm(num_qubits);
  for (int q = 0; q + 1 < num_qubits; ++q) apply_gate_noisy(dm, make_h(q), nm);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(max_length));
  for (std::int64_t i = 1; i <= max_length; ++i) {
    for (const Gate& g : block) apply_gate_noisy(dm, g, nm);
    DensityMatrix probe = dm;
    for (int q = 0; q + 1 < num_qubits; ++q) apply_gate_noisy(probe, make_h(q), nm);
    out.push_back(probe.accept_probability(nm.p_meas));
  }
  return out;
}

}  // namespace

StateVector run_pure(const Circuit& c) {
  check_pure_budget(c);
  StateVector sv(c.num_qubits);
  for (const auto& layer : c.layers) {
    for (const Gate& g : layer) sv.apply(g);
  }
  return sv;
}

double accept_probability_pure(const Circuit& c) {
  StateVector sv = run_pure(c);
  if (!c.metadata.includes_inverse_prep) {
    for (int q = 0; q + 1 < c.num_qubits; ++q) sv.apply(make_h(q));
  }
  return std::norm(sv.amplitudes()[0]);
}

DensityMatrix run_noisy(const Circuit& c, const NoiseModel& nm) {
  if (c.num_qubits < 1 || c.num_qubits > kMaxNoisyQubits) {
    throw PreconditionError("density-matrix simulation limited to 12 qubits");
  }
  for (const auto& layer : c.layers) {
    for (const Gate& g : layer) {
      if (g.kind == GateKind::MCRY) {
        throw PreconditionError("decompose first: MCRY has no noise rule");
      }
    }
  }
  DensityMatrix dm(c.num_qubits);
  for (const auto& layer : c.layers) {
    for (const Gate& g : layer) apply_gate_noisy(dm, g, nm);
  }
  return dm;
}

double accept_probability_noisy(const Circuit& c, const NoiseModel& nm) {
  DensityMatrix dm = run_noisy(c, nm);
  if (!c.metadata.includes_inverse_prep) {
    for (int q = 0; q + 1 < c.num_qubits; ++q) apply_gate_noisy(dm, make_h(q), nm);
  }
  return dm.accept_probability(nm.p_meas);
}

Circuit build_word_circuit(const ParamVector& params, std::int64_t length, WordStyle style) {
  if (length < 0) throw PreconditionError("word length must be >= 0");
  if (style == WordStyle::collapsed) return build_shallow(params, length);
  Circuit one = build_shallow(params, 1);
  std::vector<std::vector<Gate>> block(one.layers.begin() + 1, one.layers.end());
  CircuitMeta meta{params.p.value(), length, "shallow_letters", 0, 0, length, true};
  return assemble_per_letter(one.num_qubits, block, length, std::move(meta));
}

Circuit build_word_circuit(const CoefficientSet& K, std::int64_t length, WordStyle style) {
  if (length < 0) throw PreconditionError("word length must be >= 0");
  if (style == WordStyle::collapsed) return build_deep(K, length);
  Circuit one = build_deep(K, 1);
  std::vector<std::vector<Gate>> block(one.layers.begin() + 1, one.layers.end());
  CircuitMeta meta{K.p.value(), length, "deep_letters", one.metadata.padded, 0, length, true};
  return assemble_per_letter(one.num_qubits, block, length, std::move(meta));
}

std::vector<double> noisy_accept_profile(const ParamVector& params, std::int64_t max_length,
                                         const NoiseModel& nm) {
  return noisy_profile_impl(static_cast<int>(params.rank()) + 1, letter_block(params), max_length,
                            nm);
}

std::vector<double> noisy_accept_profile(const CoefficientSet& K, std::int64_t max_length,
                                         const NoiseModel& nm) {
  Circuit one = build_deep(K, 1);
  return noisy_profile_impl(one.num_qubits, letter_block(K), max_length, nm);
}

namespace {

double pure_accept_with_readout(const Circuit& c, double p_meas) {
  StateVector sv = run_pure(c);
  if (!c.metadata.includes_inverse_prep) {
    for (int q = 0; q + 1 < c.num_qubits; ++q) sv.apply(make_h(q));
  }
  if (p_meas == 0.0) return std::norm(sv.amplitudes()[0]);
  double total = 0.0;
  const auto amps = sv.amplitudes();
  for (std::uint64_t b = 0; b < amps.size(); ++b) {
    double w = 1.0;
    for (int q = 0; q < c.num_qubits; ++q) {
      w *= (b >> q) & 1 ? p_meas : 1.0 - p_meas;
    }
    total += std::norm(amps[b]) * w;
  }
  return total;
}

}  // namespace

ShotRecord sample_shots(const Circuit& c, const NoiseModel& nm, std::int64_t shots,
                        std::uint64_t seed) {
  if (shots < 1) throw PreconditionError("sample_shots requires shots >= 1");
  const double q = nm.gates_noiseless() ? pure_accept_with_readout(c, nm.p_meas)
                                        : accept_probability_noisy(c, nm);
  std::mt19937_64 rng(seed);
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < shots; ++s) {
    if (uniform_unit(rng) < q) ++hits;
  }
  return ShotRecord{c.metadata.x, shots, hits};
}

ClassificationReport classify(std::span<const ShotRecord> records, std::int64_t threshold) {
  ClassificationReport report;
  if (records.empty()) return report;
  report.cut_point = static_cast<double>(threshold) / static_cast<double>(records.front().shots);
  report.margin = 1.0;
  for (const ShotRecord& r : records) {
    report.entries.push_back(
        ClassificationEntry{r.length, r.accept_count, r.accept_count > threshold});
    const double freq = static_cast<double>(r.accept_count) / static_cast<double>(r.shots);
    report.margin = std::min(report.margin, std::abs(freq - report.cut_point));
  }
  return report;
}

}  // namespace qfp
