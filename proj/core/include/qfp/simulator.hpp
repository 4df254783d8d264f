#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "qfp/circuit.hpp"

namespace qfp {

// Pure state over n qubits, basis index little-endian (qubit q is bit q).
class StateVector {
 public:
  explicit StateVector(int num_qubits);

  int num_qubits() const { return n_; }
  std::span<const std::complex<double>> amplitudes() const { return amp_; }

  void apply(const Gate& g);
  double norm_sq() const;

 private:
  void apply_1q(const std::complex<double> u[2][2], int q);
  void apply_controlled_ry(double angle, std::span<const int> controls,
                           std::span<const std::uint8_t> pattern, int target);

  int n_;
  std::vector<std::complex<double>> amp_;
};

// Density matrix over n qubits, row-major 2^n x 2^n.
class DensityMatrix {
 public:
  explicit DensityMatrix(int num_qubits);

  int num_qubits() const { return n_; }
  std::complex<double> at(std::size_t row, std::size_t col) const { return rho_[row * dim_ + col]; }
  std::size_t dim() const { return dim_; }

  void apply_unitary(const Gate& g);
  void depolarize_1q(int q, double prob);
  void depolarize_2q(int q1, int q2, double prob);
  void symmetrize();  // rho <- (rho + rho^dagger)/2

  double trace_real() const;
  // P(all qubits report 0) with an independent readout flip per qubit.
  double accept_probability(double p_meas) const;

 private:
  void left_apply_1q(const std::complex<double> u[2][2], int q, std::uint64_t ctrl_mask,
                     std::uint64_t ctrl_val);
  void right_apply_1q(const std::complex<double> u[2][2], int q, std::uint64_t ctrl_mask,
                      std::uint64_t ctrl_val);

  int n_;
  std::size_t dim_;
  std::vector<std::complex<double>> rho_;
};

// Depolarizing-plus-readout noise. p1 applies after every 1-qubit gate,
// p2 (two-qubit depolarizing channel) after every 2-qubit gate, p_meas
// flips each readout bit independently. The defaults are calibration
// knobs chosen so that the per-letter acceptance decay qualitatively
// matches published hardware-emulator runs; they are not measured values.
struct NoiseModel {
  double p1 = 0.001;
  double p2 = 0.005;
  double p_meas = 0.01;

  bool is_zero() const { return p1 == 0.0 && p2 == 0.0 && p_meas == 0.0; }
  bool gates_noiseless() const { return p1 == 0.0 && p2 == 0.0; }
};

// Applies the layers in order to |0...0>. Requires <= 24 qubits.
StateVector run_pure(const Circuit& c);

// |<0...0| psi'>|^2 where psi' is run_pure's output with the inverse
// preparation (H on the control register) appended unless the circuit
// already includes it.
double accept_probability_pure(const Circuit& c);

// Density-matrix evolution with a depolarizing channel after every gate.
// Requires <= 12 qubits and no MCRY gates (decompose first).
DensityMatrix run_noisy(const Circuit& c, const NoiseModel& nm);

double accept_probability_noisy(const Circuit& c, const NoiseModel& nm);

enum class WordStyle { collapsed, per_letter };

// collapsed: one block with all angles scaled by the word length.
// per_letter: length repetitions of the x = 1 block between a preparation
// and an inverse-preparation layer, so gate noise accumulates with the
// word. Noiseless acceptance agrees between the two styles.
Circuit build_word_circuit(const ParamVector& params, std::int64_t length, WordStyle style);
Circuit build_word_circuit(const CoefficientSet& K, std::int64_t length, WordStyle style);

// Exact noisy acceptance probability for every word length 1..max_length
// in one pass (the length-i circuit is a prefix of the length-i+1 one).
std::vector<double> noisy_accept_profile(const ParamVector& params, std::int64_t max_length,
                                         const NoiseModel& nm);
std::vector<double> noisy_accept_profile(const CoefficientSet& K, std::int64_t max_length,
                                         const NoiseModel& nm);

struct ShotRecord {
  std::int64_t length = 0;
  std::int64_t shots = 0;
  std::int64_t accept_count = 0;
};

// accept_count ~ Binomial(shots, q) with q the exact (noisy) acceptance
// probability including readout flips; reproducible from the seed.
ShotRecord sample_shots(const Circuit& c, const NoiseModel& nm, std::int64_t shots,
                        std::uint64_t seed);

struct ClassificationEntry {
  std::int64_t length = 0;
  std::int64_t accept_count = 0;
  bool predicted_member = false;
};

struct ClassificationReport {
  std::vector<ClassificationEntry> entries;
  double cut_point = 0.0;  // threshold / shots
  double margin = 0.0;     // min distance of any frequency from the cut point
};

// Member iff accept_count > threshold.
ClassificationReport classify(std::span<const ShotRecord> records, std::int64_t threshold);

}  // namespace qfp
