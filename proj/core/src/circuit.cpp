#include "qfp/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace qfp {

const char* to_string(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::Phase: return "PHASE";
    case GateKind::CX: return "CX";
    case GateKind::CRY: return "CRY";
    case GateKind::MCRY: return "MCRY";
  }
  return "H";
}

Gate make_h(int target) { return Gate{GateKind::H, target, {}, {}, 0.0}; }
Gate make_ry(int target, double angle) { return Gate{GateKind::RY, target, {}, {}, angle}; }
Gate make_rz(int target, double angle) { return Gate{GateKind::RZ, target, {}, {}, angle}; }
Gate make_phase(int target, double angle) { return Gate{GateKind::Phase, target, {}, {}, angle}; }
Gate make_cx(int control, int target) {
  return Gate{GateKind::CX, target, {control}, {1}, 0.0};
}
Gate make_cry(int control, int target, double angle, bool polarity) {
  return Gate{GateKind::CRY, target, {control}, {static_cast<std::uint8_t>(polarity ? 1 : 0)}, angle};
}
Gate make_mcry(std::span<const int> controls, std::span<const std::uint8_t> pattern, int target,
               double angle) {
  Gate g{GateKind::MCRY, target, {controls.begin(), controls.end()},
         {pattern.begin(), pattern.end()}, angle};
  if (g.controls.size() != g.pattern.size()) {
    throw PreconditionError("MCRY control pattern length must match control count");
  }
  return g;
}

void validate(const Circuit& c) {
  for (const auto& layer : c.layers) {
    if (layer.empty()) throw PreconditionError("empty circuit layer");
    std::vector<std::uint8_t> used(static_cast<std::size_t>(c.num_qubits), 0);
    for (const Gate& g : layer) {
      auto touch = [&](int q) {
        if (q < 0 || q >= c.num_qubits) throw PreconditionError("qubit index out of range");
        if (used[static_cast<std::size_t>(q)]) {
          throw PreconditionError("overlapping gates within a layer");
        }
        used[static_cast<std::size_t>(q)] = 1;
      };
      touch(g.target);
      for (int q : g.controls) touch(q);
      if (g.controls.size() != g.pattern.size()) {
        throw PreconditionError("control pattern length mismatch");
      }
    }
  }
}

namespace {

std::int64_t reduce(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

// RY(4 pi k x / p) realizes the automaton amplitude cos(2 pi k x / p);
// k*x is reduced mod p first (RY has 4 pi periodicity, so the reduction
// changes nothing beyond keeping the trig argument small).
double rotation_angle(std::int64_t k, std::int64_t x, std::int64_t p) {
  const std::int64_t r = mod_mul(reduce(k, p), reduce(x, p), p);
  return 4.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(p);
}

}  // namespace

Circuit build_deep(const CoefficientSet& K, std::int64_t x) {
  if (K.coeffs.empty()) throw PreconditionError("build_deep requires a nonempty coefficient set");
  const std::int64_t p = K.p.value();
  std::vector<std::int64_t> coeffs = K.coeffs;
  int padded = 0;
  while ((coeffs.size() & (coeffs.size() - 1)) != 0 || coeffs.size() < 2) {
    coeffs.push_back(coeffs.back());
    ++padded;
  }
  int m = 0;
  while ((std::size_t{1} << m) < coeffs.size()) ++m;

  Circuit c;
  c.num_qubits = m + 1;
  c.metadata = CircuitMeta{p, x, "deep", padded, 0, 0, false};

  std::vector<Gate> hs;
  for (int q = 0; q < m; ++q) hs.push_back(make_h(q));
  c.layers.push_back(std::move(hs));

  std::vector<int> controls(static_cast<std::size_t>(m));
  for (int q = 0; q < m; ++q) controls[static_cast<std::size_t>(q)] = q;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    std::vector<std::uint8_t> pattern(static_cast<std::size_t>(m));
    for (int b = 0; b < m; ++b) pattern[static_cast<std::size_t>(b)] = (j >> b) & 1;
    c.layers.push_back({make_mcry(controls, pattern, m, rotation_angle(coeffs[j], x, p))});
  }
  return c;
}

Circuit build_shallow(const ParamVector& params, std::int64_t x) {
  const std::size_t m = params.rank();
  if (m < 1) throw PreconditionError("build_shallow requires m >= 1");
  const std::int64_t p = params.p.value();
  const int target = static_cast<int>(m);

  Circuit c;
  c.num_qubits = static_cast<int>(m) + 1;
  c.metadata = CircuitMeta{p, x, "shallow", 0, 0, 0, false};

  std::vector<Gate> hs;
  for (int q = 0; q < target; ++q) hs.push_back(make_h(q));
  c.layers.push_back(std::move(hs));

  for (std::size_t j = 0; j < m; ++j) {
    c.layers.push_back(
        {make_cry(static_cast<int>(j), target, rotation_angle(params.generators[j], x, p))});
  }
  c.layers.push_back({make_ry(target, rotation_angle(params.offset, x, p))});
  return c;
}

Circuit build_aikps(const Prime& p, double eps, std::int64_t x) {
  const AikpsWindow w = aikps_window(p, eps);
  if (w.small_primes.empty()) throw PreconditionError("no primes in AIKPS window");
  const std::int64_t mod = p.value();
  const double loglog = std::log2(std::log2(static_cast<double>(mod)));
  int weighted = static_cast<int>(std::ceil((1.0 + 2.0 * eps) * loglog));
  if (weighted < 1) weighted = 1;
  const int target = weighted;

  Circuit c;
  c.num_qubits = weighted + 1;
  c.metadata = CircuitMeta{mod, x, "aikps", 0, 0, 0, false};
  // The controls realize multipliers 1..2^(w-1); |S| need not reach that
  // power of two, so the surplus is recorded rather than silently dropped.
  const double realized = std::pow(2.0, static_cast<double>(weighted));
  c.metadata.truncation = static_cast<int>(realized - static_cast<double>(w.s_max));

  std::vector<Gate> hs;
  for (int q = 0; q < weighted; ++q) hs.push_back(make_h(q));
  c.layers.push_back(std::move(hs));

  for (std::int64_t r : w.small_primes) {
    const std::int64_t inv_r = mod_inverse(r, p);
    for (int k = 1; k <= weighted; ++k) {
      const std::int64_t mult = mod_mul(mod_pow(2, k - 1, mod), inv_r, mod);
      c.layers.push_back({make_cry(k - 1, target, rotation_angle(mult, x, mod))});
    }
    c.layers.push_back({make_ry(target, rotation_angle(inv_r, x, mod))});
  }
  return c;
}

CircuitMetrics metrics(const Circuit& c) {
  CircuitMetrics out;
  out.depth = c.depth();
  out.width = c.num_qubits;
  for (const auto& layer : c.layers) {
    bool rotates = false;
    for (const Gate& g : layer) {
      ++out.gate_counts[g.kind];
      rotates = rotates || g.kind == GateKind::RY || g.kind == GateKind::RZ ||
                g.kind == GateKind::Phase || g.kind == GateKind::CRY || g.kind == GateKind::MCRY;
    }
    if (rotates) ++out.rotation_depth;
  }
  return out;
}

namespace {

std::string format_angle(double a) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", a);
  return buf;
}

GateKind kind_from_token(const std::string& tok) {
  if (tok == "H") return GateKind::H;
  if (tok == "RY") return GateKind::RY;
  if (tok == "RZ") return GateKind::RZ;
  if (tok == "PHASE") return GateKind::Phase;
  if (tok == "CX") return GateKind::CX;
  if (tok == "CRY") return GateKind::CRY;
  if (tok == "MCRY") return GateKind::MCRY;
  throw PreconditionError("unknown gate kind in circuit text: " + tok);
}

}  // namespace

std::string to_text(const Circuit& c) {
  std::ostringstream out;
  out << "qubits " << c.num_qubits << "\n";
  const CircuitMeta& m = c.metadata;
  out << "meta p=" << m.p << " x=" << m.x << " construction=" << (m.construction.empty() ? "-" : m.construction)
      << " padded=" << m.padded << " truncation=" << m.truncation << " letters=" << m.letters
      << " invprep=" << (m.includes_inverse_prep ? 1 : 0) << "\n";
  for (const auto& layer : c.layers) {
    for (const Gate& g : layer) {
      out << to_string(g.kind) << ' ' << g.target;
      for (std::size_t i = 0; i < g.controls.size(); ++i) {
        out << ' ';
        if (!g.pattern[i]) out << '!';
        out << g.controls[i];
      }
      out << ' ' << format_angle(g.angle) << "\n";
    }
    out << "---\n";
  }
  return out.str();
}

Circuit circuit_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  Circuit c;
  bool have_header = false;
  std::vector<Gate> pending;

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "qubits") {
      ls >> c.num_qubits;
      have_header = true;
      continue;
    }
    if (tok == "meta") {
      std::string kv;
      while (ls >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = kv.substr(0, eq);
        const std::string val = kv.substr(eq + 1);
        if (key == "p") c.metadata.p = std::stoll(val);
        else if (key == "x") c.metadata.x = std::stoll(val);
        else if (key == "construction") c.metadata.construction = val == "-" ? "" : val;
        else if (key == "padded") c.metadata.padded = std::stoi(val);
        else if (key == "truncation") c.metadata.truncation = std::stoi(val);
        else if (key == "letters") c.metadata.letters = std::stoll(val);
        else if (key == "invprep") c.metadata.includes_inverse_prep = val != "0";
      }
      continue;
    }
    if (tok == "---") {
      c.layers.push_back(std::move(pending));
      pending.clear();
      continue;
    }

    Gate g;
    g.kind = kind_from_token(tok);
    std::vector<std::string> rest;
    std::string t;
    while (ls >> t) rest.push_back(t);
    if (rest.size() < 2) throw PreconditionError("malformed gate line: " + line);
    g.target = std::stoi(rest.front());
    for (std::size_t i = 1; i + 1 < rest.size(); ++i) {
      std::string ctl = rest[i];
      std::uint8_t pol = 1;
      if (!ctl.empty() && ctl.front() == '!') {
        pol = 0;
        ctl.erase(ctl.begin());
      }
      g.controls.push_back(std::stoi(ctl));
      g.pattern.push_back(pol);
    }
    char* end = nullptr;
    g.angle = std::strtod(rest.back().c_str(), &end);
    if (end == rest.back().c_str()) throw PreconditionError("malformed angle in line: " + line);
    pending.push_back(std::move(g));
  }
  if (!pending.empty()) c.layers.push_back(std::move(pending));
  if (!have_header) throw PreconditionError("circuit text missing qubits header");
  validate(c);
  return c;
}

}  // namespace qfp
