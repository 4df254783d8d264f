#include "qfp/circuit.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace qfp {

namespace {

struct QubitPair {
  int a = -1;
  int b = -1;
  bool operator==(const QubitPair&) const = default;
};

QubitPair ordered(int a, int b) { return a < b ? QubitPair{a, b} : QubitPair{b, a}; }

// Long-range CX over chain distance D via the usual CX ladder; positions
// are restored afterwards, so no state is carried.
std::int64_t ladder_cost(int dist) { return dist == 1 ? 1 : 4 * (dist - 1); }

struct Router {
  std::vector<int> pos;   // logical -> position
  std::vector<int> occ;   // position -> logical
  QubitPair last_pair;    // last emitted two-qubit interaction
  std::int64_t count = 0;

  explicit Router(std::span<const int> layout) {
    pos.assign(layout.begin(), layout.end());
    occ.resize(pos.size());
    for (std::size_t q = 0; q < pos.size(); ++q) occ[static_cast<std::size_t>(pos[q])] = static_cast<int>(q);
  }

  // Moves `mover` one chain step toward `other` until adjacent. A swap
  // costs 3 CX, or 1 when it directly follows a CX on the same pair
  // (CX * SWAP collapses to two CX total).
  void route(int mover, int other) {
    while (std::abs(pos[mover] - pos[other]) > 1) {
      const int step = pos[other] > pos[mover] ? 1 : -1;
      const int neighbor = occ[static_cast<std::size_t>(pos[mover] + step)];
      const QubitPair pair = ordered(mover, neighbor);
      count += pair == last_pair ? 1 : 3;
      std::swap(occ[static_cast<std::size_t>(pos[mover])], occ[static_cast<std::size_t>(pos[neighbor])]);
      std::swap(pos[mover], pos[neighbor]);
      last_pair = pair;
    }
  }

  void two_qubit(int control, int target, std::int64_t gate_cost) {
    route(target, control);
    count += gate_cost;
    last_pair = ordered(control, target);
  }
};

void flatten_cx_of_mcry(double angle, std::span<const int> controls, int target,
                        std::vector<QubitPair>& out) {
  // Only CX placements matter for counting; rotations are free.
  if (controls.empty()) return;
  const int last = controls.back();
  const auto rest = controls.first(controls.size() - 1);
  flatten_cx_of_mcry(angle / 2.0, rest, target, out);
  out.push_back(QubitPair{last, target});
  flatten_cx_of_mcry(angle / 2.0, rest, target, out);
  out.push_back(QubitPair{last, target});
}

}  // namespace

std::int64_t nn_cx_count(const Circuit& c, std::span<const int> layout) {
  if (static_cast<int>(layout.size()) != c.num_qubits) {
    throw PreconditionError("layout size must match qubit count");
  }
  std::vector<std::uint8_t> seen(layout.size(), 0);
  for (int p : layout) {
    if (p < 0 || p >= c.num_qubits || seen[static_cast<std::size_t>(p)]) {
      throw PreconditionError("layout must be a permutation of chain positions");
    }
    seen[static_cast<std::size_t>(p)] = 1;
  }

  std::vector<Gate> flat;
  for (const auto& layer : c.layers) flat.insert(flat.end(), layer.begin(), layer.end());

  Router router(layout);
  std::size_t i = 0;
  while (i < flat.size()) {
    const Gate& g = flat[i];
    if (g.kind == GateKind::MCRY) {
      // A maximal run of MCRYs over the same controls/target whose
      // patterns cover every binary string is one uniformly controlled
      // rotation; its CX sequence follows the Gray code, one CX per
      // rotation, on the control line of the flipped bit.
      const std::size_t m = g.controls.size();
      const std::size_t want = std::size_t{1} << m;
      std::size_t run = 0;
      std::uint64_t cover = 0;
      while (i + run < flat.size() && run < want) {
        const Gate& h = flat[i + run];
        if (h.kind != GateKind::MCRY || h.controls != g.controls || h.target != g.target) break;
        std::uint64_t idx = 0;
        for (std::size_t b = 0; b < h.pattern.size(); ++b) {
          if (h.pattern[b]) idx |= std::uint64_t{1} << b;
        }
        cover |= std::uint64_t{1} << idx;
        ++run;
      }
      if (run == want && m <= 6 && cover == (want >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << want) - 1)) {
        for (std::size_t l = 1; l <= want; ++l) {
          const std::size_t bit = l == want ? m - 1 : static_cast<std::size_t>(std::countr_zero(l));
          const int ctrl = g.controls[bit];
          const int dist = std::abs(router.pos[ctrl] - router.pos[g.target]);
          router.count += ladder_cost(dist);
          router.last_pair = ordered(ctrl, g.target);
        }
        i += run;
        continue;
      }
      // Incomplete run: decompose this gate alone and route its CXs.
      std::vector<QubitPair> cxs;
      flatten_cx_of_mcry(g.angle, g.controls, g.target, cxs);
      for (const QubitPair& cx : cxs) router.two_qubit(cx.a, cx.b, 1);
      ++i;
      continue;
    }
    if (g.kind == GateKind::CRY) {
      router.two_qubit(g.controls[0], g.target, 2);
    } else if (g.kind == GateKind::CX) {
      router.two_qubit(g.controls[0], g.target, 1);
    }
    ++i;
  }
  return router.count;
}

std::int64_t best_nn_cx_count(const Circuit& c) {
  const int n = c.num_qubits;
  std::vector<int> layout(static_cast<std::size_t>(n));
  std::iota(layout.begin(), layout.end(), 0);

  if (n <= 9) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<int> perm = layout;
    do {
      best = std::min(best, nn_cx_count(c, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }

  // Too wide to enumerate: try the natural orders and the target at
  // either chain end (target = last logical qubit by convention).
  std::int64_t best = nn_cx_count(c, layout);
  std::reverse(layout.begin(), layout.end());
  best = std::min(best, nn_cx_count(c, layout));
  std::iota(layout.begin(), layout.end(), 1);
  layout.back() = 0;
  best = std::min(best, nn_cx_count(c, layout));
  return best;
}

}  // namespace qfp
