#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "cdlab/model.hpp"
#include "cdlab/rng.hpp"

namespace cdlab {

// Index-selection schemes. The stochastic ones are fully determined by
// (seed, epoch, within-epoch position): each epoch draws from its own
// derived stream, so trajectories are reproducible and schedulable anywhere.
struct Cyclic {};
struct FixedPermutation {
  std::vector<int> order;
};
struct WithReplacement {
  std::uint64_t seed = 0;
};
struct PerEpochPermutation {
  std::uint64_t seed = 0;
};
using OrderingScheme = std::variant<Cyclic, FixedPermutation, WithReplacement, PerEpochPermutation>;

struct AllOnes {};
struct RandomInit {
  std::uint64_t seed = 0;  // uniform on the unit sphere
};
using Initialization = std::variant<AllOnes, RandomInit>;

enum : unsigned {
  kRecordI1 = 1u << 0,
  kRecordI2 = 1u << 1,
  kRecordI3 = 1u << 2,
  kRecordAll = kRecordI1 | kRecordI2 | kRecordI3,
};

struct RunConfig {
  int epochs = 1;
  Initialization init = AllOnes{};
  unsigned record = kRecordAll;
  bool keep_snapshots = false;  // callers should leave this off for n >= 1e4
};

// Measurements at epoch boundaries; index l = state after l full epochs
// (so index 0 is the initial point and the vectors have epochs+1 entries).
struct EpochSeries {
  int n = 0;
  std::vector<double> sq_distance;
  std::vector<double> objective;
  std::vector<std::vector<double>> snapshots;  // empty unless requested
  std::vector<double> final_x;
  int epochs() const { return static_cast<int>(sq_distance.size()) - 1; }
};

// Runs epochs*n exact-line-search updates x_i <- x_i - (Ax)_i under the given
// scheme. An epoch of WithReplacement is n draws, grouped purely so that
// reporting aligns with the permutation schemes. Deterministic given
// (scheme, cfg) including all seeds.
EpochSeries run(const Problem& q, const OrderingScheme& scheme, const RunConfig& cfg);

// Same loop, but hands (epoch, iterate) to the observer at every epoch
// boundary (including epoch 0) instead of storing anything.
void run_with_observer(const Problem& q, const OrderingScheme& scheme, const RunConfig& cfg,
                       const std::function<void(int, const std::vector<double>&)>& on_epoch);

// One epoch of updates in coordinate order `perm` starting from x; equals the
// conjugated epoch matrix P B_ccd-pi P' applied to x.
std::vector<double> epoch_operator_apply(const Problem& q, const std::vector<int>& perm,
                                         const std::vector<double>& x);

}  // namespace cdlab
