#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "graphrec/dk2.hpp"
#include "graphrec/graph.hpp"
#include "graphrec/rng.hpp"

namespace graphrec {

struct KdaConfig {
  std::size_t k = 50;
  std::uint64_t seed = 1;
};

struct SaladpConfig {
  double epsilon = 10.0;
  std::uint64_t seed = 1;
};

/// One run of equal target degrees over the descending-sorted sequence.
struct DegreeGroup {
  std::size_t begin = 0;  ///< position in sorted order
  std::size_t end = 0;    ///< one past the last position
  std::size_t value = 0;  ///< target degree shared by the group
};

struct KAnonymousSequence {
  std::vector<std::size_t> targets;  ///< per node, indexed by node id
  std::vector<NodeId> order;         ///< node ids sorted by degree desc, id asc
  std::vector<DegreeGroup> groups;
  std::size_t cost = 0;  ///< sum of (target - degree)
};

/// Minimum-cost k-anonymous degree sequence under group sizes k..2k-1 over
/// the descending-sorted degrees. Throws std::invalid_argument when k < 2
/// or k > degrees.size().
KAnonymousSequence kda_sequence(std::span<const std::size_t> degrees, std::size_t k);

/// Per-node targets of kda_sequence.
std::vector<std::size_t> kda_degree_sequence(std::span<const std::size_t> degrees, std::size_t k);

/// Makes the target sum even while keeping k-anonymity: raises every member
/// of the smallest odd-sized group (lowest value on ties) by one. Returns
/// false if the sum was already even.
bool make_degree_sum_even(KAnonymousSequence& seq, std::size_t node_count);

class RealizationError : public std::runtime_error {
 public:
  RealizationError(const std::string& what, std::size_t added, std::size_t deleted, std::size_t residual_left)
      : std::runtime_error(what), added_(added), deleted_(deleted), residual_left_(residual_left) {}
  [[nodiscard]] std::size_t added() const noexcept { return added_; }
  [[nodiscard]] std::size_t deleted() const noexcept { return deleted_; }
  [[nodiscard]] std::size_t residual_left() const noexcept { return residual_left_; }

 private:
  std::size_t added_;
  std::size_t deleted_;
  std::size_t residual_left_;
};

/// Picks up to m partners for u. `candidates` holds every positive-residual
/// non-neighbor of u, sorted by residual descending then id ascending.
using PartnerChooser =
    std::function<std::vector<NodeId>(NodeId u, std::span<const NodeId> candidates, std::size_t m, Rng& rng)>;

struct KdaResult {
  Graph graph;
  std::vector<std::size_t> targets;
  std::size_t sequence_cost = 0;
  bool parity_adjusted = false;
  std::size_t edges_added = 0;    ///< insertions performed, including re-additions
  std::size_t edges_deleted = 0;  ///< relaxation deletions performed
  std::size_t relaxation_draws = 0;
};

/// Realizes per-node target degrees on top of g. Without a chooser, u is
/// joined to its highest-residual eligible partners; with one, the chooser
/// decides. When u runs out of partners, a random edge between two
/// zero-residual non-neighbors of u is deleted and the loop retries, up to
/// 10*|E| edge draws in total.
KdaResult realize_degree_targets(const Graph& g, std::span<const std::size_t> targets, Rng& rng,
                                 const PartnerChooser& chooser = {});

KdaResult kda_anonymize(const Graph& g, const KdaConfig& cfg, const PartnerChooser& chooser = {});

/// Laplace scale for a dK-2 cell before dividing by epsilon.
double dk2_cell_sensitivity(const DegreePair& cell);

/// Adds Laplace(sensitivity/epsilon) noise to every present cell, rounds half
/// away from zero, and clamps at zero. Cells that round to zero are kept with
/// count 0 so the key set matches the input.
DK2Series saladp_noise_dk2(const DK2Series& series, double epsilon, std::uint64_t seed);

/// Picks a partner for u from `candidates`, the members of the wanted degree
/// class that are neither u nor adjacent to it.
using PairChooser = std::function<std::optional<NodeId>(NodeId u, std::span<const NodeId> candidates, Rng& rng)>;

struct SaladpResult {
  Graph graph;
  DK2Series original;
  DK2Series target;  ///< noised series keyed by original degrees
  std::size_t edges_added = 0;
  std::size_t edges_deleted = 0;
  std::int64_t unmet_additions = 0;
  std::int64_t unmet_deletions = 0;
};

/// Realizes the noised series on top of g: cells are keyed by g's degrees,
/// positive deltas add edges between random non-adjacent nodes of the two
/// degree classes (50 attempts per needed edge), negative deltas delete
/// random edges of the cell. With a chooser, the second endpoint is picked
/// by the chooser from the non-adjacent members of its class.
SaladpResult saladp_realize(const Graph& g, const DK2Series& target, Rng& rng, const PairChooser& chooser = {});

SaladpResult saladp_anonymize(const Graph& g, const SaladpConfig& cfg, const PairChooser& chooser = {});

}  // namespace graphrec
