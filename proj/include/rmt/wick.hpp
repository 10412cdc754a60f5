#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "rmt/multi_series.hpp"
#include "rmt/nlaurent.hpp"

namespace rmt::wick {

/// Product of trace vertices tr M^{k_1} ... tr M^{k_n}. Legs are indexed
/// 0..K-1 vertex by vertex; around each vertex they are cyclically ordered by
/// their global index.
class StarDiagram {
 public:
  explicit StarDiagram(std::vector<int> vertex_degrees);

  const std::vector<int>& vertex_degrees() const { return degrees_; }
  int vertex_count() const { return static_cast<int>(degrees_.size()); }
  int leg_count() const { return static_cast<int>(vertex_of_.size()); }
  int vertex_of(int leg) const { return vertex_of_[leg]; }
  /// Next leg counter-clockwise around the same vertex.
  int next(int leg) const { return next_[leg]; }

 private:
  std::vector<int> degrees_;
  std::vector<int> vertex_of_;
  std::vector<int> next_;
};

/// Fixed-point-free involution on legs: one Wick contraction.
struct PairPartition {
  std::vector<int> mate;

  int edge_count() const { return static_cast<int>(mate.size()) / 2; }
  /// mate is a fixed-point-free involution.
  bool valid() const;
};

/// Enumeration budget. The default covers K <= 16; K = 18 needs allow_k18,
/// anything larger needs an explicit max_legs. RMT_BUDGET overrides max_legs.
struct EnumerationLimits {
  int max_legs = 16;
  bool allow_k18 = false;

  static EnumerationLimits from_environment();
  int effective_max_legs() const;
  void check(int legs) const;
};

/// (K-1)!! as an exact integer (1 for K = 0, 0 for odd K).
Integer pairing_count(int legs);

/// Calls visit(mate) for every pair partition of `legs` legs in canonical
/// order: the smallest unmatched leg is paired with each larger unmatched leg
/// in increasing order, recursively. Odd `legs` visits nothing.
void for_each_pair_partition(int legs, const std::function<void(const std::vector<int>&)>& visit,
                             const EnumerationLimits& limits = {});

/// Materialized enumeration for small K; returns an empty list for odd K.
std::vector<PairPartition> enumerate_pair_partitions(int legs, const EnumerationLimits& limits = {});

/// Number of index loops (faces) of the ribbon graph: cycles of l -> next(mate(l)).
int face_count(const StarDiagram& d, const PairPartition& p);
int face_count(const StarDiagram& d, const std::vector<int>& mate);

/// Number of connected components of the vertex graph induced by the pairing.
int component_count(const StarDiagram& d, const std::vector<int>& mate);

/// <prod (1/N) tr M^{k_i}> as an exact Laurent polynomial in nu = 1/N,
/// summing N^{-n} N^{F-E} over all pairings (disconnected ones included).
NLaurent vertex_moment(const std::vector<int>& degrees, const EnumerationLimits& limits = {}, int threads = 1);

/// Same sum restricted to pairings whose edges connect all vertices (the
/// Gaussian cumulant).
NLaurent connected_moment(const std::vector<int>& degrees, const EnumerationLimits& limits = {},
                          int threads = 1);

/// Per-genus pairing counts: genus = (2c - (n - E + F)) / 2 summed over the
/// c connected components. Keys are (genus, connected?) -> count.
struct GenusCount {
  int genus;
  bool connected;
  Integer count;
};
std::vector<GenusCount> genus_counts(const std::vector<int>& degrees, const EnumerationLimits& limits = {});

/// Propagator <M_ij M_ji> = 2/(lambda_i + lambda_j) of the Gaussian weight
/// exp(-tr Lambda M^2 / 2), expressed through q_i = 1/lambda_i:
///   weight(i,i) = q_i,  weight(i,j) = 2 q_i q_j / (q_i + q_j).
class WeightedPropagator {
 public:
  explicit WeightedPropagator(int index_count);

  int index_count() const { return index_count_; }
  std::vector<std::string> variables() const;
  /// Numerator and the power of (q_i + q_j) in the denominator.
  struct Weight {
    MultiSeries numerator;
    int denominator_power;
  };
  Weight weight(int i, int j, int cutoff) const;

 private:
  int index_count_;
};

struct WeightedLimits {
  int max_legs = 18;
  int max_index_count = 4;
  double max_work = 2.0e12;  // pairings x worst-case index assignments
};

/// Sum over pairings and over assignments of eigenvalue indices to faces of
/// the product of edge weights, times `coupling`. Each edge joins the faces
/// on its two sides. The rational denominators (q_i + q_j)^m are cleared by
/// exact division, so the result is a polynomial in q truncated at `cutoff`.
MultiSeries weighted_moment(const std::vector<int>& degrees, const WeightedPropagator& prop,
                            const Rational& coupling, int cutoff, const WeightedLimits& limits = {},
                            int threads = 1);

/// weighted_moment split by the number of faces of the pairing (keys with a
/// zero contribution are omitted).
std::map<int, MultiSeries> weighted_moment_by_faces(const std::vector<int>& degrees, const WeightedPropagator& prop,
                                                    const Rational& coupling, int cutoff,
                                                    const WeightedLimits& limits = {}, int threads = 1);

}  // namespace rmt::wick
