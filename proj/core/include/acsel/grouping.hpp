#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "acsel/geometry.hpp"

namespace acsel {

/// Correlation matrix of standardized columns (inner products, exact unit
/// diagonal).
struct CorrelationMatrix {
  Eigen::MatrixXd c;  // P x P, symmetric

  Eigen::Index p() const { return c.rows(); }
};

/// Per-variable correlated groups at a given threshold. Every variable
/// belongs to its own group.
struct GroupMap {
  double c0 = 1.0;
  std::vector<std::vector<int>> groups;  // groups[p]: sorted indices, contains p

  Eigen::Index p() const { return static_cast<Eigen::Index>(groups.size()); }
  bool all_singletons() const;
};

enum class GroupingMethod { naive, community };
enum class CommunityAlgo { components, label_prop };

CorrelationMatrix correlation(const StandardizedDesign& sd);

/// groups[p] = { p' : |c_{pp'}| >= c0 }.
GroupMap group_naive(const CorrelationMatrix& c, double c0);

/// Weighted adjacency of the thresholded correlation graph: entry (i, j) is
/// |c_ij| when |c_ij| > c0 and i != j, else 0.
Eigen::MatrixXd threshold_adjacency(const CorrelationMatrix& c, double c0);

/// Partitions variables into communities of the thresholded graph and maps
/// each variable to its community. The default algorithm is connected
/// components; label_prop runs a deterministic weighted label propagation
/// refinement on top of the same graph.
GroupMap group_community(const CorrelationMatrix& c, double c0,
                         CommunityAlgo algo = CommunityAlgo::components);

GroupMap build_groups(const CorrelationMatrix& c, GroupingMethod method,
                      double c0,
                      CommunityAlgo algo = CommunityAlgo::components);

/// Text form for inspection: one line per variable, "index: members..."
/// with 1-based indices.
std::string format_group_map(const GroupMap& gm);

GroupingMethod parse_grouping(const std::string& text);
std::string to_string(GroupingMethod method);

}  // namespace acsel
