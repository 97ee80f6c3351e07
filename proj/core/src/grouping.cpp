#include "acsel/grouping.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "acsel/errors.hpp"

namespace acsel {

namespace {

void require_threshold(double c0) {
  if (!(c0 >= 0.0 && c0 <= 1.0)) {
    throw ParseError("grouping threshold c0 must lie in [0, 1], got " +
                     std::to_string(c0));
  }
}

// Disjoint-set over vertex indices.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

GroupMap groups_from_labels(const std::vector<int>& label, double c0) {
  const int p = static_cast<int>(label.size());
  std::vector<std::vector<int>> members_by_label(p);
  for (int i = 0; i < p; ++i) members_by_label[label[i]].push_back(i);

  GroupMap gm;
  gm.c0 = c0;
  gm.groups.resize(p);
  for (int i = 0; i < p; ++i) gm.groups[i] = members_by_label[label[i]];
  return gm;
}

// Deterministic weighted label propagation: sweep vertices in index order,
// adopt the incident label with the largest total edge weight (ties toward
// the smaller label), repeat until a sweep changes nothing.
std::vector<int> label_propagation(const Eigen::MatrixXd& adj) {
  const int p = static_cast<int>(adj.rows());
  std::vector<int> label(p);
  std::iota(label.begin(), label.end(), 0);

  std::vector<double> weight(p, 0.0);
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool changed = false;
    for (int i = 0; i < p; ++i) {
      std::fill(weight.begin(), weight.end(), 0.0);
      bool any = false;
      for (int j = 0; j < p; ++j) {
        if (adj(i, j) > 0.0) {
          weight[label[j]] += adj(i, j);
          any = true;
        }
      }
      if (!any) continue;
      int best = label[i];
      double best_w = weight[best];
      for (int l = 0; l < p; ++l) {
        if (weight[l] > best_w + 1e-15 ||
            (weight[l] > best_w - 1e-15 && l < best)) {
          best = l;
          best_w = weight[l];
        }
      }
      if (best != label[i]) {
        label[i] = best;
        changed = true;
      }
    }
    if (!changed) break;
  }

  // Canonicalize labels so each community is named by its smallest member.
  std::vector<int> canon(p, -1);
  for (int i = 0; i < p; ++i) {
    if (canon[label[i]] == -1) canon[label[i]] = i;
  }
  for (int i = 0; i < p; ++i) label[i] = canon[label[i]];
  return label;
}

}  // namespace

bool GroupMap::all_singletons() const {
  for (const auto& g : groups) {
    if (g.size() != 1) return false;
  }
  return true;
}

CorrelationMatrix correlation(const StandardizedDesign& sd) {
  CorrelationMatrix out;
  out.c = sd.xs.transpose() * sd.xs;
  out.c.diagonal().setOnes();
  return out;
}

GroupMap group_naive(const CorrelationMatrix& c, double c0) {
  require_threshold(c0);
  const int p = static_cast<int>(c.p());
  // 1e-12 slack so perfectly correlated pairs stay grouped at c0 = 1 despite
  // rounding in the inner products.
  const double cut = c0 - 1e-12;
  GroupMap gm;
  gm.c0 = c0;
  gm.groups.resize(p);
  for (int i = 0; i < p; ++i) {
    auto& g = gm.groups[i];
    for (int j = 0; j < p; ++j) {
      if (i == j || std::abs(c.c(i, j)) >= cut) g.push_back(j);
    }
  }
  return gm;
}

Eigen::MatrixXd threshold_adjacency(const CorrelationMatrix& c, double c0) {
  require_threshold(c0);
  const Eigen::Index p = c.p();
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      const double a = std::abs(c.c(i, j));
      if (i != j && a > c0) adj(i, j) = a;
    }
  }
  return adj;
}

GroupMap group_community(const CorrelationMatrix& c, double c0,
                         CommunityAlgo algo) {
  require_threshold(c0);
  const Eigen::MatrixXd adj = threshold_adjacency(c, c0);
  const int p = static_cast<int>(c.p());

  if (algo == CommunityAlgo::label_prop) {
    return groups_from_labels(label_propagation(adj), c0);
  }

  UnionFind uf(p);
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      if (adj(i, j) > 0.0) uf.unite(i, j);
    }
  }
  std::vector<int> label(p);
  for (int i = 0; i < p; ++i) label[i] = uf.find(i);
  return groups_from_labels(label, c0);
}

GroupMap build_groups(const CorrelationMatrix& c, GroupingMethod method,
                      double c0, CommunityAlgo algo) {
  return method == GroupingMethod::naive ? group_naive(c, c0)
                                         : group_community(c, c0, algo);
}

std::string format_group_map(const GroupMap& gm) {
  std::ostringstream os;
  for (std::size_t i = 0; i < gm.groups.size(); ++i) {
    os << (i + 1) << ":";
    for (int m : gm.groups[i]) os << ' ' << (m + 1);
    os << '\n';
  }
  return os.str();
}

GroupingMethod parse_grouping(const std::string& text) {
  if (text == "naive") return GroupingMethod::naive;
  if (text == "community") return GroupingMethod::community;
  throw ParseError("unknown grouping method '" + text +
                   "' (expected naive or community)");
}

std::string to_string(GroupingMethod method) {
  return method == GroupingMethod::naive ? "naive" : "community";
}

}  // namespace acsel
