#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctqw {

enum class Family { Barbell, StarFull, StarSingle };

enum class ClassTag {
  CliqueA,
  CliqueB,
  BridgeA,
  BridgeB,
  Center,
  StarBridge,
  StarInternal,
  StarCliqueVertex,
};

// clique_index / within_clique_index are 1-based where meaningful, -1 otherwise.
struct VertexClass {
  ClassTag tag;
  int clique_index = -1;
  int within_clique_index = -1;
};

struct GraphInstance {
  Family family;
  int n = 0;
  int vertex_count = 0;
  Eigen::MatrixXd adjacency;
  std::vector<int> degrees;
  std::vector<VertexClass> classes;
};

// Normalized adjacency M_ij / sqrt(d_i d_j); the walk Hamiltonian.
struct Hamiltonian {
  Eigen::MatrixXd matrix;
  Family family;
  int n = 0;
};

inline std::string family_name(Family f) {
  switch (f) {
    case Family::Barbell: return "barbell";
    case Family::StarFull: return "star1";
    case Family::StarSingle: return "star2";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  if (s == "barbell") return Family::Barbell;
  if (s == "star1") return Family::StarFull;
  if (s == "star2") return Family::StarSingle;
  throw std::invalid_argument("unknown family '" + s + "' (expected barbell|star1|star2)");
}

inline std::string class_tag_name(ClassTag t) {
  switch (t) {
    case ClassTag::CliqueA: return "CliqueA";
    case ClassTag::CliqueB: return "CliqueB";
    case ClassTag::BridgeA: return "BridgeA";
    case ClassTag::BridgeB: return "BridgeB";
    case ClassTag::Center: return "Center";
    case ClassTag::StarBridge: return "StarBridge";
    case ClassTag::StarInternal: return "StarInternal";
    case ClassTag::StarCliqueVertex: return "StarCliqueVertex";
  }
  return "?";
}

inline ClassTag parse_class_tag(const std::string& s) {
  for (ClassTag t : {ClassTag::CliqueA, ClassTag::CliqueB, ClassTag::BridgeA,
                     ClassTag::BridgeB, ClassTag::Center, ClassTag::StarBridge,
                     ClassTag::StarInternal, ClassTag::StarCliqueVertex})
    if (class_tag_name(t) == s) return t;
  throw std::invalid_argument("unknown vertex class '" + s + "'");
}

inline int family_min_n(Family f) {
  switch (f) {
    case Family::Barbell: return 3;     // degenerate family of multiplicity 2n-4 nonempty
    case Family::StarFull: return 2;
    case Family::StarSingle: return 3;  // internal vertices exist
  }
  return 3;
}

// Star vertex layout: center 0, then cliques j=1..n, within clique k=1..n
// (k=1 is the bridge/first vertex). Index of (j,k):
inline int star_vertex(int n, int j, int k) { return 1 + (j - 1) * n + (k - 1); }

inline GraphInstance build_graph(Family family, int n) {
  if (n < family_min_n(family))
    throw std::invalid_argument(family_name(family) + " requires n >= " +
                                std::to_string(family_min_n(family)) + ", got n = " +
                                std::to_string(n));

  GraphInstance g;
  g.family = family;
  g.n = n;

  if (family == Family::Barbell) {
    // A_1..A_{n-1} = 0..n-2, Br_A = n-1, Br_B = n, B internals = n+1..2n-1.
    const int N = 2 * n;
    g.vertex_count = N;
    g.adjacency = Eigen::MatrixXd::Zero(N, N);
    auto& M = g.adjacency;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) M(i, j) = M(j, i) = 1.0;
    for (int i = n; i < 2 * n; ++i)
      for (int j = i + 1; j < 2 * n; ++j) M(i, j) = M(j, i) = 1.0;
    M(n - 1, n) = M(n, n - 1) = 1.0;  // bridge edge
    g.classes.resize(N);
    for (int i = 0; i < n - 1; ++i) g.classes[i] = {ClassTag::CliqueA, 1, i + 1};
    g.classes[n - 1] = {ClassTag::BridgeA, 1, -1};
    g.classes[n] = {ClassTag::BridgeB, 2, -1};
    for (int i = n + 1; i < N; ++i) g.classes[i] = {ClassTag::CliqueB, 2, i - n};
  } else {
    const int N = n * n + 1;
    g.vertex_count = N;
    g.adjacency = Eigen::MatrixXd::Zero(N, N);
    auto& M = g.adjacency;
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l) {
          int a = star_vertex(n, j, k), b = star_vertex(n, j, l);
          M(a, b) = M(b, a) = 1.0;
        }
    if (family == Family::StarFull) {
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
          int a = star_vertex(n, j, k);
          M(0, a) = M(a, 0) = 1.0;
        }
      g.classes.resize(N);
      g.classes[0] = {ClassTag::Center, -1, -1};
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k)
          g.classes[star_vertex(n, j, k)] = {ClassTag::StarCliqueVertex, j, k};
    } else {
      for (int j = 1; j <= n; ++j) {
        int a = star_vertex(n, j, 1);
        M(0, a) = M(a, 0) = 1.0;
      }
      g.classes.resize(N);
      g.classes[0] = {ClassTag::Center, -1, -1};
      for (int j = 1; j <= n; ++j) {
        g.classes[star_vertex(n, j, 1)] = {ClassTag::StarBridge, j, 1};
        for (int k = 2; k <= n; ++k)
          g.classes[star_vertex(n, j, k)] = {ClassTag::StarInternal, j, k};
      }
    }
  }

  const int N = g.vertex_count;
  g.degrees.resize(N);
  for (int i = 0; i < N; ++i)
    g.degrees[i] = static_cast<int>(g.adjacency.row(i).sum() + 0.5);
  return g;
}

inline Hamiltonian normalized_adjacency(const GraphInstance& g) {
  const int N = g.vertex_count;
  Eigen::VectorXd dinv(N);
  for (int i = 0; i < N; ++i) dinv(i) = 1.0 / std::sqrt(double(g.degrees[i]));
  Hamiltonian h;
  h.family = g.family;
  h.n = g.n;
  h.matrix = dinv.asDiagonal() * g.adjacency * dinv.asDiagonal();
  // exact symmetry, so downstream symmetric solvers never see rounding skew
  h.matrix = 0.5 * (h.matrix + h.matrix.transpose()).eval();
  return h;
}

// Lexicographically sorted edge list (i < j).
inline std::vector<std::pair<int, int>> edge_list(const GraphInstance& g) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < g.vertex_count; ++i)
    for (int j = i + 1; j < g.vertex_count; ++j)
      if (g.adjacency(i, j) != 0.0) edges.emplace_back(i, j);
  return edges;
}

// First vertex of the given class, and optionally a second one for
// symmetry-equivalence checks (-1 when the class has a single member).
inline int class_representative(const GraphInstance& g, ClassTag tag, int which = 0) {
  int seen = 0;
  for (int i = 0; i < g.vertex_count; ++i)
    if (g.classes[i].tag == tag) {
      if (seen == which) return i;
      ++seen;
    }
  return -1;
}

inline std::vector<ClassTag> family_class_tags(Family f) {
  switch (f) {
    case Family::Barbell:
      return {ClassTag::CliqueA, ClassTag::BridgeA, ClassTag::BridgeB, ClassTag::CliqueB};
    case Family::StarFull:
      return {ClassTag::Center, ClassTag::StarCliqueVertex};
    case Family::StarSingle:
      return {ClassTag::Center, ClassTag::StarBridge, ClassTag::StarInternal};
  }
  return {};
}

}  // namespace ctqw
