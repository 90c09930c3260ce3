#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace bratspec {

inline constexpr std::size_t kDefaultPathCap = 10'000'000;

struct SubstitutionRule {
  std::vector<std::string> alphabet;
  // images[q] lists letter indices of the image of letter q.
  std::vector<std::vector<int>> images;
  int dimension = 1;

  static SubstitutionRule from_strings(const std::vector<std::pair<char, std::string>>& rules, int dimension = 1);
};

// a[p][q] = number of occurrences of letter p in the image of letter q.
IntMatrix abelianize(const SubstitutionRule& rule);
bool is_primitive(const IntMatrix& a);
void validate_matrix(const IntMatrix& a);

struct EdgeModel {
  int source;
  int range;
  int occurrence;  // 1-based among parallel edges
};

struct RootEdge {
  int vertex;
  int slot;
};

class BratteliDiagram {
 public:
  // Throws for non-primitive matrices and for A = (1).
  static BratteliDiagram build(const IntMatrix& a, int symmetry_order, std::vector<std::string> letters = {},
                               int dimension = 1);

  int vertex_count() const { return static_cast<int>(matrix_.size()); }
  int symmetry_order() const { return symmetry_order_; }
  int dimension() const { return dimension_; }
  const IntMatrix& matrix() const { return matrix_; }
  const std::vector<std::string>& letters() const { return letters_; }
  const std::vector<EdgeModel>& edges() const { return edges_; }
  const std::vector<RootEdge>& root_edges() const { return roots_; }
  const std::vector<int>& out_edges(int vertex) const { return out_[vertex]; }
  int out_degree(int vertex) const { return static_cast<int>(out_[vertex].size()); }
  int root_edge_index(int vertex, int slot) const { return vertex * symmetry_order_ + slot; }
  std::string edge_label(int edge) const;

 private:
  IntMatrix matrix_;
  std::vector<std::string> letters_;
  std::vector<EdgeModel> edges_;
  std::vector<RootEdge> roots_;
  std::vector<std::vector<int>> out_;
  int symmetry_order_ = 1;
  int dimension_ = 1;
};

// A finite path: a root edge followed by composable edge models.
// root < 0 is the empty path (the root vertex itself). length() counts the
// root edge, so generation-n paths carry n-1 edge models after it.
struct Path {
  int root = -1;
  std::vector<int> edges;

  bool empty() const { return root < 0; }
  int length() const { return root < 0 ? 0 : 1 + static_cast<int>(edges.size()); }
  Path prefix(int length) const;
  friend auto operator<=>(const Path&, const Path&) = default;
};

int end_vertex(const BratteliDiagram& diagram, const Path& path);
bool is_valid(const BratteliDiagram& diagram, const Path& path);
std::string path_id(const BratteliDiagram& diagram, const Path& path);

struct PathTable {
  int generation = 0;
  std::vector<Path> paths;
};

Integer predicted_path_count(const BratteliDiagram& diagram, int n);
PathTable enumerate_paths(const BratteliDiagram& diagram, int n, std::size_t cap = kDefaultPathCap);

// Edge indices leaving the end of the path; root-edge indices for the empty path.
std::vector<int> extensions(const BratteliDiagram& diagram, const Path& path);
int extension_count(const BratteliDiagram& diagram, const Path& path);
Path extend(const Path& path, int index);
std::vector<std::pair<int, int>> ext_pairs(const BratteliDiagram& diagram, const Path& path);

BratteliDiagram dual_diagram(const BratteliDiagram& diagram);
Path longest_common_prefix(const Path& x, const Path& y);

}  // namespace bratspec
