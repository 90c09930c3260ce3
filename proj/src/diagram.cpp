#include "diagram.hpp"

#include <algorithm>
#include <map>

#include "error.hpp"

namespace bratspec {

SubstitutionRule SubstitutionRule::from_strings(const std::vector<std::pair<char, std::string>>& rules,
                                                int dimension) {
  SubstitutionRule rule;
  rule.dimension = dimension;
  std::map<char, int> index;
  for (const auto& [letter, image] : rules) {
    index[letter] = static_cast<int>(rule.alphabet.size());
    rule.alphabet.emplace_back(1, letter);
  }
  for (const auto& [letter, image] : rules) {
    std::vector<int> word;
    for (char c : image) {
      auto it = index.find(c);
      if (it == index.end()) fail(ErrorCode::invalid_argument, std::string("letter not in alphabet: ") + c);
      word.push_back(it->second);
    }
    rule.images.push_back(std::move(word));
  }
  return rule;
}

IntMatrix abelianize(const SubstitutionRule& rule) {
  const std::size_t r = rule.alphabet.size();
  if (r == 0 || rule.images.size() != r) fail(ErrorCode::invalid_argument, "one image per letter required");
  IntMatrix a(r, std::vector<long>(r, 0));
  for (std::size_t q = 0; q < r; ++q) {
    if (rule.images[q].empty()) fail(ErrorCode::invalid_argument, "empty image for letter " + rule.alphabet[q]);
    for (int p : rule.images[q]) {
      if (p < 0 || static_cast<std::size_t>(p) >= r) fail(ErrorCode::invalid_argument, "letter index out of range");
      ++a[p][q];
    }
  }
  return a;
}

void validate_matrix(const IntMatrix& a) {
  if (a.empty()) fail(ErrorCode::invalid_argument, "empty matrix");
  for (const auto& row : a) {
    if (row.size() != a.size()) fail(ErrorCode::parse, "matrix must be square (ragged or non-square rows)");
    for (long x : row)
      if (x < 0) fail(ErrorCode::invalid_argument, "matrix entries must be non-negative");
  }
}

bool is_primitive(const IntMatrix& a) {
  validate_matrix(a);
  const std::size_t n = a.size();
  // Wielandt: primitive iff A^((n-1)^2+1) is positive.
  std::vector<std::vector<char>> b(n, std::vector<char>(n)), p;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b[i][j] = a[i][j] > 0;
  p = b;
  const std::size_t limit = (n - 1) * (n - 1) + 1;
  for (std::size_t k = 1; k < limit; ++k) {
    std::vector<std::vector<char>> q(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        if (p[i][l])
          for (std::size_t j = 0; j < n; ++j) q[i][j] |= b[l][j];
    p = std::move(q);
  }
  for (const auto& row : p)
    for (char x : row)
      if (!x) return false;
  return true;
}

namespace {

std::string default_letter(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "v" + std::to_string(i);
}

// Every vertex must reach at least two distinct paths at some finite depth.
bool has_two_paths_everywhere(const IntMatrix& a) {
  const std::size_t n = a.size();
  std::vector<Integer> walks(n, 1);
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<Integer> next(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) next[i] += a[i][j] * walks[j];
    walks = std::move(next);
    if (std::all_of(walks.begin(), walks.end(), [](const Integer& w) { return w >= 2; })) return true;
  }
  return false;
}

}  // namespace

BratteliDiagram BratteliDiagram::build(const IntMatrix& a, int symmetry_order, std::vector<std::string> letters,
                                       int dimension) {
  validate_matrix(a);
  if (symmetry_order < 1) fail(ErrorCode::invalid_argument, "symmetry order must be >= 1");
  if (dimension < 1) fail(ErrorCode::invalid_argument, "dimension must be >= 1");
  if (!is_primitive(a)) fail(ErrorCode::not_primitive, "matrix is not primitive");
  if (!has_two_paths_everywhere(a))
    fail(ErrorCode::hypothesis, "some vertex has a single infinite path (A = (1) is excluded)");
  const std::size_t n = a.size();
  if (letters.empty())
    for (std::size_t i = 0; i < n; ++i) letters.push_back(default_letter(i));
  if (letters.size() != n) fail(ErrorCode::invalid_argument, "letter count does not match matrix size");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (letters[i] == letters[j]) fail(ErrorCode::invalid_argument, "duplicate letter " + letters[i]);

  BratteliDiagram d;
  d.matrix_ = a;
  d.letters_ = std::move(letters);
  d.symmetry_order_ = symmetry_order;
  d.dimension_ = dimension;
  d.out_.resize(n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (long k = 1; k <= a[p][q]; ++k) {
        d.out_[p].push_back(static_cast<int>(d.edges_.size()));
        d.edges_.push_back({static_cast<int>(p), static_cast<int>(q), static_cast<int>(k)});
      }
  for (std::size_t v = 0; v < n; ++v)
    for (int s = 0; s < symmetry_order; ++s) d.roots_.push_back({static_cast<int>(v), s});
  return d;
}

std::string BratteliDiagram::edge_label(int edge) const {
  const EdgeModel& e = edges_[edge];
  std::string label = letters_[e.source] + ">" + letters_[e.range];
  if (matrix_[e.source][e.range] > 1) label += "#" + std::to_string(e.occurrence);
  return label;
}

Path Path::prefix(int len) const {
  if (len <= 0) return Path{};
  Path p{root, {}};
  p.edges.assign(edges.begin(), edges.begin() + std::min<std::size_t>(edges.size(), len - 1));
  return p;
}

int end_vertex(const BratteliDiagram& diagram, const Path& path) {
  if (path.empty()) return -1;
  if (path.edges.empty()) return diagram.root_edges()[path.root].vertex;
  return diagram.edges()[path.edges.back()].range;
}

bool is_valid(const BratteliDiagram& diagram, const Path& path) {
  if (path.empty()) return path.edges.empty();
  if (path.root >= static_cast<int>(diagram.root_edges().size())) return false;
  int v = diagram.root_edges()[path.root].vertex;
  for (int e : path.edges) {
    if (e < 0 || e >= static_cast<int>(diagram.edges().size())) return false;
    if (diagram.edges()[e].source != v) return false;
    v = diagram.edges()[e].range;
  }
  return true;
}

std::string path_id(const BratteliDiagram& diagram, const Path& path) {
  if (path.empty()) return "o";
  const RootEdge& r = diagram.root_edges()[path.root];
  std::string id = diagram.letters()[r.vertex];
  if (diagram.symmetry_order() > 1) id += "@" + std::to_string(r.slot);
  for (int e : path.edges) {
    const EdgeModel& m = diagram.edges()[e];
    id += "." + diagram.letters()[m.range];
    if (diagram.matrix()[m.source][m.range] > 1) id += "#" + std::to_string(m.occurrence);
  }
  return id;
}

Integer predicted_path_count(const BratteliDiagram& diagram, int n) {
  if (n <= 0) return 1;
  const int r = diagram.vertex_count();
  std::vector<Integer> walks(r, 1);
  for (int k = 1; k < n; ++k) {
    std::vector<Integer> next(r, 0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) next[i] += diagram.matrix()[i][j] * walks[j];
    walks = std::move(next);
  }
  Integer total = 0;
  for (const RootEdge& e : diagram.root_edges()) total += walks[e.vertex];
  return total;
}

PathTable enumerate_paths(const BratteliDiagram& diagram, int n, std::size_t cap) {
  if (n < 1) fail(ErrorCode::invalid_argument, "path length must be >= 1");
  Integer predicted = predicted_path_count(diagram, n);
  if (predicted > Integer(static_cast<unsigned long>(cap)))
    fail(ErrorCode::limit, "generation " + std::to_string(n) + " has " + predicted.get_str() +
                               " paths, above the cap of " + std::to_string(cap));
  PathTable table;
  table.generation = n;
  table.paths.reserve(predicted.get_ui());
  Path cur;
  auto dfs = [&](auto&& self, int v) -> void {
    if (cur.length() == n) {
      table.paths.push_back(cur);
      return;
    }
    for (int e : diagram.out_edges(v)) {
      cur.edges.push_back(e);
      self(self, diagram.edges()[e].range);
      cur.edges.pop_back();
    }
  };
  for (int r = 0; r < static_cast<int>(diagram.root_edges().size()); ++r) {
    cur.root = r;
    dfs(dfs, diagram.root_edges()[r].vertex);
  }
  return table;
}

std::vector<int> extensions(const BratteliDiagram& diagram, const Path& path) {
  if (path.empty()) {
    std::vector<int> all(diagram.root_edges().size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return all;
  }
  return diagram.out_edges(end_vertex(diagram, path));
}

int extension_count(const BratteliDiagram& diagram, const Path& path) {
  if (path.empty()) return static_cast<int>(diagram.root_edges().size());
  return diagram.out_degree(end_vertex(diagram, path));
}

Path extend(const Path& path, int index) {
  if (path.empty()) return Path{index, {}};
  Path p = path;
  p.edges.push_back(index);
  return p;
}

std::vector<std::pair<int, int>> ext_pairs(const BratteliDiagram& diagram, const Path& path) {
  std::vector<int> ext = extensions(diagram, path);
  std::vector<std::pair<int, int>> pairs;
  for (int e : ext)
    for (int f : ext)
      if (e != f) pairs.emplace_back(e, f);
  return pairs;
}

BratteliDiagram dual_diagram(const BratteliDiagram& diagram) {
  const auto& edges = diagram.edges();
  const std::size_t m = edges.size();
  IntMatrix dual(m, std::vector<long>(m, 0));
  std::vector<std::string> labels;
  for (std::size_t e = 0; e < m; ++e) {
    labels.push_back(diagram.edge_label(static_cast<int>(e)));
    for (std::size_t f = 0; f < m; ++f) dual[e][f] = edges[e].range == edges[f].source ? 1 : 0;
  }
  return BratteliDiagram::build(dual, diagram.symmetry_order(), std::move(labels), diagram.dimension());
}

Path longest_common_prefix(const Path& x, const Path& y) {
  if (x.empty() || y.empty() || x.root != y.root) return Path{};
  Path p{x.root, {}};
  for (std::size_t i = 0; i < x.edges.size() && i < y.edges.size() && x.edges[i] == y.edges[i]; ++i)
    p.edges.push_back(x.edges[i]);
  return p;
}

}  // namespace bratspec
