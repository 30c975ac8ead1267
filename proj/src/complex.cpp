#include "bredon/complex.hpp"

#include "bredon/error.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace bredon {

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (int x : v) h = (h ^ std::size_t(unsigned(x))) * 1099511628211ULL;
    return h;
  }
};

std::vector<int> drop(const std::vector<int>& v, std::size_t i) {
  std::vector<int> out;
  out.reserve(v.size() - 1);
  for (std::size_t j = 0; j < v.size(); ++j)
    if (j != i) out.push_back(v[j]);
  return out;
}

}  // namespace

bool filtration_less(const Simplex& a, const Simplex& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
  return a.vertices < b.vertices;
}

Filtration Filtration::from_simplices(std::vector<Simplex> simplices, int vertex_count) {
  std::sort(simplices.begin(), simplices.end(), filtration_less);
  return validated(std::move(simplices), vertex_count);
}

Filtration Filtration::from_ordered(std::vector<Simplex> simplices, int vertex_count) {
  return validated(std::move(simplices), vertex_count);
}

Filtration Filtration::validated(std::vector<Simplex> simplices, int vertex_count) {
  Filtration f;
  std::unordered_map<std::vector<int>, std::size_t, VectorHash> index;
  index.reserve(simplices.size());
  int largest = -1;
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    const auto& s = simplices[i];
    if (s.vertices.empty()) throw FiltrationOrderError({}, "empty simplex in filtration");
    if (!std::is_sorted(s.vertices.begin(), s.vertices.end()) ||
        std::adjacent_find(s.vertices.begin(), s.vertices.end()) != s.vertices.end() ||
        s.vertices.front() < 0)
      throw FiltrationOrderError(s.vertices, "simplex " + format_simplex(s.vertices) +
                                                 " vertices must be strictly ascending and nonnegative");
    if (i > 0 && s.value < simplices[i - 1].value)
      throw FiltrationOrderError(s.vertices, "simplex " + format_simplex(s.vertices) +
                                                 " breaks value monotonicity of the order");
    if (s.vertices.size() > 1) {
      for (std::size_t j = 0; j < s.vertices.size(); ++j) {
        auto face = drop(s.vertices, j);
        auto it = index.find(face);
        if (it == index.end())
          throw FiltrationOrderError(s.vertices, "simplex " + format_simplex(s.vertices) +
                                                     " appears before its face " + format_simplex(face));
        if (simplices[it->second].value > s.value)
          throw FiltrationOrderError(s.vertices, "simplex " + format_simplex(s.vertices) +
                                                     " has a smaller value than its face " +
                                                     format_simplex(face));
      }
    }
    if (!index.emplace(s.vertices, i).second)
      throw FiltrationOrderError(s.vertices, "duplicate simplex " + format_simplex(s.vertices));
    f.max_dim_ = std::max(f.max_dim_, s.dim());
    largest = std::max(largest, s.vertices.back());
  }
  if (vertex_count >= 0 && largest >= vertex_count)
    throw InputError("vertex " + std::to_string(largest) + " exceeds vertex count " +
                     std::to_string(vertex_count));
  f.vertex_count_ = vertex_count >= 0 ? vertex_count : largest + 1;
  f.simplices_ = std::move(simplices);
  return f;
}

std::vector<int> Filtration::vertices() const {
  std::vector<int> out;
  for (const auto& s : simplices_)
    if (s.vertices.size() == 1) out.push_back(s.vertices[0]);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Filtration::prefix_size(double scale) const {
  return std::size_t(std::upper_bound(simplices_.begin(), simplices_.end(), scale,
                                      [](double t, const Simplex& s) { return t < s.value; }) -
                     simplices_.begin());
}

double Filtration::max_value() const { return simplices_.empty() ? 0.0 : simplices_.back().value; }

Filtration vietoris_rips(const PointCloud& cloud, double max_scale, int max_dim,
                         std::optional<std::span<const int>> subset) {
  if (max_dim < 0) throw InputError("vietoris_rips: max_dim must be nonnegative");
  std::vector<int> verts;
  if (subset) {
    verts = normalized(std::vector<int>(subset->begin(), subset->end()));
    if (!verts.empty() && (verts.front() < 0 || verts.back() >= cloud.size()))
      throw InputError("vietoris_rips: subset index outside the cloud");
  } else {
    verts.resize(std::size_t(cloud.size()));
    for (int i = 0; i < cloud.size(); ++i) verts[std::size_t(i)] = i;
  }
  const int n = static_cast<int>(verts.size());
  max_dim = std::min(max_dim, std::max(n - 1, 0));

  const Eigen::MatrixXd pts = cloud.select(verts).points;
  const Eigen::MatrixXd dist = pairwise_distances(pts);
  std::vector<std::vector<int>> upper(static_cast<std::size_t>(n));  // local neighbors with larger index
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (dist(i, j) <= max_scale) upper[std::size_t(i)].push_back(j);

  std::vector<Simplex> out;
  std::vector<int> current;
  std::function<void(double, const std::vector<int>&)> expand = [&](double value,
                                                                    const std::vector<int>& cand) {
    Simplex s;
    for (int l : current) s.vertices.push_back(verts[std::size_t(l)]);
    s.value = value;
    out.push_back(std::move(s));
    if (static_cast<int>(current.size()) > max_dim) return;
    for (int u : cand) {
      double v = value;
      for (int w : current) v = std::max(v, dist(w, u));
      std::vector<int> next;
      std::set_intersection(cand.begin(), cand.end(), upper[std::size_t(u)].begin(),
                            upper[std::size_t(u)].end(), std::back_inserter(next));
      current.push_back(u);
      expand(v, next);
      current.pop_back();
    }
  };
  for (int i = 0; i < n; ++i) {
    current = {i};
    expand(0.0, upper[std::size_t(i)]);
  }
  return Filtration::from_simplices(std::move(out), cloud.size());
}

Filtration nerve_of_sets(const std::vector<std::vector<int>>& sets, int max_dim) {
  if (max_dim < 0) throw InputError("nerve: max_dim must be nonnegative");
  std::vector<Simplex> out;
  std::vector<int> current;
  std::function<void(std::size_t, const std::vector<int>&)> expand =
      [&](std::size_t next, const std::vector<int>& running) {
        out.push_back({current, 0.0});
        if (static_cast<int>(current.size()) > max_dim) return;
        for (std::size_t j = next; j < sets.size(); ++j) {
          auto inter = set_intersection(running, sets[j]);
          if (inter.empty()) continue;
          current.push_back(int(j));
          expand(j + 1, inter);
          current.pop_back();
        }
      };
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].empty()) continue;
    current = {int(i)};
    expand(i + 1, sets[i]);
  }
  return Filtration::from_simplices(std::move(out), static_cast<int>(sets.size()));
}

Filtration nerve(const Cover& cover, int max_dim) {
  std::vector<std::vector<int>> sets;
  for (const auto& e : cover.elements()) sets.push_back(e.members);
  return nerve_of_sets(sets, max_dim);
}

Filtration restrict_to(const Filtration& filtration, std::span<const int> subset) {
  const auto keep = normalized(std::vector<int>(subset.begin(), subset.end()));
  std::vector<Simplex> out;
  for (const auto& s : filtration.simplices())
    if (std::includes(keep.begin(), keep.end(), s.vertices.begin(), s.vertices.end())) out.push_back(s);
  return Filtration::from_ordered(std::move(out), filtration.vertex_count());
}

Filtration disjoint_union(const Filtration& a, const Filtration& b) {
  std::vector<Simplex> out = a.simplices();
  const int shift = a.vertex_count();
  for (auto s : b.simplices()) {
    for (int& v : s.vertices) v += shift;
    out.push_back(std::move(s));
  }
  return Filtration::from_simplices(std::move(out), a.vertex_count() + b.vertex_count());
}

ChainComplex::ChainComplex(std::span<const Simplex> simplices) {
  for (const auto& s : simplices) {
    const auto k = std::size_t(s.dim());
    if (cells_.size() <= k) cells_.resize(k + 1);
    index_.emplace(s.vertices, cells_[k].size());
    cells_[k].push_back(s.vertices);
  }
}

std::size_t ChainComplex::count(int k) const {
  return (k < 0 || k >= static_cast<int>(cells_.size())) ? 0 : cells_[std::size_t(k)].size();
}

const std::vector<std::vector<int>>& ChainComplex::cells(int k) const {
  static const std::vector<std::vector<int>> kEmpty;
  return (k < 0 || k >= static_cast<int>(cells_.size())) ? kEmpty : cells_[std::size_t(k)];
}

std::optional<std::size_t> ChainComplex::index_of(const std::vector<int>& vertices) const {
  auto it = index_.find(vertices);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

gf2::BitVector ChainComplex::boundary_of(int k, std::size_t cell) const {
  gf2::BitVector col(count(k - 1));
  if (k <= 0) return col;
  const auto& s = cells_[std::size_t(k)][cell];
  for (std::size_t j = 0; j < s.size(); ++j) {
    auto face = drop(s, j);
    auto idx = index_of(face);
    if (!idx) throw FiltrationOrderError(s, "simplex " + format_simplex(s) + " is missing face " +
                                                format_simplex(face));
    col.set(*idx);
  }
  return col;
}

std::vector<gf2::BitVector> ChainComplex::boundary(int k) const {
  std::vector<gf2::BitVector> cols;
  if (k <= 0) return cols;
  cols.reserve(count(k));
  for (std::size_t c = 0; c < count(k); ++c) cols.push_back(boundary_of(k, c));
  return cols;
}

std::size_t ChainComplex::boundary_rank(int k) const {
  if (k <= 0 || count(k) == 0) return 0;
  return gf2::rank(boundary(k));
}

int ChainComplex::betti(int k) const {
  if (k < 0) return 0;
  return static_cast<int>(count(k)) - static_cast<int>(boundary_rank(k)) -
         static_cast<int>(boundary_rank(k + 1));
}

std::vector<int> betti_numbers(const Filtration& complex, double at_scale, int max_degree) {
  if (max_degree < 0) throw InputError("betti_numbers: max_degree must be nonnegative");
  const auto n = complex.prefix_size(at_scale);
  ChainComplex chains(std::span(complex.simplices().data(), n));
  std::vector<int> out;
  for (int k = 0; k <= max_degree; ++k) out.push_back(chains.betti(k));
  return out;
}

long euler_characteristic(const Filtration& complex, double at_scale) {
  long chi = 0;
  const auto n = complex.prefix_size(at_scale);
  for (std::size_t i = 0; i < n; ++i) chi += (complex.simplices()[i].dim() % 2 == 0) ? 1 : -1;
  return chi;
}

}  // namespace bredon
