#include "bredon/persistence.hpp"

#include "bredon/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

namespace bredon {

const std::vector<Bar>& PersistenceDiagram::degree(int k) const {
  static const std::vector<Bar> kEmpty;
  auto it = bars.find(k);
  return it == bars.end() ? kEmpty : it->second;
}

int PersistenceDiagram::alive_at(int k, double t) const {
  int n = 0;
  for (const auto& b : degree(k))
    if (b.birth <= t && t < b.death) ++n;
  return n;
}

void PersistenceDiagram::sort() {
  for (auto& [k, v] : bars) std::sort(v.begin(), v.end());
}

bool same_multiset(const PersistenceDiagram& a, const PersistenceDiagram& b, double tol) {
  std::set<int> degrees;
  for (const auto& [k, v] : a.bars) degrees.insert(k);
  for (const auto& [k, v] : b.bars) degrees.insert(k);
  auto close = [tol](double x, double y) {
    if (std::isinf(x) || std::isinf(y)) return x == y;
    return std::abs(x - y) <= tol;
  };
  for (int k : degrees) {
    auto x = a.degree(k);
    auto y = b.degree(k);
    if (x.size() != y.size()) return false;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!close(x[i].birth, y[i].birth) || !close(x[i].death, y[i].death)) return false;
  }
  return true;
}

PersistenceDiagram multiset_union(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  PersistenceDiagram out = a;
  for (const auto& [k, v] : b.bars) {
    auto& dst = out.bars[k];
    dst.insert(dst.end(), v.begin(), v.end());
  }
  out.sort();
  return out;
}

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (int x : v) h = (h ^ std::size_t(unsigned(x))) * 1099511628211ULL;
    return h;
  }
};

using Column = std::vector<int>;  // ascending row indices

void add_into(Column& target, const Column& source) {
  Column out;
  out.reserve(target.size() + source.size());
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(out));
  target.swap(out);
}

std::vector<gf2::BitVector> cycle_basis(const ChainComplex& chains, int k) {
  if (k == 0) {
    std::vector<gf2::BitVector> out;
    for (std::size_t i = 0; i < chains.count(0); ++i) {
      out.emplace_back(chains.count(0));
      out.back().set(i);
    }
    return out;
  }
  return gf2::kernel_basis(chains.boundary(k));
}

gf2::BitVector padded(const gf2::BitVector& v, std::size_t size) {
  return v.concat(gf2::BitVector(size - v.size()));
}

}  // namespace

PersistenceDiagram compute_persistence(const Filtration& filtration, int max_degree,
                                       PersistenceOptions options) {
  if (max_degree < 0) throw InputError("compute_persistence: max_degree must be nonnegative");
  PersistenceDiagram out;
  for (int k = 0; k <= max_degree; ++k) out.bars[k];

  std::vector<const Simplex*> kept;
  for (const auto& s : filtration.simplices())
    if (s.dim() <= max_degree + 1) kept.push_back(&s);
  const std::size_t n = kept.size();

  std::unordered_map<std::vector<int>, int, VectorHash> index;
  index.reserve(n);
  std::vector<Column> columns(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& s = *kept[j];
    if (s.vertices.size() > 1) {
      std::vector<int> face;
      for (std::size_t d = 0; d < s.vertices.size(); ++d) {
        face.assign(s.vertices.begin(), s.vertices.end());
        face.erase(face.begin() + std::ptrdiff_t(d));
        auto it = index.find(face);
        if (it == index.end())
          throw FiltrationOrderError(s.vertices, "filtration order violated: simplex " +
                                                     format_simplex(s.vertices) + " precedes face " +
                                                     format_simplex(face));
        columns[j].push_back(it->second);
      }
      std::sort(columns[j].begin(), columns[j].end());
    }
    index.emplace(s.vertices, int(j));
  }

  std::vector<int> owner(n, -1);  // row -> column whose low it is
  std::vector<char> paired(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    auto& col = columns[j];
    while (!col.empty() && owner[std::size_t(col.back())] >= 0)
      add_into(col, columns[std::size_t(owner[std::size_t(col.back())])]);
    if (col.empty()) continue;
    const auto low = std::size_t(col.back());
    owner[low] = int(j);
    paired[low] = paired[j] = 1;
    const int k = kept[low]->dim();
    if (k > max_degree) continue;
    const Bar bar{kept[low]->value, kept[j]->value};
    if (bar.birth != bar.death || options.include_zero_length) out.bars[k].push_back(bar);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (paired[i] || !columns[i].empty()) continue;
    const int k = kept[i]->dim();
    if (k <= max_degree) out.bars[k].push_back({kept[i]->value, kInfinity});
  }
  out.sort();
  return out;
}

std::vector<int> betti_curve_oracle(const Filtration& filtration, int degree,
                                    std::span<const double> scales) {
  if (!std::is_sorted(scales.begin(), scales.end()))
    throw InputError("betti_curve_oracle: scales must be sorted ascending");
  std::vector<int> out;
  for (double t : scales) {
    const auto n = filtration.prefix_size(t);
    ChainComplex chains(std::span(filtration.simplices().data(), n));
    out.push_back(chains.betti(degree));
  }
  return out;
}

PersistenceModuleView module_view(const Filtration& filtration, int degree,
                                  std::span<const double> scales) {
  if (!std::is_sorted(scales.begin(), scales.end()))
    throw InputError("module_view: scales must be sorted ascending");
  PersistenceModuleView view;
  view.degree = degree;
  view.scales.assign(scales.begin(), scales.end());
  const auto m = Eigen::Index(scales.size());
  view.ranks = Eigen::MatrixXi::Constant(m, m, -1);

  std::vector<ChainComplex> chains;
  std::vector<std::vector<gf2::BitVector>> cycles, bounds;
  std::vector<std::size_t> bound_rank;
  for (double t : scales) {
    chains.emplace_back(std::span(filtration.simplices().data(), filtration.prefix_size(t)));
    cycles.push_back(cycle_basis(chains.back(), degree));
    bounds.push_back(chains.back().boundary(degree + 1));
    bound_rank.push_back(gf2::rank(bounds.back()));
    view.betti.push_back(chains.back().betti(degree));
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    view.ranks(i, i) = view.betti[std::size_t(i)];
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const auto size = chains[std::size_t(j)].count(degree);
      std::vector<gf2::BitVector> stacked = bounds[std::size_t(j)];
      for (const auto& z : cycles[std::size_t(i)]) stacked.push_back(padded(z, size));
      view.ranks(i, j) = int(gf2::rank(std::move(stacked)) - bound_rank[std::size_t(j)]);
    }
  }
  return view;
}

}  // namespace bredon
