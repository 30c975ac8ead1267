#include "bredon/diagram_metrics.hpp"

#include "bredon/complex.hpp"
#include "bredon/error.hpp"
#include "bredon/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <random>

namespace bredon {

double match_cost(const Bar& a, const Bar& b) {
  if (a.is_infinite() != b.is_infinite()) return kInfinity;
  if (a.is_infinite()) return std::abs(a.birth - b.birth);
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_cost(const Bar& bar) { return bar.is_infinite() ? kInfinity : (bar.death - bar.birth) / 2.0; }

namespace {

/// Augmented bipartite graph of two finite point sets plus diagonal copies.
/// Left: a-points [0, n), diagonal copies of b-points [n, n+m).
/// Right: b-points [0, m), diagonal copies of a-points [m, m+n).
class ThresholdMatcher {
 public:
  ThresholdMatcher(std::vector<Bar> a, std::vector<Bar> b) : a_(std::move(a)), b_(std::move(b)) {}

  std::size_t size() const { return a_.size() + b_.size(); }

  double cost(std::size_t l, std::size_t r) const {
    const auto n = a_.size(), m = b_.size();
    if (l < n && r < m) return match_cost(a_[l], b_[r]);
    if (l < n) return (r - m == l) ? diagonal_cost(a_[l]) : kInfinity;
    if (r < m) return (l - n == r) ? diagonal_cost(b_[r]) : kInfinity;
    return 0.0;
  }

  std::vector<double> candidates() const {
    std::vector<double> c{0.0};
    for (const auto& x : a_) {
      c.push_back(diagonal_cost(x));
      for (const auto& y : b_) c.push_back(match_cost(x, y));
    }
    for (const auto& y : b_) c.push_back(diagonal_cost(y));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
  }

  /// Hopcroft-Karp on edges with cost <= threshold. Returns match of each left vertex (-1 if none).
  std::vector<int> match(double threshold) const {
    const std::size_t N = size();
    std::vector<std::vector<int>> adj(N);
    for (std::size_t l = 0; l < N; ++l)
      for (std::size_t r = 0; r < N; ++r)
        if (cost(l, r) <= threshold) adj[l].push_back(int(r));

    std::vector<int> left(N, -1), right(N, -1), dist(N);
    constexpr int kInf = std::numeric_limits<int>::max();
    auto bfs = [&] {
      std::deque<int> q;
      bool found = false;
      for (std::size_t l = 0; l < N; ++l) {
        if (left[l] < 0) {
          dist[l] = 0;
          q.push_back(int(l));
        } else {
          dist[l] = kInf;
        }
      }
      while (!q.empty()) {
        int l = q.front();
        q.pop_front();
        for (int r : adj[std::size_t(l)]) {
          int l2 = right[std::size_t(r)];
          if (l2 < 0) {
            found = true;
          } else if (dist[std::size_t(l2)] == kInf) {
            dist[std::size_t(l2)] = dist[std::size_t(l)] + 1;
            q.push_back(l2);
          }
        }
      }
      return found;
    };
    std::function<bool(int)> dfs = [&](int l) {
      for (int r : adj[std::size_t(l)]) {
        int l2 = right[std::size_t(r)];
        if (l2 < 0 || (dist[std::size_t(l2)] == dist[std::size_t(l)] + 1 && dfs(l2))) {
          left[std::size_t(l)] = r;
          right[std::size_t(r)] = l;
          return true;
        }
      }
      dist[std::size_t(l)] = kInf;
      return false;
    };
    while (bfs())
      for (std::size_t l = 0; l < N; ++l)
        if (left[l] < 0) dfs(int(l));
    return left;
  }

  static bool perfect(const std::vector<int>& m) {
    return std::all_of(m.begin(), m.end(), [](int r) { return r >= 0; });
  }

 private:
  std::vector<Bar> a_, b_;
};

struct Split {
  std::vector<Bar> finite;
  std::vector<int> finite_index;
  std::vector<std::pair<double, int>> infinite;  // (birth, index), sorted
};

Split split(const std::vector<Bar>& bars) {
  Split s;
  for (std::size_t i = 0; i < bars.size(); ++i) {
    if (bars[i].is_infinite()) {
      s.infinite.emplace_back(bars[i].birth, int(i));
    } else {
      s.finite.push_back(bars[i]);
      s.finite_index.push_back(int(i));
    }
  }
  std::sort(s.infinite.begin(), s.infinite.end());
  return s;
}

}  // namespace

BottleneckResult bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b,
                                     int degree) {
  BottleneckResult result;
  result.certificate.degree = degree;
  const auto sa = split(a.degree(degree));
  const auto sb = split(b.degree(degree));
  if (sa.infinite.size() != sb.infinite.size()) {
    result.infinite = true;
    result.distance = result.certificate.cost = kInfinity;
    return result;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < sa.infinite.size(); ++i) {
    result.certificate.pairs.push_back({sa.infinite[i].second, sb.infinite[i].second});
    worst = std::max(worst, std::abs(sa.infinite[i].first - sb.infinite[i].first));
  }

  const ThresholdMatcher matcher(sa.finite, sb.finite);
  const auto cands = matcher.candidates();
  std::size_t lo = 0, hi = cands.size() - 1;  // the largest candidate is always feasible
  std::vector<int> best = matcher.match(cands[hi]);
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto m = matcher.match(cands[mid]);
    if (ThresholdMatcher::perfect(m)) {
      hi = mid;
      best = std::move(m);
    } else {
      lo = mid + 1;
    }
  }
  const auto n = sa.finite.size(), mm = sb.finite.size();
  for (std::size_t l = 0; l < best.size(); ++l) {
    const auto r = std::size_t(best[l]);
    worst = std::max(worst, matcher.cost(l, r));
    if (l < n && r < mm)
      result.certificate.pairs.push_back({sa.finite_index[l], sb.finite_index[r]});
    else if (l < n)
      result.certificate.pairs.push_back({sa.finite_index[l], kDiagonal});
    else if (r < mm)
      result.certificate.pairs.push_back({kDiagonal, sb.finite_index[r]});
  }
  result.distance = result.certificate.cost = worst;
  return result;
}

double bottleneck_max(const PersistenceDiagram& a, const PersistenceDiagram& b, int max_degree) {
  double d = 0.0;
  for (int k = 0; k <= max_degree; ++k) d = std::max(d, bottleneck_distance(a, b, k).distance);
  return d;
}

double certificate_cost(const PersistenceDiagram& a, const PersistenceDiagram& b,
                        const MatchingCertificate& certificate) {
  const auto& xa = a.degree(certificate.degree);
  const auto& xb = b.degree(certificate.degree);
  std::vector<int> used_a(xa.size(), 0), used_b(xb.size(), 0);
  double cost = 0.0;
  for (const auto& p : certificate.pairs) {
    if (p.a == kDiagonal && p.b == kDiagonal) throw InputError("certificate pairs two diagonals");
    if (p.a != kDiagonal && (p.a < 0 || std::size_t(p.a) >= xa.size()))
      throw InputError("certificate index out of range in diagram a");
    if (p.b != kDiagonal && (p.b < 0 || std::size_t(p.b) >= xb.size()))
      throw InputError("certificate index out of range in diagram b");
    if (p.a != kDiagonal) ++used_a[std::size_t(p.a)];
    if (p.b != kDiagonal) ++used_b[std::size_t(p.b)];
    double c = 0.0;
    if (p.a == kDiagonal)
      c = diagonal_cost(xb[std::size_t(p.b)]);
    else if (p.b == kDiagonal)
      c = diagonal_cost(xa[std::size_t(p.a)]);
    else
      c = match_cost(xa[std::size_t(p.a)], xb[std::size_t(p.b)]);
    cost = std::max(cost, c);
  }
  auto once = [](const std::vector<int>& u) {
    return std::all_of(u.begin(), u.end(), [](int c) { return c == 1; });
  };
  if (!once(used_a) || !once(used_b)) throw InputError("certificate does not match every bar exactly once");
  return cost;
}

InterleavingResult check_interleaving(const PersistenceDiagram& a, const PersistenceDiagram& b,
                                      double epsilon, int degree, double tolerance) {
  if (!(epsilon >= 0.0)) throw InputError("check_interleaving: epsilon must be nonnegative");
  InterleavingResult out;
  auto bn = bottleneck_distance(a, b, degree);
  out.distance = bn.distance;
  out.certificate = bn.certificate;
  out.interleaved = !bn.infinite && bn.distance <= epsilon + tolerance;
  if (out.interleaved) return out;

  const auto sa = split(a.degree(degree));
  const auto sb = split(b.degree(degree));
  if (bn.infinite) {
    const bool a_extra = sa.infinite.size() > sb.infinite.size();
    const auto& extra = a_extra ? sa.infinite : sb.infinite;
    const auto& bars = a_extra ? a.degree(degree) : b.degree(degree);
    out.violating_bar = bars[std::size_t(extra.back().second)];
    out.violating_side = a_extra ? 'a' : 'b';
    return out;
  }
  for (std::size_t i = 0; i < sa.infinite.size(); ++i)
    if (std::abs(sa.infinite[i].first - sb.infinite[i].first) > epsilon + tolerance) {
      out.violating_bar = a.degree(degree)[std::size_t(sa.infinite[i].second)];
      out.violating_side = 'a';
      return out;
    }
  const ThresholdMatcher matcher(sa.finite, sb.finite);
  const auto m = matcher.match(epsilon + tolerance);
  for (std::size_t l = 0; l < m.size(); ++l) {
    if (m[l] >= 0) continue;
    if (l < sa.finite.size()) {
      out.violating_bar = sa.finite[l];
      out.violating_side = 'a';
    } else {
      out.violating_bar = sb.finite[l - sa.finite.size()];
      out.violating_side = 'b';
    }
    break;
  }
  return out;
}

PointCloud perturb(const PointCloud& cloud, std::span<const int> subset, double scale,
                   std::uint64_t seed, int trial) {
  PointCloud out = cloud;
  if (scale == 0.0) return out;
  const int d = cloud.dim();
  for (int i : subset) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(trial),
                      std::uint32_t(i)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unit;
    Eigen::RowVectorXd dir(d);
    do {
      for (int a = 0; a < d; ++a) dir(a) = gauss(rng);
    } while (dir.norm() == 0.0);
    const double radius = scale * std::pow(unit(rng), 1.0 / d);
    out.points.row(i) += radius * dir / dir.norm();
  }
  return out;
}

PredicateVerdict stability_predicate(const PointCloud& cloud, std::span<const int> subset,
                                     const StabilityOptions& options) {
  if (subset.empty()) throw InputError("stability_predicate: subset must be nonempty");
  if (options.trials < 1) throw InputError("stability_predicate: trials must be at least 1");
  if (!(options.perturbation_scale >= 0.0))
    throw InputError("stability_predicate: perturbation scale must be nonnegative");
  if (!(options.K > 0.0)) throw InputError("stability_predicate: K must be positive");

  const auto& rips = options.rips;
  const auto base = compute_persistence(
      vietoris_rips(cloud, rips.max_scale, rips.max_dim, subset), rips.max_degree);
  const double bound = options.K * options.perturbation_scale + kMatchTolerance;

  PredicateVerdict verdict;
  verdict.vacuous = subset.size() == 1;
  verdict.trials = parallel_map(
      std::size_t(options.trials),
      [&](std::size_t t) {
        StabilityTrial trial;
        trial.trial = int(t);
        trial.epsilon = options.perturbation_scale;
        const auto moved = perturb(cloud, subset, options.perturbation_scale, options.seed, int(t));
        const auto dgm = compute_persistence(
            vietoris_rips(moved, rips.max_scale, rips.max_dim, subset), rips.max_degree);
        double worst = 0.0;
        for (int k = 0; k <= rips.max_degree; ++k) {
          const double d = bottleneck_distance(base, dgm, k).distance;
          trial.distances.push_back(d);
          worst = std::max(worst, d);
          if (d > bound) trial.holds = false;
        }
        if (options.perturbation_scale > 0.0)
          trial.ratio = worst / options.perturbation_scale;
        else
          trial.ratio = worst == 0.0 ? 0.0 : kInfinity;
        return trial;
      },
      options.workers);

  for (const auto& t : verdict.trials) {
    const double worst = *std::max_element(t.distances.begin(), t.distances.end());
    verdict.worst_distance = std::max(verdict.worst_distance, worst);
    verdict.worst_ratio = std::max(verdict.worst_ratio, t.ratio);
    if (!t.holds && verdict.holds) {
      verdict.holds = false;
      verdict.witness_trial = t.trial;
    }
  }
  return verdict;
}

}  // namespace bredon
