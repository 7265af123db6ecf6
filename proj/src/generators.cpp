#include "oraclust/generators.hpp"

#include <stdexcept>

#include "oraclust/rng.hpp"

namespace oraclust {

Dataset generate_sbm(const SbmSpec& spec) {
  if (spec.n == 0 || spec.k_true == 0 || spec.k_true > spec.n)
    throw std::invalid_argument("sbm: need 1 <= k_true <= n");
  const std::size_t dim = spec.dim == 0 ? spec.k_true : spec.dim;
  if (dim < spec.k_true) throw std::invalid_argument("sbm: dim must be at least k_true");

  Dataset data;
  data.n = spec.n;
  data.dim = dim;
  data.coords.resize(spec.n * dim);
  std::vector<int> labels(spec.n);
  Rng rng(spec.seed);
  std::size_t next = 0;
  for (std::size_t c = 0; c < spec.k_true; ++c) {
    // sizes n/k rounded round-robin: the first n%k clusters get one extra
    const std::size_t size = spec.n / spec.k_true + (c < spec.n % spec.k_true ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i, ++next) {
      labels[next] = static_cast<int>(c);
      double* p = data.coords.data() + next * dim;
      for (std::size_t d = 0; d < dim; ++d)
        p[d] = (d == c ? spec.mu_scale : 0.0) + rng.normal();
    }
  }
  data.labels = std::move(labels);
  return data;
}

TrueMetric generate_hard_instance(const HardInstanceSpec& spec) {
  if (spec.n < 2 || spec.k_true == 0 || spec.k_true > spec.n)
    throw std::invalid_argument("hard instance: need 1 <= k_true <= n, n >= 2");
  const double l =
      spec.l != 0.0 ? spec.l : std::max(2.0, static_cast<double>(spec.n - spec.k_true));
  if (!(l > 1.0)) throw std::invalid_argument("hard instance: l must exceed 1");

  std::vector<int> labels(spec.n);
  std::size_t next = 0;
  for (std::size_t c = 0; c < spec.k_true; ++c) {
    const std::size_t size = spec.n / spec.k_true + (c < spec.n % spec.k_true ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i, ++next) labels[next] = static_cast<int>(c);
  }

  std::vector<double> upper;
  upper.reserve(spec.n * (spec.n - 1) / 2);
  for (std::size_t i = 0; i < spec.n; ++i)
    for (std::size_t j = i + 1; j < spec.n; ++j)
      upper.push_back(labels[i] == labels[j] ? 1.0 : l);
  return TrueMetric::from_matrix(SymMatrix(spec.n, std::move(upper)), std::move(labels));
}

std::shared_ptr<const SymMatrix> build_experiment_weak_matrix(const TrueMetric& metric,
                                                              double delta, std::uint64_t seed) {
  const std::size_t n = metric.size();
  if (n > 16384) throw std::invalid_argument("weak matrix limited to 16384 points");
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must be in [0,1]");
  const auto& labels_opt = metric.labels();
  if (!labels_opt) throw std::invalid_argument("weak matrix requires labels");
  const auto& labels = *labels_opt;
  bool has_intra = false, has_inter = false;
  {
    std::vector<std::size_t> counts;
    for (int l : labels) {
      if (l < 0) throw std::invalid_argument("weak matrix: negative label");
      counts.resize(std::max<std::size_t>(counts.size(), l + 1), 0);
      ++counts[l];
    }
    std::size_t nonempty = 0;
    for (std::size_t c : counts) {
      if (c > 0) ++nonempty;
      if (c > 1) has_intra = true;
    }
    has_inter = nonempty >= 2;
  }
  if (!has_inter) throw std::invalid_argument("weak matrix requires at least two clusters");

  Rng rng(seed);
  const auto nn = static_cast<std::uint32_t>(n);
  auto draw = [&](bool want_same) {
    for (;;) {
      const auto a = static_cast<PointId>(rng.below(nn));
      const auto b = static_cast<PointId>(rng.below(nn));
      if (a == b) continue;
      if ((labels[a] == labels[b]) == want_same) return metric.distance(a, b);
    }
  };

  std::vector<double> upper;
  upper.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = metric.distance(static_cast<PointId>(i), static_cast<PointId>(j));
      if (rng.u01() >= delta) {
        upper.push_back(d);
        continue;
      }
      const bool same = labels[i] == labels[j];
      if (!same && !has_intra)
        throw std::runtime_error("weak matrix: no intra-cluster pair to draw from");
      // flip relation: same-cluster pairs get an inter distance and vice versa
      upper.push_back(draw(!same));
    }
  return std::make_shared<const SymMatrix>(SymMatrix(n, std::move(upper)));
}

}  // namespace oraclust
