// bounds.hpp
// Lower bounds on the entropy sum of N projective measurements:
//   MU   two-measurement bound log2(1/c(R,S))
//   SCB  best cyclic chain of pairwise MU bounds plus state-entropy terms
//   LMF  generalised MU bound from max/sum index chains of overlaps
//   RPZ  direct-sum majorisation bound from largest singular values of subsets
// Every enumeration is exhaustive.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eur/core.hpp"
#include "eur/entropy.hpp"

namespace eur {

/// Largest pooled vector count rpz_profile will enumerate (2^24 subsets).
inline constexpr std::size_t kMaxRpzPool = 24;
/// Largest N for which the LMF maximum over measurement orderings is reported.
/// Deltas at or below this are eigensolver roundoff and count as zero.
inline constexpr double kRpzDeltaFloor = 1e-12;
inline constexpr std::size_t kMaxLmfOrderings = 5;

namespace detail {

inline std::size_t common_dim(std::span<const ProjectiveMeasurement> ms, const char* what) {
  if (ms.empty()) throw ValidationError(concat(what, ": empty measurement list"));
  const std::size_t d = ms.front().dim();
  for (const auto& m : ms)
    if (m.dim() != d) throw ValidationError(concat(what, ": measurements differ in dimension"));
  return d;
}

inline void require_at_least_two(std::span<const ProjectiveMeasurement> ms, const char* what) {
  if (ms.size() < 2) throw ValidationError(concat(what, ": needs N >= 2 measurements, got ", ms.size()));
}

inline void require_state_dim(std::size_t d, const DensityOperator& rho, const char* what) {
  if (rho.dim() != d) throw ValidationError(concat(what, ": state dimension ", rho.dim(), " != measurement dimension ", d));
}

// Recursively visits ordered injections of k distinct indices from [0, n).
template <typename F>
void for_each_injection(std::size_t n, std::size_t k, std::vector<std::size_t>& seq, std::vector<bool>& used, F& visit) {
  if (seq.size() == k) {
    visit(std::span<const std::size_t>(seq));
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    used[i] = true;
    seq.push_back(i);
    for_each_injection(n, k, seq, used, visit);
    seq.pop_back();
    used[i] = false;
  }
}

}  // namespace detail

/// log2(1/c(R,S))
inline double mu_bound(const ProjectiveMeasurement& r, const ProjectiveMeasurement& s) {
  return std::max(0.0, -std::log2(overlap_c(r, s)));
}

// ── SCB ─────────────────────────────────────────────────────────────────────

/// Unclamped SCB: max over k in {0, 2..N} and ordered injections sigma of
/// -1/2 log2 C_{k,sigma} + (N - k/2) S(rho), where C_{k,sigma} is the cyclic
/// product of overlaps c(M_s1,M_s2)...c(M_sk,M_s1) and the k = 0 chain term is 0.
inline double scb_bound_raw(std::span<const ProjectiveMeasurement> ms, const DensityOperator& rho) {
  detail::require_at_least_two(ms, "scb_bound");
  const std::size_t d = detail::common_dim(ms, "scb_bound");
  detail::require_state_dim(d, rho, "scb_bound");
  const std::size_t n = ms.size();
  const double s_rho = von_neumann_entropy(rho);

  std::vector<double> c(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) c[i * n + j] = c[j * n + i] = overlap_c(ms[i], ms[j]);

  double best = static_cast<double>(n) * s_rho;
  for (std::size_t k = 2; k <= n; ++k) {
    const double state_term = (static_cast<double>(n) - 0.5 * static_cast<double>(k)) * s_rho;
    auto visit = [&](std::span<const std::size_t> sigma) {
      double chain = 0.0;
      for (std::size_t t = 0; t < k; ++t) chain += std::log2(c[sigma[t] * n + sigma[(t + 1) % k]]);
      best = std::max(best, -0.5 * chain + state_term);
    };
    std::vector<std::size_t> seq;
    std::vector<bool> used(n, false);
    detail::for_each_injection(n, k, seq, used, visit);
  }
  return best;
}

inline double scb_bound(std::span<const ProjectiveMeasurement> ms, const DensityOperator& rho) {
  return std::max(0.0, scb_bound_raw(ms, rho));
}

// ── LMF ─────────────────────────────────────────────────────────────────────

/// b = max_{i_N} sum_{i_2..i_{N-1}} max_{i_1} c(u1_{i1}, u2_{i2}) prod_{m=2}^{N-1} c(um_{im}, u(m+1)_{i(m+1)})
/// for the measurements in the order given. Empty product (N = 2) is 1.
inline double lmf_coefficient(std::span<const ProjectiveMeasurement> ms) {
  detail::require_at_least_two(ms, "lmf_bound");
  const std::size_t d = detail::common_dim(ms, "lmf_bound");
  const std::size_t n = ms.size();

  // links[t][i * d + j] = |<u^t_i | u^{t+1}_j>|^2
  std::vector<std::vector<double>> links(n - 1, std::vector<double>(d * d));
  for (std::size_t t = 0; t + 1 < n; ++t)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) links[t][i * d + j] = std::norm(inner(ms[t][i], ms[t + 1][j]));

  std::vector<double> head(d, 0.0);  // max_{i1} c(u1_{i1}, u2_{i2})
  for (std::size_t i2 = 0; i2 < d; ++i2)
    for (std::size_t i1 = 0; i1 < d; ++i1) head[i2] = std::max(head[i2], links[0][i1 * d + i2]);

  double best = 0.0;
  for (std::size_t last = 0; last < d; ++last) {
    double total = 0.0;
    if (n == 2) {
      total = head[last];
    } else {
      // Odometer over (i_2, ..., i_{N-1}).
      std::vector<std::size_t> idx(n - 2, 0);
      while (true) {
        double term = head[idx[0]];
        for (std::size_t t = 1; t + 1 < n; ++t) {
          const std::size_t from = idx[t - 1];
          const std::size_t to = (t + 1 < n - 1) ? idx[t] : last;
          term *= links[t][from * d + to];
        }
        total += term;
        std::size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == d) idx[pos++] = 0;
        if (pos == idx.size()) break;
      }
    }
    best = std::max(best, total);
  }
  return best;
}

/// Unclamped LMF: (N-1) S(rho) - log2 b.
inline double lmf_bound_raw(std::span<const ProjectiveMeasurement> ms, const DensityOperator& rho) {
  const double b = lmf_coefficient(ms);
  detail::require_state_dim(ms.front().dim(), rho, "lmf_bound");
  return static_cast<double>(ms.size() - 1) * von_neumann_entropy(rho) - std::log2(b);
}

inline double lmf_bound(std::span<const ProjectiveMeasurement> ms, const DensityOperator& rho) {
  return std::max(0.0, lmf_bound_raw(ms, rho));
}

/// LMF maximised over every ordering of the measurement list; nullopt when N > 5.
inline std::optional<double> lmf_bound_max_order(std::span<const ProjectiveMeasurement> ms, const DensityOperator& rho) {
  detail::require_at_least_two(ms, "lmf_bound");
  if (ms.size() > kMaxLmfOrderings) return std::nullopt;
  detail::require_state_dim(detail::common_dim(ms, "lmf_bound"), rho, "lmf_bound");
  const double s_rho = von_neumann_entropy(rho);
  std::vector<std::size_t> perm(ms.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<ProjectiveMeasurement> ordered(ms.begin(), ms.end());
  double best = 0.0;
  do {
    for (std::size_t i = 0; i < perm.size(); ++i) ordered[i] = ms[perm[i]];
    const double raw = static_cast<double>(ms.size() - 1) * s_rho - std::log2(lmf_coefficient(ordered));
    best = std::max(best, raw);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// ── RPZ ─────────────────────────────────────────────────────────────────────

struct MajorizationProfile {
  std::vector<double> s_coeffs;  // S_0 ... S_{dN-1}
  std::vector<double> deltas;    // S_0, S_1 - S_0, ..., clamped at 0
};

namespace detail {

// Depth-first over subsets of the pool; frame holds sum |v><v| for the current
// subset, whose top eigenvalue equals sigma_1^2 of the column matrix.
inline void rpz_visit(std::span<const StateVector> pool, const std::vector<ComplexMatrix>& projectors,
                      std::size_t start, std::size_t count, const ComplexMatrix& frame, std::vector<double>& best) {
  for (std::size_t i = start; i < pool.size(); ++i) {
    ComplexMatrix next = frame + projectors[i];
    const double top = largest_eigenvalue(next);
    best[count] = std::max(best[count], top);
    rpz_visit(pool, projectors, i + 1, count + 1, next, best);
  }
}

}  // namespace detail

/// S_k = max over (k+1)-subsets of the pooled basis vectors of sigma_1^2.
inline MajorizationProfile rpz_profile(std::span<const ProjectiveMeasurement> ms) {
  const std::size_t d = detail::common_dim(ms, "rpz_profile");
  const std::size_t pool_size = d * ms.size();
  if (pool_size > kMaxRpzPool)
    throw CapacityError(detail::concat("rpz_profile: pool of ", pool_size, " vectors exceeds ", kMaxRpzPool));

  std::vector<StateVector> pool;
  pool.reserve(pool_size);
  for (const auto& m : ms)
    for (const auto& v : m.basis()) pool.push_back(v);
  std::vector<ComplexMatrix> projectors;
  projectors.reserve(pool_size);
  for (const auto& v : pool) projectors.push_back(ComplexMatrix::outer(v, v));

  MajorizationProfile prof;
  prof.s_coeffs.assign(pool_size, 0.0);
  detail::rpz_visit(pool, projectors, 0, 0, ComplexMatrix(d, d), prof.s_coeffs);

  prof.deltas.resize(pool_size);
  prof.deltas[0] = prof.s_coeffs[0];
  for (std::size_t k = 1; k < pool_size; ++k) {
    const double delta = prof.s_coeffs[k] - prof.s_coeffs[k - 1];
    if (delta < -kValidationTol) throw std::logic_error("rpz_profile: S_k decreased");
    prof.deltas[k] = delta > kRpzDeltaFloor ? delta : 0.0;
  }
  return prof;
}

/// -sum_i Delta_i log2 Delta_i, Delta_0 = S_0.
inline double rpz_bound(const MajorizationProfile& prof) {
  double h = 0.0;
  for (double x : prof.deltas) h += detail::entropy_term(x);
  return std::max(0.0, h);
}

inline double rpz_bound(std::span<const ProjectiveMeasurement> ms) { return rpz_bound(rpz_profile(ms)); }

// ── Report ──────────────────────────────────────────────────────────────────

struct BoundSelection {
  bool scb = true;
  bool lmf = true;
  bool rpz = true;
};

struct PairwiseMu {
  std::string first;
  std::string second;
  double bound = 0.0;
  double entropy_pair = 0.0;  // H(M_first) + H(M_second)
  bool satisfied = false;
};

struct BoundFlags {
  std::optional<bool> scb;
  std::optional<bool> lmf;
  std::optional<bool> lmf_max_order;
  std::optional<bool> rpz;
};

struct BoundReport {
  EntropyBreakdown entropy;
  double entropy_total = 0.0;
  std::vector<PairwiseMu> mu_pairwise;
  std::optional<double> scb;
  std::optional<double> lmf;
  std::optional<double> lmf_max_order;
  std::optional<double> rpz;
  BoundFlags satisfied;
  double slack = kValidationTol;

  bool all_satisfied() const {
    const auto ok = [](const std::optional<bool>& f) { return !f || *f; };
    for (const auto& p : mu_pairwise)
      if (!p.satisfied) return false;
    return ok(satisfied.scb) && ok(satisfied.lmf) && ok(satisfied.lmf_max_order) && ok(satisfied.rpz);
  }
};

/// Entropy sum, pairwise MU bounds and the selected multi-measurement bounds.
/// A bound is satisfied when entropy_total >= bound - slack.
inline BoundReport bound_report(std::span<const ProjectiveMeasurement> ms, const DensityOperator& rho,
                                double slack = kValidationTol, BoundSelection sel = {}) {
  detail::require_at_least_two(ms, "bound_report");
  detail::require_state_dim(detail::common_dim(ms, "bound_report"), rho, "bound_report");

  BoundReport rep;
  rep.slack = slack;
  rep.entropy = entropy_sum(ms, rho);
  rep.entropy_total = rep.entropy.total;
  const auto holds = [&](double total, double bound) { return total >= bound - slack; };

  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      PairwiseMu p;
      p.first = ms[i].label();
      p.second = ms[j].label();
      p.bound = mu_bound(ms[i], ms[j]);
      p.entropy_pair = rep.entropy.per_measurement[i].second + rep.entropy.per_measurement[j].second;
      p.satisfied = holds(p.entropy_pair, p.bound);
      rep.mu_pairwise.push_back(std::move(p));
    }

  if (sel.scb) {
    rep.scb = scb_bound(ms, rho);
    rep.satisfied.scb = holds(rep.entropy_total, *rep.scb);
  }
  if (sel.lmf) {
    rep.lmf = lmf_bound(ms, rho);
    rep.satisfied.lmf = holds(rep.entropy_total, *rep.lmf);
    rep.lmf_max_order = lmf_bound_max_order(ms, rho);
    if (rep.lmf_max_order) rep.satisfied.lmf_max_order = holds(rep.entropy_total, *rep.lmf_max_order);
  }
  if (sel.rpz) {
    rep.rpz = rpz_bound(ms);
    rep.satisfied.rpz = holds(rep.entropy_total, *rep.rpz);
  }
  return rep;
}

}  // namespace eur
