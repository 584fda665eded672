// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//
// Partition of {gamma subseteq [d] : |gamma| >= k} into disjoint
// set-intervals <sigma, tau> with |sigma| = k and sigma ~ tau, where
// sigma ~ tau means the componentwise maxima of an attached vector family
// x_1..x_d in R^k agree over the two index sets.
//
// The construction is recursive: a pivot m maximizing the last coordinate
// plays the role of the largest index; subsets avoiding m are covered by
// the same-level partition of the remaining family, subsets containing m by
// the (k-1)-level partition of the remaining family's first k-1 coordinates,
// lifted by adjoining m to both interval endpoints.  All tie-breaks pick the
// smallest index, so the output is deterministic; validity is established by
// the exhaustive verifier, not by canonical form.
//

#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmono/rational.hpp"
#include "kmono/subset.hpp"

namespace kmono {

struct SetInterval {
  Mask sigma = 0;
  Mask tau = 0;
};

inline bool operator==(const SetInterval& a, const SetInterval& b) {
  return a.sigma == b.sigma && a.tau == b.tau;
}

struct VectorFamily {
  std::vector<std::vector<Rat>> vectors;  // d vectors, each of length k

  int d() const { return static_cast<int>(vectors.size()); }
  int k() const { return vectors.empty() ? 0 : static_cast<int>(vectors[0].size()); }
};

inline void validate(const VectorFamily& X) {
  if (X.vectors.empty()) throw std::invalid_argument("VectorFamily: needs at least one vector");
  if (X.d() > kMaxGroundSize)
    throw std::invalid_argument("VectorFamily: at most " + std::to_string(kMaxGroundSize) +
                                " vectors");
  const std::size_t k = X.vectors[0].size();
  if (k == 0) throw std::invalid_argument("VectorFamily: vectors must have length >= 1");
  for (const auto& v : X.vectors)
    if (v.size() != k) throw std::invalid_argument("VectorFamily: unequal vector lengths");
}

struct PartitionResult {
  std::vector<SetInterval> intervals;
};

struct PartitionOptions {
  // Use the explicit two-part cover when the recursion reaches d = k + 1
  // instead of recursing once more; cross-check path, same contract.
  bool explicit_dk1_base = false;
};

namespace detail {

// componentwise max over {x_i : i in mask}, first `coords` coordinates
inline std::vector<Rat> family_max(const VectorFamily& X, Mask mask, int coords) {
  std::vector<Rat> out;
  bool first = true;
  for (int i = 0; i < X.d(); ++i) {
    if (!(mask & (Mask{1} << i))) continue;
    if (first) {
      out.assign(X.vectors[i].begin(), X.vectors[i].begin() + coords);
      first = false;
    } else {
      for (int l = 0; l < coords; ++l)
        if (X.vectors[i][l] > out[l]) out[l] = X.vectors[i][l];
    }
  }
  return out;
}

inline bool equivalent_window(Mask a, Mask b, const VectorFamily& X, int coords) {
  return family_max(X, a, coords) == family_max(X, b, coords);
}

inline Mask mask_of_indices(const std::vector<int>& idx) {
  Mask m = 0;
  for (int i : idx) m |= Mask{1} << i;
  return m;
}

inline std::vector<SetInterval> partition_rec(const VectorFamily& X, std::vector<int> idx,
                                              int kk, const PartitionOptions& opt) {
  const int dd = static_cast<int>(idx.size());

  if (kk == dd) return {SetInterval{mask_of_indices(idx), mask_of_indices(idx)}};

  if (kk == 1) {
    // chain cover: sort ascending by the first coordinate (ties by index),
    // emit <{largest}, whole prefix> downwards
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
      if (X.vectors[a][0] != X.vectors[b][0]) return X.vectors[a][0] < X.vectors[b][0];
      return a < b;
    });
    std::vector<Mask> prefix(dd);
    Mask acc = 0;
    for (int j = 0; j < dd; ++j) {
      acc |= Mask{1} << idx[j];
      prefix[j] = acc;
    }
    std::vector<SetInterval> out;
    for (int j = dd - 1; j >= 0; --j) out.push_back({Mask{1} << idx[j], prefix[j]});
    return out;
  }

  if (opt.explicit_dk1_base && dd == kk + 1) {
    // pick alpha of size kk with alpha ~ full: one maximizer per coordinate,
    // padded with the smallest remaining indices
    const Mask full = mask_of_indices(idx);
    std::vector<int> alpha;
    for (int l = 0; l < kk; ++l) {
      int best = idx[0];
      for (int i : idx)
        if (X.vectors[i][l] > X.vectors[best][l]) best = i;
      if (std::find(alpha.begin(), alpha.end(), best) == alpha.end()) alpha.push_back(best);
    }
    std::vector<int> sorted_idx = idx;
    std::sort(sorted_idx.begin(), sorted_idx.end());
    for (int i : sorted_idx) {
      if (static_cast<int>(alpha.size()) == kk) break;
      if (std::find(alpha.begin(), alpha.end(), i) == alpha.end()) alpha.push_back(i);
    }
    std::sort(alpha.begin(), alpha.end());
    std::vector<SetInterval> out;
    out.push_back({mask_of_indices(alpha), full});
    for (int a : alpha) out.push_back({full ^ (Mask{1} << a), full ^ (Mask{1} << a)});
    return out;
  }

  // pivot: maximizes the last coordinate of the current window
  int pivot = idx[0];
  for (int i : idx)
    if (X.vectors[i][kk - 1] > X.vectors[pivot][kk - 1]) pivot = i;

  std::vector<int> rest;
  for (int i : idx)
    if (i != pivot) rest.push_back(i);

  std::vector<SetInterval> out = partition_rec(X, rest, kk, opt);
  std::vector<SetInterval> lifted = partition_rec(X, rest, kk - 1, opt);
  const Mask pm = Mask{1} << pivot;
  for (SetInterval& iv : lifted) {
    iv.sigma |= pm;
    iv.tau |= pm;
    if (!equivalent_window(iv.sigma, iv.tau, X, kk))
      throw std::logic_error("partition_upper: lifted interval lost equivalence");
    out.push_back(iv);
  }
  return out;
}

}  // namespace detail

/// Componentwise maxima over alpha and beta agree in all k coordinates.
inline bool equivalent(Mask alpha, Mask beta, const VectorFamily& X) {
  validate(X);
  check_mask(alpha, X.d(), "equivalent(alpha)");
  check_mask(beta, X.d(), "equivalent(beta)");
  if (alpha == 0 || beta == 0) throw std::invalid_argument("equivalent: empty index set");
  return detail::equivalent_window(alpha, beta, X, X.k());
}

PartitionResult inline partition_upper(const VectorFamily& X, int k,
                                       const PartitionOptions& opt = {}) {
  validate(X);
  if (k < 1 || k > X.d())
    throw std::invalid_argument("partition_upper: k = " + std::to_string(k) + " outside [1," +
                                std::to_string(X.d()) + "]");
  if (k != X.k())
    throw std::invalid_argument("partition_upper: k = " + std::to_string(k) +
                                " must match the vector length " + std::to_string(X.k()));
  std::vector<int> idx(X.d());
  std::iota(idx.begin(), idx.end(), 0);
  return {detail::partition_rec(X, std::move(idx), k, opt)};
}

struct PartitionDiagnostics {
  bool ok = true;
  std::vector<std::string> issues;
};

/// Brute-force oracle: enumerates all 2^d subsets and confirms exact cover
/// of {|gamma| >= k}, endpoint sizes, the equivalences, pairwise emptiness
/// (both by enumeration and by the interval intersection law), and the
/// cardinality identity sum_j 2^{|tau_j \ sigma_j|} = #{|gamma| >= k}.
PartitionDiagnostics inline verify_partition(const PartitionResult& r, const VectorFamily& X,
                                             int k) {
  validate(X);
  const int d = X.d();
  if (d > 20) throw std::invalid_argument("verify_partition: d must be <= 20 for enumeration");
  if (k < 1 || k > d) throw std::invalid_argument("verify_partition: k out of range");

  PartitionDiagnostics diag;
  auto issue = [&](std::string s) {
    diag.ok = false;
    if (diag.issues.size() < 32) diag.issues.push_back(std::move(s));
  };

  for (const SetInterval& iv : r.intervals) {
    if ((iv.sigma & ~iv.tau) != 0)
      issue("interval <" + mask_to_string(iv.sigma) + "," + mask_to_string(iv.tau) +
            ">: sigma not contained in tau");
    if (popcount(iv.sigma) != k)
      issue("interval <" + mask_to_string(iv.sigma) + "," + mask_to_string(iv.tau) +
            ">: |sigma| != k");
    if (iv.sigma != 0 && iv.tau != 0 && !equivalent(iv.sigma, iv.tau, X))
      issue("interval <" + mask_to_string(iv.sigma) + "," + mask_to_string(iv.tau) +
            ">: sigma and tau not equivalent");
  }

  const Mask full = full_mask(d);
  for (Mask g = 0;; ++g) {
    int count = 0;
    for (const SetInterval& iv : r.intervals)
      if ((iv.sigma & ~g) == 0 && (g & ~iv.tau) == 0) ++count;
    const int want = popcount(g) >= k ? 1 : 0;
    if (count != want)
      issue("subset " + mask_to_string(g) + " covered " + std::to_string(count) +
            " times, expected " + std::to_string(want));
    if (g == full) break;
  }

  for (std::size_t i = 0; i < r.intervals.size(); ++i)
    for (std::size_t j = i + 1; j < r.intervals.size(); ++j) {
      const Mask s = r.intervals[i].sigma | r.intervals[j].sigma;
      const Mask t = r.intervals[i].tau & r.intervals[j].tau;
      if ((s & ~t) == 0)
        issue("intervals " + std::to_string(i) + " and " + std::to_string(j) +
              " intersect (intersection law)");
    }

  unsigned long long covered = 0, expected = 0;
  for (const SetInterval& iv : r.intervals)
    covered += 1ull << popcount(iv.tau & ~iv.sigma);
  for (int m = k; m <= d; ++m) {
    unsigned long long c = 1;
    for (int i = 1; i <= m; ++i) c = c * (d - m + i) / i;
    expected += c;
  }
  if (covered != expected)
    issue("cardinality identity: sum 2^{|tau\\sigma|} = " + std::to_string(covered) +
          " but #{|gamma|>=k} = " + std::to_string(expected));

  return diag;
}

}  // namespace kmono
