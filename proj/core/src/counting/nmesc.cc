// core/src/counting/nmesc.cc
//
// Copyright 2026 The mcfront Authors
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

#include "mcfront/counting/nmesc.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mcfront/common/error.h"

namespace mcfront::counting {

namespace {

constexpr double kEps = 1e-10;

// Similarities this close to the weakest kept neighbor are kept as well, so
// rows of near-identical embeddings binarize identically instead of being
// split by float noise.
constexpr double kTieTolerance = 1e-4;

Eigen::MatrixXd cosine_affinity(const EmbeddingSet& emb) {
  const auto n = static_cast<Eigen::Index>(emb.size());
  const auto d = static_cast<Eigen::Index>(emb.dim);
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      x(i, j) = emb.vectors[static_cast<std::size_t>(i)]
                           [static_cast<std::size_t>(j)];
    }
  }
  Eigen::VectorXd norms = x.rowwise().norm();
  for (Eigen::Index i = 0; i < n; ++i) {
    // A zero vector is similar to nothing; leave its row at zero instead of
    // dividing by zero.
    if (norms(i) > 0.0) x.row(i) /= norms(i);
  }
  Eigen::MatrixXd a = x * x.transpose();
  a.diagonal().setOnes();
  return a;
}

struct SweepOutcome {
  std::size_t count = 1;
  double nme_ratio = std::numeric_limits<double>::infinity();
  std::vector<double> eigengaps;
  bool edgeless = false;
};

// Evaluates one candidate p: binarize rows to their top-p entries with the
// self link counted as one of the p, symmetrize, and read the eigengap
// profile of the symmetric normalized Laplacian.
SweepOutcome evaluate_p(const Eigen::MatrixXd& affinity, std::size_t p,
                        std::size_t max_speakers) {
  const auto n = affinity.rows();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  b.diagonal().setOnes();

  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  bool any_edge = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    idx.clear();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i && affinity(i, j) > 0.0) idx.push_back(j);
    }
    const std::size_t keep = std::min(p > 0 ? p - 1 : 0, idx.size());
    if (keep == 0) continue;
    std::partial_sort(idx.begin(),
                      idx.begin() + static_cast<std::ptrdiff_t>(keep),
                      idx.end(), [&](Eigen::Index a_, Eigen::Index b_) {
                        return affinity(i, a_) > affinity(i, b_);
                      });
    const double threshold = affinity(i, idx[keep - 1]) - kTieTolerance;
    for (Eigen::Index j : idx) {
      if (affinity(i, j) >= threshold) {
        b(i, j) = 1.0;
        any_edge = true;
      }
    }
  }

  SweepOutcome out;
  if (!any_edge) {
    out.edgeless = true;
    return out;
  }

  const Eigen::MatrixXd sym = 0.5 * (b + b.transpose());
  Eigen::VectorXd deg = sym.rowwise().sum();
  Eigen::VectorXd inv_sqrt(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    inv_sqrt(i) = 1.0 / std::sqrt(deg(i));  // diagonal keeps deg >= 1
  }
  const Eigen::MatrixXd lap =
      Eigen::MatrixXd::Identity(n, n) -
      inv_sqrt.asDiagonal() * sym * inv_sqrt.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw DataError("nmesc: eigendecomposition failed");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();  // ascending

  const std::size_t k_max =
      std::min(max_speakers, static_cast<std::size_t>(n) - 1);
  out.eigengaps.resize(k_max);
  double max_gap = 0.0;
  std::size_t argmax = 1;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double g = ev(static_cast<Eigen::Index>(k)) -
                     ev(static_cast<Eigen::Index>(k - 1));
    out.eigengaps[k - 1] = g;
    if (g > max_gap) {
      max_gap = g;
      argmax = k;
    }
  }
  const double lambda_max = ev(n - 1);
  const double normalized_gap = max_gap / (lambda_max + kEps);
  out.count = argmax;
  out.nme_ratio = static_cast<double>(p) / (normalized_gap + kEps);
  return out;
}

}  // namespace

void validate(const EmbeddingSet& emb) {
  if (emb.dim < 2) {
    throw DataError("embeddings: dimension must be at least 2, got " +
                    std::to_string(emb.dim));
  }
  if (emb.spans.size() != emb.size() || emb.channel_ids.size() != emb.size()) {
    throw DataError("embeddings: spans/channel tags count does not match " +
                    std::to_string(emb.size()) + " vectors");
  }
  for (std::size_t i = 0; i < emb.size(); ++i) {
    if (emb.vectors[i].size() != emb.dim) {
      throw DataError("embeddings: vector " + std::to_string(i) + " has dim " +
                      std::to_string(emb.vectors[i].size()) + ", expected " +
                      std::to_string(emb.dim));
    }
    for (double v : emb.vectors[i]) {
      if (std::isnan(v)) {
        throw DataError("embeddings: vector " + std::to_string(i) +
                        " contains NaN");
      }
    }
    if (!(emb.spans[i].end_s > emb.spans[i].start_s)) {
      throw DataError("embeddings: span " + std::to_string(i) +
                      " has end <= start");
    }
  }
}

NmescResult nmesc_count(const EmbeddingSet& emb, std::size_t max_speakers) {
  if (max_speakers == 0) {
    throw ConfigError("nmesc: max_speakers must be at least 1");
  }
  if (emb.size() == 0) {
    throw DataError("nmesc: no embeddings");
  }
  validate(emb);

  NmescResult res;
  if (emb.size() == 1) {
    res.count = 1;
    res.chosen_p = 1;
    return res;
  }

  const Eigen::MatrixXd affinity = cosine_affinity(emb);
  const std::size_t n = emb.size();
  const std::size_t p_min = std::min<std::size_t>(4, n);
  const std::size_t p_max = n;

  // At most 50 evenly spaced candidates across {p_min..p_max}, always
  // including the endpoints.
  std::vector<std::size_t> grid;
  const std::size_t span = p_max - p_min + 1;
  if (span <= 50) {
    grid.resize(span);
    std::iota(grid.begin(), grid.end(), p_min);
  } else {
    for (std::size_t i = 0; i < 50; ++i) {
      const auto p = p_min + (span - 1) * i / 49;
      if (grid.empty() || grid.back() != p) grid.push_back(p);
    }
  }

  SweepOutcome best;
  std::size_t best_p = grid.front();
  bool all_edgeless = true;
  for (std::size_t p : grid) {
    const auto outcome = evaluate_p(affinity, p, max_speakers);
    if (outcome.edgeless) continue;
    all_edgeless = false;
    if (outcome.nme_ratio < best.nme_ratio) {
      best = outcome;
      best_p = p;
    }
  }

  if (all_edgeless) {
    // No positive similarity anywhere: every embedding is its own cluster.
    res.count = std::min(n, max_speakers);
    res.chosen_p = grid.front();
    res.nme_ratio = std::numeric_limits<double>::infinity();
    return res;
  }

  res.count = std::min(best.count, std::min(max_speakers, n));
  res.chosen_p = best_p;
  res.nme_ratio = best.nme_ratio;
  res.eigengaps = std::move(best.eigengaps);
  return res;
}

EmbeddingSet resegment_embeddings(const EmbeddingSet& emb, double seg_len_s) {
  if (!(seg_len_s > 0.0)) {
    throw ConfigError("resegment: seg_len_s must be positive");
  }
  EmbeddingSet out;
  out.dim = emb.dim;
  if (emb.size() == 0) return out;
  validate(emb);
  for (std::size_t i = 0; i < emb.size(); ++i) {
    const auto first_bin =
        static_cast<std::size_t>(emb.spans[i].start_s / seg_len_s);
    // End is exclusive: a span ending exactly on a bin edge does not enter
    // the next bin.
    const double end = emb.spans[i].end_s;
    auto last_bin = static_cast<std::size_t>(end / seg_len_s);
    if (last_bin > 0 && end == static_cast<double>(last_bin) * seg_len_s) {
      --last_bin;
    }
    for (std::size_t bin = first_bin; bin <= last_bin; ++bin) {
      const double lo = static_cast<double>(bin) * seg_len_s;
      const double hi = lo + seg_len_s;
      out.vectors.push_back(emb.vectors[i]);
      out.spans.push_back(Span{std::max(emb.spans[i].start_s, lo),
                               std::min(emb.spans[i].end_s, hi)});
      out.channel_ids.push_back(emb.channel_ids[i]);
    }
  }
  return out;
}

}  // namespace mcfront::counting
