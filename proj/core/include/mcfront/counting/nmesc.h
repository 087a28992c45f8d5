// core/include/mcfront/counting/nmesc.h
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

#ifndef MCFRONT_COUNTING_NMESC_H_
#define MCFRONT_COUNTING_NMESC_H_

#include <cstddef>
#include <string>
#include <vector>

namespace mcfront::counting {

struct Span {
  double start_s = 0.0;
  double end_s = 0.0;
};

// Speaker embeddings with their time spans and source channel tags.
// Extraction is external; this module only consumes the vectors.
struct EmbeddingSet {
  std::size_t dim = 0;
  std::vector<std::vector<double>> vectors;
  std::vector<Span> spans;
  std::vector<std::string> channel_ids;

  std::size_t size() const { return vectors.size(); }
};

// Throws DataError on dimension mismatches, NaN entries, or spans with
// end <= start.
void validate(const EmbeddingSet& emb);

struct NmescResult {
  std::size_t count = 1;
  std::size_t chosen_p = 1;      // binarization neighbor count that won
  double nme_ratio = 0.0;        // p / normalized max eigengap at chosen_p
  std::vector<double> eigengaps; // g_k at chosen_p, k = 1..min(max, n-1)
};

// Speaker counting by normalized-maximum-eigengap spectral analysis.
//
// Cosine affinity rows are binarized to their top-p entries, counting the
// self link as one of the p, so a row keeps its p - 1 most similar positive
// neighbors. Neighbors within 1e-4 of the weakest kept one are kept too;
// near-duplicate embeddings must not be split by float noise. The binarized
// graph is symmetrized by averaging and the eigenvalues of its symmetric
// normalized Laplacian are examined: the count is the k with the largest gap
// g_k = lambda_{k+1} - lambda_k, k capped at max_speakers. p is auto-tuned
// over {min(4, n)..n} (at most 50 evenly spaced values) by minimizing p over
// the max eigengap normalized by the largest eigenvalue. Sparser p are
// excluded because one- and two-neighbor graphs fragment into small
// components regardless of cluster structure, and the fragments masquerade
// as extra speakers.
//
// Only strictly positive similarities can form links, so mutually orthogonal
// embeddings produce an edgeless graph; every embedding is then its own
// cluster and the count is min(n, max_speakers). One embedding counts as
// one speaker by definition.
NmescResult nmesc_count(const EmbeddingSet& emb, std::size_t max_speakers = 8);

// Replicates each embedding into the fixed seg_len_s bins its span overlaps,
// clipping spans at bin edges (bin ends are exclusive). Vectors are reused,
// never recomputed; this only generates more pooling samples.
EmbeddingSet resegment_embeddings(const EmbeddingSet& emb,
                                  double seg_len_s = 15.0);

}  // namespace mcfront::counting

#endif  // MCFRONT_COUNTING_NMESC_H_
