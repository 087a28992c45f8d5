// core/include/mcfront/counting/embedding_io.h
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

#ifndef MCFRONT_COUNTING_EMBEDDING_IO_H_
#define MCFRONT_COUNTING_EMBEDDING_IO_H_

#include <string>

#include "mcfront/counting/nmesc.h"

namespace mcfront::counting {

// Embedding file format: magic "EMB1", little-endian u32 n and u32 d, then
// n*d little-endian float32 row-major. Spans and channel tags live in a JSON
// sidecar at path + ".json": [{"start": s, "end": e, "channel": id}, ...]
// of length n. Readers throw DataError naming the offending field or byte
// offset.
EmbeddingSet read_embeddings(const std::string& path);
void write_embeddings(const std::string& path, const EmbeddingSet& emb);

}  // namespace mcfront::counting

#endif  // MCFRONT_COUNTING_EMBEDDING_IO_H_
