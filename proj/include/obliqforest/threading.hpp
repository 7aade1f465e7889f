// Copyright 2026 The obliqforest Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace obliqforest {

/// Resolve a thread-count hint: values >= 1 are taken as-is, anything else
/// falls back to the hardware concurrency (at least 1).
int resolve_threads(int hint);

/// Run fn(i) for i in [0, n) on up to n_threads workers. Work items are
/// claimed through a shared atomic counter, so identical results across
/// thread counts require only that items be independent. The first worker
/// exception is rethrown on the calling thread.
void parallel_for(std::size_t n, int n_threads, const std::function<void(std::size_t)>& fn);

}  // namespace obliqforest
