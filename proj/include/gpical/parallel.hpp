// Copyright 2026 The gpical Authors
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

#ifndef GPICAL_PARALLEL_HPP_
#define GPICAL_PARALLEL_HPP_

namespace gpical {

// Worker count for batch and Monte Carlo loops. Results do not depend on it.
void set_thread_count(int n);
int thread_count();

}  // namespace gpical

#endif  // GPICAL_PARALLEL_HPP_
