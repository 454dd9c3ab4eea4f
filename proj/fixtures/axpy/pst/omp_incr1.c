// Copyright 2026 The pstkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* OpenMP, contiguous block of entries per thread. */
//_connector:include
#include <omp.h>
//_connector:function
//_param:a = a
//_param:x_i = x[i]
//_param:y_i = y[i]
void axpy(int n, float a, const float *x, float *y) {
  const int t = omp_get_thread_num();
  const int T = omp_get_num_threads();
  const int i_lo = (int)(((long long)n * t) / T);
  const int i_hi = (int)(((long long)n * (t + 1)) / T);
  for (int i = i_lo; i < i_hi; i++) {
    //_link:kernel
  }
}
//_connector:variables
int num_threads = 1;
double elapsed = 0.0;
//_connector:setup
#pragma omp parallel
{
  #pragma omp single
  num_threads = omp_get_num_threads();
}
//_connector:execute
#pragma omp parallel
axpy(${N}, ${a}, ${x}, ${y});
const double t_begin = wall_time();
for (int rep = 0; rep < ${k}; rep++) {
  #pragma omp parallel
  axpy(${N}, ${a}, ${x}, ${y});
}
elapsed = (wall_time() - t_begin) / ${k};
printf("threads: %d, elapsed time: %.6f s\n", num_threads, elapsed);
//_connector:clean
