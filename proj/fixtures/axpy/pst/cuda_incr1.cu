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

/* CUDA, contiguous block of entries per thread. */
//_connector:include
#include <cuda_runtime.h>
//_connector:function
//_param:a = a
//_param:x_i = x[i]
//_param:y_i = y[i]
__global__ void axpy(int n, float a, const float *x, float *y) {
  const int t = blockDim.x * blockIdx.x + threadIdx.x;
  const int T = gridDim.x * blockDim.x;
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
const int threads_per_block = 256;
const int num_blocks = 80;
num_threads = threads_per_block * num_blocks;
float *d_x = NULL;
float *d_y = NULL;
cudaMalloc((void **)&d_x, ${N} * sizeof(float));
cudaMalloc((void **)&d_y, ${N} * sizeof(float));
//_connector:execute
cudaMemcpy(d_x, ${x}, ${N} * sizeof(float), cudaMemcpyHostToDevice);
cudaMemcpy(d_y, ${y}, ${N} * sizeof(float), cudaMemcpyHostToDevice);
axpy<<<num_blocks, threads_per_block>>>(${N}, ${a}, d_x, d_y);
cudaDeviceSynchronize();
const double t_begin = wall_time();
for (int rep = 0; rep < ${k}; rep++) {
  axpy<<<num_blocks, threads_per_block>>>(${N}, ${a}, d_x, d_y);
  cudaDeviceSynchronize();
}
elapsed = (wall_time() - t_begin) / ${k};
cudaMemcpy(${y}, d_y, ${N} * sizeof(float), cudaMemcpyDeviceToHost);
printf("threads: %d, elapsed time: %.6f s\n", num_threads, elapsed);
//_connector:clean
cudaFree(d_x);
cudaFree(d_y);
