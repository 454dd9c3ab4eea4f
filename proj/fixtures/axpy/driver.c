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

/* AXPY driver shared by all variants: y = a x + y on host arrays. */
//_connector:driver
//_param:N = length
//_param:a = 1.0f
//_param:x = h_x
//_param:y = h_y
//_param:k = 2
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <time.h>
//_link:include

static double wall_time(void) {
  struct timespec ts;
  clock_gettime(CLOCK_MONOTONIC, &ts);
  return (double)ts.tv_sec + 1.0e-9 * (double)ts.tv_nsec;
}

//_link:function

int main(void) {
  const int ${N} = 1 << 20;
  //_link:variables
  float *${x} = (float *)malloc(${N} * sizeof(float));
  float *${y} = (float *)malloc(${N} * sizeof(float));
  for (int i = 0; i < ${N}; i++) {
    ${x}[i] = (float)(i % 100);
    ${y}[i] = 1.0f;
  }
  //_link:setup
  //_link:execute
  float max_error = 0.0f;
  for (int i = 0; i < ${N}; i++) {
    const float expected = 1.0f + (float)(1 + ${k}) * ${a} * ${x}[i];
    max_error = fmaxf(max_error, fabsf(${y}[i] - expected));
  }
  printf("max error: %g\n", max_error);
  //_link:clean
  free(${x});
  free(${y});
  return 0;
}
