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

/* Times k repetitions of whatever attaches inside. */
//_connector:execute
const double t_begin = wall_time();
for (int rep = 0; rep < ${k}; rep++) {
  //_link:execute
}
elapsed = (wall_time() - t_begin) / ${k};
