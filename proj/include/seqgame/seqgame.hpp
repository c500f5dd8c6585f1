// Copyright 2026 The seqgame Authors
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

#ifndef SEQGAME_SEQGAME_HPP_
#define SEQGAME_SEQGAME_HPP_

#include "seqgame/efg.hpp"
#include "seqgame/errors.hpp"
#include "seqgame/kuhn.hpp"
#include "seqgame/random_games.hpp"
#include "seqgame/rng.hpp"
#include "seqgame/sequence_form.hpp"
#include "seqgame/solver.hpp"
#include "seqgame/sparse.hpp"
#include "seqgame/treeplex.hpp"

#endif  // SEQGAME_SEQGAME_HPP_
