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

#ifndef SEQGAME_KUHN_HPP_
#define SEQGAME_KUHN_HPP_

#include <array>
#include <string>
#include <vector>

#include "seqgame/efg.hpp"

namespace seqgame {

// Three-card Kuhn poker with a one-chip ante and one-chip bets.
//
// Chance deals one of J < Q < K to each player (six equiprobable deals).
// Player 1 passes or bets. After a pass player 2 passes (showdown for 1) or
// bets, and player 1 then folds (loses 1) or calls (showdown for 2). After a
// bet player 2 folds (player 1 wins 1) or calls (showdown for 2).
//
// Information sets are named "P<player>:<card>:<history>", with history over
// {p, b}; action labels are "p" (pass / fold) and "b" (bet / call).
inline ExtensiveFormGame kuhn_poker() {
  static constexpr std::array<char, 3> kCards = {'J', 'Q', 'K'};
  ExtensiveFormGame g;
  auto infoset = [](int player, int card, const std::string& history) {
    return "P" + std::to_string(player) + ":" + kCards[card] + ":" + history;
  };

  std::vector<ChanceOutcome> deals;
  for (int c1 = 0; c1 < 3; ++c1) {
    for (int c2 = 0; c2 < 3; ++c2) {
      if (c1 == c2) continue;
      const double showdown = c1 > c2 ? 1.0 : -1.0;

      // p b: player 1 facing a bet after passing.
      const NodeId pbp = g.add_terminal(-1.0);
      const NodeId pbb = g.add_terminal(2.0 * showdown);
      const NodeId pb = g.add_decision(1, infoset(1, c1, "pb"), {{"p", pbp}, {"b", pbb}});
      const NodeId pp = g.add_terminal(showdown);
      const NodeId p = g.add_decision(2, infoset(2, c2, "p"), {{"p", pp}, {"b", pb}});

      const NodeId bp = g.add_terminal(1.0);
      const NodeId bb = g.add_terminal(2.0 * showdown);
      const NodeId b = g.add_decision(2, infoset(2, c2, "b"), {{"p", bp}, {"b", bb}});

      const NodeId start = g.add_decision(1, infoset(1, c1, ""), {{"p", p}, {"b", b}});
      deals.push_back({1.0 / 6.0, start});
    }
  }
  g.set_root(g.add_chance(std::move(deals)));
  return g;
}

// Value of Kuhn poker for player 1.
inline constexpr double kKuhnValue = -1.0 / 18.0;

}  // namespace seqgame

#endif  // SEQGAME_KUHN_HPP_
