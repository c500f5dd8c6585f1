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

#ifndef SEQGAME_EFG_HPP_
#define SEQGAME_EFG_HPP_

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "seqgame/errors.hpp"
#include "seqgame/sequence_form.hpp"
#include "seqgame/sparse.hpp"
#include "seqgame/treeplex.hpp"

namespace seqgame {

using NodeId = std::size_t;

struct ChanceOutcome {
  double probability = 0.0;
  NodeId child = 0;
};

struct Action {
  std::string label;
  NodeId child = 0;
};

struct ChanceNode {
  std::vector<ChanceOutcome> outcomes;
};

struct DecisionNode {
  int player = 1;
  std::string infoset;
  std::vector<Action> actions;
};

struct TerminalNode {
  double payoff = 0.0;  // to player 1
};

using Node = std::variant<ChanceNode, DecisionNode, TerminalNode>;

struct InfosetInfo {
  int player = 1;
  std::size_t num_actions = 0;
  std::vector<NodeId> members;
};

// Two-player zero-sum game tree. Nodes are created bottom-up: every child must
// exist before the node that references it, and the root is set last.
class ExtensiveFormGame {
 public:
  NodeId add_terminal(double payoff) { return push(TerminalNode{payoff}); }

  NodeId add_chance(std::vector<ChanceOutcome> outcomes) {
    for (const ChanceOutcome& o : outcomes) check_child(o.child);
    return push(ChanceNode{std::move(outcomes)});
  }

  NodeId add_decision(int player, std::string infoset, std::vector<Action> actions) {
    for (const Action& a : actions) check_child(a.child);
    return push(DecisionNode{player, std::move(infoset), std::move(actions)});
  }

  void set_root(NodeId id) {
    check_child(id);
    root_ = id;
  }

  NodeId root() const {
    if (!root_) throw CompileError("game has no root");
    return *root_;
  }

  const Node& node(NodeId id) const { return nodes_.at(id); }
  std::size_t size() const { return nodes_.size(); }

  std::size_t num_terminals() const {
    std::size_t count = 0;
    walk(root(), [&](NodeId id) {
      if (std::holds_alternative<TerminalNode>(nodes_[id])) ++count;
    });
    return count;
  }

  // Information sets reachable from the root, keyed by id.
  std::map<std::string, InfosetInfo> infosets() const {
    std::map<std::string, InfosetInfo> out;
    walk(root(), [&](NodeId id) {
      if (const auto* d = std::get_if<DecisionNode>(&nodes_[id])) {
        auto [it, fresh] = out.try_emplace(d->infoset);
        if (fresh) {
          it->second.player = d->player;
          it->second.num_actions = d->actions.size();
        }
        it->second.members.push_back(id);
      }
    });
    return out;
  }

  // Throws CompileError unless the game is a tree with valid chance nodes,
  // consistent information sets, and perfect recall.
  void check_invariants() const {
    std::vector<int> seen(nodes_.size(), 0);
    walk(root(), [&](NodeId id) {
      if (++seen[id] > 1) {
        throw CompileError("node " + std::to_string(id) + " has several parents");
      }
      if (const auto* c = std::get_if<ChanceNode>(&nodes_[id])) {
        if (c->outcomes.empty()) throw CompileError("chance node without outcomes");
        double sum = 0.0;
        for (const ChanceOutcome& o : c->outcomes) {
          if (!(o.probability >= 0.0) || !std::isfinite(o.probability)) {
            throw CompileError("negative chance probability at node " +
                               std::to_string(id));
          }
          sum += o.probability;
        }
        if (std::abs(sum - 1.0) > 1e-12) {
          throw CompileError("chance probabilities at node " + std::to_string(id) +
                             " sum to " + std::to_string(sum));
        }
      } else if (const auto* d = std::get_if<DecisionNode>(&nodes_[id])) {
        if (d->player != 1 && d->player != 2) {
          throw CompileError("decision node " + std::to_string(id) +
                             " has player " + std::to_string(d->player));
        }
        if (d->actions.empty()) {
          throw CompileError("infoset " + d->infoset + " has no actions");
        }
      } else if (!std::isfinite(std::get<TerminalNode>(nodes_[id]).payoff)) {
        throw CompileError("non-finite payoff at node " + std::to_string(id));
      }
    });
    for (const auto& [name, info] : infosets()) {
      for (NodeId m : info.members) {
        const auto& d = std::get<DecisionNode>(nodes_[m]);
        if (d.player != info.player) {
          throw CompileError("infoset " + name + " mixes players");
        }
        if (d.actions.size() != info.num_actions) {
          throw CompileError("infoset " + name + " has inconsistent action counts");
        }
      }
    }
    check_perfect_recall();
  }

 private:
  NodeId push(Node n) {
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
  }

  void check_child(NodeId id) const {
    if (id >= nodes_.size()) {
      throw CompileError("reference to undefined node " + std::to_string(id));
    }
  }

  template <class F>
  void walk(NodeId start, F&& visit) const {
    std::vector<NodeId> stack{start};
    while (!stack.empty()) {
      const NodeId id = stack.back();
      stack.pop_back();
      visit(id);
      // Push in reverse so children are visited in declaration order.
      if (const auto* c = std::get_if<ChanceNode>(&nodes_[id])) {
        for (auto it = c->outcomes.rbegin(); it != c->outcomes.rend(); ++it) {
          stack.push_back(it->child);
        }
      } else if (const auto* d = std::get_if<DecisionNode>(&nodes_[id])) {
        for (auto it = d->actions.rbegin(); it != d->actions.rend(); ++it) {
          stack.push_back(it->child);
        }
      }
    }
  }

  // Each player's own (infoset, action) history must agree across all nodes
  // of one of their information sets.
  void check_perfect_recall() const {
    using History = std::vector<std::pair<std::string, std::size_t>>;
    std::map<std::string, History> expected;
    struct Frame {
      NodeId id;
      History h1;
      History h2;
    };
    std::vector<Frame> stack{{root(), {}, {}}};
    while (!stack.empty()) {
      Frame f = std::move(stack.back());
      stack.pop_back();
      if (const auto* c = std::get_if<ChanceNode>(&nodes_[f.id])) {
        for (const ChanceOutcome& o : c->outcomes) stack.push_back({o.child, f.h1, f.h2});
      } else if (const auto* d = std::get_if<DecisionNode>(&nodes_[f.id])) {
        const History& own = d->player == 1 ? f.h1 : f.h2;
        auto [it, fresh] = expected.try_emplace(d->infoset, own);
        if (!fresh && it->second != own) {
          throw CompileError("perfect recall violated at infoset " + d->infoset);
        }
        for (std::size_t a = 0; a < d->actions.size(); ++a) {
          Frame next{d->actions[a].child, f.h1, f.h2};
          (d->player == 1 ? next.h1 : next.h2).emplace_back(d->infoset, a);
          stack.push_back(std::move(next));
        }
      }
    }
  }

  std::vector<Node> nodes_;
  std::optional<NodeId> root_;
};

struct SequenceInfo {
  std::string infoset;  // empty for the root sequence
  std::size_t action = 0;
  std::size_t parent = 0;
  std::string label;
};

struct PlayerSequences {
  std::vector<SequenceInfo> sequences;           // index 0 = empty sequence
  std::map<std::string, std::size_t> infoset_row;  // row in E
  std::map<std::string, std::size_t> first_sequence;
  std::map<std::string, std::size_t> num_actions;
  std::vector<std::string> row_names;  // row 0 = "root"
};

// Where each (infoset, action) pair of the tree ended up in the sequence form.
struct SequenceMap {
  PlayerSequences players[2];

  const PlayerSequences& of(int player) const { return players[player - 1]; }

  std::size_t sequence_of(int player, const std::string& infoset,
                          std::size_t action) const {
    const PlayerSequences& p = of(player);
    const auto it = p.first_sequence.find(infoset);
    if (it == p.first_sequence.end() || action >= p.num_actions.at(infoset)) {
      throw StrategyError("unknown sequence " + infoset + "/" + std::to_string(action));
    }
    return it->second + action;
  }
};

// Pure strategy: chosen action index per information set.
using PureStrategy = std::map<std::string, std::size_t>;

struct CompiledGame {
  SequenceFormGame game;
  SequenceMap map;
};

// Sequence-form realization plan of a pure strategy.
inline Vector realization_plan(const SequenceMap& map, int player,
                               const PureStrategy& strategy) {
  const PlayerSequences& p = map.of(player);
  Vector z(p.sequences.size(), 0.0);
  z[0] = 1.0;
  for (std::size_t s = 1; s < p.sequences.size(); ++s) {
    const SequenceInfo& info = p.sequences[s];
    const auto it = strategy.find(info.infoset);
    if (it == strategy.end()) {
      throw StrategyError("pure strategy misses infoset " + info.infoset);
    }
    z[s] = it->second == info.action ? z[info.parent] : 0.0;
  }
  return z;
}

// Compiles the tree into (A, E1, E2, e1, e2). Sequences are numbered in
// depth-first order of first encounter, root sequence first; the actions of an
// information set get consecutive indices.
inline CompiledGame to_sequence_form(const ExtensiveFormGame& efg) {
  efg.check_invariants();
  CompiledGame out;
  for (PlayerSequences& p : out.map.players) {
    p.sequences.push_back({"", 0, 0, "root"});
    p.row_names.push_back("root");
  }
  std::vector<Triplet> payoff;
  std::vector<Triplet> constraints[2] = {{{0, 0, 1.0}}, {{0, 0, 1.0}}};

  struct Frame {
    NodeId id;
    std::size_t seq[2];
    double reach;
  };
  std::vector<Frame> stack{{efg.root(), {0, 0}, 1.0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const Node& node = efg.node(f.id);
    if (const auto* t = std::get_if<TerminalNode>(&node)) {
      payoff.push_back({f.seq[0], f.seq[1], f.reach * t->payoff});
    } else if (const auto* c = std::get_if<ChanceNode>(&node)) {
      for (auto it = c->outcomes.rbegin(); it != c->outcomes.rend(); ++it) {
        stack.push_back({it->child, {f.seq[0], f.seq[1]}, f.reach * it->probability});
      }
    } else {
      const auto& d = std::get<DecisionNode>(node);
      const int k = d.player - 1;
      PlayerSequences& p = out.map.players[k];
      const std::size_t parent = f.seq[k];
      auto [row_it, fresh] = p.infoset_row.try_emplace(d.infoset, p.row_names.size());
      if (fresh) {
        const std::size_t row = row_it->second;
        p.row_names.push_back(d.infoset);
        p.first_sequence[d.infoset] = p.sequences.size();
        p.num_actions[d.infoset] = d.actions.size();
        constraints[k].push_back({row, parent, -1.0});
        for (std::size_t a = 0; a < d.actions.size(); ++a) {
          constraints[k].push_back({row, p.sequences.size(), 1.0});
          p.sequences.push_back({d.infoset, a, parent, d.infoset + "/" + d.actions[a].label});
        }
      } else if (p.sequences[p.first_sequence[d.infoset]].parent != parent) {
        throw CompileError("perfect recall violated at infoset " + d.infoset);
      }
      const std::size_t first = p.first_sequence[d.infoset];
      for (std::size_t a = d.actions.size(); a-- > 0;) {
        Frame next{d.actions[a].child, {f.seq[0], f.seq[1]}, f.reach};
        next.seq[k] = first + a;
        stack.push_back(next);
      }
    }
  }

  const std::size_t n1 = out.map.players[0].sequences.size();
  const std::size_t n2 = out.map.players[1].sequences.size();
  const std::size_t l1 = out.map.players[0].row_names.size();
  const std::size_t l2 = out.map.players[1].row_names.size();
  SequenceFormGame& g = out.game;
  g.A = SparseMatrix(n1, n2, std::move(payoff));
  g.E1 = SparseMatrix(l1, n1, std::move(constraints[0]));
  g.E2 = SparseMatrix(l2, n2, std::move(constraints[1]));
  g.e1.assign(l1, 0.0);
  g.e1[0] = 1.0;
  g.e2.assign(l2, 0.0);
  g.e2[0] = 1.0;
  for (const SequenceInfo& s : out.map.players[0].sequences) g.labels.sequences1.push_back(s.label);
  for (const SequenceInfo& s : out.map.players[1].sequences) g.labels.sequences2.push_back(s.label);
  g.labels.infosets1 = out.map.players[0].row_names;
  g.labels.infosets2 = out.map.players[1].row_names;
  return out;
}

}  // namespace seqgame

#endif  // SEQGAME_EFG_HPP_
