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

#ifndef SEQGAME_JSON_IO_HPP_
#define SEQGAME_JSON_IO_HPP_

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "seqgame/efg.hpp"
#include "seqgame/errors.hpp"
#include "seqgame/sequence_form.hpp"
#include "seqgame/sparse.hpp"

namespace seqgame::io {

using Json = nlohmann::json;  // std::map-backed: key order is deterministic

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw FormatError(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(where + ": missing field \"" + key + "\"");
  return *it;
}

inline std::size_t count(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw FormatError(where + ": expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

inline double number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw FormatError(where + ": expected a number");
  return j.get<double>();
}

inline Vector vector(const Json& j, const std::string& where) {
  if (!j.is_array()) throw FormatError(where + ": expected an array");
  Vector out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline std::vector<std::string> strings(const Json& j, const std::string& where) {
  if (!j.is_array()) throw FormatError(where + ": expected an array");
  std::vector<std::string> out;
  for (const Json& s : j) {
    if (!s.is_string()) throw FormatError(where + ": expected strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

}  // namespace detail

// {"rows": R, "cols": C, "triplets": [[r, c, value], ...]}
inline Json to_json(const SparseMatrix& m) {
  Json triplets = Json::array();
  for (const Triplet& t : m.triplets()) triplets.push_back({t.row, t.col, t.value});
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"triplets", std::move(triplets)}};
}

inline SparseMatrix sparse_from_json(const Json& j, const std::string& where = "matrix") {
  const std::size_t rows = detail::count(detail::field(j, "rows", where), where + ".rows");
  const std::size_t cols = detail::count(detail::field(j, "cols", where), where + ".cols");
  const Json& list = detail::field(j, "triplets", where);
  if (!list.is_array()) throw FormatError(where + ".triplets: expected an array");
  std::vector<Triplet> t;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string at = where + ".triplets[" + std::to_string(k) + "]";
    const Json& e = list[k];
    if (!e.is_array() || e.size() != 3) throw FormatError(at + ": expected [row, col, value]");
    t.push_back({detail::count(e[0], at), detail::count(e[1], at), detail::number(e[2], at)});
  }
  try {
    return SparseMatrix(rows, cols, std::move(t));
  } catch (const DimensionError& err) {
    throw FormatError(where + ": " + err.what());
  }
}

inline Json to_json(const SequenceFormGame& g) {
  Json j{{"n1", g.n1()}, {"n2", g.n2()}, {"l1", g.l1()}, {"l2", g.l2()},
         {"A", to_json(g.A)}, {"E1", to_json(g.E1)}, {"E2", to_json(g.E2)},
         {"e1", g.e1}, {"e2", g.e2}};
  if (!g.labels.empty()) {
    j["labels"] = Json{{"sequences1", g.labels.sequences1},
                       {"sequences2", g.labels.sequences2},
                       {"infosets1", g.labels.infosets1},
                       {"infosets2", g.labels.infosets2}};
  }
  return j;
}

// Reads the schema only; structural rules are left to validate_sequence_form.
inline SequenceFormGame game_from_json(const Json& j) {
  SequenceFormGame g;
  g.A = sparse_from_json(detail::field(j, "A", "game"), "A");
  g.E1 = sparse_from_json(detail::field(j, "E1", "game"), "E1");
  g.E2 = sparse_from_json(detail::field(j, "E2", "game"), "E2");
  g.e1 = detail::vector(detail::field(j, "e1", "game"), "e1");
  g.e2 = detail::vector(detail::field(j, "e2", "game"), "e2");
  const std::pair<const char*, std::size_t> dims[] = {
      {"n1", g.E1.cols()}, {"n2", g.E2.cols()}, {"l1", g.E1.rows()}, {"l2", g.E2.rows()}};
  for (const auto& [key, actual] : dims) {
    if (j.contains(key) && detail::count(j[key], key) != actual) {
      throw FormatError(std::string("game: \"") + key + "\" disagrees with matrix shapes");
    }
  }
  if (const auto it = j.find("labels"); it != j.end() && !it->is_null()) {
    const Json& l = *it;
    if (l.contains("sequences1")) g.labels.sequences1 = detail::strings(l["sequences1"], "labels.sequences1");
    if (l.contains("sequences2")) g.labels.sequences2 = detail::strings(l["sequences2"], "labels.sequences2");
    if (l.contains("infosets1")) g.labels.infosets1 = detail::strings(l["infosets1"], "labels.infosets1");
    if (l.contains("infosets2")) g.labels.infosets2 = detail::strings(l["infosets2"], "labels.infosets2");
  }
  return g;
}

namespace detail {

inline Json node_to_json(const ExtensiveFormGame& efg, NodeId id) {
  const Node& node = efg.node(id);
  if (const auto* t = std::get_if<TerminalNode>(&node)) {
    return Json{{"type", "terminal"}, {"payoff", t->payoff}};
  }
  if (const auto* c = std::get_if<ChanceNode>(&node)) {
    Json outcomes = Json::array();
    for (const ChanceOutcome& o : c->outcomes) {
      outcomes.push_back(Json{{"p", o.probability}, {"child", node_to_json(efg, o.child)}});
    }
    return Json{{"type", "chance"}, {"outcomes", std::move(outcomes)}};
  }
  const auto& d = std::get<DecisionNode>(node);
  Json actions = Json::array();
  for (const Action& a : d.actions) {
    actions.push_back(Json{{"label", a.label}, {"child", node_to_json(efg, a.child)}});
  }
  return Json{{"type", "decision"}, {"player", d.player}, {"infoset", d.infoset},
              {"actions", std::move(actions)}};
}

inline NodeId node_from_json(ExtensiveFormGame& efg, const Json& j, const std::string& where) {
  const Json& type = field(j, "type", where);
  if (!type.is_string()) throw FormatError(where + ".type: expected a string");
  const std::string kind = type.get<std::string>();
  if (kind == "terminal") {
    return efg.add_terminal(number(field(j, "payoff", where), where + ".payoff"));
  }
  if (kind == "chance") {
    const Json& list = field(j, "outcomes", where);
    if (!list.is_array()) throw FormatError(where + ".outcomes: expected an array");
    std::vector<ChanceOutcome> outcomes;
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string at = where + ".outcomes[" + std::to_string(k) + "]";
      const double prob = number(field(list[k], "p", at), at + ".p");
      outcomes.push_back({prob, node_from_json(efg, field(list[k], "child", at), at + ".child")});
    }
    return efg.add_chance(std::move(outcomes));
  }
  if (kind == "decision") {
    const Json& player = field(j, "player", where);
    if (!player.is_number_integer()) throw FormatError(where + ".player: expected 1 or 2");
    const Json& infoset = field(j, "infoset", where);
    if (!infoset.is_string()) throw FormatError(where + ".infoset: expected a string");
    const Json& list = field(j, "actions", where);
    if (!list.is_array()) throw FormatError(where + ".actions: expected an array");
    std::vector<Action> actions;
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string at = where + ".actions[" + std::to_string(k) + "]";
      std::string label = std::to_string(k);
      if (const auto it = list[k].find("label"); it != list[k].end() && it->is_string()) {
        label = it->get<std::string>();
      }
      actions.push_back({label, node_from_json(efg, field(list[k], "child", at), at + ".child")});
    }
    return efg.add_decision(player.get<int>(), infoset.get<std::string>(), std::move(actions));
  }
  throw FormatError(where + ".type: unknown node type \"" + kind + "\"");
}

}  // namespace detail

inline Json to_json(const ExtensiveFormGame& efg) {
  return Json{{"players", 2}, {"root", detail::node_to_json(efg, efg.root())}};
}

inline ExtensiveFormGame efg_from_json(const Json& j) {
  if (j.contains("players") && j["players"] != 2) {
    throw FormatError("efg: only two-player games are supported");
  }
  ExtensiveFormGame efg;
  efg.set_root(detail::node_from_json(efg, detail::field(j, "root", "efg"), "root"));
  return efg;
}

}  // namespace seqgame::io

#endif  // SEQGAME_JSON_IO_HPP_
