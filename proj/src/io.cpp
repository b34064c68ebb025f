// Copyright 2026 The beliefcore Authors
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

#include "beliefcore/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

#include "table_util.hpp"

namespace beliefcore {

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string save(const Diagram& d) {
  auto report = is_consistent(d);
  if (!report.ok) {
    const auto& v = report.violations.front();
    fail(ErrorCode::Inconsistent, "cannot save: " + v.rule + " at '" + v.node + "': " + v.detail);
  }
  const auto order = graph_order(d);
  std::ostringstream out;
  out << "%beliefcore " << kFormatVersion << '\n';
  out << "diagram " << d.name() << '\n';
  for (const auto& id : order) {
    const Node& n = d.node(id);
    out << "node " << id << " kind=" << to_string(n.kind) << " states=";
    for (std::size_t s = 0; s < n.states.size(); ++s) out << (s ? "," : "") << n.states[s];
    out << '\n';
  }
  for (const auto& id : order) {
    for (const auto& p : d.node(id).parents) out << "arc " << p << " -> " << id << '\n';
  }
  for (const auto& id : order) {
    const Node& n = d.node(id);
    if (n.kind == NodeKind::decision) continue;
    const auto cards = detail::cards_of(d, n.parents);
    std::vector<std::size_t> cfg(cards.size());
    const char* keyword = n.kind == NodeKind::value ? "val" : "cpt";
    for (std::size_t r = 0; r < n.rows.size(); ++r) {
      detail::decode(r, cards, cfg);
      out << keyword << ' ' << id << " | ";
      for (std::size_t k = 0; k < cfg.size(); ++k) {
        out << (k ? "," : "") << n.parents[k] << '=' << d.node(n.parents[k]).states[cfg[k]];
      }
      out << (cfg.empty() ? ":" : " :");
      for (double v : n.rows[r]) out << ' ' << format_number(v);
      out << '\n';
    }
  }
  for (const auto& e : d.ext()) {
    out << "ext " << e.scope << ' ' << e.key;
    if (!e.value.empty()) out << ' ' << e.value;
    out << '\n';
  }
  return out.str();
}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

struct PendingNode {
  Node node;
  std::size_t line = 0;
};

struct PendingRow {
  std::string id;
  bool value_keyword = false;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<double> values;
  std::size_t line = 0;
  std::size_t column = 0;
};

double parse_double(const Token& tok, std::size_t line) {
  double v = 0.0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  if (!tok.text.empty() && *first == '+') ++first;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ParseError(line, tok.column, "'" + std::string(tok.text) + "' is not a number");
  }
  return v;
}

std::vector<std::string> split_commas(std::string_view s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    auto comma = s.find(',', pos);
    out.emplace_back(s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

Diagram load(std::string_view text, const LoadOptions& options) {
  std::optional<std::string> name;
  std::vector<PendingNode> nodes;
  std::map<std::string, std::size_t> node_line;
  std::vector<std::tuple<std::string, std::string, std::size_t>> arcs;
  std::vector<PendingRow> rows;
  std::vector<std::pair<ExtRecord, std::size_t>> exts;
  bool header_seen = false;
  std::size_t line_no = 0;
  std::size_t last_line = 1;  // last non-blank line, for end-of-input errors

  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    auto first = tokenize(raw);
    if (first.empty() || first.front().text.front() == '#') continue;
    last_line = line_no;

    if (!header_seen) {
      if (first[0].text != "%beliefcore") throw ParseError(line_no, first[0].column, "missing '%beliefcore' header");
      if (first.size() != 2) throw ParseError(line_no, first[0].column, "header needs exactly one version field");
      int version = 0;
      auto res = std::from_chars(first[1].text.data(), first[1].text.data() + first[1].text.size(), version);
      if (res.ec != std::errc() || res.ptr != first[1].text.data() + first[1].text.size()) {
        throw ParseError(line_no, first[1].column, "bad version field");
      }
      if (version != kFormatVersion) {
        fail(ErrorCode::VersionUnsupported, "format version " + std::to_string(version) + " is not supported");
      }
      header_seen = true;
      continue;
    }

    const std::string_view keyword = first[0].text;
    if (keyword == "ext") {
      if (first.size() < 3) throw ParseError(line_no, first[0].column, "ext needs a scope and a key");
      ExtRecord rec{std::string(first[1].text), std::string(first[2].text), ""};
      std::size_t after_key = first[2].column - 1 + first[2].text.size();
      if (after_key < raw.size()) rec.value = std::string(raw.substr(after_key + 1));
      exts.emplace_back(std::move(rec), line_no);
      continue;
    }

    auto toks = tokenize(strip_comment(raw));
    if (keyword == "diagram") {
      if (name) throw ParseError(line_no, toks[0].column, "duplicate diagram line");
      std::string_view rest = strip_comment(raw).substr(toks[0].column - 1 + toks[0].text.size());
      while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
      while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t')) rest.remove_suffix(1);
      name = std::string(rest);
    } else if (keyword == "node") {
      if (toks.size() < 2) throw ParseError(line_no, toks[0].column, "node needs an id");
      PendingNode pn;
      pn.line = line_no;
      pn.node.id = std::string(toks[1].text);
      bool kind_seen = false, states_seen = false;
      for (std::size_t t = 2; t < toks.size(); ++t) {
        auto eq = toks[t].text.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, toks[t].column, "expected key=value");
        auto key = toks[t].text.substr(0, eq);
        auto val = toks[t].text.substr(eq + 1);
        if (key == "kind") {
          auto kind = parse_node_kind(val);
          if (!kind) throw ParseError(line_no, toks[t].column, "unknown kind '" + std::string(val) + "'");
          pn.node.kind = *kind;
          kind_seen = true;
        } else if (key == "states") {
          pn.node.states = split_commas(val);
          states_seen = true;
        } else {
          throw ParseError(line_no, toks[t].column, "unknown node attribute '" + std::string(key) + "'");
        }
      }
      if (!kind_seen || !states_seen) throw ParseError(line_no, toks[0].column, "node needs kind= and states=");
      if (!node_line.emplace(pn.node.id, line_no).second) {
        throw ParseError(line_no, toks[1].column, "node '" + pn.node.id + "' defined twice");
      }
      nodes.push_back(std::move(pn));
    } else if (keyword == "arc") {
      if (toks.size() != 4 || toks[2].text != "->") {
        throw ParseError(line_no, toks[0].column, "expected 'arc <parent> -> <child>'");
      }
      arcs.emplace_back(std::string(toks[1].text), std::string(toks[3].text), line_no);
    } else if (keyword == "cpt" || keyword == "val") {
      PendingRow row;
      row.line = line_no;
      row.column = toks[0].column;
      row.value_keyword = keyword == "val";
      if (toks.size() < 3 || toks[2].text != "|") {
        throw ParseError(line_no, toks[0].column, "expected '" + std::string(keyword) + " <id> | <config> : <values>'");
      }
      row.id = std::string(toks[1].text);
      std::size_t t = 3;
      std::string cfg;
      while (t < toks.size() && toks[t].text != ":") cfg += std::string(toks[t++].text);
      if (t >= toks.size()) throw ParseError(line_no, toks.back().column, "missing ':' before values");
      for (const auto& item : split_commas(cfg)) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError(line_no, toks[3].column, "configuration item '" + item + "' lacks '='");
        row.config.emplace_back(item.substr(0, eq), item.substr(eq + 1));
      }
      for (++t; t < toks.size(); ++t) row.values.push_back(parse_double(toks[t], line_no));
      rows.push_back(std::move(row));
    } else {
      throw ParseError(line_no, toks[0].column, "unknown keyword '" + std::string(keyword) + "'");
    }
  }
  if (!header_seen) throw ParseError(last_line, 1, "empty file: missing '%beliefcore' header");
  if (!name) throw ParseError(last_line, 1, "missing 'diagram' line");

  Diagram d(*name);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i].node.id] = i;
  for (const auto& [p, c, ln] : arcs) {
    if (!index.count(p)) throw ParseError(ln, 1, "arc references unknown node '" + p + "'");
    if (!index.count(c)) throw ParseError(ln, 1, "arc references unknown node '" + c + "'");
    auto& ps = nodes[index[c]].node.parents;
    if (std::find(ps.begin(), ps.end(), p) != ps.end()) throw ParseError(ln, 1, "duplicate arc " + p + " -> " + c);
    ps.push_back(p);
  }

  // Place rows by their configuration.
  std::map<std::string, std::vector<std::optional<std::vector<double>>>> tables;
  for (const auto& r : rows) {
    auto it = index.find(r.id);
    if (it == index.end()) throw ParseError(r.line, r.column, "row for unknown node '" + r.id + "'");
    const Node& n = nodes[it->second].node;
    if (n.kind == NodeKind::decision) throw ParseError(r.line, r.column, "decision node '" + n.id + "' takes no rows");
    if (r.value_keyword != (n.kind == NodeKind::value)) {
      throw ParseError(r.line, r.column, "use 'val' for value nodes and 'cpt' otherwise");
    }
    if (r.config.size() != n.parents.size()) {
      throw ParseError(r.line, r.column, "configuration must name every parent of '" + n.id + "'");
    }
    std::size_t row_idx = 0, row_total = 1;
    for (std::size_t k = 0; k < n.parents.size(); ++k) {
      if (r.config[k].first != n.parents[k]) {
        throw ParseError(r.line, r.column, "expected parent '" + n.parents[k] + "' at position " + std::to_string(k + 1));
      }
      const Node& p = nodes[index.at(n.parents[k])].node;
      auto s = std::find(p.states.begin(), p.states.end(), r.config[k].second);
      if (s == p.states.end()) {
        throw ParseError(r.line, r.column, "parent '" + p.id + "' has no state '" + r.config[k].second + "'");
      }
      row_idx = row_idx * p.states.size() + static_cast<std::size_t>(s - p.states.begin());
      row_total *= p.states.size();
    }
    const std::size_t width = n.kind == NodeKind::value ? 1 : n.states.size();
    if (r.values.size() != width) {
      throw ParseError(r.line, r.column, "expected " + std::to_string(width) + " values, found " + std::to_string(r.values.size()));
    }
    auto& table = tables[n.id];
    table.resize(row_total);
    if (table[row_idx]) throw ParseError(r.line, r.column, "duplicate row for '" + n.id + "'");
    table[row_idx] = r.values;
  }

  for (auto& pn : nodes) {
    Node& n = pn.node;
    if (n.kind != NodeKind::decision) {
      std::size_t row_total = 1;
      for (const auto& p : n.parents) row_total *= nodes[index.at(p)].node.states.size();
      auto& table = tables[n.id];
      table.resize(row_total);
      for (std::size_t r = 0; r < row_total; ++r) {
        if (!table[r]) throw ParseError(last_line, 1, "missing row " + std::to_string(r) + " for node '" + n.id + "'");
        n.rows.push_back(std::move(*table[r]));
      }
      if (options.renormalize && is_chance_like(n.kind)) {
        for (auto& row : n.rows) {
          double sum = 0.0;
          for (double v : row) sum += v;
          if (sum != 1.0 && std::abs(sum - 1.0) <= kRenormalizeTolerance) {
            for (double& v : row) v /= sum;
          }
        }
      }
    }
    if (!is_identifier(n.id)) throw ParseError(pn.line, 1, "'" + n.id + "' is not a valid identifier");
    d.insert(n);  // later children still read this node's states
  }

  std::set<std::pair<std::string, std::string>> ext_keys;
  for (auto& [rec, ln] : exts) {
    if (rec.scope != kDiagramScope && !d.has(rec.scope)) {
      throw ParseError(ln, 5, "ext scope '" + rec.scope + "' is not a node");
    }
    if (!ext_keys.emplace(rec.scope, rec.key).second) {
      throw ParseError(ln, 5, "duplicate ext key '" + rec.key + "' for scope '" + rec.scope + "'");
    }
    d.set_ext(std::move(rec.scope), std::move(rec.key), std::move(rec.value));
  }

  if (options.check_consistency) require_consistent(d);
  return d;
}

Diagram load_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::BadParams, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load(buf.str(), options);
}

void save_file(const Diagram& d, const std::string& path) {
  std::string text = save(d);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::BadParams, "cannot write '" + path + "'");
  out << text;
}

}  // namespace beliefcore
