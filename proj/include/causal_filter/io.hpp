// causal_filter/io.hpp
//
// Copyright 2026 The causal-filter Authors
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

#ifndef CAUSAL_FILTER_IO_HPP
#define CAUSAL_FILTER_IO_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "causal_filter/causal_states.hpp"
#include "causal_filter/ib_core.hpp"
#include "causal_filter/info_plane.hpp"
#include "causal_filter/oce.hpp"
#include "causal_filter/process_models.hpp"
#include "causal_filter/word_joint.hpp"

namespace causal_filter {

// Probabilities are rendered with 17 significant digits, enough for a
// lossless double round trip.
inline std::string format_probability(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

// Outputs are staged in a sibling temporary file and renamed into place.
inline void atomic_write_file(const std::filesystem::path& path,
                              const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << contents;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Process spec JSON: {"name", "n_states", "alphabet_size",
//                     "transitions"[symbol][from][to]}

inline std::string process_to_json(const HiddenMarkovProcess& hmm) {
  nlohmann::ordered_json doc;
  doc["name"] = hmm.name;
  doc["n_states"] = hmm.n_states;
  doc["alphabet_size"] = hmm.alphabet_size;
  auto& t = doc["transitions"] = nlohmann::ordered_json::array();
  for (int x = 0; x < hmm.alphabet_size; ++x) {
    nlohmann::ordered_json matrix = nlohmann::ordered_json::array();
    for (int i = 0; i < hmm.n_states; ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (int jj = 0; jj < hmm.n_states; ++jj) row.push_back(hmm.entry(x, i, jj));
      matrix.push_back(std::move(row));
    }
    t.push_back(std::move(matrix));
  }
  return doc.dump(2) + "\n";
}

inline HiddenMarkovProcess process_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  HiddenMarkovProcess hmm;
  hmm.name = doc.value("name", "");
  hmm.n_states = doc.at("n_states").get<int>();
  hmm.alphabet_size = doc.at("alphabet_size").get<int>();
  const auto& t = doc.at("transitions");
  if (!t.is_array() || t.size() != static_cast<std::size_t>(hmm.alphabet_size))
    throw std::invalid_argument("process spec: transitions must have one matrix per symbol");
  hmm.transitions.assign(hmm.alphabet_size,
                         std::vector<double>(
                             static_cast<std::size_t>(hmm.n_states) * hmm.n_states));
  for (int x = 0; x < hmm.alphabet_size; ++x) {
    const auto& matrix = t.at(x);
    if (matrix.size() != static_cast<std::size_t>(hmm.n_states))
      throw std::invalid_argument("process spec: bad matrix height");
    for (int i = 0; i < hmm.n_states; ++i) {
      const auto& row = matrix.at(i);
      if (row.size() != static_cast<std::size_t>(hmm.n_states))
        throw std::invalid_argument("process spec: bad matrix width");
      for (int jj = 0; jj < hmm.n_states; ++jj)
        hmm.transitions[x][static_cast<std::size_t>(i) * hmm.n_states + jj] =
            row.at(jj).get<double>();
    }
  }
  hmm.validate();
  return hmm;
}

// ---------------------------------------------------------------------------
// Symbol series: one ASCII digit per symbol, no separators, trailing newline.

inline std::string series_to_text(const SymbolSeries& series) {
  std::string out;
  out.reserve(series.symbols.size() + 1);
  for (auto s : series.symbols) out.push_back(static_cast<char>('0' + s));
  out.push_back('\n');
  return out;
}

inline SymbolSeries series_from_text(const std::string& text,
                                     int alphabet_size = 0) {
  SymbolSeries series;
  for (char c : text) {
    if (c == '\n' || c == '\r') break;
    if (c < '0' || c > '9')
      throw std::invalid_argument("series: non-digit character");
    series.symbols.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  if (series.symbols.empty())
    throw std::invalid_argument("series: empty");
  if (alphabet_size == 0) {
    int max_symbol = 0;
    for (auto s : series.symbols) max_symbol = std::max<int>(max_symbol, s);
    alphabet_size = std::max(2, max_symbol + 1);
  }
  series.alphabet_size = alphabet_size;
  series.validate();
  return series;
}

// ---------------------------------------------------------------------------
// WordJoint CSV: header `history,future,prob`, all cells in lexicographic
// order, zero-mass rows included.

inline std::string word_joint_to_csv(const WordJoint& j) {
  std::string out = "history,future,prob\n";
  const std::size_t R = j.n_histories(), C = j.n_futures();
  for (std::size_t h = 0; h < R; ++h)
    for (std::size_t f = 0; f < C; ++f) {
      out += word_string(h, j.alphabet_size, j.history_length);
      out += ',';
      out += word_string(f, j.alphabet_size, j.future_length);
      out += ',';
      out += format_probability(j.at(h, f));
      out += '\n';
    }
  return out;
}

inline WordJoint word_joint_from_csv(const std::string& text,
                                     int alphabet_size,
                                     WordJoint::Source source = WordJoint::Source::exact,
                                     std::uint64_t sample_size = 0) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "history,future,prob")
    throw std::invalid_argument("word joint csv: bad header");

  std::map<std::pair<std::size_t, std::size_t>, double> cells;
  int K = -1, L = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw std::invalid_argument("word joint csv: bad row '" + line + "'");
    const std::string hw = line.substr(0, c1);
    const std::string fw = line.substr(c1 + 1, c2 - c1 - 1);
    if (K < 0) K = static_cast<int>(hw.size());
    if (L < 0) L = static_cast<int>(fw.size());
    if (static_cast<int>(hw.size()) != K || static_cast<int>(fw.size()) != L)
      throw std::invalid_argument("word joint csv: ragged words");
    cells[{word_from_string(hw, alphabet_size),
           word_from_string(fw, alphabet_size)}] =
        std::stod(line.substr(c2 + 1));
  }
  WordJoint j;
  j.history_length = K;
  j.future_length = L;
  j.alphabet_size = alphabet_size;
  j.source = source;
  j.sample_size = sample_size;
  j.joint.assign(word_count(alphabet_size, K) * word_count(alphabet_size, L),
                 0.0);
  for (const auto& [cell, p] : cells) j.at(cell.first, cell.second) = p;
  j.validate();
  return j;
}

// ---------------------------------------------------------------------------
// Partition JSON: {"states": [{"label", "weight", "members", "morph"}]}

inline std::string partition_to_json(const Partition& p, int alphabet_size,
                                     int history_length, int future_length) {
  nlohmann::ordered_json doc;
  auto& states = doc["states"] = nlohmann::ordered_json::array();
  for (int s = 0; s < p.n_states(); ++s) {
    nlohmann::ordered_json state;
    state["label"] = s;
    state["weight"] = p.state_weights[s];
    auto& members = state["members"] = nlohmann::ordered_json::array();
    for (std::size_t h = 0; h < p.assignment.size(); ++h)
      if (p.assignment[h] == s)
        members.push_back(word_string(h, alphabet_size, history_length));
    auto& morph = state["morph"] = nlohmann::ordered_json::object();
    for (std::size_t f = 0; f < p.morphs[s].size(); ++f)
      morph[word_string(f, alphabet_size, future_length)] = p.morphs[s][f];
    states.push_back(std::move(state));
  }
  return doc.dump(2) + "\n";
}

inline Partition partition_from_json(const std::string& text,
                                     int alphabet_size, int history_length,
                                     int future_length) {
  const auto doc = nlohmann::json::parse(text);
  const auto& states = doc.at("states");
  const std::size_t R = word_count(alphabet_size, history_length);
  const std::size_t C = word_count(alphabet_size, future_length);

  Partition p;
  p.assignment.assign(R, Partition::kUnassigned);
  p.state_weights.assign(states.size(), 0.0);
  p.morphs.assign(states.size(), std::vector<double>(C, 0.0));
  for (const auto& state : states) {
    const int label = state.at("label").get<int>();
    if (label < 0 || static_cast<std::size_t>(label) >= states.size())
      throw std::invalid_argument("partition json: bad label");
    p.state_weights[label] = state.at("weight").get<double>();
    for (const auto& member : state.at("members"))
      p.assignment[word_from_string(member.get<std::string>(), alphabet_size)] =
          label;
    for (const auto& [word, mass] : state.at("morph").items())
      p.morphs[label][word_from_string(word, alphabet_size)] =
          mass.get<double>();
  }
  return p;
}

// ---------------------------------------------------------------------------
// Model JSON: {"lambda", "p_s", "morphs", "q"}, indices in the word orders.

inline std::string model_to_json(const SoftModel& m) {
  nlohmann::ordered_json doc;
  doc["lambda"] = m.lambda;
  doc["p_s"] = m.cluster_weights;
  auto& morphs = doc["morphs"] = nlohmann::ordered_json::array();
  for (std::size_t s = 0; s < m.n_clusters; ++s) {
    const auto row = m.morph(s);
    morphs.push_back(std::vector<double>(row.begin(), row.end()));
  }
  auto& q = doc["q"] = nlohmann::ordered_json::array();
  for (std::size_t h = 0; h < m.n_histories; ++h) {
    std::vector<double> row(m.n_clusters);
    for (std::size_t s = 0; s < m.n_clusters; ++s) row[s] = m.q_at(h, s);
    q.push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

inline SoftModel model_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  SoftModel m;
  m.lambda = doc.at("lambda").get<double>();
  m.cluster_weights = doc.at("p_s").get<std::vector<double>>();
  m.n_clusters = m.cluster_weights.size();
  const auto& morphs = doc.at("morphs");
  if (morphs.size() != m.n_clusters)
    throw std::invalid_argument("model json: morph count");
  m.n_futures = morphs.empty() ? 0 : morphs.at(0).size();
  m.morphs.reserve(m.n_clusters * m.n_futures);
  for (const auto& row : morphs) {
    const auto values = row.get<std::vector<double>>();
    if (values.size() != m.n_futures)
      throw std::invalid_argument("model json: ragged morphs");
    m.morphs.insert(m.morphs.end(), values.begin(), values.end());
  }
  const auto& q = doc.at("q");
  m.n_histories = q.size();
  m.q.reserve(m.n_histories * m.n_clusters);
  for (const auto& row : q) {
    const auto values = row.get<std::vector<double>>();
    if (values.size() != m.n_clusters)
      throw std::invalid_argument("model json: ragged q");
    m.q.insert(m.q.end(), values.begin(), values.end());
  }
  m.dormant.assign(m.n_clusters, false);
  for (std::size_t s = 0; s < m.n_clusters; ++s)
    m.dormant[s] = m.cluster_weights[s] < kDormantWeight;
  return m;
}

// ---------------------------------------------------------------------------
// Curve CSV and markers JSON.

inline std::string curve_to_csv(const InfoPlaneCurve& curve) {
  std::string out = "lambda,I_past_S,I_S_future,N_eff,objective,converged\n";
  for (const auto& p : curve.points) {
    out += format_probability(p.lambda);
    out += ',';
    out += format_probability(p.i_past_state);
    out += ',';
    out += format_probability(p.i_state_future);
    out += ',';
    out += std::to_string(p.n_effective);
    out += ',';
    out += format_probability(p.objective);
    out += ',';
    out += p.converged ? '1' : '0';
    out += '\n';
  }
  return out;
}

inline std::vector<CurvePoint> curve_points_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "lambda,I_past_S,I_S_future,N_eff,objective,converged")
    throw std::invalid_argument("curve csv: bad header");
  std::vector<CurvePoint> points;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    CurvePoint p;
    std::getline(row, field, ','); p.lambda = std::stod(field);
    std::getline(row, field, ','); p.i_past_state = std::stod(field);
    std::getline(row, field, ','); p.i_state_future = std::stod(field);
    std::getline(row, field, ','); p.n_effective = std::stoi(field);
    std::getline(row, field, ','); p.objective = std::stod(field);
    std::getline(row, field, ','); p.converged = field == "1";
    points.push_back(p);
  }
  return points;
}

inline std::string markers_to_json(
    const std::map<int, std::pair<double, std::size_t>>& markers) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& [n, where] : markers) {
    nlohmann::ordered_json entry;
    entry["lambda"] = where.first;
    entry["index"] = where.second;
    doc[std::to_string(n)] = std::move(entry);
  }
  return doc.dump(2) + "\n";
}

inline std::map<int, std::pair<double, std::size_t>> markers_from_json(
    const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  std::map<int, std::pair<double, std::size_t>> markers;
  for (const auto& [key, entry] : doc.items())
    markers[std::stoi(key)] = {entry.at("lambda").get<double>(),
                               entry.at("index").get<std::size_t>()};
  return markers;
}

// ---------------------------------------------------------------------------
// Selection table CSV: N_c,I_raw,correction,I_corrected,chosen.

inline std::string selection_to_csv(const SelectionTable& table) {
  std::string out = "N_c,I_raw,correction,I_corrected,chosen\n";
  for (const auto& row : table.rows) {
    out += std::to_string(row.n_clusters);
    out += ',';
    out += format_probability(row.information_raw);
    out += ',';
    out += format_probability(row.correction_bits);
    out += ',';
    out += format_probability(row.information_corrected);
    out += ',';
    out += row.n_clusters == table.chosen_n ? '1' : '0';
    out += '\n';
  }
  return out;
}

inline SelectionTable selection_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "N_c,I_raw,correction,I_corrected,chosen")
    throw std::invalid_argument("selection csv: bad header");
  SelectionTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    SelectionRow r;
    std::getline(row, field, ','); r.n_clusters = std::stoi(field);
    std::getline(row, field, ','); r.information_raw = std::stod(field);
    std::getline(row, field, ','); r.correction_bits = std::stod(field);
    std::getline(row, field, ','); r.information_corrected = std::stod(field);
    std::getline(row, field, ',');
    if (field == "1") table.chosen_n = r.n_clusters;
    table.rows.push_back(r);
  }
  return table;
}

}  // namespace causal_filter

#endif  // CAUSAL_FILTER_IO_HPP
