#ifndef RWLEN_PERM_HPP_
#define RWLEN_PERM_HPP_

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rwlen {

// A permutation of the points {0, ..., degree-1}, stored as its image array:
// p[i] is where point i goes. Used only while building group tables; the
// search itself never touches point permutations.
using PointPerm = std::vector<int>;

inline PointPerm identity_perm(int degree) {
  PointPerm p(degree);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool is_permutation(const PointPerm& p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || v >= int(p.size()) || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

inline bool is_identity(const PointPerm& p) {
  for (int i = 0; i < int(p.size()); ++i)
    if (p[i] != i) return false;
  return true;
}

// Apply p first, then q.
inline PointPerm compose(const PointPerm& p, const PointPerm& q) {
  PointPerm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
  return r;
}

inline PointPerm inverted(const PointPerm& p) {
  PointPerm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = int(i);
  return r;
}

// Extend with fixed points up to the given degree.
inline PointPerm padded(PointPerm p, int degree) {
  for (int i = int(p.size()); i < degree; ++i) p.push_back(i);
  return p;
}

// Parses disjoint-cycle notation with 1-based points, e.g. "(1,2,3)(4,5)".
// "()" is the identity. The degree is the largest point mentioned, or
// min_degree if that is larger.
inline PointPerm parse_cycles(const std::string& text, int min_degree = 1) {
  std::vector<std::vector<int>> cycles;
  int max_point = 0;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(')
      throw std::invalid_argument("bad cycle notation: expected '(' in \"" +
                                  text + "\"");
    ++i;
    std::vector<int> cycle;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      std::size_t pos = 0;
      int point = 0;
      try {
        point = std::stoi(text.substr(i), &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad cycle notation: \"" + text + "\"");
      }
      if (point < 1)
        throw std::invalid_argument("cycle points are 1-based: \"" + text +
                                    "\"");
      cycle.push_back(point - 1);
      max_point = std::max(max_point, point);
      i += pos;
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        skip_ws();
      }
    }
    if (i >= text.size())
      throw std::invalid_argument("unterminated cycle in \"" + text + "\"");
    ++i;  // ')'
    if (cycle.size() == 1)
      throw std::invalid_argument("singleton cycle in \"" + text + "\"");
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
    skip_ws();
  }
  PointPerm p = identity_perm(std::max(max_point, min_degree));
  std::vector<bool> used(p.size(), false);
  for (const auto& cycle : cycles) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      int from = cycle[k];
      int to = cycle[(k + 1) % cycle.size()];
      if (used[from])
        throw std::invalid_argument("point repeated in \"" + text + "\"");
      used[from] = true;
      p[from] = to;
    }
  }
  return p;
}

inline std::string format_cycles(const PointPerm& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (int i = 0; i < int(p.size()); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += '(';
    int j = i;
    bool first = true;
    do {
      if (!first) out += ',';
      out += std::to_string(j + 1);
      seen[j] = true;
      j = p[j];
      first = false;
    } while (j != i);
    out += ')';
  }
  return out.empty() ? "()" : out;
}

// One permutation per line in disjoint-cycle notation; blank lines and lines
// starting with '#' are ignored. All permutations are padded to a common
// degree.
inline std::vector<PointPerm> parse_generator_lines(std::istream& in) {
  std::vector<PointPerm> gens;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    std::size_t end = line.find_last_not_of(" \t\r");
    gens.push_back(parse_cycles(line.substr(start, end - start + 1)));
  }
  if (gens.empty())
    throw std::invalid_argument("no generators found in input");
  int degree = 1;
  for (const auto& g : gens) degree = std::max(degree, int(g.size()));
  for (auto& g : gens) g = padded(std::move(g), degree);
  return gens;
}

inline std::vector<PointPerm> read_generator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open generator file: " + path);
  return parse_generator_lines(in);
}

}  // namespace rwlen

#endif  // RWLEN_PERM_HPP_
