#include "knotfoam/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "knotfoam/errors.hpp"

namespace knotfoam {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

class PDParser {
 public:
  explicit PDParser(const std::string& text) : s_(text) {}

  PDCode run() {
    PDCode pd;
    skip();
    if (at_end()) {
      pd.extra_circles = 1;
      return pd;
    }
    bool wrapped = false;
    if (peek_word("PD")) {
      pos_ += 2;
      skip();
      expect('[');
      wrapped = true;
    }
    skip();
    if (!wrapped && peek() == '[') {
      // [[a,b,c,d], ...]
      ++pos_;
      skip();
      while (peek() != ']') {
        char open = peek();
        if (open != '[' && open != '(') throw ParseError(pos_, "expected '[' or '('");
        ++pos_;
        pd.crossings.push_back(tuple(open == '[' ? ']' : ')'));
        skip();
        if (peek() == ',') {
          ++pos_;
          skip();
        } else if (peek() != ']') {
          throw ParseError(pos_, "expected ',' or ']'");
        }
      }
      ++pos_;
    } else {
      for (;;) {
        skip();
        if (at_end() || (wrapped && peek() == ']')) break;
        char c = peek();
        if (c == 'X' || c == 'x') {
          ++pos_;
          skip();
          expect('[');
          pd.crossings.push_back(tuple(']'));
        } else if (c == 'O' || c == 'o') {
          ++pos_;
          ++pd.extra_circles;
        } else {
          throw ParseError(pos_, "expected 'X[' or 'O'");
        }
        skip();
        if (peek() == ';' || peek() == ',') ++pos_;
      }
      if (wrapped) expect(']');
    }
    skip();
    if (!at_end()) throw ParseError(pos_, "trailing characters");
    if (pd.crossings.empty() && pd.extra_circles == 0) pd.extra_circles = 1;
    return pd;
  }

 private:
  std::array<int, 4> tuple(char close) {
    std::array<int, 4> t{};
    for (int i = 0; i < 4; ++i) {
      skip();
      t[i] = integer();
      skip();
      if (i < 3) expect(',');
    }
    expect(close);
    return t;
  }

  int integer() {
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (digits == pos_) throw ParseError(start, "expected an integer");
    long v = std::stol(s_.substr(start, pos_ - start));
    if (v <= 0) throw ParseError(start, "arc labels must be positive");
    if (v > 1000000000L) throw ParseError(start, "arc label too large");
    return static_cast<int>(v);
  }

  void expect(char c) {
    skip();
    if (peek() != c) throw ParseError(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }
  bool peek_word(const char* w) const { return s_.compare(pos_, std::char_traits<char>::length(w), w) == 0; }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  bool at_end() const { return pos_ >= s_.size(); }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

using Slot = std::pair<int, int>;

std::map<int, std::vector<Slot>> occurrences(const PDCode& pd) {
  std::map<int, std::vector<Slot>> occ;
  for (std::size_t k = 0; k < pd.crossings.size(); ++k)
    for (int p = 0; p < 4; ++p) occ[pd.crossings[k][p]].push_back({static_cast<int>(k), p});
  return occ;
}

Slot other_end(const std::map<int, std::vector<Slot>>& occ, int label, Slot here) {
  const auto& v = occ.at(label);
  return v[0] == here ? v[1] : v[0];
}

}  // namespace

PDCode parse_pd(const std::string& text) {
  PDCode pd = PDParser(text).run();
  validate_pd(pd);
  return pd;
}

Orientation orient(const PDCode& pd) {
  auto occ = occurrences(pd);
  for (const auto& [label, v] : occ) {
    if (label <= 0) fail(ErrorKind::InvalidDiagram, "arc label " + std::to_string(label) + " is not positive");
    if (v.size() != 2)
      fail(ErrorKind::InvalidDiagram,
           "arc " + std::to_string(label) + " appears " + std::to_string(v.size()) + " times");
  }
  std::size_t n = pd.crossings.size();
  // +1 entering the crossing, -1 leaving it.
  std::vector<std::array<int, 4>> dir(n, std::array<int, 4>{0, 0, 0, 0});
  std::deque<Slot> work;
  auto set = [&](Slot s, int d) {
    int& cur = dir[s.first][s.second];
    if (cur == d) return;
    if (cur != 0)
      fail(ErrorKind::InvalidDiagram,
           "orientation inconsistent at arc " + std::to_string(pd.crossings[s.first][s.second]));
    cur = d;
    work.push_back(s);
  };
  auto propagate = [&] {
    while (!work.empty()) {
      Slot s = work.front();
      work.pop_front();
      int d = dir[s.first][s.second];
      set(other_end(occ, pd.crossings[s.first][s.second], s), -d);
      set({s.first, (s.second + 2) % 4}, -d);
    }
  };
  for (std::size_t k = 0; k < n; ++k) {
    set({static_cast<int>(k), 0}, 1);
    set({static_cast<int>(k), 2}, -1);
  }
  propagate();
  // Components that only pass over: orient them from slot 3 to slot 1.
  for (std::size_t k = 0; k < n; ++k) {
    if (dir[k][3] == 0) {
      set({static_cast<int>(k), 3}, 1);
      propagate();
    }
  }
  Orientation o;
  o.sign.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    o.sign[k] = dir[k][3] == 1 ? 1 : -1;
    for (int p = 0; p < 4; ++p) {
      ArcEnds& e = o.arcs[pd.crossings[k][p]];
      if (dir[k][p] == 1) {
        e.head_crossing = static_cast<int>(k);
        e.head_slot = p;
      } else {
        e.tail_crossing = static_cast<int>(k);
        e.tail_slot = p;
      }
    }
  }
  return o;
}

std::vector<std::vector<FaceArc>> pd_faces(const PDCode& pd) {
  auto occ = occurrences(pd);
  Orientation o = orient(pd);
  std::size_t n = pd.crossings.size();
  std::vector<std::array<bool, 4>> seen(n, std::array<bool, 4>{false, false, false, false});
  std::vector<std::vector<FaceArc>> faces;
  for (std::size_t k0 = 0; k0 < n; ++k0) {
    for (int p0 = 0; p0 < 4; ++p0) {
      if (seen[k0][p0]) continue;
      std::vector<FaceArc> face;
      Slot s{static_cast<int>(k0), p0};
      while (!seen[s.first][s.second]) {
        seen[s.first][s.second] = true;
        int label = pd.crossings[s.first][s.second];
        const ArcEnds& e = o.arcs.at(label);
        bool from_tail = e.tail_crossing == s.first && e.tail_slot == s.second;
        face.push_back({label, from_tail});
        Slot t = other_end(occ, label, s);
        s = {t.first, (t.second + 3) % 4};
      }
      faces.push_back(std::move(face));
    }
  }
  return faces;
}

void validate_pd(const PDCode& pd) {
  if (pd.extra_circles < 0) fail(ErrorKind::InvalidDiagram, "negative circle count");
  if (pd.crossings.empty()) return;
  orient(pd);
}

void check_planar(const PDCode& pd) {
  if (pd.crossings.empty()) return;
  // Each connected piece of the diagram must satisfy V - E + F = 2.
  auto occ = occurrences(pd);
  std::size_t n = pd.crossings.size();
  UnionFind uf(n);
  for (const auto& [label, v] : occ) uf.unite(v[0].first, v[1].first);
  std::map<int, long> euler;
  for (std::size_t k = 0; k < n; ++k) euler[uf.find(static_cast<int>(k))] += 1 - 2;  // V - E
  for (const auto& face : pd_faces(pd)) {
    int k = occ.at(face.front().arc).front().first;
    euler[uf.find(k)] += 1;
  }
  for (const auto& [root, chi] : euler)
    if (chi != 2) fail(ErrorKind::InvalidDiagram, "diagram is not planar");
}

std::string pd_to_string(const PDCode& pd) {
  std::ostringstream os;
  bool first = true;
  for (const auto& c : pd.crossings) {
    if (!first) os << ';';
    first = false;
    os << "X[" << c[0] << ',' << c[1] << ',' << c[2] << ',' << c[3] << ']';
  }
  int circles = pd.extra_circles;
  if (pd.crossings.empty() && circles == 1) return os.str();
  for (int i = 0; i < circles; ++i) {
    if (!first) os << ';';
    first = false;
    os << 'O';
  }
  return os.str();
}

std::vector<int> parse_braid(const std::string& text) {
  std::vector<int> word;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '[' || c == ']' || c == '(' || c == ')') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (c == '-' || c == '+') ++i;
    std::size_t digits = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (digits == i) throw ParseError(start, "expected a braid letter");
    if (i - digits > 6) throw ParseError(start, "braid letter too large");
    word.push_back(std::stoi(text.substr(start, i - start)));
  }
  return word;
}

PDCode braid_to_pd(const std::vector<int>& word, int strands) {
  if (strands < 1) fail(ErrorKind::InvalidBraid, "strand count must be positive");
  for (int w : word)
    if (w == 0 || std::abs(w) >= strands)
      fail(ErrorKind::InvalidBraid, "letter " + std::to_string(w) + " out of range for " +
                                        std::to_string(strands) + " strands");
  std::vector<int> cur(strands);
  std::iota(cur.begin(), cur.end(), 1);
  int next = strands + 1;
  PDCode pd;
  for (int w : word) {
    int i = std::abs(w) - 1;
    int left = next++, right = next++;
    if (w > 0)
      pd.crossings.push_back({cur[i + 1], right, left, cur[i]});
    else
      pd.crossings.push_back({cur[i], cur[i + 1], right, left});
    cur[i] = left;
    cur[i + 1] = right;
  }
  std::map<int, int> close;
  for (int j = 0; j < strands; ++j) {
    if (cur[j] == j + 1)
      ++pd.extra_circles;
    else
      close[cur[j]] = j + 1;
  }
  for (auto& c : pd.crossings)
    for (int& a : c)
      if (auto it = close.find(a); it != close.end()) a = it->second;
  if (pd.crossings.empty() && pd.extra_circles == 0) pd.extra_circles = 1;
  return canonical_labels(pd);
}

Signs compute_signs(const PDCode& pd) {
  Signs s;
  s.sign = orient(pd).sign;
  for (int v : s.sign) (v > 0 ? s.n_plus : s.n_minus)++;
  return s;
}

Components components(const PDCode& pd) {
  auto occ = occurrences(pd);
  std::map<int, int> index;
  for (const auto& [label, v] : occ) index.emplace(label, static_cast<int>(index.size()));
  UnionFind uf(index.size());
  for (const auto& c : pd.crossings) {
    uf.unite(index[c[0]], index[c[2]]);
    uf.unite(index[c[1]], index[c[3]]);
  }
  Components out;
  std::map<int, int> root_id;
  for (const auto& [label, i] : index) {
    auto [it, fresh] = root_id.emplace(uf.find(i), static_cast<int>(root_id.size()));
    out.id[label] = it->second;
  }
  out.count = static_cast<int>(root_id.size()) + pd.extra_circles;
  return out;
}

SmoothingResult smooth_state(const PDCode& pd, const State& st) {
  if (st.assignment.size() != pd.crossings.size())
    fail(ErrorKind::InvalidDiagram, "state size does not match crossing count");
  auto occ = occurrences(pd);
  std::map<int, int> index;
  for (const auto& [label, v] : occ) index.emplace(label, static_cast<int>(index.size()));
  UnionFind uf(index.size());
  for (std::size_t k = 0; k < pd.crossings.size(); ++k) {
    const auto& c = pd.crossings[k];
    if (st.assignment[k] == 0) {
      uf.unite(index[c[0]], index[c[1]]);
      uf.unite(index[c[2]], index[c[3]]);
    } else {
      uf.unite(index[c[0]], index[c[3]]);
      uf.unite(index[c[1]], index[c[2]]);
    }
  }
  SmoothingResult r;
  std::map<int, int> root_id;
  for (const auto& [label, i] : index) {
    auto [it, fresh] = root_id.emplace(uf.find(i), static_cast<int>(root_id.size()));
    r.membership[label] = it->second;
  }
  r.circles = static_cast<int>(root_id.size()) + pd.extra_circles;
  return r;
}

int smoothing_circles(const PDCode& pd, unsigned long long mask) {
  State st;
  st.assignment.resize(pd.crossings.size());
  for (std::size_t k = 0; k < pd.crossings.size(); ++k) st.assignment[k] = (mask >> k) & 1ULL;
  return smooth_state(pd, st).circles;
}

State oriented_state(const PDCode& pd) {
  State st;
  for (int s : compute_signs(pd).sign) st.assignment.push_back(s > 0 ? 0 : 1);
  return st;
}

PDCode mirror(const PDCode& pd) {
  Orientation o = orient(pd);
  PDCode out = pd;
  for (std::size_t k = 0; k < pd.crossings.size(); ++k) {
    const auto& c = pd.crossings[k];
    if (o.sign[k] > 0)
      out.crossings[k] = {c[3], c[0], c[1], c[2]};
    else
      out.crossings[k] = {c[1], c[2], c[3], c[0]};
  }
  return out;
}

PDCode canonical_labels(const PDCode& pd) {
  std::map<int, int> relabel;
  PDCode out = pd;
  for (auto& c : out.crossings)
    for (int& a : c) {
      auto [it, fresh] = relabel.emplace(a, static_cast<int>(relabel.size()) + 1);
      a = it->second;
    }
  return out;
}

PDCode random_diagram(std::mt19937_64& rng, int max_crossings, int max_strands) {
  max_strands = std::max(2, max_strands);
  std::uniform_int_distribution<int> strands_d(2, max_strands);
  int strands = strands_d(rng);
  std::uniform_int_distribution<int> len_d(1, std::max(1, max_crossings));
  int len = len_d(rng);
  std::uniform_int_distribution<int> gen_d(1, strands - 1);
  std::bernoulli_distribution sign_d(0.5);
  std::vector<int> word;
  for (int i = 0; i < len; ++i) word.push_back(sign_d(rng) ? gen_d(rng) : -gen_d(rng));
  return braid_to_pd(word, strands);
}

}  // namespace knotfoam
