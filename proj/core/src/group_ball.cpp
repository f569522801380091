#include "lpcocycle/group_ball.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

namespace lpcocycle {
namespace {

// Letter order used for shortlex numbering: a, A, b, B, ...
std::vector<int> letter_order(int rank) {
  std::vector<int> out;
  for (int i = 1; i <= rank; ++i) {
    out.push_back(i);
    out.push_back(-i);
  }
  return out;
}

std::vector<std::int64_t> iota_ids(std::size_t n) {
  std::vector<std::int64_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<std::int64_t>(i);
  return ids;
}

Space space_from_edges(std::string name, std::size_t n, const std::vector<Edge>& edges) {
  const auto ids = iota_ids(n);
  return make_space(std::move(name), build_graph(ids, edges));
}

Isometry from_function(std::size_t n, const std::function<Vertex(Vertex)>& f, std::string label) {
  std::vector<Vertex> image(n);
  for (std::size_t v = 0; v < n; ++v) image[v] = f(static_cast<Vertex>(v));
  return Isometry(std::move(image), std::move(label));
}

Space line_space(int L) {
  if (L < 1) throw Error(ErrorCode::invalid_input, "line length must be positive");
  std::vector<Edge> edges;
  for (int i = 0; i < L; ++i) edges.emplace_back(i, i + 1);
  Space s = space_from_edges("line:" + std::to_string(L), static_cast<std::size_t>(L) + 1, edges);
  const std::size_t n = s.size();
  s.automorphisms.push_back(from_function(n, [L](Vertex v) { return L - v; }, "reflect"));
  s.automorphisms.push_back(from_function(n, [L](Vertex v) { return v < L ? v + 1 : Isometry::kNone; }, "shift"));
  s.boundary = {0, L};
  return s;
}

Space ladder_space(int L) {
  if (L < 1) throw Error(ErrorCode::invalid_input, "ladder length must be positive");
  std::vector<Edge> edges;
  for (int i = 0; i <= L; ++i) {
    edges.emplace_back(2 * i, 2 * i + 1);
    if (i < L) {
      edges.emplace_back(2 * i, 2 * i + 2);
      edges.emplace_back(2 * i + 1, 2 * i + 3);
    }
  }
  Space s = space_from_edges("ladder:" + std::to_string(L), 2 * static_cast<std::size_t>(L) + 2, edges);
  const std::size_t n = s.size();
  s.automorphisms.push_back(from_function(n, [](Vertex v) { return v ^ 1; }, "swap"));
  s.automorphisms.push_back(from_function(n, [L](Vertex v) { return 2 * (L - v / 2) + v % 2; }, "reflect"));
  s.automorphisms.push_back(
      from_function(n, [L](Vertex v) { return v / 2 < L ? v + 2 : Isometry::kNone; }, "shift"));
  s.boundary = {0, 1, 2 * L, 2 * L + 1};
  return s;
}

Space cycle_space(int n) {
  if (n < 3) throw Error(ErrorCode::invalid_input, "cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  Space s = space_from_edges("cycle:" + std::to_string(n), static_cast<std::size_t>(n), edges);
  const std::size_t size = s.size();
  s.automorphisms.push_back(from_function(size, [n](Vertex v) { return (v + 1) % n; }, "rotate"));
  s.automorphisms.push_back(from_function(size, [n](Vertex v) { return (n - v) % n; }, "reflect"));
  return s;
}

Space regular_tree_space(int q, int r) {
  if (q < 2 || r < 0) throw Error(ErrorCode::invalid_input, "regular tree needs q >= 2 and r >= 0");
  std::vector<Edge> edges;
  std::vector<std::vector<Vertex>> children(1);
  std::vector<int> depth{0};
  for (std::size_t v = 0; v < children.size(); ++v) {
    if (depth[v] == r) continue;
    const int fan = v == 0 ? q : q - 1;
    for (int c = 0; c < fan; ++c) {
      const auto w = static_cast<Vertex>(children.size());
      if (children.size() > 5'000'000) throw Error(ErrorCode::size_limit, "regular tree ball too large");
      children.emplace_back();
      depth.push_back(depth[v] + 1);
      children[v].push_back(w);
      edges.emplace_back(static_cast<std::int64_t>(v), w);
    }
  }
  const std::size_t n = children.size();
  Space s = space_from_edges("tree:" + std::to_string(q) + ":" + std::to_string(r), n, edges);
  s.center = 0;
  s.radius = r;
  for (std::size_t v = 0; v < n; ++v) {
    if (depth[v] == r) s.boundary.push_back(static_cast<Vertex>(v));
  }

  // Maps the subtree under u onto the (isomorphic) subtree under w.
  std::function<void(Vertex, Vertex, std::vector<Vertex>&)> carry = [&](Vertex u, Vertex w, std::vector<Vertex>& img) {
    img[u] = w;
    for (std::size_t i = 0; i < children[u].size(); ++i) carry(children[u][i], children[w][i], img);
  };
  // Permutes the child subtrees of v by perm (child i goes to child perm[i]).
  auto permute_children = [&](Vertex v, const std::vector<int>& perm, std::string label) {
    std::vector<Vertex> img(n);
    for (std::size_t x = 0; x < n; ++x) img[x] = static_cast<Vertex>(x);
    for (std::size_t i = 0; i < perm.size(); ++i) carry(children[v][i], children[v][perm[i]], img);
    s.automorphisms.emplace_back(std::move(img), std::move(label));
  };
  auto add_generators = [&](Vertex v, const std::string& where) {
    const int fan = static_cast<int>(children[v].size());
    if (fan >= 2) {
      std::vector<int> swap(fan);
      for (int i = 0; i < fan; ++i) swap[i] = i;
      std::swap(swap[0], swap[1]);
      permute_children(v, swap, "swap@" + where);
    }
    if (fan >= 3) {
      std::vector<int> cycle(fan);
      for (int i = 0; i < fan; ++i) cycle[i] = (i + 1) % fan;
      permute_children(v, cycle, "cycle@" + where);
    }
  };
  // Symmetric-group generators at the root and at one vertex per level along
  // the leftmost branch generate the whole iterated wreath product.
  Vertex v = 0;
  for (int d = 0; d < r; ++d) {
    add_generators(v, std::to_string(d));
    v = children[v][0];
  }
  return s;
}

int parse_int(const std::string& text, const std::string& spec) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used == text.size()) return value;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::invalid_input, "bad number '" + text + "' in space '" + spec + "'");
}

}  // namespace

Space make_space(std::string name, FiniteGraph graph) {
  Space s;
  s.name = std::move(name);
  s.graph = std::make_shared<const FiniteGraph>(std::move(graph));
  s.metric = MetricTable::of_graph(s.graph);
  return s;
}

Word reduce(Word w) {
  Word out;
  out.reserve(w.size());
  for (int letter : w) {
    if (letter == 0) throw Error(ErrorCode::invalid_input, "zero is not a letter");
    if (!out.empty() && out.back() == -letter) {
      out.pop_back();
    } else {
      out.push_back(letter);
    }
  }
  return out;
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& letter : out) letter = -letter;
  return out;
}

Word multiply(const Word& u, const Word& v) {
  Word w = u;
  w.insert(w.end(), v.begin(), v.end());
  return reduce(std::move(w));
}

std::string word_label(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (int letter : w) {
    const int k = std::abs(letter) - 1;
    if (k >= 26) throw Error(ErrorCode::invalid_input, "word labels support at most 26 generators");
    out += static_cast<char>(letter > 0 ? 'a' + k : 'A' + k);
  }
  return out;
}

Word parse_word(const std::string& label) {
  if (label == "e" || label.empty()) return {};
  Word w;
  for (char c : label) {
    if (c >= 'a' && c <= 'z') {
      w.push_back(c - 'a' + 1);
    } else if (c >= 'A' && c <= 'Z') {
      w.push_back(-(c - 'A' + 1));
    } else {
      throw Error(ErrorCode::invalid_input, "bad letter '" + std::string(1, c) + "' in word '" + label + "'");
    }
  }
  return reduce(std::move(w));
}

std::optional<Vertex> GroupBall::vertex_of(const Word& w) const {
  const auto it = index_.find(reduce(w));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Isometry GroupBall::left_translation(const Word& g) const {
  const Word h = reduce(g);
  for (int letter : h) {
    if (std::abs(letter) > rank_) throw Error(ErrorCode::invalid_input, "letter outside the generating set");
  }
  std::vector<Vertex> image(words_.size(), Isometry::kNone);
  for (std::size_t x = 0; x < words_.size(); ++x) {
    if (const auto y = vertex_of(multiply(h, words_[x]))) image[x] = *y;
  }
  return Isometry(std::move(image), word_label(h));
}

std::vector<Vertex> GroupBall::inner_ball(int r) const {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < words_.size() && static_cast<int>(words_[v].size()) <= r; ++v) {
    out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

GroupBall free_group_ball(int rank, int N, std::size_t max_vertices) {
  if (rank < 1 || N < 1) throw Error(ErrorCode::invalid_input, "free group ball needs rank >= 1 and N >= 1");
  // |B(1, 2N)| = 1 + sum_{k=1}^{2N} 2 rank (2 rank - 1)^{k-1}
  std::size_t total = 1;
  std::size_t shell = 2 * static_cast<std::size_t>(rank);
  for (int k = 1; k <= 2 * N; ++k) {
    total += shell;
    if (total > max_vertices) {
      throw Error(ErrorCode::size_limit, "free group ball of rank " + std::to_string(rank) + " and radius " +
                                             std::to_string(2 * N) + " exceeds " + std::to_string(max_vertices) +
                                             " vertices");
    }
    shell *= 2 * static_cast<std::size_t>(rank) - 1;
  }

  GroupBall ball;
  ball.rank_ = rank;
  ball.inner_radius_ = N;
  ball.words_.reserve(total);
  ball.words_.emplace_back();
  const auto letters = letter_order(rank);
  std::vector<Edge> edges;
  edges.reserve(total - 1);
  for (std::size_t v = 0; v < ball.words_.size(); ++v) {
    if (static_cast<int>(ball.words_[v].size()) == 2 * N) continue;
    for (int letter : letters) {
      if (!ball.words_[v].empty() && ball.words_[v].back() == -letter) continue;
      Word w = ball.words_[v];
      w.push_back(letter);
      edges.emplace_back(static_cast<std::int64_t>(v), static_cast<std::int64_t>(ball.words_.size()));
      ball.words_.push_back(std::move(w));
    }
  }
  for (std::size_t v = 0; v < ball.words_.size(); ++v) ball.index_.emplace(ball.words_[v], static_cast<Vertex>(v));

  const std::string name = "free:" + std::to_string(rank) + ":" + std::to_string(N);
  ball.space_ = make_space(name, build_graph(iota_ids(total), edges));
  Space& s = ball.space_;
  s.center = 0;
  s.radius = 2 * N;
  s.inner_radius = N;
  s.labels.reserve(total);
  for (const Word& w : ball.words_) s.labels.push_back(word_label(w));
  for (std::size_t v = 0; v < total; ++v) {
    if (static_cast<int>(ball.words_[v].size()) == 2 * N) s.boundary.push_back(static_cast<Vertex>(v));
  }
  for (int i = 1; i <= rank; ++i) s.automorphisms.push_back(ball.left_translation({i}));
  return ball;
}

Space builtin_space(Builtin kind, int p1, int p2) {
  switch (kind) {
    case Builtin::line:
      return line_space(p1);
    case Builtin::ladder:
      return ladder_space(p1);
    case Builtin::cycle:
      return cycle_space(p1);
    case Builtin::regular_tree:
      return regular_tree_space(p1, p2);
  }
  throw Error(ErrorCode::internal, "unknown builtin space");
}

Space builtin_space(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream in(spec);
  for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
  if (parts.empty()) throw Error(ErrorCode::invalid_input, "empty space name");
  const std::string& kind = parts[0];
  auto arity = [&](std::size_t k) {
    if (parts.size() != k + 1) {
      throw Error(ErrorCode::invalid_input, "space '" + kind + "' takes " + std::to_string(k) + " parameter(s)");
    }
  };
  if (kind == "line") {
    arity(1);
    return builtin_space(Builtin::line, parse_int(parts[1], spec));
  }
  if (kind == "ladder") {
    arity(1);
    return builtin_space(Builtin::ladder, parse_int(parts[1], spec));
  }
  if (kind == "cycle") {
    arity(1);
    return builtin_space(Builtin::cycle, parse_int(parts[1], spec));
  }
  if (kind == "tree") {
    arity(2);
    return builtin_space(Builtin::regular_tree, parse_int(parts[1], spec), parse_int(parts[2], spec));
  }
  if (kind == "free") {
    arity(2);
    return free_group_ball(parse_int(parts[1], spec), parse_int(parts[2], spec)).space();
  }
  throw Error(ErrorCode::invalid_input, "unknown space '" + spec + "' (expected line, ladder, cycle, tree or free)");
}

std::vector<Vertex> safe_region(const Space& space, int margin) {
  if (margin < 0) throw Error(ErrorCode::invalid_input, "margin must be nonnegative");
  const std::size_t n = space.size();
  std::vector<Vertex> out;
  if (space.boundary.empty()) {
    for (std::size_t v = 0; v < n; ++v) out.push_back(static_cast<Vertex>(v));
    return out;
  }
  // Multi-source BFS from the boundary.
  std::vector<int> dist(n, -1);
  std::vector<Vertex> queue;
  for (Vertex b : space.boundary) {
    if (dist[b] < 0) {
      dist[b] = 0;
      queue.push_back(b);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (Vertex w : space.graph->neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (dist[v] >= margin) out.push_back(static_cast<Vertex>(v));
  }
  if (out.empty()) {
    throw Error(ErrorCode::empty_region, "no vertex of " + space.name + " is at distance >= " +
                                             std::to_string(margin) + " from the truncation boundary");
  }
  return out;
}

PairIdentificationReport pair_identification(const GroupBall& group, int R, const std::vector<Word>& translations) {
  const int N = group.inner_radius();
  if (R < 0 || R > N) throw Error(ErrorCode::invalid_input, "pair identification needs 0 <= R <= N");
  const MetricTable& m = group.metric();
  const auto inner = group.inner_ball(N);
  const std::size_t radius_ball = group.inner_ball(R).size();  // shortlex: vertices 0..|B(1,R)|-1

  PairIdentificationReport rep;
  rep.R = R;
  rep.target_size = static_cast<std::uint64_t>(inner.size()) * radius_ball;
  std::vector<char> hit(rep.target_size, 0);
  std::uint64_t hits = 0;
  auto note = [&](std::string msg) {
    if (rep.failures.size() < 8) rep.failures.push_back(std::move(msg));
  };

  for (std::size_t xi = 0; xi < inner.size(); ++xi) {
    const Vertex x = inner[xi];
    const Word x_inv = inverse(group.word(x));
    for (Vertex y : ball(m, x, R)) {
      ++rep.domain_size;
      const Word h = multiply(x_inv, group.word(y));
      const auto v = group.vertex_of(h);
      if (static_cast<int>(h.size()) > R || !v) {
        ++rep.outside_target;
        note("(" + word_label(group.word(x)) + ", " + word_label(group.word(y)) + ") maps outside B(1,R)");
        continue;
      }
      const std::size_t slot = xi * radius_ball + static_cast<std::size_t>(*v);
      if (hit[slot]) {
        ++rep.collisions;
        note("collision at (" + word_label(group.word(x)) + ", " + word_label(h) + ")");
      } else {
        hit[slot] = 1;
        ++hits;
      }
    }
  }
  rep.missed = rep.target_size - hits;

  for (const Word& g : translations) {
    const Isometry tg = group.left_translation(g);
    for (Vertex x : inner) {
      if (!tg.defined(x) || static_cast<int>(group.word(tg(x)).size()) > N) continue;
      const Word x_inv = inverse(group.word(x));
      const Word gx_inv = inverse(group.word(tg(x)));
      for (Vertex y : ball(m, x, R)) {
        if (!tg.defined(y)) continue;
        ++rep.equivariance_checked;
        if (multiply(x_inv, group.word(y)) != multiply(gx_inv, group.word(tg(y)))) {
          ++rep.equivariance_failures;
          note("translation by " + word_label(g) + " changes x^-1 y at (" + word_label(group.word(x)) + ", " +
               word_label(group.word(y)) + ")");
        }
      }
    }
  }
  return rep;
}

Isometry random_tree_automorphism(const FiniteGraph& tree, Vertex root, std::mt19937_64& rng) {
  if (!tree.is_tree()) throw Error(ErrorCode::not_a_tree, "random_tree_automorphism needs a tree");
  const std::size_t n = tree.size();
  std::vector<Vertex> order{root};
  std::vector<Vertex> parent(n, -1);
  parent[root] = root;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (Vertex w : tree.neighbors(order[head])) {
      if (parent[w] < 0) {
        parent[w] = order[head];
        order.push_back(w);
      }
    }
  }
  std::vector<std::vector<Vertex>> children(n);
  for (Vertex v : order) {
    if (v != root) children[parent[v]].push_back(v);
  }

  // Canonical subtree classes, bottom-up.
  std::vector<int> cls(n);
  std::map<std::vector<int>, int> classes;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::vector<int> key;
    for (Vertex c : children[*it]) key.push_back(cls[c]);
    std::sort(key.begin(), key.end());
    cls[*it] = classes.emplace(std::move(key), static_cast<int>(classes.size())).first->second;
  }

  std::vector<Vertex> image(n, Isometry::kNone);
  image[root] = root;
  std::vector<std::pair<Vertex, Vertex>> stack{{root, root}};
  while (!stack.empty()) {
    const auto [v, w] = stack.back();
    stack.pop_back();
    std::map<int, std::vector<Vertex>> from, to;
    for (Vertex c : children[v]) from[cls[c]].push_back(c);
    for (Vertex c : children[w]) to[cls[c]].push_back(c);
    for (auto& [k, targets] : to) {
      std::shuffle(targets.begin(), targets.end(), rng);
      const auto& sources = from[k];
      for (std::size_t i = 0; i < sources.size(); ++i) {
        image[sources[i]] = targets[i];
        stack.emplace_back(sources[i], targets[i]);
      }
    }
  }
  return Isometry(std::move(image), "random");
}

}  // namespace lpcocycle
