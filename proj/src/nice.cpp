#include "hamcycle/nice.hpp"

#include <algorithm>
#include <stdexcept>

namespace hamcycle {

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Leaf: return "leaf";
    case NodeKind::IntroduceVertex: return "introduce-vertex";
    case NodeKind::IntroduceEdge: return "introduce-edge";
    case NodeKind::ForgetVertex: return "forget-vertex";
    case NodeKind::Join: return "join";
  }
  return "?";
}

int NiceDecomposition::width() const {
  std::size_t w = 0;
  for (const auto& nd : nodes) w = std::max(w, nd.bag.size());
  return static_cast<int>(w) - 1;
}

std::size_t NiceDecomposition::count(NodeKind k) const {
  return static_cast<std::size_t>(std::count_if(
      nodes.begin(), nodes.end(), [k](const NiceNode& x) { return x.kind == k; }));
}

Vertex NiceDecomposition::first_introduced() const {
  for (const auto& nd : nodes)
    if (nd.kind == NodeKind::IntroduceVertex) return nd.vertex;
  return 0;
}

namespace {

class NiceBuilder {
 public:
  explicit NiceBuilder(const Graph& g) : g_(g) {}

  int leaf() {
    NiceNode n;
    n.kind = NodeKind::Leaf;
    return push(std::move(n));
  }

  int introduce(int child, Vertex v) {
    NiceNode n;
    n.kind = NodeKind::IntroduceVertex;
    n.vertex = v;
    n.bag = nodes_[child].bag;
    n.bag.insert(std::lower_bound(n.bag.begin(), n.bag.end(), v), v);
    n.subtree_vertices = nodes_[child].subtree_vertices + 1;
    n.children[0] = child;
    return push(std::move(n));
  }

  // Introduce-edge chain for v's edges into the rest of the bag, then forget v.
  int forget(int child, Vertex v) {
    std::vector<Vertex> bag = nodes_[child].bag;
    int top = child;
    for (Vertex w : bag) {
      if (w == v || !g_.has_edge(v, w)) continue;
      NiceNode e;
      e.kind = NodeKind::IntroduceEdge;
      e.edge = Edge(v, w);
      e.bag = bag;
      e.subtree_vertices = nodes_[top].subtree_vertices;
      e.children[0] = top;
      top = push(std::move(e));
    }
    NiceNode n;
    n.kind = NodeKind::ForgetVertex;
    n.vertex = v;
    n.bag = bag;
    n.bag.erase(std::lower_bound(n.bag.begin(), n.bag.end(), v));
    n.subtree_vertices = nodes_[top].subtree_vertices;
    n.children[0] = top;
    return push(std::move(n));
  }

  int join(int a, int b) {
    NiceNode n;
    n.kind = NodeKind::Join;
    n.bag = nodes_[a].bag;
    n.subtree_vertices = nodes_[a].subtree_vertices + nodes_[b].subtree_vertices -
                         static_cast<int>(n.bag.size());
    n.children = {a, b};
    return push(std::move(n));
  }

  // Walk from a node with bag `from` to one with bag `to`: forgets first.
  int morph(int top, const std::vector<Vertex>& to) {
    std::vector<Vertex> from = nodes_[top].bag;
    for (Vertex v : from)
      if (!std::binary_search(to.begin(), to.end(), v)) top = forget(top, v);
    for (Vertex v : to)
      if (!std::binary_search(from.begin(), from.end(), v)) top = introduce(top, v);
    return top;
  }

  // Emits nodes in post-order starting from `root`.
  NiceDecomposition finish(int root) {
    NiceDecomposition out;
    out.nodes.reserve(nodes_.size());
    std::vector<int> new_id(nodes_.size(), -1);
    std::vector<std::pair<int, int>> stack{{root, 0}};
    while (!stack.empty()) {
      auto& [id, next] = stack.back();
      const NiceNode& nd = nodes_[id];
      if (next < 2 && nd.children[next] >= 0) {
        int c = nd.children[next++];
        stack.emplace_back(c, 0);
        continue;
      }
      NiceNode copy = nd;
      for (int& c : copy.children)
        if (c >= 0) c = new_id[c];
      new_id[id] = static_cast<int>(out.nodes.size());
      out.nodes.push_back(std::move(copy));
      stack.pop_back();
    }
    return out;
  }

 private:
  int push(NiceNode n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  const Graph& g_;
  std::vector<NiceNode> nodes_;
};

}  // namespace

NiceDecomposition make_nice(const Graph& g, const TreeDecomposition& td) {
  if (auto check = validate_td(g, td); !check)
    throw std::invalid_argument("invalid tree decomposition: " + check.violation);
  NiceBuilder b(g);
  if (td.bags.empty()) return b.finish(b.leaf());

  const int nodes = static_cast<int>(td.bags.size());
  std::vector<std::vector<int>> adj(nodes);
  for (auto [x, y] : td.tree_edges) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  int root = 0;
  for (int t = 1; t < nodes; ++t)
    if (td.bags[t].size() > td.bags[root].size()) root = t;

  // TD post-order via explicit stack
  std::vector<int> parent(nodes, -1), order;
  order.reserve(nodes);
  std::vector<int> stack{root};
  parent[root] = root;
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    order.push_back(t);
    for (int c : adj[t])
      if (parent[c] < 0) {
        parent[c] = t;
        stack.push_back(c);
      }
  }
  std::reverse(order.begin(), order.end());

  std::vector<std::vector<int>> children(nodes);
  for (int t : order)
    if (t != root) children[parent[t]].push_back(t);
  for (auto& c : children) std::sort(c.begin(), c.end());

  std::vector<int> top(nodes, -1);
  std::vector<std::vector<Vertex>> bags(td.bags);
  for (auto& bag : bags) std::sort(bag.begin(), bag.end());
  for (int t : order) {
    int acc = -1;
    if (children[t].empty()) {
      acc = b.morph(b.leaf(), bags[t]);
    } else {
      for (int c : children[t]) {
        int lifted = b.morph(top[c], bags[t]);
        acc = acc < 0 ? lifted : b.join(acc, lifted);
      }
    }
    top[t] = acc;
  }
  return b.finish(b.morph(top[root], {}));
}

std::optional<std::string> validate_nice(const Graph& g, const NiceDecomposition& nd) {
  const auto& nodes = nd.nodes;
  if (nodes.empty()) return "no nodes";
  const int count = static_cast<int>(nodes.size());
  auto at = [](int i) { return "node " + std::to_string(i) + ": "; };

  std::vector<int> size(count, 1), parent(count, -1);
  std::vector<int> edge_seen(g.num_edges(), 0);
  for (int i = 0; i < count; ++i) {
    const NiceNode& x = nodes[i];
    if (!std::is_sorted(x.bag.begin(), x.bag.end())) return at(i) + "bag not sorted";
    int arity = (x.children[0] >= 0) + (x.children[1] >= 0);
    if (x.children[0] < 0 && x.children[1] >= 0) return at(i) + "malformed child slots";
    for (int k = 0; k < arity; ++k) {
      int c = x.children[k];
      if (c >= i) return at(i) + "child does not precede parent";
      if (parent[c] >= 0) return at(i) + "child has two parents";
      parent[c] = i;
    }
    // post-order layout: last child ends right before us
    if (arity >= 1 && x.children[arity - 1] != i - 1) return at(i) + "not in post-order";
    if (arity == 2 && x.children[0] != i - 1 - size[i - 1]) return at(i) + "not in post-order";
    for (int k = 0; k < arity; ++k) size[i] += size[x.children[k]];

    const std::vector<Vertex>* cb = arity >= 1 ? &nodes[x.children[0]].bag : nullptr;
    int expected_sub = 0;
    switch (x.kind) {
      case NodeKind::Leaf:
        if (arity != 0) return at(i) + "leaf with children";
        if (!x.bag.empty()) return at(i) + "leaf bag not empty";
        break;
      case NodeKind::IntroduceVertex: {
        if (arity != 1) return at(i) + "introduce-vertex arity";
        if (std::binary_search(cb->begin(), cb->end(), x.vertex))
          return at(i) + "introduced vertex already in bag";
        auto b = *cb;
        b.insert(std::lower_bound(b.begin(), b.end(), x.vertex), x.vertex);
        if (b != x.bag) return at(i) + "introduce-vertex bag mismatch";
        expected_sub = nodes[x.children[0]].subtree_vertices + 1;
        break;
      }
      case NodeKind::ForgetVertex: {
        if (arity != 1) return at(i) + "forget arity";
        if (!std::binary_search(cb->begin(), cb->end(), x.vertex))
          return at(i) + "forgotten vertex not in child bag";
        auto b = *cb;
        b.erase(std::lower_bound(b.begin(), b.end(), x.vertex));
        if (b != x.bag) return at(i) + "forget bag mismatch";
        // the chain directly below must introduce exactly v's edges into the bag
        std::vector<Edge> chain;
        for (int c = x.children[0]; nodes[c].kind == NodeKind::IntroduceEdge;
             c = nodes[c].children[0])
          chain.push_back(nodes[c].edge);
        std::vector<Edge> want;
        for (Vertex w : *cb)
          if (w != x.vertex && g.has_edge(x.vertex, w)) want.emplace_back(x.vertex, w);
        std::sort(chain.begin(), chain.end());
        if (chain != want)
          return at(i) + "introduce-edge chain below forget of " +
                 std::to_string(x.vertex) + " is not E_{t,v}";
        expected_sub = nodes[x.children[0]].subtree_vertices;
        break;
      }
      case NodeKind::IntroduceEdge: {
        if (arity != 1) return at(i) + "introduce-edge arity";
        if (*cb != x.bag) return at(i) + "introduce-edge changes the bag";
        int idx = g.edge_index(x.edge.u, x.edge.v);
        if (idx < 0) return at(i) + "introduces a non-edge";
        if (!std::binary_search(x.bag.begin(), x.bag.end(), x.edge.u) ||
            !std::binary_search(x.bag.begin(), x.bag.end(), x.edge.v))
          return at(i) + "edge endpoints not in bag";
        if (edge_seen[idx]++) return at(i) + "edge introduced twice";
        expected_sub = nodes[x.children[0]].subtree_vertices;
        break;
      }
      case NodeKind::Join:
        if (arity != 2) return at(i) + "join arity";
        if (nodes[x.children[0]].bag != x.bag || nodes[x.children[1]].bag != x.bag)
          return at(i) + "join bags differ";
        expected_sub = nodes[x.children[0]].subtree_vertices +
                       nodes[x.children[1]].subtree_vertices - static_cast<int>(x.bag.size());
        break;
    }
    if (x.subtree_vertices != expected_sub) return at(i) + "wrong subtree vertex count";
  }
  // every introduce-edge chain must end in a forget of one of its endpoints
  for (int i = 0; i < count; ++i) {
    if (nodes[i].kind != NodeKind::IntroduceEdge) continue;
    int up = parent[i];
    while (up >= 0 && nodes[up].kind == NodeKind::IntroduceEdge) up = parent[up];
    if (up < 0 || nodes[up].kind != NodeKind::ForgetVertex ||
        (nodes[up].vertex != nodes[i].edge.u && nodes[up].vertex != nodes[i].edge.v))
      return at(i) + "introduce-edge not directly below a forget of an endpoint";
  }
  for (std::size_t e = 0; e < edge_seen.size(); ++e)
    if (edge_seen[e] != 1) return "edge never introduced";
  if (parent[count - 1] >= 0) return "root has a parent";
  for (int i = 0; i + 1 < count; ++i)
    if (parent[i] < 0) return at(i) + "unreachable from root";
  if (!nodes.back().bag.empty()) return "root bag not empty";
  if (nodes.back().subtree_vertices != g.num_vertices()) return "root does not cover all vertices";
  return std::nullopt;
}

}  // namespace hamcycle
