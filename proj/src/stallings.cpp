#include "eqfree/stallings.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <string>
#include <utility>

namespace eqfree {

namespace {

constexpr std::uint32_t kNone = SubgroupGraph::kNoVertex;

AlphabetPtr expression_symbols(std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    names.push_back("g" + std::to_string(i + 1));
  return make_alphabet(std::move(names));
}

// Stallings folding over a wedge of loops, by union-find on vertices with a
// conflict worklist. Every edge keeps an expression over the generator
// symbols; the invariant is that some consistent assignment of words c(v)
// exists, c(basepoint) = 1, with subst(expr(e)) = c(src)·label·c(dst)^-1 for
// every live edge. Merging two vertices rewrites the expressions of the
// absorbed class by the discrepancy word read off the conflicting edge pair,
// which preserves the invariant without ever materialising the c(v).
class Folder {
 public:
  Folder(AlphabetPtr alphabet, const std::vector<Word>& generators,
         AlphabetPtr symbols)
      : alphabet_(std::move(alphabet)), symbols_(std::move(symbols)) {
    const std::size_t k = alphabet_->size();
    new_vertex();  // basepoint = 0
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const auto& letters = generators[i].letters();
      const std::size_t m = letters.size();
      std::uint32_t prev = 0;
      for (std::size_t j = 0; j < m; ++j) {
        Letter l = letters[j];
        std::uint32_t next = (j + 1 == m) ? 0 : new_vertex();
        Word expr(symbols_);
        if (j + 1 == m)
          expr = Word::generator(symbols_, i, /*inv=*/l.inv);
        if (!l.inv)
          add_edge(prev, l.gen, next, std::move(expr));
        else
          add_edge(next, l.gen, prev, std::move(expr));
        prev = next;
      }
    }
    (void)k;
    fold();
  }

  std::uint32_t vertex_count() const {
    return static_cast<std::uint32_t>(parent_.size());
  }

  std::vector<SubgroupGraph::RawEdge> edges() {
    std::vector<SubgroupGraph::RawEdge> out;
    for (const FEdge& e : edges_)
      if (e.alive)
        out.push_back({find(e.src), e.label, find(e.dst), e.expr});
    return out;
  }

  std::uint32_t base_class() { return find(0); }

 private:
  struct FEdge {
    std::uint32_t src, label, dst;
    Word expr;
    bool alive = true;
  };
  struct Slots {
    std::vector<std::vector<std::uint32_t>> out, in;  // [label] -> edge ids
  };

  std::uint32_t new_vertex() {
    auto id = static_cast<std::uint32_t>(parent_.size());
    parent_.push_back(id);
    slots_.emplace_back();
    slots_.back().out.resize(alphabet_->size());
    slots_.back().in.resize(alphabet_->size());
    return id;
  }

  void add_edge(std::uint32_t src, std::uint32_t label, std::uint32_t dst,
                Word expr) {
    auto id = static_cast<std::uint32_t>(edges_.size());
    edges_.push_back(FEdge{src, label, dst, std::move(expr)});
    slots_[src].out[label].push_back(id);
    slots_[dst].in[label].push_back(id);
  }

  std::uint32_t find(std::uint32_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void compact(std::vector<std::uint32_t>& ids) {
    std::erase_if(ids, [this](std::uint32_t id) { return !edges_[id].alive; });
  }

  // Absorbs class v into class u; delta must satisfy
  // subst(delta) = c(u)·c(v)^-1.
  void merge(std::uint32_t u, std::uint32_t v, Word delta) {
    if (v == find(0)) {
      std::swap(u, v);
      delta = delta.inverse();
    }
    const Word delta_inv = delta.inverse();
    for (auto& lst : slots_[v].out)
      for (std::uint32_t id : lst)
        if (edges_[id].alive) edges_[id].expr = delta * edges_[id].expr;
    for (auto& lst : slots_[v].in)
      for (std::uint32_t id : lst)
        if (edges_[id].alive) edges_[id].expr = edges_[id].expr * delta_inv;
    parent_[v] = u;
    for (std::size_t l = 0; l < alphabet_->size(); ++l) {
      auto& uo = slots_[u].out[l];
      auto& vo = slots_[v].out[l];
      uo.insert(uo.end(), vo.begin(), vo.end());
      vo.clear();
      auto& ui = slots_[u].in[l];
      auto& vi = slots_[v].in[l];
      ui.insert(ui.end(), vi.begin(), vi.end());
      vi.clear();
    }
  }

  // Handles one label conflict at class v, if any.
  bool resolve_at(std::uint32_t v) {
    for (std::size_t l = 0; l < alphabet_->size(); ++l) {
      auto& out = slots_[v].out[l];
      compact(out);
      if (out.size() >= 2) {
        FEdge& e1 = edges_[out[0]];
        FEdge& e2 = edges_[out[1]];
        std::uint32_t t1 = find(e1.dst), t2 = find(e2.dst);
        if (t1 == t2) {
          e2.alive = false;  // parallel duplicate; either expression is valid
        } else {
          merge(t1, t2, e1.expr.inverse() * e2.expr);
        }
        return true;
      }
      auto& in = slots_[v].in[l];
      compact(in);
      if (in.size() >= 2) {
        FEdge& e1 = edges_[in[0]];
        FEdge& e2 = edges_[in[1]];
        std::uint32_t s1 = find(e1.src), s2 = find(e2.src);
        if (s1 == s2) {
          e2.alive = false;
        } else {
          merge(s1, s2, e1.expr * e2.expr.inverse());
        }
        return true;
      }
    }
    return false;
  }

  void fold() {
    bool again = true;
    while (again) {
      again = false;
      for (std::uint32_t v = 0; v < parent_.size(); ++v) {
        if (find(v) != v) continue;
        if (resolve_at(v)) {
          again = true;
          break;
        }
      }
    }
  }

  AlphabetPtr alphabet_;
  AlphabetPtr symbols_;
  std::vector<std::uint32_t> parent_;
  std::vector<Slots> slots_;
  std::vector<FEdge> edges_;
};

}  // namespace

SubgroupGraph SubgroupGraph::fold(AlphabetPtr alphabet,
                                  std::vector<Word> generators) {
  if (!alphabet) throw MalformedInput("fold requires an alphabet");
  for (const Word& w : generators)
    require_same_alphabet(w.alphabet(), alphabet, "fold");
  AlphabetPtr symbols = expression_symbols(generators.size());
  Folder folder(alphabet, generators, symbols);
  auto edges = folder.edges();
  return from_edges(alphabet, folder.vertex_count(), folder.base_class(),
                    std::move(edges), symbols, std::move(generators),
                    /*annotated=*/true);
}

SubgroupGraph SubgroupGraph::whole_group(const AlphabetPtr& alphabet) {
  std::vector<Word> gens;
  gens.reserve(alphabet->size());
  for (std::size_t i = 0; i < alphabet->size(); ++i)
    gens.push_back(Word::generator(alphabet, i));
  return fold(alphabet, std::move(gens));
}

SubgroupGraph SubgroupGraph::trivial(const AlphabetPtr& alphabet) {
  return fold(alphabet, {});
}

SubgroupGraph SubgroupGraph::from_edges(AlphabetPtr alphabet,
                                        std::uint32_t nvertices,
                                        std::uint32_t base,
                                        std::vector<RawEdge> edges,
                                        AlphabetPtr symbols,
                                        std::vector<Word> generators,
                                        bool annotated) {
  const std::size_t k = alphabet->size();

  // Adjacency by edge index; loops list their edge twice (degree two).
  std::vector<std::vector<std::uint32_t>> adj(nvertices);
  std::vector<char> edge_alive(edges.size(), 1);
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    adj[edges[i].src].push_back(i);
    adj[edges[i].dst].push_back(i);
  }

  // Restrict to the basepoint component.
  std::vector<char> in_component(nvertices, 0);
  {
    std::deque<std::uint32_t> queue{base};
    in_component[base] = 1;
    while (!queue.empty()) {
      std::uint32_t v = queue.front();
      queue.pop_front();
      for (std::uint32_t ei : adj[v]) {
        for (std::uint32_t w : {edges[ei].src, edges[ei].dst}) {
          if (!in_component[w]) {
            in_component[w] = 1;
            queue.push_back(w);
          }
        }
      }
    }
    for (std::uint32_t i = 0; i < edges.size(); ++i)
      if (!in_component[edges[i].src]) edge_alive[i] = 0;
  }

  // Core: repeatedly strip non-basepoint vertices of degree <= 1.
  std::vector<std::uint32_t> degree(nvertices, 0);
  for (std::uint32_t i = 0; i < edges.size(); ++i)
    if (edge_alive[i]) {
      ++degree[edges[i].src];
      ++degree[edges[i].dst];
    }
  {
    std::deque<std::uint32_t> queue;
    for (std::uint32_t v = 0; v < nvertices; ++v)
      if (in_component[v] && v != base && degree[v] <= 1) queue.push_back(v);
    while (!queue.empty()) {
      std::uint32_t v = queue.front();
      queue.pop_front();
      if (!in_component[v] || v == base || degree[v] > 1) continue;
      in_component[v] = 0;
      for (std::uint32_t ei : adj[v]) {
        if (!edge_alive[ei]) continue;
        edge_alive[ei] = 0;
        --degree[edges[ei].src];
        --degree[edges[ei].dst];
        for (std::uint32_t w : {edges[ei].src, edges[ei].dst})
          if (in_component[w] && w != base && degree[w] <= 1)
            queue.push_back(w);
      }
    }
  }

  // Deterministic transition tables over the surviving folded graph.
  std::vector<std::vector<std::uint32_t>> fwd0(nvertices),
      bwd0(nvertices);  // -> edge index
  for (std::uint32_t v = 0; v < nvertices; ++v)
    if (in_component[v]) {
      fwd0[v].assign(k, kNone);
      bwd0[v].assign(k, kNone);
    }
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    if (!edge_alive[i]) continue;
    const RawEdge& e = edges[i];
    if (fwd0[e.src][e.label] != kNone || bwd0[e.dst][e.label] != kNone)
      throw InternalContradiction("graph is not folded");
    fwd0[e.src][e.label] = i;
    bwd0[e.dst][e.label] = i;
  }

  // Canonical breadth-first relabelling: out-edges in label order, then
  // in-edges in label order.
  std::vector<std::uint32_t> canon(nvertices, kNone);
  std::vector<std::uint32_t> order;
  canon[base] = 0;
  order.push_back(base);
  for (std::size_t head = 0; head < order.size(); ++head) {
    std::uint32_t v = order[head];
    for (std::size_t l = 0; l < k; ++l) {
      if (fwd0[v][l] != kNone) {
        std::uint32_t w = edges[fwd0[v][l]].dst;
        if (canon[w] == kNone) {
          canon[w] = static_cast<std::uint32_t>(order.size());
          order.push_back(w);
        }
      }
    }
    for (std::size_t l = 0; l < k; ++l) {
      if (bwd0[v][l] != kNone) {
        std::uint32_t w = edges[bwd0[v][l]].src;
        if (canon[w] == kNone) {
          canon[w] = static_cast<std::uint32_t>(order.size());
          order.push_back(w);
        }
      }
    }
  }

  SubgroupGraph g;
  g.alphabet_ = std::move(alphabet);
  const std::size_t n = order.size();
  g.fwd_.assign(n, std::vector<std::uint32_t>(k, kNone));
  g.bwd_.assign(n, std::vector<std::uint32_t>(k, kNone));
  g.expr_.assign(n, std::vector<std::optional<Word>>(k));
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    if (!edge_alive[i]) continue;
    const RawEdge& e = edges[i];
    std::uint32_t s = canon[e.src], d = canon[e.dst];
    g.fwd_[s][e.label] = d;
    g.bwd_[d][e.label] = s;
    if (annotated) g.expr_[s][e.label] = e.expr;
    ++g.edge_count_;
  }
  if (annotated) {
    g.symbols_ = std::move(symbols);
    g.generators_given_ = std::move(generators);
  } else {
    g.self_annotate();
  }
  return g;
}

namespace {

struct TreeInfo {
  std::vector<Word> path;                  // basepoint-to-vertex tree words
  std::vector<std::vector<char>> is_tree;  // [v][label], forward edges
};

TreeInfo spanning_tree(const AlphabetPtr& alphabet,
                       const std::vector<std::vector<std::uint32_t>>& fwd,
                       const std::vector<std::vector<std::uint32_t>>& bwd) {
  const std::size_t n = fwd.size();
  const std::size_t k = alphabet->size();
  TreeInfo t;
  t.path.assign(n, Word(alphabet));
  t.is_tree.assign(n, std::vector<char>(k, 0));
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  std::deque<std::uint32_t> queue{0};
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    for (std::size_t l = 0; l < k; ++l) {
      std::uint32_t w = fwd[v][l];
      if (w != kNone && !seen[w]) {
        seen[w] = 1;
        t.is_tree[v][l] = 1;
        t.path[w] = t.path[v] * Word::generator(alphabet, l);
        queue.push_back(w);
      }
    }
    for (std::size_t l = 0; l < k; ++l) {
      std::uint32_t w = bwd[v][l];
      if (w != kNone && !seen[w]) {
        seen[w] = 1;
        t.is_tree[w][l] = 1;  // the tree edge is the forward edge (w, l, v)
        t.path[w] = t.path[v] * Word::generator(alphabet, l, /*inv=*/true);
        queue.push_back(w);
      }
    }
  }
  return t;
}

}  // namespace

void SubgroupGraph::self_annotate() {
  TreeInfo tree = spanning_tree(alphabet_, fwd_, bwd_);
  symbols_ = expression_symbols(rank());
  generators_given_.clear();
  std::size_t next = 0;
  for (std::uint32_t v = 0; v < fwd_.size(); ++v) {
    for (std::size_t l = 0; l < alphabet_->size(); ++l) {
      if (fwd_[v][l] == kNone) continue;
      if (tree.is_tree[v][l]) {
        expr_[v][l] = Word(symbols_);
      } else {
        expr_[v][l] = Word::generator(symbols_, next);
        generators_given_.push_back(tree.path[v] * Word::generator(alphabet_, l) *
                                    tree.path[fwd_[v][l]].inverse());
        ++next;
      }
    }
  }
}

std::uint32_t SubgroupGraph::step(std::uint32_t v, Letter l) const {
  return l.inv ? bwd_[v][l.gen] : fwd_[v][l.gen];
}

bool SubgroupGraph::member(const Word& w) const {
  require_same_alphabet(w.alphabet(), alphabet_, "member");
  std::uint32_t v = 0;
  for (Letter l : w.letters()) {
    v = step(v, l);
    if (v == kNone) return false;
  }
  return v == 0;
}

Word SubgroupGraph::express(const Word& w) const {
  require_same_alphabet(w.alphabet(), alphabet_, "express");
  Word out(symbols_);
  std::uint32_t v = 0;
  for (Letter l : w.letters()) {
    std::uint32_t next = step(v, l);
    if (next == kNone) throw NotAMember("word is not in the subgroup");
    if (!l.inv)
      out = out * *expr_[v][l.gen];
    else
      out = out * expr_[next][l.gen]->inverse();
    v = next;
  }
  if (v != 0) throw NotAMember("word is not in the subgroup");
  return out;
}

Basis SubgroupGraph::basis() const {
  TreeInfo tree = spanning_tree(alphabet_, fwd_, bwd_);
  Basis b;
  for (std::uint32_t v = 0; v < fwd_.size(); ++v) {
    for (std::size_t l = 0; l < alphabet_->size(); ++l) {
      std::uint32_t w = fwd_[v][l];
      if (w == kNone || tree.is_tree[v][l]) continue;
      b.words.push_back(tree.path[v] * Word::generator(alphabet_, l) *
                        tree.path[w].inverse());
      b.via.push_back({v, static_cast<std::uint32_t>(l), w});
    }
  }
  return b;
}

std::string SubgroupGraph::to_dot() const {
  std::ostringstream out;
  out << "digraph stallings {\n";
  out << "  rankdir=LR;\n";
  for (std::uint32_t v = 0; v < fwd_.size(); ++v)
    out << "  " << v << " [shape=" << (v == 0 ? "doublecircle" : "circle")
        << "];\n";
  for (std::uint32_t v = 0; v < fwd_.size(); ++v)
    for (std::size_t l = 0; l < alphabet_->size(); ++l)
      if (fwd_[v][l] != kNone)
        out << "  " << v << " -> " << fwd_[v][l] << " [label=\""
            << alphabet_->name(l) << "\"];\n";
  out << "}\n";
  return out.str();
}

bool SubgroupGraph::operator==(const SubgroupGraph& rhs) const {
  return same_alphabet(alphabet_, rhs.alphabet_) && fwd_ == rhs.fwd_ &&
         bwd_ == rhs.bwd_;
}

SubgroupGraph intersect(const SubgroupGraph& g, const SubgroupGraph& h) {
  require_same_alphabet(g.alphabet(), h.alphabet(), "intersect");
  const std::size_t k = g.alphabet()->size();

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> ids;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  auto id_of = [&](std::uint32_t a, std::uint32_t b) {
    auto [it, fresh] = ids.try_emplace({a, b},
                                       static_cast<std::uint32_t>(pairs.size()));
    if (fresh) pairs.emplace_back(a, b);
    return it->second;
  };

  std::vector<SubgroupGraph::RawEdge> edges;
  id_of(0, 0);
  for (std::size_t head = 0; head < pairs.size(); ++head) {
    auto [gv, hv] = pairs[head];
    auto pid = static_cast<std::uint32_t>(head);
    for (std::size_t l = 0; l < k; ++l) {
      Letter fwd{static_cast<std::uint32_t>(l), false};
      std::uint32_t gt = g.step(gv, fwd), ht = h.step(hv, fwd);
      if (gt != SubgroupGraph::kNoVertex && ht != SubgroupGraph::kNoVertex)
        edges.push_back({pid, static_cast<std::uint32_t>(l), id_of(gt, ht),
                         std::nullopt});
      Letter bwd{static_cast<std::uint32_t>(l), true};
      std::uint32_t gs = g.step(gv, bwd), hs = h.step(hv, bwd);
      if (gs != SubgroupGraph::kNoVertex && hs != SubgroupGraph::kNoVertex)
        id_of(gs, hs);  // reachability only; the edge is emitted from (gs, hs)
    }
  }
  return SubgroupGraph::from_edges(g.alphabet(),
                                   static_cast<std::uint32_t>(pairs.size()), 0,
                                   std::move(edges), nullptr, {},
                                   /*annotated=*/false);
}

bool includes(const SubgroupGraph& g, const SubgroupGraph& h) {
  require_same_alphabet(g.alphabet(), h.alphabet(), "includes");
  for (const Word& w : h.basis().words)
    if (!g.member(w)) return false;
  return true;
}

bool equal(const SubgroupGraph& g, const SubgroupGraph& h) { return g == h; }

SubgroupGraph preimage(const Homomorphism& g, const SubgroupGraph& A) {
  require_same_alphabet(A.alphabet(), g.codomain(), "preimage");
  if (!is_injective(g))
    throw Unsupported(
        "preimage under a non-injective map is not finitely generated");
  SubgroupGraph image = SubgroupGraph::fold(g.codomain(), g.images());
  SubgroupGraph b = intersect(A, image);
  std::vector<Word> pre;
  pre.reserve(b.rank());
  for (const Word& w : b.basis().words)
    pre.push_back(transliterate(image.express(w), g.domain()));
  return SubgroupGraph::fold(g.domain(), std::move(pre));
}

}  // namespace eqfree
