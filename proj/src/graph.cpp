#include "chipfire/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace chipfire {

Graph::Graph(std::vector<std::string> names,
             const std::vector<std::pair<Vertex, Vertex>>& edges,
             std::vector<std::pair<std::string, Vertex>> aliases,
             std::optional<BananaSpec> banana)
    : names_(std::move(names)), aliases_(std::move(aliases)), banana_(std::move(banana)) {
    const auto n = names_.size();
    if (n == 0) throw GraphError("graph has no vertices");
    for (std::size_t i = 0; i < n; ++i) {
        if (names_[i].empty()) throw GraphError("empty vertex name");
        if (!lookup_.emplace(names_[i], static_cast<Vertex>(i)).second)
            throw GraphError("duplicate vertex name '" + names_[i] + "'");
    }
    for (const auto& [alias, target] : aliases_) {
        if (target < 0 || static_cast<std::size_t>(target) >= n) throw GraphError("alias target out of range");
        auto [it, fresh] = lookup_.emplace(alias, target);
        if (!fresh && it->second != target) throw GraphError("alias '" + alias + "' is ambiguous");
    }
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n)
            throw GraphError("edge endpoint out of range");
        if (a == b) throw GraphError("self-loop at '" + names_[static_cast<std::size_t>(a)] + "'");
        ++edges_[{std::min(a, b), std::max(a, b)}];
        ++edge_count_;
    }
    adj_.assign(n, {});
    valence_.assign(n, 0);
    for (const auto& [key, m] : edges_) {
        adj_[static_cast<std::size_t>(key.first)].push_back({key.second, m});
        adj_[static_cast<std::size_t>(key.second)].push_back({key.first, m});
        valence_[static_cast<std::size_t>(key.first)] += m;
        valence_[static_cast<std::size_t>(key.second)] += m;
    }

    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        for (const auto& nb : adj_[static_cast<std::size_t>(x)]) {
            if (!seen[static_cast<std::size_t>(nb.to)]) {
                seen[static_cast<std::size_t>(nb.to)] = 1;
                ++reached;
                stack.push_back(nb.to);
            }
        }
    }
    if (reached != n) throw GraphError("graph is disconnected");

    genus_ = static_cast<int>(edge_count_ - static_cast<long long>(n) + 1);
    base_ = static_cast<Vertex>(std::min_element(names_.begin(), names_.end()) - names_.begin());

    if (banana_) {
        // Banana builder layout: L, strand 0 interior, R, then the other interiors in order.
        const auto& len = banana_->lengths;
        strands_.assign(len.size(), {});
        Vertex next = 0;
        const Vertex L = next++;
        for (int i = 1; i < len[0]; ++i) strands_[0].push_back(next++);
        const Vertex R = next++;
        strands_[0].insert(strands_[0].begin(), L);
        strands_[0].push_back(R);
        for (std::size_t a = 1; a < len.size(); ++a) {
            strands_[a].push_back(L);
            for (int i = 1; i < len[a]; ++i) strands_[a].push_back(next++);
            strands_[a].push_back(R);
        }
        if (static_cast<std::size_t>(next) != n) throw GraphError("banana layout mismatch");
    }
}

std::optional<Vertex> Graph::find(std::string_view name) const {
    auto it = lookup_.find(std::string(name));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

Vertex Graph::vertex(std::string_view name) const {
    if (auto v = find(name)) return *v;
    throw GraphError("unknown vertex '" + std::string(name) + "'");
}

int Graph::multiplicity(Vertex a, Vertex b) const {
    auto it = edges_.find({std::min(a, b), std::max(a, b)});
    return it == edges_.end() ? 0 : it->second;
}

Vertex Graph::banana_vertex(int strand, int pos) const {
    if (!banana_) throw GraphError("not a banana graph");
    if (strand < 0 || static_cast<std::size_t>(strand) >= strands_.size())
        throw GraphError("strand out of range");
    const auto& s = strands_[static_cast<std::size_t>(strand)];
    if (pos < 0 || static_cast<std::size_t>(pos) >= s.size()) throw GraphError("strand position out of range");
    return s[static_cast<std::size_t>(pos)];
}

std::vector<StrandPos> Graph::strand_positions(Vertex v) const {
    if (!banana_) throw GraphError("not a banana graph");
    std::vector<StrandPos> out;
    for (std::size_t a = 0; a < strands_.size(); ++a) {
        const auto& s = strands_[a];
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i] == v) out.push_back({static_cast<int>(a), static_cast<int>(i)});
    }
    return out;
}

Graph build_general(const std::vector<std::string>& vertices,
                    const std::vector<std::pair<std::string, std::string>>& edges) {
    std::unordered_map<std::string, Vertex> idx;
    for (std::size_t i = 0; i < vertices.size(); ++i) idx.emplace(vertices[i], static_cast<Vertex>(i));
    std::vector<std::pair<Vertex, Vertex>> e;
    e.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        auto ia = idx.find(a);
        auto ib = idx.find(b);
        if (ia == idx.end()) throw GraphError("unknown endpoint '" + a + "'");
        if (ib == idx.end()) throw GraphError("unknown endpoint '" + b + "'");
        e.emplace_back(ia->second, ib->second);
    }
    return Graph(vertices, e);
}

Graph build_banana(const std::vector<int>& lengths) {
    if (lengths.size() < 2) throw GraphError("a banana needs at least two strands");
    for (int n : lengths)
        if (n < 1) throw GraphError("strand lengths must be positive");

    auto nm = [](std::size_t a, int i) { return "s" + std::to_string(a) + "." + std::to_string(i); };
    std::vector<std::string> names;
    std::vector<std::pair<std::string, Vertex>> aliases;
    std::vector<std::pair<Vertex, Vertex>> edges;

    const Vertex L = 0;
    names.push_back(nm(0, 0));
    Vertex prev = L;
    for (int i = 1; i < lengths[0]; ++i) {
        names.push_back(nm(0, i));
        Vertex cur = static_cast<Vertex>(names.size() - 1);
        edges.emplace_back(prev, cur);
        prev = cur;
    }
    names.push_back(nm(0, lengths[0]));
    const Vertex R = static_cast<Vertex>(names.size() - 1);
    edges.emplace_back(prev, R);

    for (std::size_t a = 1; a < lengths.size(); ++a) {
        aliases.emplace_back(nm(a, 0), L);
        aliases.emplace_back(nm(a, lengths[a]), R);
        prev = L;
        for (int i = 1; i < lengths[a]; ++i) {
            names.push_back(nm(a, i));
            Vertex cur = static_cast<Vertex>(names.size() - 1);
            edges.emplace_back(prev, cur);
            prev = cur;
        }
        edges.emplace_back(prev, R);
    }
    aliases.emplace_back("L", L);
    aliases.emplace_back("R", R);
    return Graph(std::move(names), edges, std::move(aliases), BananaSpec{lengths});
}

MarkedGraph build_cycle(int a, int b) {
    Graph g = build_banana({a, b});
    Vertex L = g.left(), R = g.right();
    return MarkedGraph{std::move(g), L, R};
}

MarkedGraph mark(Graph g, std::string_view u, std::string_view v) {
    Vertex iu = g.vertex(u), iv = g.vertex(v);
    return MarkedGraph{std::move(g), iu, iv};
}

Gluing glue_chain(const std::vector<MarkedGraph>& parts, const std::vector<int>& bridges) {
    if (parts.empty()) throw GraphError("empty chain");
    if (!bridges.empty() && bridges.size() + 1 != parts.size())
        throw GraphError("bridge list must have one entry per junction");

    Gluing out;
    std::vector<std::string> names;
    std::vector<std::pair<std::string, Vertex>> aliases;
    std::vector<std::pair<Vertex, Vertex>> edges;
    out.embed.resize(parts.size());
    out.bridge_vertices.resize(parts.size() - 1);

    Vertex carry = -1;  // previous part's v in the glued graph
    for (std::size_t p = 0; p < parts.size(); ++p) {
        const Graph& g = parts[p].graph;
        const std::string prefix = "c" + std::to_string(p + 1) + "/";
        const int len = (p == 0 || bridges.empty()) ? 0 : bridges[p - 1];
        if (len < 0) throw GraphError("negative bridge length");
        auto& emb = out.embed[p];
        emb.assign(g.size(), -1);
        for (Vertex x = 0; x < static_cast<Vertex>(g.size()); ++x) {
            if (p > 0 && len == 0 && x == parts[p].u) {
                emb[static_cast<std::size_t>(x)] = carry;
                aliases.emplace_back(prefix + g.name(x), carry);
                continue;
            }
            names.push_back(prefix + g.name(x));
            emb[static_cast<std::size_t>(x)] = static_cast<Vertex>(names.size() - 1);
        }
        for (const auto& [al, t] : g.aliases()) aliases.emplace_back(prefix + al, emb[static_cast<std::size_t>(t)]);
        for (const auto& [key, m] : g.edges())
            for (int r = 0; r < m; ++r)
                edges.emplace_back(emb[static_cast<std::size_t>(key.first)], emb[static_cast<std::size_t>(key.second)]);
        if (len > 0) {
            Vertex prev = carry;
            for (int j = 1; j < len; ++j) {
                names.push_back("b" + std::to_string(p) + "/" + std::to_string(j));
                Vertex cur = static_cast<Vertex>(names.size() - 1);
                out.bridge_vertices[p - 1].push_back(cur);
                edges.emplace_back(prev, cur);
                prev = cur;
            }
            edges.emplace_back(prev, emb[static_cast<std::size_t>(parts[p].u)]);
        }
        carry = emb[static_cast<std::size_t>(parts[p].v)];
    }
    Vertex u = out.embed.front()[static_cast<std::size_t>(parts.front().u)];
    Vertex v = out.embed.back()[static_cast<std::size_t>(parts.back().v)];
    out.glued = MarkedGraph{Graph(std::move(names), edges, std::move(aliases)), u, v};
    return out;
}

MarkedGraph vertex_glue(const MarkedGraph& a, const MarkedGraph& b) { return glue_chain({a, b}).glued; }

namespace {

struct Dsu {
    std::vector<int> p;
    explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[static_cast<std::size_t>(x)] != x) x = p[static_cast<std::size_t>(x)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) p[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

std::vector<std::pair<Vertex, Vertex>> find_bridges(const Graph& g) {
    const auto n = g.size();
    std::vector<int> tin(n, -1), low(n, 0);
    std::vector<std::pair<Vertex, Vertex>> out;
    int timer = 0;
    // Iterative DFS; a multi-edge is never a bridge.
    struct Frame {
        Vertex v;
        Vertex parent;
        std::size_t next;
    };
    std::vector<Frame> st{{0, -1, 0}};
    tin[0] = low[0] = timer++;
    while (!st.empty()) {
        auto& f = st.back();
        const auto& nbs = g.neighbors(f.v);
        if (f.next < nbs.size()) {
            const auto nb = nbs[f.next++];
            if (nb.to == f.parent) {
                if (nb.mult > 1) low[static_cast<std::size_t>(f.v)] = std::min(low[static_cast<std::size_t>(f.v)], tin[static_cast<std::size_t>(nb.to)]);
                continue;
            }
            if (tin[static_cast<std::size_t>(nb.to)] >= 0) {
                low[static_cast<std::size_t>(f.v)] = std::min(low[static_cast<std::size_t>(f.v)], tin[static_cast<std::size_t>(nb.to)]);
            } else {
                tin[static_cast<std::size_t>(nb.to)] = low[static_cast<std::size_t>(nb.to)] = timer++;
                st.push_back({nb.to, f.v, 0});
            }
        } else {
            Vertex v = f.v, p = f.parent;
            st.pop_back();
            if (p >= 0) {
                low[static_cast<std::size_t>(p)] = std::min(low[static_cast<std::size_t>(p)], low[static_cast<std::size_t>(v)]);
                if (low[static_cast<std::size_t>(v)] > tin[static_cast<std::size_t>(p)] && g.multiplicity(p, v) == 1)
                    out.emplace_back(std::min(p, v), std::max(p, v));
            }
        }
    }
    return out;
}

}  // namespace

Contraction contract_bridges(const Graph& g) {
    const auto bridges = find_bridges(g);
    Contraction out;
    out.contracted = static_cast<int>(bridges.size());
    if (bridges.empty()) {
        out.graph = g;
        out.image.resize(g.size());
        std::iota(out.image.begin(), out.image.end(), 0);
        return out;
    }
    Dsu dsu(g.size());
    for (auto [a, b] : bridges) dsu.unite(a, b);
    std::vector<Vertex> newid(g.size(), -1);
    std::vector<std::string> names;
    std::vector<std::pair<std::string, Vertex>> aliases;
    for (Vertex x = 0; x < static_cast<Vertex>(g.size()); ++x) {
        int r = dsu.find(x);
        if (r == x) {
            newid[static_cast<std::size_t>(x)] = static_cast<Vertex>(names.size());
            names.push_back(g.name(x));
        }
    }
    out.image.resize(g.size());
    for (Vertex x = 0; x < static_cast<Vertex>(g.size()); ++x) {
        Vertex t = newid[static_cast<std::size_t>(dsu.find(x))];
        out.image[static_cast<std::size_t>(x)] = t;
        if (dsu.find(x) != x) aliases.emplace_back(g.name(x), t);
    }
    for (const auto& [al, t] : g.aliases()) aliases.emplace_back(al, out.image[static_cast<std::size_t>(t)]);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const auto& [key, m] : g.edges()) {
        Vertex a = out.image[static_cast<std::size_t>(key.first)], b = out.image[static_cast<std::size_t>(key.second)];
        if (a == b) continue;
        for (int r = 0; r < m; ++r) edges.emplace_back(a, b);
    }
    out.graph = Graph(std::move(names), edges, std::move(aliases));
    return out;
}

MarkedGraph contract_bridges(const MarkedGraph& mg, int* contracted) {
    Contraction c = contract_bridges(mg.graph);
    if (contracted) *contracted = c.contracted;
    Vertex u = c.image[static_cast<std::size_t>(mg.u)], v = c.image[static_cast<std::size_t>(mg.v)];
    return MarkedGraph{std::move(c.graph), u, v};
}

std::int64_t jacobian_order(const Graph& g) {
    const auto n = g.size();
    if (n == 1) return 1;
    // Reduced Laplacian: drop the last vertex.
    const std::size_t m = n - 1;
    std::vector<std::vector<__int128>> a(m, std::vector<__int128>(m, 0));
    for (std::size_t i = 0; i < m; ++i) a[i][i] = g.valence(static_cast<Vertex>(i));
    for (const auto& [key, mult] : g.edges()) {
        auto i = static_cast<std::size_t>(key.first), j = static_cast<std::size_t>(key.second);
        if (i < m && j < m) {
            a[i][j] -= mult;
            a[j][i] -= mult;
        }
    }
    const __int128 limit = static_cast<__int128>(1) << 100;
    int sign = 1;
    __int128 prev = 1;
    for (std::size_t k = 0; k < m; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < m && a[r][k] == 0) ++r;
            if (r == m) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < m; ++i) {
            for (std::size_t j = k + 1; j < m; ++j) {
                __int128 val = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                if (val > limit || val < -limit) throw std::overflow_error("spanning tree count overflows");
                a[i][j] = val / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    __int128 det = a[m - 1][m - 1] * sign;
    if (det > static_cast<__int128>(INT64_MAX)) throw std::overflow_error("spanning tree count overflows");
    return static_cast<std::int64_t>(det);
}

std::optional<BananaView> recognize_banana(const Graph& g) {
    std::vector<Vertex> special;
    for (Vertex x = 0; x < static_cast<Vertex>(g.size()); ++x) {
        if (g.valence(x) != 2) special.push_back(x);
    }
    if (special.size() != 2) return std::nullopt;
    const Vertex L = special[0], R = special[1];
    if (g.valence(L) != g.valence(R) || g.valence(L) < 3) return std::nullopt;

    BananaView view;
    for (const auto& nb : g.neighbors(L)) {
        if (nb.to == R) {
            for (int r = 0; r < nb.mult; ++r) view.strands.push_back({L, R});
            continue;
        }
        if (nb.mult != 1) return std::nullopt;
        std::vector<Vertex> path{L, nb.to};
        Vertex prev = L, cur = nb.to;
        while (cur != R) {
            if (cur == L || g.valence(cur) != 2) return std::nullopt;
            const auto& nbs = g.neighbors(cur);
            if (nbs.size() != 2) return std::nullopt;
            Vertex next = nbs[0].to == prev ? nbs[1].to : nbs[0].to;
            prev = cur;
            cur = next;
            path.push_back(cur);
            if (path.size() > g.size() + 1) return std::nullopt;
        }
        view.strands.push_back(std::move(path));
    }
    std::size_t covered = 2;
    for (const auto& s : view.strands) covered += s.size() - 2;
    if (covered != g.size()) return std::nullopt;
    for (const auto& s : view.strands) view.spec.lengths.push_back(static_cast<int>(s.size()) - 1);
    return view;
}

std::optional<TwoLoopsView> recognize_two_loops(const Graph& g) {
    if (g.genus() != 2) return std::nullopt;
    std::optional<Vertex> cut;
    for (Vertex x = 0; x < static_cast<Vertex>(g.size()); ++x) {
        int val = g.valence(x);
        if (val == 4 && !cut) cut = x;
        else if (val != 2) return std::nullopt;
    }
    if (!cut) return std::nullopt;
    TwoLoopsView view{*cut, {}, {}};
    std::vector<char> used(g.size(), 0);
    auto walk = [&](Vertex first) {
        std::vector<Vertex> loop{*cut};
        Vertex prev = *cut, cur = first;
        while (cur != *cut) {
            loop.push_back(cur);
            used[static_cast<std::size_t>(cur)] = 1;
            const auto& nbs = g.neighbors(cur);
            Vertex next;
            if (nbs.size() == 1) next = nbs[0].to;  // double edge back to prev
            else next = nbs[0].to == prev ? nbs[1].to : nbs[0].to;
            prev = cur;
            cur = next;
        }
        return loop;
    };
    for (const auto& nb : g.neighbors(*cut)) {
        if (used[static_cast<std::size_t>(nb.to)]) continue;
        auto loop = walk(nb.to);
        if (view.loop_a.empty()) view.loop_a = std::move(loop);
        else if (view.loop_b.empty()) view.loop_b = std::move(loop);
        else return std::nullopt;
    }
    if (view.loop_b.empty()) return std::nullopt;
    return view;
}

Relabeled as_banana(const MarkedGraph& mg, const BananaView& view) {
    Graph b = build_banana(view.spec.lengths);
    Relabeled out;
    out.image.assign(mg.graph.size(), -1);
    for (std::size_t a = 0; a < view.strands.size(); ++a)
        for (std::size_t i = 0; i < view.strands[a].size(); ++i)
            out.image[static_cast<std::size_t>(view.strands[a][i])] = b.banana_vertex(static_cast<int>(a), static_cast<int>(i));
    Vertex u = out.image[static_cast<std::size_t>(mg.u)], v = out.image[static_cast<std::size_t>(mg.v)];
    out.marked = MarkedGraph{std::move(b), u, v};
    return out;
}

}  // namespace chipfire
