#include "ontolex/taxonomy.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>
#include <unordered_map>

#include <boost/dynamic_bitset.hpp>

#include "ontolex/errors.hpp"
#include "ontolex/store.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ontolex {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

Taxonomy Taxonomy::from_store(const Store& store) {
    Taxonomy t;
    for (const auto& [id, c] : store.concepts()) t.nodes_.insert(id);
    for (const auto& [id, c] : store.concepts()) {
        if (!c.parent) continue;
        t.parent_of_[id] = *c.parent;
        t.children_[*c.parent].push_back(id);
    }
    return t;
}

Taxonomy Taxonomy::add_node(ConceptId id) const {
    Taxonomy t = *this;
    t.nodes_.insert(id);
    return t;
}

Taxonomy Taxonomy::set_parent(ConceptId child, ConceptId parent, bool reparent) const {
    if (!contains(child)) throw UnknownIdError("unknown concept " + child.str());
    if (!contains(parent)) throw UnknownIdError("unknown concept " + parent.str());
    if (child == parent || is_ancestor(child, parent))
        throw CycleError("making " + parent.str() + " the parent of " + child.str() + " creates a cycle");

    const auto current = this->parent(child);
    if (current == parent) return *this;
    if (current && !reparent)
        throw MultipleParentError("concept " + child.str() + " already has parent " + current->str());

    Taxonomy t = *this;
    if (current) {
        auto& siblings = t.children_[*current];
        siblings.erase(std::find(siblings.begin(), siblings.end(), child));
        if (siblings.empty()) t.children_.erase(*current);
    }
    t.parent_of_[child] = parent;
    auto& kids = t.children_[parent];
    kids.insert(std::lower_bound(kids.begin(), kids.end(), child), child);
    return t;
}

std::optional<ConceptId> Taxonomy::parent(ConceptId id) const {
    auto it = parent_of_.find(id);
    if (it == parent_of_.end()) return std::nullopt;
    return it->second;
}

const std::vector<ConceptId>& Taxonomy::children(ConceptId id) const {
    static const std::vector<ConceptId> none;
    auto it = children_.find(id);
    return it == children_.end() ? none : it->second;
}

std::vector<ConceptId> Taxonomy::roots() const {
    std::vector<ConceptId> out;
    for (auto id : nodes_)
        if (!parent_of_.count(id)) out.push_back(id);
    return out;
}

std::vector<ConceptId> Taxonomy::ancestors(ConceptId id) const {
    if (!contains(id)) throw UnknownIdError("unknown concept " + id.str());
    std::vector<ConceptId> out;
    for (auto p = parent(id); p; p = parent(*p)) out.push_back(*p);
    return out;
}

bool Taxonomy::is_ancestor(ConceptId ancestor, ConceptId of) const {
    for (auto p = parent(of); p; p = parent(*p))
        if (*p == ancestor) return true;
    return false;
}

std::vector<std::vector<ConceptId>> Taxonomy::sibling_sets() const {
    std::vector<std::vector<ConceptId>> out;
    for (const auto& [p, kids] : children_)
        if (kids.size() > 1) out.push_back(kids);
    return out;
}

void ForeignHierarchy::add_edge(std::string child, std::string parent) {
    nodes.insert(child);
    nodes.insert(parent);
    edges.emplace(std::move(child), std::move(parent));
}

ForeignHierarchy ForeignHierarchy::load_tsv(std::istream& in) {
    ForeignHierarchy h;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
            throw ParseError("expected child<TAB>parent", lineno, 1);
        auto child = line.substr(0, tab);
        auto parent = line.substr(tab + 1);
        if (child.empty() || parent.empty()) throw ParseError("empty label", lineno, 1);
        h.add_edge(std::move(child), std::move(parent));
    }
    return h;
}

ForeignHierarchy ForeignHierarchy::load_tsv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return load_tsv(in);
}

namespace {

// Index-based adjacency over the labels of a foreign hierarchy.
struct LabelGraph {
    std::vector<std::string> labels;  // sorted
    std::vector<std::vector<std::size_t>> succ;  // child -> parents, sorted

    explicit LabelGraph(const ForeignHierarchy& h) {
        labels.assign(h.nodes.begin(), h.nodes.end());
        for (const auto& [c, p] : h.edges) {
            labels.push_back(c);
            labels.push_back(p);
        }
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        succ.resize(labels.size());
        for (const auto& [c, p] : h.edges) succ[index(c)].push_back(index(p));
        for (auto& s : succ) std::sort(s.begin(), s.end());
    }

    std::size_t index(const std::string& label) const {
        return static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
    }
};

// Iterative Tarjan; components come out in reverse topological order.
std::vector<std::vector<std::size_t>> strongly_connected(const LabelGraph& g) {
    const auto n = g.labels.size();
    std::vector<long> idx(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> comps;
    long counter = 0;

    for (std::size_t root = 0; root < n; ++root) {
        if (idx[root] != -1) continue;
        std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
        idx[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            auto& [v, next] = frames.back();
            if (next < g.succ[v].size()) {
                const auto w = g.succ[v][next++];
                if (idx[w] == -1) {
                    idx[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], idx[w]);
                }
                continue;
            }
            if (low[v] == idx[v]) {
                std::vector<std::size_t> comp;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                comps.push_back(std::move(comp));
            }
            const auto finished = v;
            frames.pop_back();
            if (!frames.empty()) {
                auto parent = frames.back().first;
                low[parent] = std::min(low[parent], low[finished]);
            }
        }
    }
    return comps;
}

}  // namespace

std::vector<std::vector<std::string>> audit_cycles(const ForeignHierarchy& h) {
    const LabelGraph g(h);
    std::vector<std::vector<std::string>> cycles;
    for (const auto& comp : strongly_connected(g)) {
        const auto start = comp.front();
        const bool self_loop = std::binary_search(g.succ[start].begin(), g.succ[start].end(), start);
        if (comp.size() == 1 && !self_loop) continue;
        if (comp.size() == 1) {
            cycles.push_back({g.labels[start]});
            continue;
        }
        // Shortest path start -> ... -> u with an edge u -> start, inside the component.
        std::unordered_map<std::size_t, std::size_t> pred;
        std::queue<std::size_t> frontier;
        frontier.push(start);
        pred[start] = start;
        std::optional<std::size_t> closing;
        while (!frontier.empty() && !closing) {
            const auto v = frontier.front();
            frontier.pop();
            for (auto w : g.succ[v]) {
                if (!std::binary_search(comp.begin(), comp.end(), w)) continue;
                if (w == start) {
                    closing = v;
                    break;
                }
                if (pred.emplace(w, v).second) frontier.push(w);
            }
        }
        std::vector<std::string> path;
        for (auto v = *closing; v != start; v = pred[v]) path.push_back(g.labels[v]);
        path.push_back(g.labels[start]);
        std::reverse(path.begin(), path.end());
        cycles.push_back(std::move(path));
    }
    std::sort(cycles.begin(), cycles.end());
    return cycles;
}

std::set<ForeignHierarchy::Edge> audit_redundant_edges(const ForeignHierarchy& h, Execution exec) {
    const LabelGraph g(h);
    const auto n = g.labels.size();

    // Kahn order over child -> parent edges: children before parents.
    std::vector<std::size_t> indegree(n, 0);
    for (const auto& s : g.succ)
        for (auto p : s) ++indegree[p];
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t v = 0; v < n; ++v)
        if (indegree[v] == 0) order.push_back(v);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (auto p : g.succ[order[i]])
            if (--indegree[p] == 0) order.push_back(p);
    if (order.size() != n) throw CyclicInputError("hierarchy contains a cycle; run audit_cycles first");

    // reach[v]: everything strictly above v.
    std::vector<boost::dynamic_bitset<>> reach(n, boost::dynamic_bitset<>(n));
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto v = *it;
        for (auto p : g.succ[v]) {
            reach[v].set(p);
            reach[v] |= reach[p];
        }
    }

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(h.edges.size());
    for (const auto& [c, p] : h.edges) edges.emplace_back(g.index(c), g.index(p));
    std::vector<char> redundant(edges.size(), 0);

    auto check = [&](std::size_t i) {
        const auto [a, b] = edges[i];
        for (auto c : g.succ[a])
            if (c != b && reach[c].test(b)) {
                redundant[i] = 1;
                return;
            }
    };
    const auto count = static_cast<long>(edges.size());
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (long i = 0; i < count; ++i) check(static_cast<std::size_t>(i));
    } else {
        for (long i = 0; i < count; ++i) check(static_cast<std::size_t>(i));
    }

    std::set<ForeignHierarchy::Edge> out;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (redundant[i]) out.emplace(g.labels[edges[i].first], g.labels[edges[i].second]);
    return out;
}

Findings check_rigidity(const Taxonomy& t, const std::map<ConceptId, Rigidity>& rigidity) {
    auto rigidity_of = [&](ConceptId id) {
        auto it = rigidity.find(id);
        return it == rigidity.end() ? Rigidity::unspecified : it->second;
    };
    Findings out;
    for (auto id : t.nodes()) {
        if (rigidity_of(id) != Rigidity::rigid) continue;
        for (auto a : t.ancestors(id)) {
            if (rigidity_of(a) != Rigidity::anti_rigid) continue;
            Finding f;
            f.rule_id = "RigidityViolation";
            f.severity = Severity::error;
            f.concept_id = id;
            f.related = a;
            f.message = "rigid concept " + id.str() + " is subsumed by anti-rigid concept " + a.str();
            out.push_back(std::move(f));
        }
    }
    return out;
}

Findings check_rigidity(const Taxonomy& t, const Store& store) {
    std::map<ConceptId, Rigidity> rigidity;
    for (const auto& [id, c] : store.concepts()) rigidity[id] = c.profile.rigidity;
    return check_rigidity(t, rigidity);
}

}  // namespace ontolex
