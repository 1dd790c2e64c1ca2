#include "widthproof/itd.hpp"

#include <algorithm>
#include <unordered_map>

#include <json.hpp>

namespace widthproof {

InstructiveAlphabet::InstructiveAlphabet(int k) : k_(k) {
    if (k < 0)
        throw std::invalid_argument("width must be non-negative");
}

std::vector<Symbol> InstructiveAlphabet::symbols() const {
    std::vector<Symbol> out;
    out.push_back(Symbol::leaf());
    for (int u = 1; u <= k_ + 1; ++u)
        out.push_back(Symbol::intro_vertex(u));
    for (int u = 1; u <= k_ + 1; ++u)
        out.push_back(Symbol::forget_vertex(u));
    for (int u = 1; u <= k_ + 1; ++u)
        for (int v = 1; v <= k_ + 1; ++v)
            if (u != v)
                out.push_back(Symbol::intro_edge(u, v));
    out.push_back(Symbol::join());
    return out;
}

bool InstructiveAlphabet::contains(const Symbol& s) const {
    switch (s.kind) {
        case SymbolKind::Leaf:
        case SymbolKind::Join:
            return true;
        case SymbolKind::IntroVertex:
        case SymbolKind::ForgetVertex:
            return s.u >= 1 && s.u <= k_ + 1;
        case SymbolKind::IntroEdge:
            return s.u >= 1 && s.u <= k_ + 1 && s.v >= 1 && s.v <= k_ + 1 && s.u != s.v;
    }
    return false;
}

ActiveSetAutomaton::ActiveSetAutomaton(int k) : k_(k) {
    if (k < 0)
        throw std::invalid_argument("width must be non-negative");
}

std::vector<Symbol> ActiveSetAutomaton::alphabet() const {
    return InstructiveAlphabet(k_).symbols();
}

std::optional<TreeAutomaton::State> ActiveSetAutomaton::transition(
    const Symbol& symbol, std::span<const State> below) const {
    if (!InstructiveAlphabet(k_).contains(symbol))
        throw StructuralError("symbol not in width-" + std::to_string(k_) +
                              " alphabet: " + symbol.name());
    if (static_cast<int>(below.size()) != symbol.arity())
        throw StructuralError("tuple length does not match arity of " + symbol.name());
    switch (symbol.kind) {
        case SymbolKind::Leaf:
            return 0;
        case SymbolKind::IntroVertex: {
            State bit = 1u << (symbol.u - 1);
            if (below[0] & bit)
                return std::nullopt;
            return below[0] | bit;
        }
        case SymbolKind::ForgetVertex: {
            State bit = 1u << (symbol.u - 1);
            if (!(below[0] & bit))
                return std::nullopt;
            return below[0] & ~bit;
        }
        case SymbolKind::IntroEdge: {
            State bits = (1u << (symbol.u - 1)) | (1u << (symbol.v - 1));
            if ((below[0] & bits) != bits)
                return std::nullopt;
            return below[0];
        }
        case SymbolKind::Join:
            if (below[0] != below[1])
                return std::nullopt;
            return below[0];
    }
    return std::nullopt;
}

std::vector<int> ActiveSetAutomaton::labels_of(State state) {
    std::vector<int> out;
    for (int u = 1; state != 0; ++u, state >>= 1)
        if (state & 1u)
            out.push_back(u);
    return out;
}

bool validate(int k, const Term& t) {
    InstructiveAlphabet alphabet(k);
    bool in_alphabet = true;
    for_each_subterm(t, [&](const Term& node) {
        in_alphabet = in_alphabet && alphabet.contains(node.symbol());
    });
    return in_alphabet && run(ActiveSetAutomaton(k), t).has_value();
}

TermValidationError::TermValidationError(const std::string& msg, Term node)
    : std::runtime_error(msg + " in " + widthproof::to_string(node)),
      failing_node(std::move(node)) {}

ExtractionResult extract(int k, const Term& t) {
    InstructiveAlphabet alphabet(k);
    std::unordered_map<const void*, ExtractionResult> memo;
    for_each_subterm(t, [&](const Term& node) {
        const Symbol& sym = node.symbol();
        if (!alphabet.contains(sym))
            throw TermValidationError("symbol outside the width-" + std::to_string(k) +
                                          " alphabet",
                                      node);
        switch (sym.kind) {
            case SymbolKind::Leaf:
                memo[node.id()] = ExtractionResult{};
                break;
            case SymbolKind::IntroVertex: {
                ExtractionResult r = memo.at(node.children()[0].id());
                if (r.top_map.count(sym.u))
                    throw TermValidationError("label already active", node);
                int id = r.graph.max_vertex_id() + 1;
                r.graph.add_vertex(id);
                r.top_map[sym.u] = id;
                memo[node.id()] = std::move(r);
                break;
            }
            case SymbolKind::ForgetVertex: {
                ExtractionResult r = memo.at(node.children()[0].id());
                if (!r.top_map.count(sym.u))
                    throw TermValidationError("label not active", node);
                r.top_map.erase(sym.u);
                memo[node.id()] = std::move(r);
                break;
            }
            case SymbolKind::IntroEdge: {
                ExtractionResult r = memo.at(node.children()[0].id());
                if (!r.top_map.count(sym.u) || !r.top_map.count(sym.v))
                    throw TermValidationError("edge endpoint label not active", node);
                int id = r.graph.max_edge_id() + 1;
                r.graph.add_edge(id, r.top_map.at(sym.u), r.top_map.at(sym.v));
                memo[node.id()] = std::move(r);
                break;
            }
            case SymbolKind::Join: {
                const ExtractionResult& a = memo.at(node.children()[0].id());
                const ExtractionResult& b = memo.at(node.children()[1].id());
                auto domain = [](const std::map<int, int>& m) {
                    std::vector<int> d;
                    for (const auto& [u, v] : m)
                        d.push_back(u);
                    return d;
                };
                if (domain(a.top_map) != domain(b.top_map))
                    throw TermValidationError("join operands have different active labels",
                                              node);
                BoundariedGraph glued =
                    join(BoundariedGraph{a.graph, a.top_map}, BoundariedGraph{b.graph, b.top_map});
                memo[node.id()] = ExtractionResult{std::move(glued.graph), glued.boundary};
                break;
            }
        }
    });
    return memo.at(t.id());
}

int term_width(const Term& t) {
    int max_label = 0;
    for_each_subterm(t, [&](const Term& node) {
        max_label = std::max({max_label, node.symbol().u, node.symbol().v});
    });
    int k = std::max(0, max_label - 1);
    if (!validate(k, t))
        throw TermValidationError("term is not valid at any width", t);
    return k;
}

bool is_path_decomposition(const Term& t) {
    bool has_join = false;
    for_each_subterm(t, [&](const Term& node) {
        if (node.symbol().kind == SymbolKind::Join)
            has_join = true;
    });
    return !has_join;
}

const NiceNode& NiceTreeDecomposition::node(int id) const {
    for (const NiceNode& n : nodes)
        if (n.id == id)
            return n;
    throw std::invalid_argument("no node with id " + std::to_string(id));
}

int NiceTreeDecomposition::width() const {
    int w = -1;
    for (const NiceNode& n : nodes)
        w = std::max(w, static_cast<int>(n.bag.size()) - 1);
    return w;
}

namespace {

void fail(const std::string& msg) { throw std::invalid_argument("nice decomposition: " + msg); }

bool in_bag(const NiceNode& n, int v) {
    return std::binary_search(n.bag.begin(), n.bag.end(), v);
}

}  // namespace

void NiceTreeDecomposition::check(const Multigraph& g) const {
    std::map<int, const NiceNode*> by_id;
    for (const NiceNode& n : nodes) {
        if (!by_id.emplace(n.id, &n).second)
            fail("duplicate node id " + std::to_string(n.id));
        if (!std::is_sorted(n.bag.begin(), n.bag.end()) ||
            std::adjacent_find(n.bag.begin(), n.bag.end()) != n.bag.end())
            fail("bag of node " + std::to_string(n.id) + " is not a sorted set");
        for (int v : n.bag)
            if (!g.has_vertex(v))
                fail("bag vertex " + std::to_string(v) + " is not in the graph");
    }
    if (!by_id.count(root))
        fail("root id missing");

    // rooted-tree shape: every node reachable from the root exactly once
    std::map<int, int> parent;
    std::vector<int> order;
    std::vector<int> stack{root};
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        order.push_back(id);
        for (int c : by_id.at(id)->children) {
            if (!by_id.count(c))
                fail("child id " + std::to_string(c) + " missing");
            if (parent.count(c) || c == root)
                fail("node " + std::to_string(c) + " has two parents");
            parent[c] = id;
            stack.push_back(c);
        }
    }
    if (order.size() != nodes.size())
        fail("nodes not reachable from the root");

    std::set<int> introduced_edges;
    std::set<int> covered_vertices;
    for (const NiceNode& n : nodes) {
        covered_vertices.insert(n.bag.begin(), n.bag.end());
        switch (n.type) {
            case NiceNode::Type::Leaf:
                if (!n.children.empty() || !n.bag.empty())
                    fail("leaf node " + std::to_string(n.id) + " malformed");
                break;
            case NiceNode::Type::IntroVertex: {
                if (n.children.size() != 1)
                    fail("introduce node needs one child");
                const NiceNode& c = *by_id.at(n.children[0]);
                if (!in_bag(n, n.vertex) || in_bag(c, n.vertex))
                    fail("introduced vertex not fresh at node " + std::to_string(n.id));
                std::vector<int> expect = c.bag;
                expect.push_back(n.vertex);
                std::sort(expect.begin(), expect.end());
                if (expect != n.bag)
                    fail("introduce bag mismatch at node " + std::to_string(n.id));
                break;
            }
            case NiceNode::Type::ForgetVertex: {
                if (n.children.size() != 1)
                    fail("forget node needs one child");
                const NiceNode& c = *by_id.at(n.children[0]);
                if (in_bag(n, n.vertex) || !in_bag(c, n.vertex))
                    fail("forgotten vertex misplaced at node " + std::to_string(n.id));
                std::vector<int> expect = n.bag;
                expect.push_back(n.vertex);
                std::sort(expect.begin(), expect.end());
                if (expect != c.bag)
                    fail("forget bag mismatch at node " + std::to_string(n.id));
                break;
            }
            case NiceNode::Type::IntroEdge: {
                if (n.children.size() != 1)
                    fail("edge node needs one child");
                const NiceNode& c = *by_id.at(n.children[0]);
                if (n.bag != c.bag)
                    fail("edge node must keep the bag");
                if (!g.has_edge(n.edge))
                    fail("edge " + std::to_string(n.edge) + " is not in the graph");
                auto [p, q] = g.endpoints(n.edge);
                if (!in_bag(n, p) || !in_bag(n, q))
                    fail("edge endpoints must lie in the bag");
                if (!introduced_edges.insert(n.edge).second)
                    fail("edge introduced twice");
                break;
            }
            case NiceNode::Type::Join: {
                if (n.children.size() != 2)
                    fail("join node needs two children");
                for (int cid : n.children)
                    if (by_id.at(cid)->bag != n.bag)
                        fail("join bags must match");
                break;
            }
        }
    }
    for (const auto& [e, ends] : g.edges())
        if (!introduced_edges.count(e))
            fail("edge " + std::to_string(e) + " never introduced");
    for (int v : g.vertices())
        if (!covered_vertices.count(v))
            fail("vertex " + std::to_string(v) + " in no bag");

    // each vertex's bags induce a connected subtree
    for (int v : g.vertices()) {
        std::vector<int> holding;
        for (const NiceNode& n : nodes)
            if (in_bag(n, v))
                holding.push_back(n.id);
        std::set<int> holders(holding.begin(), holding.end());
        std::set<int> seen;
        std::vector<int> frontier{holding.front()};
        seen.insert(holding.front());
        while (!frontier.empty()) {
            int id = frontier.back();
            frontier.pop_back();
            std::vector<int> adjacent = by_id.at(id)->children;
            if (parent.count(id))
                adjacent.push_back(parent.at(id));
            for (int a : adjacent)
                if (holders.count(a) && seen.insert(a).second)
                    frontier.push_back(a);
        }
        if (seen.size() != holders.size())
            fail("vertex " + std::to_string(v) + " appears in a disconnected set of bags");
    }
}

NiceTreeDecomposition nice_decomposition_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    NiceTreeDecomposition d;
    d.root = j.at("root").get<int>();
    for (const auto& jn : j.at("nodes")) {
        NiceNode n;
        n.id = jn.at("id").get<int>();
        std::string type = jn.at("type").get<std::string>();
        if (type == "Leaf")
            n.type = NiceNode::Type::Leaf;
        else if (type == "IntroVertex")
            n.type = NiceNode::Type::IntroVertex;
        else if (type == "ForgetVertex")
            n.type = NiceNode::Type::ForgetVertex;
        else if (type == "IntroEdge")
            n.type = NiceNode::Type::IntroEdge;
        else if (type == "Join")
            n.type = NiceNode::Type::Join;
        else
            fail("unknown node type '" + type + "'");
        if (jn.count("bag"))
            for (const auto& v : jn.at("bag"))
                n.bag.push_back(v.get<int>());
        std::sort(n.bag.begin(), n.bag.end());
        if (jn.count("children"))
            for (const auto& c : jn.at("children"))
                n.children.push_back(c.get<int>());
        if (jn.count("vertex"))
            n.vertex = jn.at("vertex").get<int>();
        if (jn.count("edge"))
            n.edge = jn.at("edge").get<int>();
        d.nodes.push_back(std::move(n));
    }
    return d;
}

std::string to_json(const NiceTreeDecomposition& d) {
    nlohmann::json j;
    j["root"] = d.root;
    j["nodes"] = nlohmann::json::array();
    for (const NiceNode& n : d.nodes) {
        nlohmann::json jn;
        jn["id"] = n.id;
        switch (n.type) {
            case NiceNode::Type::Leaf: jn["type"] = "Leaf"; break;
            case NiceNode::Type::IntroVertex: jn["type"] = "IntroVertex"; break;
            case NiceNode::Type::ForgetVertex: jn["type"] = "ForgetVertex"; break;
            case NiceNode::Type::IntroEdge: jn["type"] = "IntroEdge"; break;
            case NiceNode::Type::Join: jn["type"] = "Join"; break;
        }
        jn["bag"] = n.bag;
        jn["children"] = n.children;
        if (n.type == NiceNode::Type::IntroVertex || n.type == NiceNode::Type::ForgetVertex)
            jn["vertex"] = n.vertex;
        if (n.type == NiceNode::Type::IntroEdge)
            jn["edge"] = n.edge;
        j["nodes"].push_back(std::move(jn));
    }
    return j.dump();
}

Term from_nice_decomposition(const Multigraph& g, const NiceTreeDecomposition& d, int k,
                             const std::vector<int>& label_order) {
    d.check(g);
    if (d.width() > k)
        throw std::invalid_argument("decomposition width exceeds k");

    std::vector<int> order = label_order;
    if (order.empty())
        for (int u = 1; u <= k + 1; ++u)
            order.push_back(u);
    {
        std::vector<int> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> expect;
        for (int u = 1; u <= k + 1; ++u)
            expect.push_back(u);
        if (sorted != expect)
            throw std::invalid_argument("label order must be a permutation of 1..k+1");
    }

    // Root-to-leaf greedy bag-injective coloring: each vertex gets the first
    // label in `order` unused in the bag where it first appears.
    std::map<int, int> color;
    auto color_bag = [&](const std::vector<int>& bag) {
        std::set<int> used;
        for (int v : bag)
            if (color.count(v))
                used.insert(color.at(v));
        for (int v : bag) {
            if (color.count(v))
                continue;
            for (int label : order) {
                if (!used.count(label)) {
                    color[v] = label;
                    used.insert(label);
                    break;
                }
            }
            if (!color.count(v))
                throw std::invalid_argument("bag too large for k+1 labels");
        }
    };
    std::vector<int> stack{d.root};
    while (!stack.empty()) {
        const NiceNode& n = d.node(stack.back());
        stack.pop_back();
        color_bag(n.bag);
        for (int c : n.children)
            stack.push_back(c);
    }

    std::function<Term(int)> build = [&](int id) -> Term {
        const NiceNode& n = d.node(id);
        switch (n.type) {
            case NiceNode::Type::Leaf:
                return Term(Symbol::leaf());
            case NiceNode::Type::IntroVertex:
                return Term(Symbol::intro_vertex(color.at(n.vertex)), {build(n.children[0])});
            case NiceNode::Type::ForgetVertex:
                return Term(Symbol::forget_vertex(color.at(n.vertex)), {build(n.children[0])});
            case NiceNode::Type::IntroEdge: {
                auto [p, q] = g.endpoints(n.edge);
                return Term(Symbol::intro_edge(color.at(p), color.at(q)),
                            {build(n.children[0])});
            }
            case NiceNode::Type::Join:
                return Term(Symbol::join(), {build(n.children[0]), build(n.children[1])});
        }
        throw std::logic_error("unreachable");
    };
    return build(d.root);
}

NiceTreeDecomposition nice_decomposition_from_term(int k, const Term& t) {
    // Per-subterm extraction in local id space.
    std::unordered_map<const void*, ExtractionResult> local;
    for_each_subterm(t, [&](const Term& node) {
        local[node.id()] = extract(k, node);
    });

    NiceTreeDecomposition d;
    int next_id = 0;

    // vmap/emap carry local ids of the subterm into final ids of the whole
    // graph; Join composes the shift applied to its right operand.
    std::function<int(const Term&, std::map<int, int>, std::map<int, int>)> walk =
        [&](const Term& node, std::map<int, int> vmap, std::map<int, int> emap) -> int {
        const ExtractionResult& here = local.at(node.id());
        NiceNode n;
        n.id = next_id++;
        for (const auto& [label, vertex] : here.top_map)
            n.bag.push_back(vmap.at(vertex));
        std::sort(n.bag.begin(), n.bag.end());

        switch (node.symbol().kind) {
            case SymbolKind::Leaf:
                n.type = NiceNode::Type::Leaf;
                break;
            case SymbolKind::IntroVertex: {
                n.type = NiceNode::Type::IntroVertex;
                n.vertex = vmap.at(here.top_map.at(node.symbol().u));
                n.children.push_back(walk(node.children()[0], vmap, emap));
                break;
            }
            case SymbolKind::ForgetVertex: {
                n.type = NiceNode::Type::ForgetVertex;
                const ExtractionResult& below = local.at(node.children()[0].id());
                n.vertex = vmap.at(below.top_map.at(node.symbol().u));
                n.children.push_back(walk(node.children()[0], vmap, emap));
                break;
            }
            case SymbolKind::IntroEdge: {
                n.type = NiceNode::Type::IntroEdge;
                n.edge = emap.at(here.graph.max_edge_id());
                n.children.push_back(walk(node.children()[0], vmap, emap));
                break;
            }
            case SymbolKind::Join: {
                n.type = NiceNode::Type::Join;
                const ExtractionResult& left = local.at(node.children()[0].id());
                const ExtractionResult& right = local.at(node.children()[1].id());
                int a = left.graph.max_vertex_id();
                int b = left.graph.max_edge_id();
                std::map<int, int> rv, re;
                std::set<int> right_boundary;
                for (const auto& [label, vertex] : right.top_map) {
                    right_boundary.insert(vertex);
                    rv[vertex] = vmap.at(left.top_map.at(label));
                }
                for (int v : right.graph.vertices())
                    if (!right_boundary.count(v))
                        rv[v] = vmap.at(v + a);
                for (const auto& [e, ends] : right.graph.edges())
                    re[e] = emap.at(e + b);
                int left_id = walk(node.children()[0], vmap, emap);
                int right_id = walk(node.children()[1], std::move(rv), std::move(re));
                n.children = {left_id, right_id};
                break;
            }
        }
        int id = n.id;
        d.nodes.push_back(std::move(n));
        return id;
    };

    const ExtractionResult& whole = local.at(t.id());
    std::map<int, int> vid, eid;
    for (int v : whole.graph.vertices())
        vid[v] = v;
    for (const auto& [e, ends] : whole.graph.edges())
        eid[e] = e;
    d.root = walk(t, std::move(vid), std::move(eid));
    return d;
}

}  // namespace widthproof
