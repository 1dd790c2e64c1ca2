#include "widthproof/graph.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace widthproof {

void Multigraph::add_vertex(int v) {
    if (v <= 0)
        throw std::invalid_argument("vertex ids are positive");
    if (!vertices_.insert(v).second)
        throw std::invalid_argument("duplicate vertex id " + std::to_string(v));
}

void Multigraph::add_edge(int e, int u, int v) {
    if (e <= 0)
        throw std::invalid_argument("edge ids are positive");
    if (u == v)
        throw std::invalid_argument("self-loops are not allowed");
    if (!has_vertex(u) || !has_vertex(v))
        throw std::invalid_argument("edge endpoints must exist");
    if (!edges_.emplace(e, std::minmax(u, v)).second)
        throw std::invalid_argument("duplicate edge id " + std::to_string(e));
}

std::pair<int, int> Multigraph::endpoints(int e) const {
    auto it = edges_.find(e);
    if (it == edges_.end())
        throw std::out_of_range("no edge " + std::to_string(e));
    return it->second;
}

int Multigraph::max_vertex_id() const {
    return vertices_.empty() ? 0 : *vertices_.rbegin();
}

int Multigraph::max_edge_id() const {
    return edges_.empty() ? 0 : edges_.rbegin()->first;
}

int Multigraph::degree(int v) const {
    int d = 0;
    for (const auto& [e, ends] : edges_)
        d += (ends.first == v) + (ends.second == v);
    return d;
}

std::size_t Multigraph::edges_between(int u, int v) const {
    std::pair<int, int> key = std::minmax(u, v);
    std::size_t n = 0;
    for (const auto& [e, ends] : edges_)
        if (ends == key)
            ++n;
    return n;
}

void BoundariedGraph::check() const {
    std::set<int> image;
    for (const auto& [label, vertex] : boundary) {
        if (label <= 0)
            throw std::invalid_argument("boundary labels are positive");
        if (!graph.has_vertex(vertex))
            throw std::invalid_argument("boundary maps label " + std::to_string(label) +
                                        " to a missing vertex");
        if (!image.insert(vertex).second)
            throw std::invalid_argument("boundary is not injective");
    }
}

BoundariedGraph join(const BoundariedGraph& a, const BoundariedGraph& b) {
    a.check();
    b.check();
    {
        auto keys = [](const std::map<int, int>& m) {
            std::vector<int> ks;
            for (const auto& [k, v] : m)
                ks.push_back(k);
            return ks;
        };
        if (keys(a.boundary) != keys(b.boundary))
            throw std::invalid_argument("join requires equal boundary domains");
    }

    const int vertex_shift = a.graph.max_vertex_id();
    const int edge_shift = a.graph.max_edge_id();

    std::set<int> b_boundary_image;
    for (const auto& [label, vertex] : b.boundary)
        b_boundary_image.insert(vertex);

    // Vertices of b are either identified with a's boundary vertex for the
    // same label or shifted past a's ids.
    std::map<int, int> relabel;
    for (const auto& [label, vertex] : b.boundary)
        relabel[vertex] = a.boundary.at(label);
    for (int v : b.graph.vertices())
        if (!b_boundary_image.count(v))
            relabel[v] = v + vertex_shift;

    BoundariedGraph out;
    out.graph = a.graph;
    out.boundary = a.boundary;
    for (int v : b.graph.vertices())
        if (!b_boundary_image.count(v))
            out.graph.add_vertex(v + vertex_shift);
    for (const auto& [e, ends] : b.graph.edges())
        out.graph.add_edge(e + edge_shift, relabel.at(ends.first), relabel.at(ends.second));
    return out;
}

namespace {

std::vector<int> degree_sequence(const Multigraph& g) {
    std::vector<int> degs;
    for (int v : g.vertices())
        degs.push_back(g.degree(v));
    std::sort(degs.begin(), degs.end());
    return degs;
}

bool extend_mapping(const Multigraph& g, const Multigraph& h, const std::vector<int>& gv,
                    const std::vector<int>& hv, std::vector<int>& image,
                    std::vector<bool>& used) {
    std::size_t i = image.size();
    if (i == gv.size())
        return true;
    for (std::size_t j = 0; j < hv.size(); ++j) {
        if (used[j])
            continue;
        if (g.degree(gv[i]) != h.degree(hv[j]))
            continue;
        bool ok = true;
        for (std::size_t p = 0; p < i && ok; ++p)
            if (g.edges_between(gv[i], gv[p]) != h.edges_between(hv[j], hv[image[p]]))
                ok = false;
        if (!ok)
            continue;
        image.push_back(static_cast<int>(j));
        used[j] = true;
        if (extend_mapping(g, h, gv, hv, image, used))
            return true;
        image.pop_back();
        used[j] = false;
    }
    return false;
}

}  // namespace

bool isomorphic(const Multigraph& g, const Multigraph& h) {
    if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count())
        return false;
    if (degree_sequence(g) != degree_sequence(h))
        return false;
    std::vector<int> gv(g.vertices().begin(), g.vertices().end());
    std::vector<int> hv(h.vertices().begin(), h.vertices().end());
    std::vector<int> image;
    std::vector<bool> used(hv.size(), false);
    // A vertex bijection preserving edge multiplicities lifts to an edge
    // bijection, multiedges being interchangeable.
    return extend_mapping(g, h, gv, hv, image, used);
}

std::string canonical_form(const Multigraph& g, std::size_t max_vertices) {
    if (g.vertex_count() > max_vertices)
        throw std::length_error("canonical_form input too large");
    if (g.vertex_count() == 0)
        return "empty";

    std::vector<int> order(g.vertices().begin(), g.vertices().end());
    std::sort(order.begin(), order.end());
    std::string best;
    do {
        std::string enc;
        enc.reserve(order.size() * order.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            for (std::size_t j = i + 1; j < order.size(); ++j)
                enc.push_back(static_cast<char>(
                    'a' + std::min<std::size_t>(g.edges_between(order[i], order[j]), 25)));
        if (best.empty() || enc < best)
            best = enc;
    } while (std::next_permutation(order.begin(), order.end()));
    return std::to_string(g.vertex_count()) + ":" + best;
}

std::string to_json(const Multigraph& g) {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (int v : g.vertices())
        j["vertices"].push_back(v);
    j["edges"] = nlohmann::json::array();
    for (const auto& [e, ends] : g.edges())
        j["edges"].push_back({{"id", e}, {"endpoints", {ends.first, ends.second}}});
    return j.dump();
}

Multigraph graph_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Multigraph g;
    for (const auto& v : j.at("vertices"))
        g.add_vertex(v.get<int>());
    for (const auto& e : j.at("edges")) {
        const auto& ends = e.at("endpoints");
        if (ends.size() != 2)
            throw std::invalid_argument("edge endpoints must be a pair");
        g.add_edge(e.at("id").get<int>(), ends[0].get<int>(), ends[1].get<int>());
    }
    return g;
}

std::string to_dot(const Multigraph& g) {
    std::string out = "graph {\n";
    for (int v : g.vertices())
        out += "  " + std::to_string(v) + ";\n";
    for (const auto& [e, ends] : g.edges())
        out += "  " + std::to_string(ends.first) + " -- " + std::to_string(ends.second) +
               " [label=\"e" + std::to_string(e) + "\"];\n";
    out += "}\n";
    return out;
}

}  // namespace widthproof
