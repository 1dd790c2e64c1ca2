#include <fstream>
#include <sstream>
#include <stdexcept>

#include "widthproof/cores.hpp"

namespace widthproof::cores {

namespace {

int int_arg(const std::string& name, const std::string& arg) {
    if (arg.empty())
        throw std::invalid_argument(name + " needs an integer argument");
    for (char c : arg)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument(name + ": bad integer '" + arg + "'");
    return std::stoi(arg);
}

}  // namespace

CorePtr make_core(const std::string& spec) {
    std::string name = spec;
    std::string arg;
    auto open = spec.find('(');
    if (open != std::string::npos) {
        if (spec.back() != ')')
            throw std::invalid_argument("unbalanced parentheses in core spec '" + spec + "'");
        name = spec.substr(0, open);
        arg = spec.substr(open + 1, spec.size() - open - 2);
    }

    if (name == "VertexCover")
        return vertex_cover(int_arg(name, arg));
    if (name == "MinVertexCover") {
        if (!arg.empty())
            throw std::invalid_argument("MinVertexCover takes no argument");
        return min_vertex_cover();
    }
    if (name == "Simple")
        return simple();
    if (name == "MaxDegGe")
        return max_deg_ge(int_arg(name, arg));
    if (name == "MinDegLe")
        return min_deg_le(int_arg(name, arg));
    if (name == "Colorable")
        return colorable(int_arg(name, arg));
    if (name == "Conn")
        return conn();
    if (name == "VConnLe")
        return vconn_le(int_arg(name, arg));
    if (name == "EConnLe")
        return econn_le(int_arg(name, arg));
    if (name == "Hamiltonian")
        return hamiltonian();
    if (name == "NZFlow")
        return nzflow(int_arg(name, arg));
    if (name == "Minor") {
        if (arg.empty() || arg[0] != '@')
            throw std::invalid_argument("Minor takes @<graph.json>");
        std::ifstream in(arg.substr(1));
        if (!in)
            throw std::invalid_argument("cannot open pattern graph '" + arg.substr(1) + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        return minor(graph_from_json(buffer.str()), arg);
    }
    throw std::invalid_argument("unknown core '" + name + "'");
}

}  // namespace widthproof::cores
