#include "treeinv/graft.hpp"

#include <map>

namespace treeinv {

namespace {

/// Markings of the subtree `t` given that its root may be marked 1.
std::vector<std::vector<unsigned char>> markings(const PlanarTree &t)
{
    std::vector<std::vector<unsigned char>> out;
    unsigned n = vertex_count(t);
    out.emplace_back(n, 2);
    if (t.is_leaf())
        return out;
    // Root marked 1: children independently.
    std::vector<std::vector<std::vector<unsigned char>>> per_child;
    for (const auto &c : t.children)
        per_child.push_back(markings(c));
    std::vector<std::size_t> pick(per_child.size(), 0);
    for (;;) {
        std::vector<unsigned char> m{1};
        m.reserve(n);
        for (std::size_t i = 0; i < per_child.size(); ++i)
            m.insert(m.end(), per_child[i][pick[i]].begin(), per_child[i][pick[i]].end());
        out.push_back(std::move(m));
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == per_child[i].size())
            pick[i++] = 0;
        if (i == pick.size())
            break;
    }
    return out;
}

/// Rebuilds A and collects the B_j from a marking in depth-first order.
PlanarTree split(const PlanarTree &t, const std::vector<unsigned char> &marks, std::size_t &pos,
                 std::vector<PlanarTree> &bs)
{
    if (marks[pos] == 2) {
        pos += vertex_count(t);
        bs.push_back(t);
        return PlanarTree::leaf();
    }
    ++pos;
    PlanarTree a;
    for (const auto &c : t.children)
        a.children.push_back(split(c, marks, pos, bs));
    return a;
}

bool check_monotone(const PlanarTree &t, const std::vector<unsigned char> &marks, std::size_t &pos,
                    unsigned char parent)
{
    unsigned char mine = marks[pos++];
    if (mine != 1 && mine != 2)
        return false;
    if (mine < parent)
        return false;
    if (t.is_leaf())
        return mine == 2;
    for (const auto &c : t.children)
        if (!check_monotone(c, marks, pos, mine))
            return false;
    return true;
}

} // namespace

std::vector<GraftedTree> enumerate_grafted(const PlanarTree &t, unsigned k)
{
    if (!is_k_regular(t, k))
        throw InputError("skeleton " + format_tree(t) + " is not " + std::to_string(k) + "-regular");
    std::vector<GraftedTree> out;
    for (auto &m : markings(t))
        out.push_back(GraftedTree{t, std::move(m)});
    return out;
}

GraftDecomposition decompose(const GraftedTree &gt)
{
    if (gt.marking.size() != vertex_count(gt.skeleton))
        throw InputError("marking does not cover the skeleton");
    GraftDecomposition d;
    std::size_t pos = 0;
    d.a = split(gt.skeleton, gt.marking, pos, d.b);
    return d;
}

bool is_restricted_monotone(const GraftedTree &gt)
{
    if (gt.marking.size() != vertex_count(gt.skeleton))
        return false;
    std::size_t pos = 0;
    return check_monotone(gt.skeleton, gt.marking, pos, 1);
}

nlohmann::json grafted_to_json(const GraftedTree &gt)
{
    nlohmann::json marks = nlohmann::json::object();
    auto addresses = vertex_addresses(gt.skeleton);
    for (std::size_t i = 0; i < addresses.size(); ++i)
        marks[addresses[i].format()] = gt.marking[i];
    return {{"skeleton", format_tree(gt.skeleton)}, {"marking", marks}};
}

GraftedTree grafted_from_json(const nlohmann::json &j)
{
    try {
        GraftedTree gt;
        gt.skeleton = parse_tree(j.at("skeleton").get<std::string>());
        auto addresses = vertex_addresses(gt.skeleton);
        std::map<Address, unsigned char> given;
        for (const auto &[addr, v] : j.at("marking").items())
            given[Address::parse(addr)] = static_cast<unsigned char>(v.get<unsigned>());
        for (const auto &a : addresses) {
            auto it = given.find(a);
            if (it == given.end())
                throw InputError("marking misses vertex " + a.format());
            gt.marking.push_back(it->second);
        }
        if (given.size() != addresses.size())
            throw InputError("marking names vertices outside the skeleton");
        if (!is_restricted_monotone(gt))
            throw InputError("marking is not a restricted monotone map to {1,2}");
        return gt;
    } catch (const nlohmann::json::exception &e) {
        throw InputError(std::string("malformed grafted tree JSON: ") + e.what());
    }
}

} // namespace treeinv
