#include "treeinv/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

namespace treeinv {

std::strong_ordering operator<=>(const PlanarTree &a, const PlanarTree &b)
{
    if (a.is_leaf() || b.is_leaf())
        return b.is_leaf() <=> a.is_leaf();
    std::size_t n = std::min(a.children.size(), b.children.size());
    for (std::size_t i = 0; i < n; ++i)
        if (auto c = a.children[i] <=> b.children[i]; c != 0)
            return c;
    return a.children.size() <=> b.children.size();
}

std::string Address::format() const
{
    if (digits.empty())
        return "e";
    bool compact = std::all_of(digits.begin(), digits.end(), [](unsigned d) { return d < 10; });
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (!compact && i > 0)
            out += '.';
        out += std::to_string(digits[i]);
    }
    return out;
}

Address Address::parse(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    if (text == "e" || text.empty())
        return {};
    Address a;
    if (text.find('.') != std::string_view::npos) {
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t dot = text.find('.', start);
            std::string_view part = text.substr(start, dot == std::string_view::npos ? text.npos : dot - start);
            if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                throw ParseError("malformed address '" + std::string(text) + "'", start);
            unsigned d = static_cast<unsigned>(std::stoul(std::string(part)));
            if (d == 0)
                throw ParseError("address digits are positive", start);
            a.digits.push_back(d);
            if (dot == std::string_view::npos)
                break;
            start = dot + 1;
        }
        return a;
    }
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c < '1' || c > '9')
            throw ParseError("malformed address '" + std::string(text) + "'", i);
        a.digits.push_back(static_cast<unsigned>(c - '0'));
    }
    return a;
}

// ---------------------------------------------------------------------------

namespace {

class TreeReader {
public:
    explicit TreeReader(std::string_view text) : text_(text) {}

    PlanarTree read()
    {
        PlanarTree t = tree();
        skip();
        if (pos_ != text_.size())
            throw ParseError("trailing characters after tree", pos_);
        return t;
    }

private:
    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    PlanarTree tree()
    {
        skip();
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of tree text", pos_);
        if (text_[pos_] == 'L') {
            ++pos_;
            return PlanarTree::leaf();
        }
        if (text_[pos_] != '(')
            throw ParseError("expected 'L' or '('", pos_);
        std::size_t open = pos_++;
        PlanarTree t;
        for (;;) {
            skip();
            if (pos_ >= text_.size())
                throw ParseError("unbalanced '('", open);
            if (text_[pos_] == ')') {
                ++pos_;
                break;
            }
            t.children.push_back(tree());
        }
        if (t.children.empty())
            throw ParseError("interior vertex without children", open);
        return t;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void format_into(const PlanarTree &t, std::string &out)
{
    if (t.is_leaf()) {
        out += 'L';
        return;
    }
    out += '(';
    for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (i > 0)
            out += ' ';
        format_into(t.children[i], out);
    }
    out += ')';
}

void collect(const PlanarTree &t, Address &at, std::vector<Address> &out, int which)
{
    // which: 0 all, 1 interior only, 2 leaves only
    if (which == 0 || (which == 1 && !t.is_leaf()) || (which == 2 && t.is_leaf()))
        out.push_back(at);
    for (unsigned i = 0; i < t.arity(); ++i) {
        at.digits.push_back(i + 1);
        collect(t.children[i], at, out, which);
        at.digits.pop_back();
    }
}

std::vector<Address> collect(const PlanarTree &t, int which)
{
    std::vector<Address> out;
    Address at;
    collect(t, at, out, which);
    return out;
}

/// All ordered tuples (one tree from each list).
void cartesian(const std::vector<const std::vector<PlanarTree> *> &lists, std::vector<PlanarTree> &prefix,
               std::vector<PlanarTree> &out)
{
    if (prefix.size() == lists.size()) {
        out.push_back(PlanarTree::node(prefix));
        return;
    }
    for (const auto &t : *lists[prefix.size()]) {
        prefix.push_back(t);
        cartesian(lists, prefix, out);
        prefix.pop_back();
    }
}

/// Ordered compositions of `total` into `parts` positive values drawn from `allowed`.
void compositions(unsigned total, unsigned parts, const std::vector<bool> &allowed, std::vector<unsigned> &prefix,
                  const std::function<void(const std::vector<unsigned> &)> &emit)
{
    if (parts == 0) {
        if (total == 0)
            emit(prefix);
        return;
    }
    for (unsigned v = 1; v + (parts - 1) <= total; ++v) {
        if (v >= allowed.size() || !allowed[v])
            continue;
        prefix.push_back(v);
        compositions(total - v, parts - 1, allowed, prefix, emit);
        prefix.pop_back();
    }
}

} // namespace

PlanarTree parse_tree(std::string_view text) { return TreeReader(text).read(); }

std::string format_tree(const PlanarTree &t)
{
    std::string out;
    format_into(t, out);
    return out;
}

unsigned leaf_count(const PlanarTree &t)
{
    if (t.is_leaf())
        return 1;
    unsigned n = 0;
    for (const auto &c : t.children)
        n += leaf_count(c);
    return n;
}

unsigned interior_count(const PlanarTree &t)
{
    if (t.is_leaf())
        return 0;
    unsigned n = 1;
    for (const auto &c : t.children)
        n += interior_count(c);
    return n;
}

unsigned vertex_count(const PlanarTree &t) { return leaf_count(t) + interior_count(t); }

unsigned height(const PlanarTree &t)
{
    unsigned h = 0;
    for (const auto &c : t.children)
        h = std::max(h, 1 + height(c));
    return h;
}

bool is_k_regular(const PlanarTree &t, unsigned k)
{
    if (t.is_leaf())
        return true;
    if (t.arity() != k)
        return false;
    return std::all_of(t.children.begin(), t.children.end(), [k](const PlanarTree &c) { return is_k_regular(c, k); });
}

std::vector<Address> vertex_addresses(const PlanarTree &t) { return collect(t, 0); }
std::vector<Address> interior_addresses(const PlanarTree &t) { return collect(t, 1); }
std::vector<Address> leaf_addresses(const PlanarTree &t) { return collect(t, 2); }

bool is_valid_address(const PlanarTree &t, const Address &a)
{
    const PlanarTree *cur = &t;
    for (unsigned d : a.digits) {
        if (d == 0 || d > cur->arity())
            return false;
        cur = &cur->children[d - 1];
    }
    return true;
}

const PlanarTree &subtree_at(const PlanarTree &t, const Address &a)
{
    const PlanarTree *cur = &t;
    for (unsigned d : a.digits) {
        if (d == 0 || d > cur->arity())
            throw InputError("address " + a.format() + " is not a vertex of " + format_tree(t));
        cur = &cur->children[d - 1];
    }
    return *cur;
}

const std::vector<PlanarTree> &principal_subtrees(const PlanarTree &t) { return t.children; }

TreeStats tree_stats(const PlanarTree &t)
{
    TreeStats s;
    s.leaves = leaf_count(t);
    s.interior = interior_count(t);
    s.vertices = s.leaves + s.interior;
    s.addresses = vertex_addresses(t);
    s.principal = t.children;
    return s;
}

PlanarTree tree_from_interior_addresses(const std::vector<Address> &interior, unsigned k)
{
    if (k == 0)
        throw InputError("arity must be positive");
    std::set<Address> set(interior.begin(), interior.end());
    if (set.size() != interior.size())
        throw InputError("duplicate interior address");
    for (const auto &a : set) {
        for (unsigned d : a.digits)
            if (d == 0 || d > k)
                throw InputError("address " + a.format() + " has a digit above the arity " + std::to_string(k));
        if (!a.is_root()) {
            Address parent{std::vector<unsigned>(a.digits.begin(), a.digits.end() - 1)};
            if (!set.count(parent))
                throw InputError("address " + a.format() + " has no interior parent");
        }
    }
    std::function<PlanarTree(const Address &)> build = [&](const Address &a) {
        if (!set.count(a))
            return PlanarTree::leaf();
        PlanarTree t;
        for (unsigned i = 1; i <= k; ++i)
            t.children.push_back(build(a.child(i)));
        return t;
    };
    return build(Address{});
}

PlanarTree parse_address_list(std::string_view text, unsigned k)
{
    std::vector<Address> list;
    std::size_t start = 0;
    bool any = false;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string_view part = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        bool blank = std::all_of(part.begin(), part.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
        if (!blank) {
            list.push_back(Address::parse(part));
            any = true;
        } else if (comma != std::string_view::npos) {
            throw ParseError("empty address in list", start);
        }
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    if (!any)
        return PlanarTree::leaf();
    return tree_from_interior_addresses(list, k);
}

std::string format_address_list(const PlanarTree &t)
{
    std::string out;
    for (const auto &a : interior_addresses(t)) {
        if (!out.empty())
            out += ',';
        out += a.format();
    }
    return out;
}

std::vector<PlanarTree> k_regular_with_leaves(unsigned k, unsigned leaves)
{
    if (k < 2)
        throw InputError("k-regular enumeration needs k >= 2");
    std::vector<std::vector<PlanarTree>> by_leaves(leaves + 1);
    std::vector<bool> allowed(leaves + 1, false);
    if (leaves >= 1) {
        by_leaves[1].push_back(PlanarTree::leaf());
        allowed[1] = true;
    }
    for (unsigned n = 2; n <= leaves; ++n) {
        if ((n - 1) % (k - 1) != 0)
            continue;
        std::vector<unsigned> prefix;
        compositions(n, k, allowed, prefix, [&](const std::vector<unsigned> &parts) {
            std::vector<const std::vector<PlanarTree> *> lists;
            for (unsigned p : parts)
                lists.push_back(&by_leaves[p]);
            std::vector<PlanarTree> pre;
            cartesian(lists, pre, by_leaves[n]);
        });
        std::sort(by_leaves[n].begin(), by_leaves[n].end());
        allowed[n] = !by_leaves[n].empty();
    }
    return leaves == 0 ? std::vector<PlanarTree>{} : by_leaves[leaves];
}

std::vector<PlanarTree> enumerate_k_regular(unsigned k, unsigned max_leaves)
{
    std::vector<PlanarTree> out;
    for (unsigned n = 1; n <= max_leaves; ++n) {
        auto layer = k_regular_with_leaves(k, n);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

std::vector<unsigned> DegreeSet::members_up_to(unsigned bound) const
{
    std::vector<unsigned> out;
    for (unsigned k = 1; k <= bound; ++k)
        if (contains(k))
            out.push_back(k);
    return out;
}

DegreeSet DegreeSet::parse(std::string_view text)
{
    DegreeSet d;
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '{' && c != '}')
            s += c;
    if (s.empty())
        throw ParseError("empty degree set", 0);
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = s.find(',', start);
        parts.push_back(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    auto number = [&](const std::string &p) {
        if (p.empty() || !std::all_of(p.begin(), p.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw ParseError("malformed degree '" + p + "'", 0);
        unsigned v = static_cast<unsigned>(std::stoul(p));
        if (v == 0)
            throw ParseError("degrees are positive", 0);
        return v;
    };
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const std::string &p = parts[i];
        bool last = i + 1 == parts.size();
        if (p == "..." || p == "…") {
            if (!last || i == 0)
                throw ParseError("'...' must follow at least one degree and end the list", 0);
            unsigned tail = *d.finite.rbegin();
            d.finite.erase(tail);
            d.from = tail;
        } else if (p.size() > 2 && p.substr(p.size() - 2) == "..") {
            if (!last)
                throw ParseError("open range must end the list", 0);
            d.from = number(p.substr(0, p.size() - 2));
        } else {
            d.finite.insert(number(p));
        }
    }
    return d;
}

std::string DegreeSet::format() const
{
    std::string out;
    for (unsigned k : finite) {
        if (from && k >= *from)
            continue;
        if (!out.empty())
            out += ',';
        out += std::to_string(k);
    }
    if (from) {
        if (!out.empty())
            out += ',';
        out += std::to_string(*from) + "..";
    }
    return out;
}

std::vector<PlanarTree> enumerate_general(const DegreeSet &k, unsigned max_vertices)
{
    if (k.empty())
        throw InputError("degree set is empty");
    std::vector<std::vector<PlanarTree>> by_vertices(max_vertices + 1);
    std::vector<bool> allowed(max_vertices + 1, false);
    if (max_vertices >= 1) {
        by_vertices[1].push_back(PlanarTree::leaf());
        allowed[1] = true;
    }
    // An arity-a root needs at least a+1 vertices, so K is truncated at max_vertices-1.
    std::vector<unsigned> arities = k.members_up_to(max_vertices == 0 ? 0 : max_vertices - 1);
    for (unsigned v = 2; v <= max_vertices; ++v) {
        for (unsigned a : arities) {
            std::vector<unsigned> prefix;
            compositions(v - 1, a, allowed, prefix, [&](const std::vector<unsigned> &parts) {
                std::vector<const std::vector<PlanarTree> *> lists;
                for (unsigned p : parts)
                    lists.push_back(&by_vertices[p]);
                std::vector<PlanarTree> pre;
                cartesian(lists, pre, by_vertices[v]);
            });
        }
        std::sort(by_vertices[v].begin(), by_vertices[v].end());
        allowed[v] = !by_vertices[v].empty();
    }
    std::vector<PlanarTree> out;
    for (unsigned v = 1; v <= max_vertices; ++v)
        out.insert(out.end(), by_vertices[v].begin(), by_vertices[v].end());
    return out;
}

} // namespace treeinv
