#pragma once

// Spin models on planar trees: weights, energies and partition functions.
//
// A model assigns to every interior vertex a spin from an alphabet. Each
// arity k has a block of letters allowed at arity-k vertices and k matrices
// M_1..M_k with rows indexed by those letters and columns by the full
// alphabet. An edge from a vertex of spin a to its j-th child of spin b has
// weight M_j(a, b); edges ending in a leaf carry no weight.

#include "treeinv/errors.hpp"
#include "treeinv/series.hpp"
#include "treeinv/tree.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace treeinv {

template <class Ring>
using Matrix = std::vector<std::vector<typename Ring::value_type>>;

template <class Ring>
struct ArityBlock {
    unsigned arity = 0;
    /// Indices into the model alphabet, in row order.
    std::vector<std::size_t> letters;
    std::vector<Matrix<Ring>> matrices;
};

template <class Ring>
class SpinModel {
public:
    using value_type = typename Ring::value_type;

    Ring ring;
    std::vector<std::string> alphabet;
    std::vector<ArityBlock<Ring>> blocks;
    /// Numeric Y values by alphabet index; nullopt keeps Y symbolic.
    std::optional<std::vector<value_type>> y_values;
    Grading grading;
    /// Value of X used when a partition function is evaluated to a number.
    std::optional<value_type> x_value;

    explicit SpinModel(Ring r) : ring(std::move(r)) {}

    std::size_t size() const { return alphabet.size(); }

    std::size_t index_of(const std::string &spin) const
    {
        auto it = std::find(alphabet.begin(), alphabet.end(), spin);
        if (it == alphabet.end())
            throw InputError("unknown spin '" + spin + "'");
        return static_cast<std::size_t>(it - alphabet.begin());
    }

    static std::string y_name(const std::string &spin) { return "Y" + spin; }

    bool is_uniform() const { return blocks.size() == 1 && blocks.front().letters.size() == alphabet.size(); }

    unsigned uniform_arity() const
    {
        if (!is_uniform())
            throw InputError("model is not uniform in arity");
        return blocks.front().arity;
    }

    const ArityBlock<Ring> *block_for_arity(unsigned k) const
    {
        for (const auto &b : blocks)
            if (b.arity == k)
                return &b;
        return nullptr;
    }

    /// Block and row index of a letter.
    std::pair<const ArityBlock<Ring> *, std::size_t> row_of(std::size_t letter) const
    {
        for (const auto &b : blocks)
            for (std::size_t r = 0; r < b.letters.size(); ++r)
                if (b.letters[r] == letter)
                    return {&b, r};
        throw InputError("spin '" + alphabet.at(letter) + "' belongs to no arity block");
    }

    /// Y_a as a series: the numeric value when fixed, otherwise the parameter.
    Series<Ring> y_series(std::size_t letter, unsigned order) const
    {
        if (y_values)
            return Series<Ring>::constant(ring, order, (*y_values)[letter], grading);
        Monomial m;
        m.y.emplace_back(y_name(alphabet[letter]), 1);
        return Series<Ring>::monomial(ring, order, m, ring.one(), grading);
    }

    void validate() const
    {
        if (alphabet.empty())
            throw InputError("empty spin alphabet");
        std::vector<int> seen(alphabet.size(), 0);
        for (const auto &b : blocks) {
            if (b.arity == 0)
                throw InputError("arity must be positive");
            if (b.matrices.size() != b.arity)
                throw InputError("arity " + std::to_string(b.arity) + " needs " + std::to_string(b.arity) +
                                 " matrices");
            for (const auto &m : b.matrices) {
                if (m.size() != b.letters.size())
                    throw InputError("matrix row count differs from the block's letter count");
                for (const auto &row : m)
                    if (row.size() != alphabet.size())
                        throw InputError("matrix column count differs from the alphabet size");
            }
            for (std::size_t l : b.letters)
                ++seen.at(l);
        }
        for (std::size_t i = 0; i < seen.size(); ++i)
            if (seen[i] != 1)
                throw InputError("spin '" + alphabet[i] + "' must belong to exactly one arity block");
        std::set<unsigned> arities;
        for (const auto &b : blocks)
            if (!arities.insert(b.arity).second)
                throw InputError("duplicate arity block " + std::to_string(b.arity));
        if (y_values && y_values->size() != alphabet.size())
            throw InputError("Y values do not cover the alphabet");
    }
};

template <class Ring>
SpinModel<Ring> make_uniform_model(const Ring &ring, std::vector<std::string> alphabet,
                                   std::vector<Matrix<Ring>> matrices,
                                   std::optional<std::vector<typename Ring::value_type>> y_values)
{
    SpinModel<Ring> m(ring);
    m.alphabet = std::move(alphabet);
    ArityBlock<Ring> b;
    b.arity = static_cast<unsigned>(matrices.size());
    for (std::size_t i = 0; i < m.alphabet.size(); ++i)
        b.letters.push_back(i);
    b.matrices = std::move(matrices);
    m.blocks.push_back(std::move(b));
    m.y_values = std::move(y_values);
    m.validate();
    return m;
}

/// Every matrix entry w becomes 1 - w.
template <class Ring>
SpinModel<Ring> complement(const SpinModel<Ring> &m)
{
    SpinModel<Ring> out = m;
    for (auto &b : out.blocks)
        for (auto &mat : b.matrices)
            for (auto &row : mat)
                for (auto &w : row)
                    w = m.ring.one() - w;
    return out;
}

/// Weighted degree bound that holds every partition function term of t.
template <class Ring>
unsigned natural_order(const PlanarTree &t, const SpinModel<Ring> &m)
{
    unsigned w = 0;
    if (!m.y_values)
        for (const auto &a : m.alphabet)
            w = std::max(w, m.grading.weight_of(SpinModel<Ring>::y_name(a)));
    return leaf_count(t) + w * interior_count(t);
}

/// Interior-vertex address to alphabet index.
using State = std::map<Address, std::size_t>;

/// X^d(T) * prod Y_phi(v) * prod of leafless edge weights.
template <class Ring>
Series<Ring> energy(const PlanarTree &t, const State &phi, const SpinModel<Ring> &m, unsigned order)
{
    auto interior = interior_addresses(t);
    if (phi.size() != interior.size())
        throw InputError("state does not cover exactly the interior vertices");
    auto value = Series<Ring>::monomial(m.ring, order, Monomial::x_power(leaf_count(t)), m.ring.one(), m.grading);
    for (const auto &a : interior) {
        auto it = phi.find(a);
        if (it == phi.end())
            throw InputError("state misses interior vertex " + a.format());
        const PlanarTree &v = subtree_at(t, a);
        auto [block, row] = m.row_of(it->second);
        if (block->arity != v.arity())
            throw InputError("spin '" + m.alphabet[it->second] + "' is not admissible at a vertex of arity " +
                             std::to_string(v.arity()));
        value = value * m.y_series(it->second, order);
        for (unsigned j = 0; j < v.arity(); ++j) {
            if (v.children[j].is_leaf())
                continue;
            auto child = phi.find(a.child(j + 1));
            if (child == phi.end())
                throw InputError("state misses interior vertex " + a.child(j + 1).format());
            value = value.scaled(block->matrices[j][row][child->second]);
        }
    }
    return value;
}

/// Restricted partition functions Z_a(t) for every letter a (zero for the
/// trivial tree and for letters not admissible at the root's arity).
template <class Ring>
std::vector<Series<Ring>> restricted_partition_vector(const PlanarTree &t, const SpinModel<Ring> &m, unsigned order)
{
    std::vector<Series<Ring>> z(m.size(), Series<Ring>(m.ring, order, m.grading));
    if (t.is_leaf())
        return z;
    const ArityBlock<Ring> *block = m.block_for_arity(t.arity());
    if (!block)
        throw InputError("model has no matrices for arity " + std::to_string(t.arity()));
    std::vector<std::vector<Series<Ring>>> below;
    below.reserve(t.arity());
    for (const auto &c : t.children)
        below.push_back(restricted_partition_vector(c, m, order));
    auto x = Series<Ring>::x(m.ring, order, m.grading);
    for (std::size_t r = 0; r < block->letters.size(); ++r) {
        std::size_t a = block->letters[r];
        Series<Ring> acc = m.y_series(a, order);
        for (unsigned j = 0; j < t.arity(); ++j) {
            if (t.children[j].is_leaf()) {
                acc = acc * x;
                continue;
            }
            Series<Ring> factor(m.ring, order, m.grading);
            for (std::size_t b = 0; b < m.size(); ++b)
                factor += below[j][b].scaled(block->matrices[j][r][b]);
            acc = acc * factor;
        }
        z[a] = std::move(acc);
    }
    return z;
}

template <class Ring>
Series<Ring> restricted_partition(const PlanarTree &t, std::size_t letter, const SpinModel<Ring> &m, unsigned order)
{
    if (letter >= m.size())
        throw InputError("spin index out of range");
    return restricted_partition_vector(t, m, order)[letter];
}

/// X for the trivial tree, otherwise the sum of the restricted functions.
template <class Ring>
Series<Ring> partition(const PlanarTree &t, const SpinModel<Ring> &m, unsigned order)
{
    if (t.is_leaf())
        return Series<Ring>::x(m.ring, order, m.grading);
    Series<Ring> total(m.ring, order, m.grading);
    for (auto &z : restricted_partition_vector(t, m, order))
        total += z;
    return total;
}

/// Sum of energies over all states, optionally with the root spin fixed.
template <class Ring>
Series<Ring> partition_by_states(const PlanarTree &t, const SpinModel<Ring> &m, unsigned order,
                                 std::optional<std::size_t> root_spin = std::nullopt)
{
    auto interior = interior_addresses(t);
    if (interior.empty())
        return root_spin ? Series<Ring>(m.ring, order, m.grading) : Series<Ring>::x(m.ring, order, m.grading);
    // Candidate letters per vertex, from its arity block.
    std::vector<std::vector<std::size_t>> choices;
    for (const auto &a : interior) {
        const ArityBlock<Ring> *b = m.block_for_arity(subtree_at(t, a).arity());
        if (!b)
            throw InputError("model has no matrices for arity " + std::to_string(subtree_at(t, a).arity()));
        choices.push_back(b->letters);
    }
    if (root_spin) {
        auto &root = choices.front();
        if (std::find(root.begin(), root.end(), *root_spin) == root.end())
            return Series<Ring>(m.ring, order, m.grading);
        root = {*root_spin};
    }
    Series<Ring> total(m.ring, order, m.grading);
    std::vector<std::size_t> pick(interior.size(), 0);
    for (;;) {
        State phi;
        for (std::size_t i = 0; i < interior.size(); ++i)
            phi.emplace(interior[i], choices[i][pick[i]]);
        total += energy(t, phi, m, order);
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == choices[i].size())
            pick[i++] = 0;
        if (i == pick.size())
            break;
    }
    return total;
}

// ---------------------------------------------------------------------------
// JSON

template <class Ring>
typename Ring::value_type value_from_json(const Ring &ring, const nlohmann::json &v)
{
    if (v.is_string())
        return ring.parse(v.template get<std::string>());
    if (v.is_number_integer())
        return ring.from_int(v.template get<long>());
    throw InputError("matrix entries must be integers or strings, got " + v.dump());
}

template <class Ring>
Matrix<Ring> matrix_from_json(const Ring &ring, const nlohmann::json &j)
{
    Matrix<Ring> m;
    for (const auto &row : j) {
        std::vector<typename Ring::value_type> r;
        for (const auto &v : row)
            r.push_back(value_from_json(ring, v));
        m.push_back(std::move(r));
    }
    return m;
}

/// Reads a model; the "ring" member is the caller's concern.
template <class Ring>
SpinModel<Ring> model_from_json(const Ring &ring, const nlohmann::json &j)
{
    try {
        SpinModel<Ring> m(ring);
        for (const auto &a : j.at("alphabet"))
            m.alphabet.push_back(a.is_string() ? a.template get<std::string>() : a.dump());
        if (j.contains("degrees")) {
            for (const auto &d : j.at("degrees")) {
                ArityBlock<Ring> b;
                b.arity = d.at("k").template get<unsigned>();
                for (const auto &l : d.at("letters"))
                    b.letters.push_back(m.index_of(l.is_string() ? l.template get<std::string>() : l.dump()));
                for (const auto &mat : d.at("matrices"))
                    b.matrices.push_back(matrix_from_json(ring, mat));
                m.blocks.push_back(std::move(b));
            }
        } else {
            ArityBlock<Ring> b;
            b.arity = j.at("k").template get<unsigned>();
            for (std::size_t i = 0; i < m.alphabet.size(); ++i)
                b.letters.push_back(i);
            for (const auto &mat : j.at("matrices"))
                b.matrices.push_back(matrix_from_json(ring, mat));
            m.blocks.push_back(std::move(b));
        }
        if (j.contains("y_weight"))
            m.grading.y_weight = j.at("y_weight").template get<unsigned>();
        const nlohmann::json y = j.value("y", nlohmann::json("symbolic"));
        if (y.is_string()) {
            if (y.template get<std::string>() != "symbolic")
                throw InputError("\"y\" must be \"symbolic\" or an object");
        } else {
            std::vector<typename Ring::value_type> values(m.alphabet.size(), ring.one());
            std::vector<bool> given(m.alphabet.size(), false);
            for (const auto &[spin, v] : y.items()) {
                std::size_t i = m.index_of(spin);
                values[i] = value_from_json(ring, v);
                given[i] = true;
            }
            for (std::size_t i = 0; i < given.size(); ++i)
                if (!given[i])
                    throw InputError("no Y value for spin '" + m.alphabet[i] + "'");
            m.y_values = std::move(values);
        }
        if (j.contains("x"))
            m.x_value = value_from_json(ring, j.at("x"));
        m.validate();
        return m;
    } catch (const nlohmann::json::exception &e) {
        throw InputError(std::string("malformed model JSON: ") + e.what());
    }
}

template <class Ring>
nlohmann::json model_to_json(const SpinModel<Ring> &m)
{
    auto matrix_json = [&](const Matrix<Ring> &mat) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto &row : mat) {
            nlohmann::json r = nlohmann::json::array();
            for (const auto &v : row)
                r.push_back(m.ring.format(v));
            rows.push_back(r);
        }
        return rows;
    };
    nlohmann::json j;
    j["alphabet"] = m.alphabet;
    if (m.is_uniform()) {
        j["k"] = m.blocks.front().arity;
        j["matrices"] = nlohmann::json::array();
        for (const auto &mat : m.blocks.front().matrices)
            j["matrices"].push_back(matrix_json(mat));
    } else {
        j["degrees"] = nlohmann::json::array();
        for (const auto &b : m.blocks) {
            nlohmann::json d;
            d["k"] = b.arity;
            d["letters"] = nlohmann::json::array();
            for (std::size_t l : b.letters)
                d["letters"].push_back(m.alphabet[l]);
            d["matrices"] = nlohmann::json::array();
            for (const auto &mat : b.matrices)
                d["matrices"].push_back(matrix_json(mat));
            j["degrees"].push_back(d);
        }
    }
    if (m.y_values) {
        nlohmann::json y = nlohmann::json::object();
        for (std::size_t i = 0; i < m.size(); ++i)
            y[m.alphabet[i]] = m.ring.format((*m.y_values)[i]);
        j["y"] = y;
    } else {
        j["y"] = "symbolic";
    }
    if (m.grading.y_weight != 0)
        j["y_weight"] = m.grading.y_weight;
    if (m.x_value)
        j["x"] = m.ring.format(*m.x_value);
    j["ring"] = m.ring.describe();
    return j;
}

} // namespace treeinv
