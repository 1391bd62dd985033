#include "treeinv/cli.hpp"

#include "treeinv/asymp.hpp"
#include "treeinv/graft.hpp"
#include "treeinv/loday.hpp"
#include "treeinv/morph.hpp"
#include "treeinv/solve.hpp"
#include "treeinv/tree.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <iostream>
#include <sstream>
#include <thread>

namespace treeinv::cli {

namespace {

nlohmann::json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

/// Calls f with the model read in the ring its "ring" member names.
template <class F>
int with_model(const nlohmann::json &j, F &&f)
{
    const nlohmann::json ring = j.value("ring", nlohmann::json("rational"));
    if (ring == "rational")
        return f(model_from_json(RationalRing{}, j));
    if (ring == "parameter-polynomial")
        return f(model_from_json(ParamPolyRing{}, j));
    if (ring.is_object() && ring.contains("mod") && ring.at("mod").is_number_unsigned())
        return f(model_from_json(ModPRing(ring.at("mod").get<std::uint64_t>()), j));
    throw InputError("unknown ring " + ring.dump() + "; use \"rational\", \"parameter-polynomial\" or {\"mod\": p}");
}

template <class Ring>
SeriesSystem<Ring> solve_any(const SpinModel<Ring> &m, unsigned order)
{
    return m.is_uniform() && m.uniform_arity() >= 2 ? solve_regular(m, order) : solve_general(m, order);
}

/// Runs the tasks on up to `threads` workers; results land in task order.
void run_parallel(std::vector<std::function<void()>> &tasks, unsigned threads)
{
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < tasks.size();) {
            try {
                tasks[i]();
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_lock);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::min<std::size_t>(threads, tasks.size()); ++t)
        pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

std::string join(const std::vector<mpz_class> &v)
{
    std::string s;
    for (const auto &x : v)
        s += (s.empty() ? "" : " ") + x.get_str();
    return s;
}

std::vector<mpz_class> integer_coefficients(const Series<RationalRing> &s, unsigned from, unsigned to)
{
    std::vector<mpz_class> out;
    for (unsigned n = from; n <= to; ++n) {
        mpq_class c = s.x_coefficient(n);
        if (c.get_den() != 1)
            throw std::logic_error("non-integral coefficient in a counting series");
        out.push_back(c.get_num());
    }
    return out;
}

struct Options {
    unsigned threads = 0;
    std::string model, tree, series_file, curve_file, method = "newton", root_spin, letter, degrees, family,
        sequence, limit = "-3/20";
    unsigned order = 0, k = 0, max_leaves = 0, max_vertices = 0, m = 0, terms = 8, digits = 60, predict = 0,
             lift = 0;
    bool restricted = false, surjective = false, check_minpoly = false, transpose_check = false;
};

int cmd_solve(const Options &o, std::ostream &out)
{
    return with_model(read_json_file(o.model), [&](const auto &m) {
        out << system_to_json(solve_any(m, o.order)).dump(2) << "\n";
        return kExitOk;
    });
}

int cmd_verify(const Options &o, std::ostream &out)
{
    return with_model(read_json_file(o.model), [&](const auto &m) {
        auto r = verify_identity(solve_any(m, o.order));
        nlohmann::json j{{"order", o.order},
                         {"verified", r.verified()},
                         {"left_residual", r.left.format()},
                         {"right_residual", r.right.format()}};
        out << j.dump(2) << "\n";
        return r.verified() ? kExitOk : kExitFailed;
    });
}

int cmd_partition(const Options &o, std::ostream &out)
{
    PlanarTree t = parse_tree(o.tree);
    return with_model(read_json_file(o.model), [&](const auto &m) {
        unsigned order = natural_order(t, m);
        auto z = o.root_spin.empty() ? partition(t, m, order) : restricted_partition(t, m.index_of(o.root_spin), m, order);
        if (m.x_value && m.y_values) {
            using V = typename std::decay_t<decltype(m)>::value_type;
            V v = z.evaluate(*m.x_value, [](const std::string &name) -> V {
                throw InputError("no value for parameter " + name);
            });
            out << m.ring.format(v) << "\n";
        } else {
            out << to_json(z).dump(2) << "\n";
        }
        return kExitOk;
    });
}

int cmd_enumerate(const Options &o, std::ostream &out)
{
    std::vector<PlanarTree> trees;
    if (o.k != 0 && o.degrees.empty()) {
        if (o.max_leaves == 0)
            throw InputError("--k needs --max-leaves");
        trees = enumerate_k_regular(o.k, o.max_leaves);
    } else if (o.k == 0 && !o.degrees.empty()) {
        if (o.max_vertices == 0)
            throw InputError("--degrees needs --max-vertices");
        trees = enumerate_general(DegreeSet::parse(o.degrees), o.max_vertices);
    } else {
        throw InputError("give exactly one of --k and --degrees");
    }
    for (const auto &t : trees)
        out << format_tree(t) << "\n";
    return kExitOk;
}

int cmd_graft_check(const Options &o, std::ostream &out, unsigned threads)
{
    PlanarTree t = parse_tree(o.tree);
    return with_model(read_json_file(o.model), [&](const auto &m) {
        std::vector<std::optional<std::size_t>> letters;
        if (o.letter.empty()) {
            letters.push_back(std::nullopt);
            for (std::size_t a = 0; a < m.size(); ++a)
                letters.push_back(a);
        } else {
            letters.push_back(m.index_of(o.letter));
        }
        std::vector<std::string> sums(letters.size());
        std::vector<bool> zero(letters.size());
        std::vector<std::function<void()>> tasks;
        for (std::size_t i = 0; i < letters.size(); ++i)
            tasks.push_back([&, i] {
                auto s = check_skeleton_sum(t, m, letters[i]);
                sums[i] = s.format();
                zero[i] = s.is_zero();
            });
        run_parallel(tasks, threads);
        nlohmann::json by = nlohmann::json::object();
        bool all_zero = true;
        for (std::size_t i = 0; i < letters.size(); ++i) {
            by[letters[i] ? m.alphabet[*letters[i]] : "*"] = sums[i];
            all_zero = all_zero && zero[i];
        }
        out << nlohmann::json{{"tree", format_tree(t)}, {"sums", by}, {"vanishes", all_zero}}.dump(2) << "\n";
        return all_zero ? kExitOk : kExitFailed;
    });
}

int cmd_invert(const Options &o, std::ostream &out)
{
    auto h = series_from_json(RationalRing{}, read_json_file(o.series_file));
    Series<RationalRing> inv(RationalRing{}, h.order());
    if (o.method == "tree")
        inv = invert_via_trees(h);
    else if (o.method == "newton")
        inv = revert_newton(h);
    else
        throw InputError("--method must be 'tree' or 'newton'");
    out << to_json(inv).dump(2) << "\n";
    return kExitOk;
}

int cmd_morph(const Options &o, std::ostream &out)
{
    if (o.tree.empty() == o.family.empty())
        throw InputError("give exactly one of --tree and --family");
    if (!o.tree.empty()) {
        PlanarTree t = parse_tree(o.tree);
        if (o.surjective) {
            out << surjective(t).get_str() << "\n";
        } else {
            if (o.m == 0)
                throw InputError("--m is required");
            out << gamma_recursive(t, o.m, o.restricted).get_str() << "\n";
        }
        return kExitOk;
    }
    TreeFamily f = TreeFamily::parse(o.family);
    if (o.terms == 0)
        throw InputError("--terms must be positive");
    std::vector<mpz_class> values;
    if (!o.sequence.empty()) {
        if (o.sequence != "comparable-pairs")
            throw InputError("--sequence must be 'comparable-pairs'");
        auto c = comparable_pairs_gf(f, std::max(2u, o.terms));
        values.assign(c.begin() + 1, c.begin() + 1 + o.terms);
    } else if (o.surjective) {
        for (unsigned n = 1; n <= o.terms; ++n)
            values.push_back(surjective_total(f, n));
    } else {
        if (o.m == 0)
            throw InputError("--m is required");
        values = integer_coefficients(morphism_gf(f, o.m, o.restricted, o.terms), 1, o.terms);
    }
    out << join(values) << "\n";
    return kExitOk;
}

int cmd_loday(const Options &o, std::ostream &out)
{
    auto curve = loday_curve();
    auto y = loday_series(o.order);
    nlohmann::json j{{"order", o.order}};
    bool ok = true;
    if (o.check_minpoly) {
        bool zero = minpoly_check(y, curve).is_zero();
        j["minpoly_residual_zero"] = zero;
        ok = ok && zero;
    }
    if (o.transpose_check) {
        bool zero = transposition_check(loday_tilde_series(o.order), curve).is_zero();
        j["transposition_residual_zero"] = zero;
        ok = ok && zero;
    }
    std::vector<mpz_class> coeffs;
    if (o.lift > o.order) {
        coeffs = lift_coefficients(curve, y, o.lift);
        j["lifted_to"] = o.lift;
    } else {
        coeffs = integer_coefficients(y, 0, o.order);
    }
    nlohmann::json c = nlohmann::json::array();
    for (const auto &x : coeffs)
        c.push_back(x.get_str());
    j["coefficients"] = c;
    out << j.dump(2) << "\n";
    return ok ? kExitOk : kExitFailed;
}

int cmd_asymptotics(const Options &o, std::ostream &out)
{
    AlgebraicCurve curve = o.curve_file.empty() ? loday_curve() : curve_from_json(read_json_file(o.curve_file));
    std::optional<unsigned> predict;
    if (o.predict > 0)
        predict = o.predict;
    out << asymptotics_report(curve, o.digits, parse_rational(o.limit), predict).dump(2) << "\n";
    return kExitOk;
}

} // namespace

unsigned resolve_threads(unsigned flag_value, const char *env_value)
{
    if (flag_value > 0)
        return flag_value;
    if (env_value == nullptr || *env_value == '\0')
        return 1;
    std::string s(env_value);
    if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 4 || std::stoul(s) == 0)
        throw InputError("TREEINVERSE_THREADS must be a positive integer, got '" + s + "'");
    return static_cast<unsigned>(std::stoul(s));
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    Options o;
    CLI::App app{"Tree-model inversion of formal power series"};
    app.require_subcommand(1);
    // Lets --threads follow the subcommand name as well.
    app.fallthrough();
    app.add_option("--threads", o.threads, "worker threads (default: TREEINVERSE_THREADS or 1)")
        ->check(CLI::PositiveNumber);

    auto *solve = app.add_subcommand("solve", "solve the fixed-point system of a model");
    solve->add_option("--model", o.model, "model JSON file")->required();
    solve->add_option("--order", o.order, "truncation order")->required();

    auto *verify = app.add_subcommand("verify", "check g(g~(X)) = g~(g(X)) = X");
    verify->add_option("--model", o.model, "model JSON file")->required();
    verify->add_option("--order", o.order, "truncation order")->required();

    auto *part = app.add_subcommand("partition", "partition function of a tree");
    part->add_option("--model", o.model, "model JSON file")->required();
    part->add_option("--tree", o.tree, "tree such as \"((L L) L)\"")->required();
    part->add_option("--root-spin", o.root_spin, "restrict the root spin");

    auto *en = app.add_subcommand("enumerate", "list planar trees");
    en->add_option("--k", o.k, "arity of k-regular trees")->check(CLI::Range(1u, 64u));
    en->add_option("--degrees", o.degrees, "allowed arities, e.g. \"2,3\" or \"1..\"");
    en->add_option("--max-leaves", o.max_leaves, "leaf bound for --k");
    en->add_option("--max-vertices", o.max_vertices, "vertex bound for --degrees");

    auto *graft = app.add_subcommand("graft-check", "skeleton sums over grafted trees");
    graft->add_option("--model", o.model, "model JSON file")->required();
    graft->add_option("--tree", o.tree, "k-regular skeleton")->required();
    graft->add_option("--letter", o.letter, "only the sum restricted to this spin");

    auto *inv = app.add_subcommand("invert", "compositional inverse of a series");
    inv->add_option("--series", o.series_file, "series JSON file")->required();
    inv->add_option("--method", o.method, "tree or newton")->check(CLI::IsMember({"tree", "newton"}));

    auto *morph = app.add_subcommand("morph", "counts of monotone labellings");
    morph->add_option("--tree", o.tree, "a single tree");
    morph->add_option("--family", o.family, "all, k2, k3, ...");
    morph->add_option("--m", o.m, "size of the label chain");
    morph->add_flag("--restricted", o.restricted, "leaves carry the top label");
    morph->add_flag("--surjective", o.surjective, "count surjective labellings");
    morph->add_option("--sequence", o.sequence, "comparable-pairs");
    morph->add_option("--terms", o.terms, "number of terms (default 8)");

    auto *loday = app.add_subcommand("loday", "series of the nine-letter binary model");
    loday->add_option("--order", o.order, "order")->required()->check(CLI::Range(2u, 200u));
    loday->add_flag("--check-minpoly", o.check_minpoly, "check P(y(t), t) = 0");
    loday->add_flag("--transpose-check", o.transpose_check, "check P(u, y~(u)) = 0");
    loday->add_option("--lift", o.lift, "extend by Newton lifting to this order");

    auto *asym = app.add_subcommand("asymptotics", "branch point and coefficient law");
    asym->add_option("--curve", o.curve_file, "curve JSON file (default: built-in data)");
    asym->add_option("--digits", o.digits, "decimal digits (default 60)")->check(CLI::Range(10u, 2000u));
    asym->add_option("--predict", o.predict, "predict the n-th coefficient");
    asym->add_option("--limit", o.limit, "search the real axis between 0 and this value (default -3/20)");

    std::vector<const char *> argv{"treeinverse"};
    for (const auto &a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitInput;
    }

    try {
        unsigned threads = resolve_threads(o.threads, std::getenv("TREEINVERSE_THREADS"));
        if (solve->parsed())
            return cmd_solve(o, out);
        if (verify->parsed())
            return cmd_verify(o, out);
        if (part->parsed())
            return cmd_partition(o, out);
        if (en->parsed())
            return cmd_enumerate(o, out);
        if (graft->parsed())
            return cmd_graft_check(o, out, threads);
        if (inv->parsed())
            return cmd_invert(o, out);
        if (morph->parsed())
            return cmd_morph(o, out);
        if (loday->parsed())
            return cmd_loday(o, out);
        if (asym->parsed())
            return cmd_asymptotics(o, out);
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::domain_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::runtime_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}

} // namespace treeinv::cli
