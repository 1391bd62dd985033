#include "treeinv/series.hpp"

namespace treeinv {

std::string Monomial::format() const
{
    std::string out;
    auto append = [&out](const std::string &name, unsigned e) {
        if (!out.empty())
            out += "*";
        out += name;
        if (e > 1)
            out += "^" + std::to_string(e);
    };
    if (x > 0)
        append("X", x);
    for (const auto &[name, e] : y)
        append(name, e);
    return out;
}

} // namespace treeinv
