#include "egw/rational.hpp"

namespace egw {

Rat parse_rat(const std::string& s) {
    if (s.empty())
        throw ParseError("empty rational literal");
    try {
        Rat q(s);
        q.canonicalize();
        if (q.get_den() == 0)
            throw ParseError("zero denominator in '" + s + "'");
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational '" + s + "'");
    }
}

std::optional<std::string> check_reduced_fraction(const std::string& s) {
    Rat q;
    try {
        q = Rat(s);
    } catch (const std::invalid_argument&) {
        return "malformed rational '" + s + "'";
    }
    if (q.get_den() <= 0)
        return "non-positive denominator in '" + s + "'";
    Rat canon = q;
    canon.canonicalize();
    if (canon.get_num() != q.get_num() || canon.get_den() != q.get_den())
        return "unreduced fraction '" + s + "'";
    return std::nullopt;
}

std::string rat_str(const Rat& q) {
    return q.get_str();
}

}  // namespace egw
