#include "coarsesep/rational.hpp"

#include <cctype>

namespace coarsesep {

Delta Delta::parse(const std::string& text) {
    auto digits = [&](const std::string& s) {
        if (s.empty()) return false;
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        }
        return s.size() <= 12;
    };
    if (const auto slash = text.find('/'); slash != std::string::npos) {
        const auto p = text.substr(0, slash);
        const auto q = text.substr(slash + 1);
        if (!digits(p) || !digits(q)) throw Error("malformed delta '" + text + "'");
        return {std::stoll(p), std::stoll(q)};
    }
    if (const auto dot = text.find('.'); dot != std::string::npos) {
        const auto ip = text.substr(0, dot);
        const auto fp = text.substr(dot + 1);
        if ((!ip.empty() && !digits(ip)) || !digits(fp) || fp.size() > 6) throw Error("malformed delta '" + text + "'");
        std::int64_t den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        const std::int64_t whole = ip.empty() ? 0 : std::stoll(ip);
        return {whole * den + std::stoll(fp), den};
    }
    throw Error("malformed delta '" + text + "' (use p/q or a decimal)");
}

}  // namespace coarsesep
