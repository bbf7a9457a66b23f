#include "latk/modular.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace latk {

UpperHalfPoint apply(const GroupGenerator& g, UpperHalfPoint z) {
    z.validate();
    switch (g.kind) {
    case GenKind::Invert: {
        const double r2 = z.x * z.x + z.y * z.y;
        return {-z.x / r2, z.y / r2};
    }
    case GenKind::Translate:
        return {z.x + double(g.shift), z.y};
    case GenKind::Reflect:
        return {-z.x, z.y};
    }
    throw DomainError("apply: unknown generator");
}

UpperHalfPoint apply(const GroupWord& w, UpperHalfPoint z) {
    for (const auto& g : w.gens) z = apply(g, z);
    return z;
}

GroupWord inverse(const GroupWord& w) {
    GroupWord inv;
    inv.gens.reserve(w.gens.size());
    for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it) {
        GroupGenerator g = *it;
        if (g.kind == GenKind::Translate) g.shift = -g.shift;
        inv.gens.push_back(g); // Invert and Reflect are involutions
    }
    return inv;
}

std::string word_to_string(const GroupWord& w) {
    std::string s;
    for (const auto& g : w.gens) {
        if (!s.empty()) s += ' ';
        switch (g.kind) {
        case GenKind::Invert: s += 'I'; break;
        case GenKind::Reflect: s += 'R'; break;
        case GenKind::Translate: s += 'T' + std::to_string(g.shift); break;
        }
    }
    return s;
}

GroupWord word_from_string(std::string_view s) {
    GroupWord w;
    size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (c == ' ' || c == ',') {
            ++i;
            continue;
        }
        if (c == 'I') {
            w.gens.push_back({GenKind::Invert, 0});
            ++i;
        } else if (c == 'R') {
            w.gens.push_back({GenKind::Reflect, 0});
            ++i;
        } else if (c == 'T') {
            ++i;
            size_t j = i;
            if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j == i) throw DomainError("word_from_string: T needs an integer shift");
            w.gens.push_back({GenKind::Translate, std::strtol(std::string(s.substr(i, j - i)).c_str(), nullptr, 10)});
            i = j;
        } else {
            throw DomainError(std::string("word_from_string: unexpected character '") + c + "'");
        }
    }
    return w;
}

bool in_fundamental_domain(UpperHalfPoint z, double tol) {
    return z.y > 0.0 && z.x >= -tol && z.x <= 0.5 + tol && z.x * z.x + z.y * z.y >= 1.0 - tol;
}

bool is_on_gamma_c(UpperHalfPoint z, double tol) {
    constexpr double y_hex = 0.8660254037844386467637231707529362;
    return std::abs(z.x - 0.5) <= tol && z.y >= y_hex - tol;
}

FundamentalDomainPoint reduce(UpperHalfPoint z) {
    z.validate();
    FundamentalDomainPoint out;
    UpperHalfPoint p = z;
    constexpr int kMaxSteps = 1000;

    auto push = [&](GroupGenerator g) {
        out.word.gens.push_back(g);
        p = apply(g, p);
    };

    for (int step = 0; step < kMaxSteps; ++step) {
        // Fold x into [0, 1/2]: translate to [-1/2, 1/2], then reflect if needed.
        const double k = std::nearbyint(p.x);
        if (k != 0.0) push({GenKind::Translate, -static_cast<long>(k)});
        if (p.x < 0.0) push({GenKind::Reflect, 0});

        const double r2 = p.x * p.x + p.y * p.y;
        if (r2 >= 1.0 - kBoundarySlack) {
            out.point = p;
            return out;
        }
        // |z| < 1: invert. This strictly increases y, so the loop terminates.
        push({GenKind::Invert, 0});
    }
    throw ReductionError("reduce: step limit exceeded");
}

} // namespace latk
