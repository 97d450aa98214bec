#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdq/core.hpp"

namespace tdq {

// A letter of a free-group word over the symbols x, y, z, u, v (0..4),
// with exponent +1 or -1.
struct Letter {
    int sym = 0;
    int exp = 1;
    friend bool operator==(const Letter& a, const Letter& b) {
        return a.sym == b.sym && a.exp == b.exp;
    }
    // Order: symbols ascending, positive exponent before negative.
    friend bool operator<(const Letter& a, const Letter& b) {
        int ka = a.sym * 2 + (a.exp < 0 ? 1 : 0);
        int kb = b.sym * 2 + (b.exp < 0 ? 1 : 0);
        return ka < kb;
    }
};

using Word = std::vector<Letter>;

constexpr int SYM_X = 0, SYM_Y = 1, SYM_Z = 2, SYM_U = 3, SYM_V = 4;

inline Word reduce(const Word& w) {
    Word out;
    for (const Letter& l : w) {
        if (!out.empty() && out.back().sym == l.sym && out.back().exp == -l.exp)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

inline Word inverse_word(const Word& w) {
    Word out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->sym, -it->exp});
    return out;
}

inline bool word_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) continue;
        return a[i] < b[i];
    }
    return false;
}

// Substitute bindings[s] for each occurrence of symbol s (inverse letters get
// the inverse word spliced in), then freely reduce.
inline Word substitute(const Word& w, const std::array<Word, 5>& bindings) {
    Word out;
    for (const Letter& l : w) {
        const Word& rep = bindings[static_cast<size_t>(l.sym)];
        if (l.exp > 0)
            out.insert(out.end(), rep.begin(), rep.end());
        else {
            Word inv = inverse_word(rep);
            out.insert(out.end(), inv.begin(), inv.end());
        }
    }
    return reduce(out);
}

inline Word single(int sym, int exp = 1) { return Word{Letter{sym, exp}}; }

// Does w(x,y,z) satisfy w(w(x,y,z),u,v) = w(w(x,u,v), w(y,u,v), w(z,u,v))
// in the free group on five generators?
inline bool satisfies_distributivity_free(const Word& w) {
    for (const Letter& l : w)
        if (l.sym > SYM_Z) throw std::invalid_argument("word must use only x, y, z");
    std::array<Word, 5> idb = {single(SYM_X), single(SYM_Y), single(SYM_Z), single(SYM_U),
                               single(SYM_V)};

    auto lhs_b = idb;
    lhs_b[SYM_X] = reduce(w);
    lhs_b[SYM_Y] = single(SYM_U);
    lhs_b[SYM_Z] = single(SYM_V);
    Word lhs = substitute(w, lhs_b);

    auto wuv = [&](int first_sym) {
        auto b = idb;
        b[SYM_X] = single(first_sym);
        b[SYM_Y] = single(SYM_U);
        b[SYM_Z] = single(SYM_V);
        return substitute(w, b);
    };
    auto rhs_b = idb;
    rhs_b[SYM_X] = wuv(SYM_X);
    rhs_b[SYM_Y] = wuv(SYM_Y);
    rhs_b[SYM_Z] = wuv(SYM_Z);
    Word rhs = substitute(w, rhs_b);
    return lhs == rhs;
}

// All reduced words of the given length over {x,y,z}^+- with total exponent
// sum 1 and exactly one x-letter, that satisfy free distributivity. Sorted by
// the letter order (symbol-major, + before -).
inline std::vector<Word> search_words(int length) {
    if (length < 1) throw std::invalid_argument("length must be positive");
    std::vector<Word> found;
    Word cur;
    auto rec = [&](auto&& self, int xcount, int expsum) -> void {
        int remaining = length - static_cast<int>(cur.size());
        if (remaining == 0) {
            if (xcount == 1 && expsum == 1) {
                Word w = cur;
                if (satisfies_distributivity_free(w)) found.push_back(w);
            }
            return;
        }
        // Prune: need exactly one x overall, and |expsum - 1| <= remaining.
        if (xcount > 1) return;
        if (xcount == 0 && remaining < 1) return;
        int diff = expsum - 1;
        if (diff < 0) diff = -diff;
        if (diff > remaining) return;
        for (int sym = SYM_X; sym <= SYM_Z; ++sym) {
            for (int exp : {+1, -1}) {
                if (!cur.empty() && cur.back().sym == sym && cur.back().exp == -exp)
                    continue; // keep the word reduced
                if (sym == SYM_X && xcount == 1) continue;
                cur.push_back({sym, exp});
                self(self, xcount + (sym == SYM_X ? 1 : 0), expsum + exp);
                cur.pop_back();
            }
        }
    };
    rec(rec, 0, 0);
    std::sort(found.begin(), found.end(), word_less);
    return found;
}

// Evaluate the word in a group: x, y, z are bound to group elements.
inline TernaryTable word_to_table(const Word& w, const FiniteGroup& g) {
    for (const Letter& l : w)
        if (l.sym > SYM_Z) throw std::invalid_argument("word must use only x, y, z");
    int n = g.order();
    TernaryTable t = TernaryTable::filled(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                int acc = g.identity();
                for (const Letter& l : w) {
                    int e = l.sym == SYM_X ? x : (l.sym == SYM_Y ? y : z);
                    if (l.exp < 0) e = g.inv(e);
                    acc = g.mul(acc, e);
                }
                t.set(x, y, z, acc);
            }
    return t;
}

// Text form: letters x, y, z, u, v; a trailing apostrophe marks an inverse
// (e.g. "zxz'").
inline std::string word_to_string(const Word& w) {
    static const char* names = "xyzuv";
    std::string out;
    for (const Letter& l : w) {
        out += names[l.sym];
        if (l.exp < 0) out += '\'';
    }
    if (out.empty()) out = "1";
    return out;
}

inline Word parse_word(const std::string& s) {
    Word w;
    if (s == "1") return w;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == ' ' || c == '\t') continue;
        int sym;
        switch (c) {
            case 'x': sym = SYM_X; break;
            case 'y': sym = SYM_Y; break;
            case 'z': sym = SYM_Z; break;
            case 'u': sym = SYM_U; break;
            case 'v': sym = SYM_V; break;
            default: throw std::invalid_argument("bad word letter");
        }
        int exp = 1;
        if (i + 1 < s.size() && s[i + 1] == '\'') {
            exp = -1;
            ++i;
        }
        w.push_back({sym, exp});
    }
    return w;
}

} // namespace tdq
