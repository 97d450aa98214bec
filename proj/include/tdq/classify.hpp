#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tdq/core.hpp"
#include "tdq/permutation.hpp"

namespace tdq {

// Relabeling action: (sigma . t)(x, y, z) = sigma(t(sigma^-1 x, sigma^-1 y, sigma^-1 z)).
inline TernaryTable relabel(const TernaryTable& t, const Permutation& sigma) {
    if (sigma.size() != t.order()) throw std::invalid_argument("relabel size mismatch");
    int n = t.order();
    Permutation inv = sigma.inverse();
    TernaryTable out = TernaryTable::filled(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) out.set(x, y, z, sigma(t.at(inv(x), inv(y), inv(z))));
    return out;
}

inline BinaryTable relabel(const BinaryTable& b, const Permutation& sigma) {
    if (sigma.size() != b.order()) throw std::invalid_argument("relabel size mismatch");
    int n = b.order();
    Permutation inv = sigma.inverse();
    BinaryTable out(n, std::vector<int>(static_cast<size_t>(n) * n, 0));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) out.set(x, y, sigma(b.at(inv(x), inv(y))));
    return out;
}

// A permutation sigma with sigma . a = b, if one exists.
inline std::optional<Permutation> are_isomorphic(const TernaryTable& a, const TernaryTable& b) {
    if (a.order() != b.order()) throw std::invalid_argument("order mismatch");
    int n = a.order();
    for (const auto& sigma : all_permutations(n)) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            for (int y = 0; y < n && ok; ++y)
                for (int z = 0; z < n && ok; ++z)
                    if (b.at(sigma(x), sigma(y), sigma(z)) != sigma(a.at(x, y, z))) ok = false;
        if (ok) return sigma;
    }
    return std::nullopt;
}

// Lexicographically least flat table over the S_n orbit. Two tables are
// isomorphic iff their canonical forms are equal.
inline TernaryTable canonical_form(const TernaryTable& t) {
    TernaryTable best = t;
    for (const auto& sigma : all_permutations(t.order())) {
        TernaryTable cand = relabel(t, sigma);
        if (cand < best) best = cand;
    }
    return best;
}

inline BinaryTable canonical_form(const BinaryTable& b) {
    BinaryTable best = b;
    for (const auto& sigma : all_permutations(b.order())) {
        BinaryTable cand = relabel(b, sigma);
        if (cand < best) best = cand;
    }
    return best;
}

inline int automorphism_count(const TernaryTable& t) {
    int count = 0;
    for (const auto& sigma : all_permutations(t.order()))
        if (relabel(t, sigma) == t) ++count;
    return count;
}

struct IsoClass {
    TernaryTable representative;  // canonical form
    int class_size = 0;           // orbit size under S_n
    BinaryTable associated;       // associated quandle of the representative
};

struct EnumerateOptions {
    int max_order = 4;               // n above this is refused
    bool require_idempotence = true; // false enumerates ternary racks
};

namespace detail {

// Backtracking over the n^2 permutation columns R_{y,z} in lexicographic (y,z)
// order. After each assignment every distributivity instance
//   R_{u,v} o R_{y,z} = R_{R_{u,v}(y), R_{u,v}(z)} o R_{u,v}
// whose three columns are all assigned and involve the new column is checked,
// so a full assignment has every instance verified.
class ColumnSearch {
public:
    ColumnSearch(int n, bool idem) : n_(n), idem_(idem), perms_(all_permutations(n)) {}

    std::vector<TernaryTable> run() {
        cols_.assign(static_cast<size_t>(n_) * n_, -1);
        out_.clear();
        place(0);
        return std::move(out_);
    }

private:
    int n_;
    bool idem_;
    std::vector<Permutation> perms_;
    std::vector<int> cols_; // index into perms_, -1 if unassigned
    std::vector<TernaryTable> out_;

    int pair_of(int y, int z) const { return y * n_ + z; }

    bool instance_holds(int c1, int c2) const {
        // c1 = (y,z), c2 = (u,v); requires both assigned.
        const Permutation& r1 = perms_[cols_[c1]];
        const Permutation& r2 = perms_[cols_[c2]];
        int y = c1 / n_, z = c1 % n_;
        int tgt = pair_of(r2(y), r2(z));
        if (cols_[tgt] < 0) return true; // not yet checkable
        const Permutation& rt = perms_[cols_[tgt]];
        for (int x = 0; x < n_; ++x)
            if (r2(r1(x)) != rt(r2(x))) return false;
        return true;
    }

    bool consistent_after(int p) {
        for (int c1 = 0; c1 < static_cast<int>(cols_.size()); ++c1) {
            if (cols_[c1] < 0) continue;
            for (int c2 = 0; c2 < static_cast<int>(cols_.size()); ++c2) {
                if (cols_[c2] < 0) continue;
                const Permutation& r2 = perms_[cols_[c2]];
                int y = c1 / n_, z = c1 % n_;
                int tgt = pair_of(r2(y), r2(z));
                if (cols_[tgt] < 0) continue;
                if (c1 != p && c2 != p && tgt != p) continue;
                if (!instance_holds(c1, c2)) return false;
            }
        }
        return true;
    }

    void place(int p) {
        if (p == n_ * n_) {
            TernaryTable t = TernaryTable::filled(n_);
            for (int y = 0; y < n_; ++y)
                for (int z = 0; z < n_; ++z) {
                    const Permutation& r = perms_[cols_[pair_of(y, z)]];
                    for (int x = 0; x < n_; ++x) t.set(x, y, z, r(x));
                }
            out_.push_back(std::move(t));
            return;
        }
        int y = p / n_, z = p % n_;
        for (int pi = 0; pi < static_cast<int>(perms_.size()); ++pi) {
            if (idem_ && y == z && perms_[pi](y) != y) continue;
            cols_[p] = pi;
            if (consistent_after(p)) place(p + 1);
        }
        cols_[p] = -1;
    }
};

} // namespace detail

// All isomorphism classes of ternary quandles (racks with require_idempotence
// = false) of order n, sorted by (canonical associated quandle, representative).
inline std::vector<IsoClass> enumerate_ternary_quandles(int n, const EnumerateOptions& opts = {}) {
    if (n < 1) throw std::invalid_argument("enumeration order must be positive");
    if (n > opts.max_order)
        throw std::invalid_argument("enumeration order exceeds the configured ceiling");
    detail::ColumnSearch search(n, opts.require_idempotence);
    std::vector<TernaryTable> labeled = search.run();
    std::vector<TernaryTable> reps;
    for (const auto& t : labeled) {
        TernaryTable c = canonical_form(t);
        if (std::find(reps.begin(), reps.end(), c) == reps.end()) reps.push_back(std::move(c));
    }
    int factorial = 1;
    for (int i = 2; i <= n; ++i) factorial *= i;
    std::vector<IsoClass> classes;
    for (auto& rep : reps) {
        IsoClass c;
        c.class_size = factorial / automorphism_count(rep);
        c.associated = associated_quandle(rep);
        c.representative = std::move(rep);
        classes.push_back(std::move(c));
    }
    std::sort(classes.begin(), classes.end(), [](const IsoClass& a, const IsoClass& b) {
        BinaryTable ca = canonical_form(a.associated), cb = canonical_form(b.associated);
        if (!(ca == cb)) return ca < cb;
        return a.representative < b.representative;
    });
    return classes;
}

// Every labeled table of the given order (no isomorphism quotient), sorted.
inline std::vector<TernaryTable> enumerate_labeled_ternary_quandles(int n,
                                                                    const EnumerateOptions& opts = {}) {
    if (n < 1) throw std::invalid_argument("enumeration order must be positive");
    if (n > opts.max_order)
        throw std::invalid_argument("enumeration order exceeds the configured ceiling");
    detail::ColumnSearch search(n, opts.require_idempotence);
    std::vector<TernaryTable> labeled = search.run();
    std::sort(labeled.begin(), labeled.end());
    return labeled;
}

// Census of all labeled tables of order n grouped by the isomorphism class of
// their associated quandle. Two counting conventions are reported side by
// side:
//   class_count          - full-S_n isomorphism classes in the group;
//   pinned_labeled_count - labeled tables whose associated quandle EQUALS the
//                          group's canonical labeling (this count does not
//                          depend on which labeling of the class is pinned,
//                          since conjugation bijects the fibers).
struct AssociatedCensusGroup {
    BinaryTable associated_class;  // canonical form of the associated quandle
    int labeled_count = 0;         // labeled tables whose assoc lies in this class
    int pinned_labeled_count = 0;  // labeled tables with assoc == associated_class exactly
    int class_count = 0;           // isomorphism classes of tables in this group
};

inline std::vector<AssociatedCensusGroup> associated_census(int n,
                                                            const EnumerateOptions& opts = {}) {
    std::vector<TernaryTable> labeled = enumerate_labeled_ternary_quandles(n, opts);
    std::vector<AssociatedCensusGroup> groups;
    std::vector<std::vector<TernaryTable>> seen; // canonical forms per group
    for (const auto& t : labeled) {
        BinaryTable assoc = associated_quandle(t);
        BinaryTable canon = canonical_form(assoc);
        size_t gi = 0;
        for (; gi < groups.size(); ++gi)
            if (groups[gi].associated_class == canon) break;
        if (gi == groups.size()) {
            groups.push_back({canon, 0, 0, 0});
            seen.emplace_back();
        }
        ++groups[gi].labeled_count;
        if (assoc == groups[gi].associated_class) ++groups[gi].pinned_labeled_count;
        TernaryTable tc = canonical_form(t);
        if (std::find(seen[gi].begin(), seen[gi].end(), tc) == seen[gi].end()) {
            seen[gi].push_back(std::move(tc));
            ++groups[gi].class_count;
        }
    }
    std::vector<size_t> idx(groups.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return groups[a].associated_class < groups[b].associated_class;
    });
    std::vector<AssociatedCensusGroup> sorted;
    for (size_t i : idx) sorted.push_back(std::move(groups[i]));
    return sorted;
}

// Column-permutation notation: entries[z][y] is the disjoint-cycle form
// (1-indexed) of x -> T(x, y, z). Text form joins the per-y entries of a
// z-block with "," and the z-blocks with ";".
struct CycleNotation {
    int order = 0;
    std::vector<std::vector<std::string>> entries; // [z][y]
};

inline CycleNotation to_cycle_notation(const TernaryTable& t) {
    int n = t.order();
    CycleNotation p;
    p.order = n;
    p.entries.assign(n, std::vector<std::string>(n));
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y) {
            std::vector<int> im(n);
            for (int x = 0; x < n; ++x) im[x] = t.at(x, y, z);
            p.entries[z][y] = Permutation(im).to_cycles();
        }
    return p;
}

inline TernaryTable from_cycle_notation(const CycleNotation& p) {
    int n = p.order;
    if (static_cast<int>(p.entries.size()) != n) throw std::invalid_argument("bad notation shape");
    TernaryTable t = TernaryTable::filled(n);
    for (int z = 0; z < n; ++z) {
        if (static_cast<int>(p.entries[z].size()) != n)
            throw std::invalid_argument("bad notation shape");
        for (int y = 0; y < n; ++y) {
            Permutation perm = Permutation::from_cycles(p.entries[z][y], n);
            for (int x = 0; x < n; ++x) t.set(x, y, z, perm(x));
        }
    }
    return t;
}

inline std::string cycle_notation_to_string(const CycleNotation& p) {
    std::string out;
    for (int z = 0; z < p.order; ++z) {
        if (z) out += "; ";
        for (int y = 0; y < p.order; ++y) {
            if (y) out += ",";
            out += p.entries[z][y];
        }
    }
    return out;
}

inline CycleNotation parse_cycle_notation(const std::string& text) {
    CycleNotation p;
    std::vector<std::vector<std::string>> blocks;
    std::stringstream zs(text);
    std::string zblock;
    while (std::getline(zs, zblock, ';')) {
        std::vector<std::string> row;
        std::stringstream ys(zblock);
        std::string cell;
        while (std::getline(ys, cell, ',')) {
            size_t a = cell.find_first_not_of(" \t");
            size_t b = cell.find_last_not_of(" \t");
            if (a == std::string::npos) throw std::invalid_argument("empty notation cell");
            row.push_back(cell.substr(a, b - a + 1));
        }
        blocks.push_back(std::move(row));
    }
    p.order = static_cast<int>(blocks.size());
    for (const auto& row : blocks)
        if (static_cast<int>(row.size()) != p.order)
            throw std::invalid_argument("notation is not square");
    p.entries = std::move(blocks);
    return p;
}

inline std::string table_to_notation_string(const TernaryTable& t) {
    return cycle_notation_to_string(to_cycle_notation(t));
}

inline TernaryTable table_from_notation_string(const std::string& s) {
    return from_cycle_notation(parse_cycle_notation(s));
}

} // namespace tdq
