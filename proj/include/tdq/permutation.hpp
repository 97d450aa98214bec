#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace tdq {

// Permutation of {0, ..., n-1}, stored as the image vector.
// Cycle notation is 1-indexed on input/output: "(12)", "(123)(45)", "(1)" for the identity.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
        std::vector<bool> seen(img_.size(), false);
        for (int v : img_) {
            if (v < 0 || v >= static_cast<int>(img_.size()) || seen[v])
                throw std::invalid_argument("not a permutation");
            seen[v] = true;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> im(n);
        std::iota(im.begin(), im.end(), 0);
        return Permutation(std::move(im));
    }

    int size() const { return static_cast<int>(img_.size()); }
    int operator()(int x) const { return img_[x]; }
    const std::vector<int>& images() const { return img_; }

    bool is_identity() const {
        for (int i = 0; i < size(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    Permutation inverse() const {
        std::vector<int> im(img_.size());
        for (int i = 0; i < size(); ++i) im[img_[i]] = i;
        return Permutation(std::move(im));
    }

    // (a * b)(x) = a(b(x))
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
        std::vector<int> im(a.size());
        for (int i = 0; i < a.size(); ++i) im[i] = a(b(i));
        return Permutation(std::move(im));
    }

    friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }
    friend bool operator<(const Permutation& a, const Permutation& b) { return a.img_ < b.img_; }

    // Disjoint cycles, each starting at its least element, ordered by least element;
    // fixed points suppressed; identity printed as "(1)".
    std::string to_cycles() const {
        std::string out;
        std::vector<bool> seen(img_.size(), false);
        for (int i = 0; i < size(); ++i) {
            if (seen[i] || img_[i] == i) continue;
            out += '(';
            int j = i;
            while (!seen[j]) {
                seen[j] = true;
                out += std::to_string(j + 1);
                j = img_[j];
            }
            out += ')';
        }
        return out.empty() ? "(1)" : out;
    }

    static Permutation from_cycles(const std::string& text, int n) {
        std::vector<int> im(n);
        std::iota(im.begin(), im.end(), 0);
        size_t pos = 0;
        auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
        skip_ws();
        while (pos < text.size()) {
            if (text[pos] != '(') throw std::invalid_argument("expected '(' in cycle notation: " + text);
            ++pos;
            std::vector<int> cycle;
            while (pos < text.size() && text[pos] != ')') {
                if (!std::isdigit(static_cast<unsigned char>(text[pos])))
                    throw std::invalid_argument("expected digit in cycle notation: " + text);
                int v = text[pos] - '1';
                if (v < 0 || v >= n) throw std::invalid_argument("cycle element out of range: " + text);
                cycle.push_back(v);
                ++pos;
            }
            if (pos == text.size()) throw std::invalid_argument("unterminated cycle: " + text);
            ++pos;
            for (size_t i = 0; i + 1 < cycle.size(); ++i) im[cycle[i]] = cycle[i + 1];
            if (cycle.size() > 1) im[cycle.back()] = cycle.front();
            skip_ws();
        }
        return Permutation(std::move(im));
    }

private:
    std::vector<int> img_;
};

// All n! permutations in lexicographic order of image vectors.
inline std::vector<Permutation> all_permutations(int n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 0);
    std::vector<Permutation> out;
    do { out.emplace_back(im); } while (std::next_permutation(im.begin(), im.end()));
    return out;
}

} // namespace tdq
