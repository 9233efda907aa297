#pragma once

// Integer partitions with cached conjugates, compositions, dominance
// order, and the generators (subpartitions, strips, partition lists)
// used throughout.

#include <algorithm>
#include <compare>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace mnqt {

using Composition = std::vector<int>;

class Partition {
  public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
        }
        weight_ = std::accumulate(parts_.begin(), parts_.end(), 0);
        if (!parts_.empty()) {
            conj_.assign(parts_[0], 0);
            for (int p : parts_)
                for (int j = 0; j < p; ++j) ++conj_[j];
        }
    }

    /// Sorts a non-negative composition into a partition.
    static Partition sorted(Composition c) {
        std::sort(c.begin(), c.end(), std::greater<int>());
        while (!c.empty() && c.back() == 0) c.pop_back();
        return Partition(std::move(c));
    }

    /// True iff the composition is already weakly decreasing (zeros allowed at the tail).
    static bool is_partition(const Composition& c) {
        for (size_t i = 1; i < c.size(); ++i)
            if (c[i] > c[i - 1]) return false;
        return c.empty() || c.back() >= 0;
    }

    const std::vector<int>& parts() const { return parts_; }
    const std::vector<int>& conjugate_parts() const { return conj_; }
    Partition conjugate() const { return Partition(conj_); }

    int weight() const { return weight_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int width() const { return parts_.empty() ? 0 : parts_[0]; }
    bool empty() const { return parts_.empty(); }

    /// 1-indexed part, 0 beyond the length.
    int part(int i) const { return (i >= 1 && i <= length()) ? parts_[i - 1] : 0; }
    /// 1-indexed conjugate part (column height), 0 beyond the width.
    int conj_part(int j) const { return (j >= 1 && j <= width()) ? conj_[j - 1] : 0; }

    int multiplicity(int i) const {
        int m = 0;
        for (int p : parts_) m += (p == i);
        return m;
    }

    bool is_strict() const {
        for (size_t i = 1; i < parts_.size(); ++i)
            if (parts_[i] == parts_[i - 1]) return false;
        return true;
    }

    bool contains(const Partition& mu) const {
        if (mu.length() > length()) return false;
        for (int i = 1; i <= mu.length(); ++i)
            if (mu.part(i) > part(i)) return false;
        return true;
    }

    bool has_cell(int i, int j) const { return i >= 1 && j >= 1 && j <= part(i); }
    int arm(int i, int j) const { return part(i) - j; }
    int leg(int i, int j) const { return conj_part(j) - i; }

    /// n(lambda) = sum_i (i-1) lambda_i = sum_j C(lambda'_j, 2).
    long n_stat() const {
        long s = 0;
        for (int i = 1; i <= length(); ++i) s += static_cast<long>(i - 1) * part(i);
        return s;
    }

    /// z_lambda = prod_i i^{m_i} m_i!.
    long z_factor() const {
        long z = 1;
        int run = 1;
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (i > 0 && parts_[i] == parts_[i - 1])
                ++run;
            else
                run = 1;
            z *= parts_[i] * run;
        }
        return z;
    }

    /// Drops the first i parts.
    Partition tail(int i = 1) const {
        if (i >= length()) return Partition();
        return Partition(std::vector<int>(parts_.begin() + i, parts_.end()));
    }

    Partition append_sorted(int p) const {
        std::vector<int> v = parts_;
        v.push_back(p);
        std::sort(v.begin(), v.end(), std::greater<int>());
        return Partition(std::move(v));
    }

    /// Union of part multisets (power-sum product index).
    Partition merged(const Partition& o) const {
        std::vector<int> v;
        v.reserve(parts_.size() + o.parts_.size());
        std::merge(parts_.begin(), parts_.end(), o.parts_.begin(), o.parts_.end(), std::back_inserter(v),
                   std::greater<int>());
        return Partition(std::move(v));
    }

    /// lambda <= mu in dominance order (equal weights assumed).
    static bool dominated(const Partition& lambda, const Partition& mu) {
        long sl = 0, sm = 0;
        int len = std::max(lambda.length(), mu.length());
        for (int i = 1; i <= len; ++i) {
            sl += lambda.part(i);
            sm += mu.part(i);
            if (sl > sm) return false;
        }
        return true;
    }

    /// Fixed total order: weight, then lexicographically descending parts,
    /// which refines dominance within a degree.
    friend std::strong_ordering operator<=>(const Partition& x, const Partition& y) {
        if (x.weight_ != y.weight_) return x.weight_ <=> y.weight_;
        if (auto c = y.parts_ <=> x.parts_; c != 0) return c;
        return std::strong_ordering::equal;
    }
    friend bool operator==(const Partition& x, const Partition& y) { return x.parts_ == y.parts_; }

    std::string to_string() const {
        if (parts_.empty()) return "-";
        std::string s;
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts_[i]);
        }
        return s;
    }

    static Partition parse(const std::string& s) {
        std::string trimmed;
        for (char c : s)
            if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
        if (trimmed.empty() || trimmed == "-") return Partition();
        std::vector<int> v;
        size_t pos = 0;
        while (pos < trimmed.size()) {
            size_t next = trimmed.find(',', pos);
            std::string tok = trimmed.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            if (tok.empty()) throw std::invalid_argument("bad partition token in '" + s + "'");
            for (char c : tok)
                if (!std::isdigit(static_cast<unsigned char>(c)))
                    throw std::invalid_argument("bad partition token '" + tok + "'");
            v.push_back(std::stoi(tok));
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        return Partition(std::move(v));
    }

  private:
    std::vector<int> parts_;
    std::vector<int> conj_;
    int weight_ = 0;
};

// ---------------------------------------------------------------------------
// Generators

/// All partitions of n, in descending lex order ((n) first, (1^n) last).
inline std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int maxpart) {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    if (n < 0) return out;
    rec(n, n == 0 ? 1 : n);
    return out;
}

/// All mu contained in lambda with |mu| = w (w < 0 or w > |lambda| gives none).
inline std::vector<Partition> subpartitions_of_weight(const Partition& lambda, int w) {
    std::vector<Partition> out;
    if (w < 0 || w > lambda.weight()) return out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int row, int rest) {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        if (row > lambda.length()) return;
        int hi = std::min(lambda.part(row), cur.empty() ? rest : std::min(cur.back(), rest));
        for (int p = hi; p >= 1; --p) {
            cur.push_back(p);
            rec(row + 1, rest - p);
            cur.pop_back();
        }
    };
    rec(1, w);
    return out;
}

/// All mu contained in lambda (any weight).
inline std::vector<Partition> subpartitions(const Partition& lambda) {
    std::vector<Partition> out;
    for (int w = 0; w <= lambda.weight(); ++w) {
        auto part = subpartitions_of_weight(lambda, w);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

/// All lambda of weight |mu|+k containing mu.
inline std::vector<Partition> partitions_containing(const Partition& mu, int k) {
    std::vector<Partition> out;
    for (const Partition& lam : partitions_of(mu.weight() + k))
        if (lam.contains(mu)) out.push_back(lam);
    return out;
}

/// All nu with mu subset nu subset lambda... specifically nu such that
/// lambda/nu is a horizontal strip (interlacing condition), optionally
/// bounded below by containing `floor`.
inline std::vector<Partition> horizontal_strip_intermediates(const Partition& lambda, const Partition& floor) {
    std::vector<Partition> out;
    int l = lambda.length();
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int row) {
        if (row > l) {
            out.emplace_back(cur);
            return;
        }
        int lo = std::max(lambda.part(row + 1), floor.part(row));
        int hi = lambda.part(row);
        for (int v = hi; v >= lo; --v) {
            cur.push_back(v);
            rec(row + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

/// All nu with floor subset nu subset lambda and lambda/nu a vertical strip.
inline std::vector<Partition> vertical_strip_intermediates(const Partition& lambda, const Partition& floor) {
    std::vector<Partition> out;
    int l = lambda.length();
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int row) {
        if (row > l) {
            out.emplace_back(cur);
            return;
        }
        for (int drop = 0; drop <= 1; ++drop) {
            int v = lambda.part(row) - drop;
            if (v < floor.part(row)) continue;
            if (!cur.empty() && v > cur.back()) continue;
            cur.push_back(v);
            rec(row + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

/// All strict partitions of n.
inline std::vector<Partition> strict_partitions_of(int n) {
    std::vector<Partition> out;
    for (const Partition& p : partitions_of(n))
        if (p.is_strict()) out.push_back(p);
    return out;
}

/// All coarsenings of a composition (merging adjacent blocks), including
/// the composition itself; 2^{l-1} results.
inline std::vector<Composition> coarsenings(const Composition& c) {
    for (int p : c)
        if (p <= 0) throw std::invalid_argument("composition parts must be positive");
    std::vector<Composition> out;
    int l = static_cast<int>(c.size());
    if (l == 0) {
        out.push_back({});
        return out;
    }
    for (unsigned mask = 0; mask < (1u << (l - 1)); ++mask) {
        Composition merged;
        int acc = c[0];
        for (int i = 1; i < l; ++i) {
            if (mask & (1u << (i - 1))) {
                acc += c[i];  // merge with previous block
            } else {
                merged.push_back(acc);
                acc = c[i];
            }
        }
        merged.push_back(acc);
        out.push_back(std::move(merged));
    }
    return out;
}

}  // namespace mnqt
