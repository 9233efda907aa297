#pragma once

// Skew diagrams, shifted skew diagrams, strip classification and the
// combinatorial weights entering the specialized expansion rules.

#include "mnqt/partition.hpp"
#include "mnqt/ratfunc.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mnqt {

struct Cell {
    int row, col;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

class SkewShape {
  public:
    SkewShape(Partition outer, Partition inner) : outer_(std::move(outer)), inner_(std::move(inner)) {
        if (!outer_.contains(inner_)) throw std::invalid_argument("inner not contained in outer");
    }

    const Partition& outer() const { return outer_; }
    const Partition& inner() const { return inner_; }
    int size() const { return outer_.weight() - inner_.weight(); }

    bool has_cell(int i, int j) const { return j > inner_.part(i) && j <= outer_.part(i) && i >= 1; }

    std::vector<Cell> cells() const {
        std::vector<Cell> cs;
        for (int i = 1; i <= outer_.length(); ++i)
            for (int j = inner_.part(i) + 1; j <= outer_.part(i); ++j) cs.push_back({i, j});
        return cs;
    }

    int column_count(int j) const { return outer_.conj_part(j) - inner_.conj_part(j); }
    int row_count(int i) const { return outer_.part(i) - inner_.part(i); }

    bool is_horizontal_strip() const {
        for (int j = 1; j <= outer_.width(); ++j)
            if (column_count(j) > 1) return false;
        return true;
    }
    bool is_vertical_strip() const {
        for (int i = 1; i <= outer_.length(); ++i)
            if (row_count(i) > 1) return false;
        return true;
    }
    bool has_2x2_block() const {
        for (int i = 1; i < outer_.length(); ++i)
            for (int j = inner_.part(i) + 1; j < outer_.part(i); ++j)
                if (has_cell(i, j) && has_cell(i, j + 1) && has_cell(i + 1, j) && has_cell(i + 1, j + 1)) return true;
        return false;
    }

    /// Connected components under edge adjacency, each listed as its cells.
    std::vector<std::vector<Cell>> components() const {
        std::vector<Cell> cs = cells();
        std::set<Cell> todo(cs.begin(), cs.end());
        std::vector<std::vector<Cell>> comps;
        while (!todo.empty()) {
            std::vector<Cell> comp, stack{*todo.begin()};
            todo.erase(todo.begin());
            while (!stack.empty()) {
                Cell c = stack.back();
                stack.pop_back();
                comp.push_back(c);
                for (Cell nb : {Cell{c.row - 1, c.col}, Cell{c.row + 1, c.col}, Cell{c.row, c.col - 1},
                                Cell{c.row, c.col + 1}}) {
                    auto it = todo.find(nb);
                    if (it != todo.end()) {
                        todo.erase(it);
                        stack.push_back(nb);
                    }
                }
            }
            comps.push_back(std::move(comp));
        }
        return comps;
    }

    long n_stat() const {
        long s = 0;
        for (int j = 1; j <= outer_.width(); ++j) {
            long d = column_count(j);
            s += d * (d - 1) / 2;
        }
        return s;
    }

    std::string to_string() const { return outer_.to_string() + "/" + inner_.to_string(); }

    static SkewShape parse(const std::string& s) {
        size_t slash = s.find('/');
        if (slash == std::string::npos) return SkewShape(Partition::parse(s), Partition());
        return SkewShape(Partition::parse(s.substr(0, slash)), Partition::parse(s.substr(slash + 1)));
    }

  private:
    Partition outer_, inner_;
};

struct StripClass {
    bool horizontal = false;
    bool vertical = false;
    bool border = false;
    bool generalized_border = false;
    int component_count = 0;

    bool none() const { return !horizontal && !vertical && !border && !generalized_border; }
};

inline StripClass strip_classify(const SkewShape& s) {
    StripClass c;
    c.horizontal = s.is_horizontal_strip();
    c.vertical = s.is_vertical_strip();
    auto comps = s.components();
    c.component_count = static_cast<int>(comps.size());
    c.generalized_border = !s.has_2x2_block();
    c.border = c.generalized_border && comps.size() == 1;
    return c;
}

/// Weight of a generalized border strip with components xi_i:
/// (t-1)^{m-1} prod (-1)^{rows(xi_i)-1} t^{cols(xi_i)-1}.
inline RatFunc gbs_weight(const SkewShape& s, const RatFunc& t) {
    if (s.has_2x2_block()) throw std::invalid_argument("not a generalized border strip");
    auto comps = s.components();
    if (comps.empty()) return RatFunc(1);
    RatFunc w = (t - RatFunc(1)).pow(static_cast<int>(comps.size()) - 1);
    for (const auto& comp : comps) {
        std::set<int> rows, cols;
        for (const Cell& c : comp) {
            rows.insert(c.row);
            cols.insert(c.col);
        }
        RatFunc piece = t.pow(static_cast<int>(cols.size()) - 1);
        if ((rows.size() - 1) % 2 == 1) piece = -piece;
        w *= piece;
    }
    return w;
}

/// a_j = lambda'_j - max(mu'_j, lambda'_{j+1}), clipped at 0; the number of
/// freely removable bottom cells in column j. Only columns with a_j > 0 are listed.
inline std::vector<std::pair<int, int>> column_removal_bounds(const SkewShape& s) {
    std::vector<std::pair<int, int>> out;
    for (int j = 1; j <= s.outer().width(); ++j) {
        int a = s.outer().conj_part(j) - std::max(s.inner().conj_part(j), s.outer().conj_part(j + 1));
        if (a > 0) out.emplace_back(j, a);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Shifted shapes

class ShiftedSkewShape {
  public:
    ShiftedSkewShape(Partition outer, Partition inner) : outer_(std::move(outer)), inner_(std::move(inner)) {
        if (!outer_.is_strict() || !inner_.is_strict()) throw std::invalid_argument("shifted shapes need strict partitions");
        if (!outer_.contains(inner_)) throw std::invalid_argument("inner not contained in outer");
    }

    const Partition& outer() const { return outer_; }
    const Partition& inner() const { return inner_; }
    int size() const { return outer_.weight() - inner_.weight(); }

    /// Row i occupies shifted columns i .. i + part(i) - 1.
    bool has_cell(int i, int j) const {
        return i >= 1 && i <= outer_.length() && j >= i + inner_.part(i) && j <= i + outer_.part(i) - 1;
    }

    std::vector<Cell> cells() const {
        std::vector<Cell> cs;
        for (int i = 1; i <= outer_.length(); ++i)
            for (int j = i + inner_.part(i); j <= i + outer_.part(i) - 1; ++j) cs.push_back({i, j});
        return cs;
    }

    bool has_2x2_block() const {
        for (const Cell& c : cells())
            if (has_cell(c.row, c.col + 1) && has_cell(c.row + 1, c.col) && has_cell(c.row + 1, c.col + 1)) return true;
        return false;
    }

  private:
    Partition outer_, inner_;
};

struct DoubleStripDecomposition {
    bool is_gds = false;
    int c = 0;                                    // number of length-2 diagonals
    std::vector<std::vector<Cell>> components;    // components of the length-1 diagonal part
    std::vector<Composition> row_compositions;    // per component, cells per row (top to bottom)
    std::vector<Cell> t_boxes;                    // top-left boxes of length-2 diagonals
    std::vector<Cell> minus1_boxes;               // bottom-right boxes of length-2 diagonals
};

/// Decides the generalized-double-strip property by brute force over the
/// intermediate strict partition, and computes the diagonal decomposition.
inline DoubleStripDecomposition double_strip_decompose(const ShiftedSkewShape& s) {
    DoubleStripDecomposition out;
    const Partition& lambda = s.outer();
    const Partition& mu = s.inner();

    // Search nu strict with mu subset nu subset lambda splitting the skew
    // into two 2x2-free shifted layers.
    std::vector<int> cur;
    std::function<bool(int)> search = [&](int row) -> bool {
        if (row > lambda.length()) {
            Partition nu(cur);
            return !ShiftedSkewShape(lambda, nu).has_2x2_block() && !ShiftedSkewShape(nu, mu).has_2x2_block();
        }
        for (int v = lambda.part(row); v >= mu.part(row); --v) {
            bool ok = cur.empty() || (cur.back() == 0 ? v == 0 : v < cur.back());  // strict, zeros only at the tail
            if (!ok) continue;
            cur.push_back(v);
            if (search(row + 1)) {
                cur.pop_back();
                return true;
            }
            cur.pop_back();
        }
        return false;
    };
    out.is_gds = search(1);
    if (!out.is_gds) return out;

    std::map<int, std::vector<Cell>> diagonals;  // keyed by col - row
    for (const Cell& c : s.cells()) diagonals[c.col - c.row].push_back(c);

    std::set<Cell> beta;
    for (auto& [d, cs] : diagonals) {
        if (cs.size() == 1) {
            beta.insert(cs[0]);
        } else if (cs.size() == 2) {
            ++out.c;
            Cell top = cs[0].row < cs[1].row ? cs[0] : cs[1];
            Cell bot = cs[0].row < cs[1].row ? cs[1] : cs[0];
            out.t_boxes.push_back(top);
            out.minus1_boxes.push_back(bot);
        } else {
            throw std::logic_error("generalized double strip with diagonal longer than 2");
        }
    }

    std::set<Cell> todo = beta;
    while (!todo.empty()) {
        std::vector<Cell> comp, stack{*todo.begin()};
        todo.erase(todo.begin());
        while (!stack.empty()) {
            Cell c = stack.back();
            stack.pop_back();
            comp.push_back(c);
            for (Cell nb :
                 {Cell{c.row - 1, c.col}, Cell{c.row + 1, c.col}, Cell{c.row, c.col - 1}, Cell{c.row, c.col + 1}}) {
                auto it = todo.find(nb);
                if (it != todo.end()) {
                    todo.erase(it);
                    stack.push_back(nb);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        Composition rows;
        for (size_t i = 0; i < comp.size();) {
            size_t j = i;
            while (j < comp.size() && comp[j].row == comp[i].row) ++j;
            rows.push_back(static_cast<int>(j - i));
            i = j;
        }
        out.components.push_back(std::move(comp));
        out.row_compositions.push_back(std::move(rows));
    }
    return out;
}

/// d_r = 2(t-1)(-1)^{r-1}[r]_{-t}.
inline RatFunc gds_d(int r, const RatFunc& t) {
    RatFunc v = RatFunc(2) * (t - RatFunc(1)) * base_integer(r, -t);
    return (r - 1) % 2 == 1 ? -v : v;
}

/// Weight of a generalized double strip:
/// (-t)^c 2^{[l(lambda)=l(mu)+2]} prod_i sum over coarsenings tau of the
/// component's row composition of (-1)^{l(xi)-l(tau)} d_tau.
inline RatFunc gds_weight(const ShiftedSkewShape& s, const RatFunc& t) {
    DoubleStripDecomposition d = double_strip_decompose(s);
    if (!d.is_gds) throw std::invalid_argument("not a generalized double strip");
    RatFunc w = (-t).pow(d.c);
    if (s.outer().length() == s.inner().length() + 2) w *= RatFunc(2);
    for (const Composition& xi : d.row_compositions) {
        RatFunc piece;
        for (const Composition& tau : coarsenings(xi)) {
            RatFunc dt(1);
            for (int r : tau) dt *= gds_d(r, t);
            if ((xi.size() - tau.size()) % 2 == 1) dt = -dt;
            piece += dt;
        }
        w *= piece;
    }
    return w;
}

}  // namespace mnqt
