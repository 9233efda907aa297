#pragma once

// Sparse symmetric functions over Q(q,t,a) with power-sum, monomial and
// Schur bases. Power sums are the internal hub: both inner products are
// diagonal there and alphabet evaluation is a substitution.

#include "mnqt/cache.hpp"
#include "mnqt/partition.hpp"
#include "mnqt/ratfunc.hpp"

#include <atomic>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mnqt {

enum class Basis { power, monomial, schur };

inline const char* basis_name(Basis b) {
    switch (b) {
        case Basis::power: return "power";
        case Basis::monomial: return "monomial";
        default: return "schur";
    }
}

// ---------------------------------------------------------------------------
// Global truncation degree. Every graded computation refuses to go past it.

namespace detail {
inline int initial_truncation() {
    if (const char* env = std::getenv("MNQT_DEGREE")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 8;
}
inline std::atomic<int>& truncation_slot() {
    static std::atomic<int> N{initial_truncation()};
    return N;
}
}  // namespace detail

inline int truncation_degree() { return detail::truncation_slot().load(); }
inline void set_truncation_degree(int n) {
    if (n < 1) throw std::invalid_argument("truncation degree must be >= 1");
    detail::truncation_slot().store(n);
}
inline void ensure_degree(int d) {
    if (d > truncation_degree()) throw std::domain_error("degree overflow");
}

// ---------------------------------------------------------------------------

class SymFunc {
  public:
    SymFunc() = default;
    explicit SymFunc(Basis b) : basis_(b) {}

    static SymFunc basis_element(Basis b, Partition lambda) {
        SymFunc f(b);
        f.terms_.emplace(std::move(lambda), RatFunc(1));
        return f;
    }
    static SymFunc one(Basis b = Basis::power) { return basis_element(b, Partition()); }

    Basis basis() const { return basis_; }
    const std::map<Partition, RatFunc>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int max_degree() const {
        int d = 0;
        for (const auto& [p, c] : terms_) d = std::max(d, p.weight());
        return d;
    }
    bool is_homogeneous(int d) const {
        for (const auto& [p, c] : terms_)
            if (p.weight() != d) return false;
        return true;
    }

    RatFunc coeff(const Partition& p) const {
        auto it = terms_.find(p);
        return it == terms_.end() ? RatFunc() : it->second;
    }

    void add_term(const Partition& p, const RatFunc& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(p, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    SymFunc operator+(const SymFunc& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        if (basis_ != o.basis_) throw std::logic_error("basis mismatch in addition");
        SymFunc r = *this;
        for (const auto& [p, c] : o.terms_) r.add_term(p, c);
        return r;
    }
    SymFunc operator-(const SymFunc& o) const { return *this + (-o); }
    SymFunc operator-() const {
        SymFunc r(basis_);
        for (const auto& [p, c] : terms_) r.terms_.emplace(p, -c);
        return r;
    }
    SymFunc& operator+=(const SymFunc& o) { return *this = *this + o; }
    SymFunc& operator-=(const SymFunc& o) { return *this = *this - o; }

    SymFunc operator*(const RatFunc& c) const {
        SymFunc r(basis_);
        if (c.is_zero()) return r;
        for (const auto& [p, x] : terms_) r.terms_.emplace(p, x * c);
        return r;
    }

    SymFunc degree_component(int d) const {
        SymFunc r(basis_);
        for (const auto& [p, c] : terms_)
            if (p.weight() == d) r.terms_.emplace(p, c);
        return r;
    }

    friend bool operator==(const SymFunc& x, const SymFunc& y) {
        return x.basis_ == y.basis_ && x.terms_ == y.terms_;
    }

  private:
    Basis basis_ = Basis::power;
    std::map<Partition, RatFunc> terms_;
};

inline SymFunc operator*(const RatFunc& c, const SymFunc& f) { return f * c; }

// ---------------------------------------------------------------------------
// Per-degree rational transition matrices between p, m and s.

namespace detail {

using QMatrix = std::vector<std::vector<Rat>>;

inline QMatrix q_inverse(const QMatrix& m) {
    size_t n = m.size();
    QMatrix a = m, inv(n, std::vector<Rat>(n, 0));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw std::logic_error("singular transition matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rat d = a[col][col];
        for (size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            Rat f = a[row][col];
            for (size_t j = 0; j < n; ++j) {
                a[row][j] -= f * a[col][j];
                inv[row][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

struct DegreeTables {
    std::vector<Partition> partitions;        // canonical order, (n) first
    std::map<Partition, int> index;
    QMatrix p2m, m2p;                          // rows indexed by source partition
    QMatrix s2m, m2s;
};

// p_lambda expanded in monomials by iterated multiplication m_mu * p_r.
inline std::map<Partition, Rat> multiply_monomial_by_power(const std::map<Partition, Rat>& f, int r) {
    std::map<Partition, Rat> out;
    for (const auto& [mu, c] : f) {
        {
            Partition nu = mu.append_sorted(r);
            out[nu] += c * nu.multiplicity(r);
        }
        std::vector<int> seen;
        for (int p : mu.parts()) {
            bool dup = false;
            for (int s : seen) dup |= (s == p);
            if (dup) continue;
            seen.push_back(p);
            std::vector<int> parts = mu.parts();
            parts.erase(std::find(parts.begin(), parts.end(), p));
            std::sort(parts.begin(), parts.end(), std::greater<int>());
            Partition nu = Partition(parts).append_sorted(p + r);
            out[nu] += c * nu.multiplicity(p + r);
        }
    }
    return out;
}

inline const DegreeTables& degree_tables(int n) {
    static Cache<int, std::shared_ptr<DegreeTables>> cache;
    auto ptr = cache.get_or_compute(n, [n]() {
        auto tb = std::make_shared<DegreeTables>();
        tb->partitions = partitions_of(n);
        size_t m = tb->partitions.size();
        for (size_t i = 0; i < m; ++i) tb->index[tb->partitions[i]] = static_cast<int>(i);
        tb->p2m.assign(m, std::vector<Rat>(m, 0));
        for (size_t i = 0; i < m; ++i) {
            std::map<Partition, Rat> expansion{{Partition(), Rat(1)}};
            for (int r : tb->partitions[i].parts()) expansion = multiply_monomial_by_power(expansion, r);
            for (const auto& [mu, c] : expansion) tb->p2m[i][tb->index.at(mu)] = c;
        }
        tb->m2p = q_inverse(tb->p2m);
        return tb;
    });
    return *ptr;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Power-basis building blocks

/// z_lambda(q,t) = z_lambda prod (1-q^{lambda_i})/(1-t^{lambda_i}).
inline RatFunc z_qt(const Partition& lambda) {
    RatFunc r{Rat(lambda.z_factor())};
    for (int p : lambda.parts())
        r *= (RatFunc(1) - RatFunc::variable(Var::q, p)) / (RatFunc(1) - RatFunc::variable(Var::t, p));
    return r;
}

/// z_lambda(0,t) = z_lambda prod 1/(1-t^{lambda_i}).
inline RatFunc z_t(const Partition& lambda) {
    RatFunc r{Rat(lambda.z_factor())};
    for (int p : lambda.parts()) r /= RatFunc(1) - RatFunc::variable(Var::t, p);
    return r;
}

/// Complete homogeneous h_k in the power basis.
inline SymFunc h_power(int k) {
    SymFunc f(Basis::power);
    for (const Partition& lam : partitions_of(k)) f.add_term(lam, RatFunc(Rat(1, lam.z_factor())));
    return f;
}

/// Product of symmetric functions; computed in the power basis where it is
/// index concatenation.
SymFunc convert(const SymFunc& f, Basis target);

inline SymFunc multiply(const SymFunc& f, const SymFunc& g) {
    SymFunc a = convert(f, Basis::power), b = convert(g, Basis::power);
    ensure_degree(a.max_degree() + b.max_degree());
    SymFunc r(Basis::power);
    for (const auto& [lam, c] : a.terms())
        for (const auto& [mu, d] : b.terms()) r.add_term(lam.merged(mu), c * d);
    return r;
}

// ---------------------------------------------------------------------------
// Basis conversion through the power hub

namespace detail {

SymFunc schur_to_power(const Partition& lambda);

inline SymFunc to_power(const SymFunc& f) {
    if (f.basis() == Basis::power) return f;
    SymFunc r(Basis::power);
    for (const auto& [lam, c] : f.terms()) {
        if (lam.empty()) {
            r.add_term(lam, c);
            continue;
        }
        if (f.basis() == Basis::monomial) {
            const DegreeTables& tb = degree_tables(lam.weight());
            const auto& row = tb.m2p[tb.index.at(lam)];
            for (size_t j = 0; j < row.size(); ++j)
                if (row[j] != 0) r.add_term(tb.partitions[j], c * RatFunc(row[j]));
        } else {
            SymFunc s = schur_to_power(lam);
            for (const auto& [mu, d] : s.terms()) r.add_term(mu, c * d);
        }
    }
    return r;
}

inline SymFunc power_to_monomial(const SymFunc& f) {
    SymFunc r(Basis::monomial);
    for (const auto& [lam, c] : f.terms()) {
        if (lam.empty()) {
            r.add_term(lam, c);
            continue;
        }
        const DegreeTables& tb = degree_tables(lam.weight());
        const auto& row = tb.p2m[tb.index.at(lam)];
        for (size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) r.add_term(tb.partitions[j], c * RatFunc(row[j]));
    }
    return r;
}

// Schur functions via the h-determinant; the per-degree Kostka-style
// matrices for the reverse direction are solved on demand.

inline SymFunc schur_skew_power_impl(const Partition& lambda, const Partition& rho) {
    int l = lambda.length();
    SymFunc total(Basis::power);
    if (!lambda.contains(rho)) return total;
    if (l == 0) return SymFunc::one(Basis::power);

    static Cache<Partition, std::shared_ptr<SymFunc>> hprod;
    std::vector<bool> used(l, false);
    std::vector<int> hs;
    std::function<void(int, int)> rec = [&](int row, int sign) {
        if (row == l) {
            Partition key = Partition::sorted(hs);
            auto prod = hprod.get_or_compute(key, [&key]() {
                SymFunc p = SymFunc::one(Basis::power);
                for (int k : key.parts()) p = multiply(p, h_power(k));
                return std::make_shared<SymFunc>(std::move(p));
            });
            total += *prod * RatFunc(sign);
            return;
        }
        for (int col = 0; col < l; ++col) {
            if (used[col]) continue;
            int k = lambda.part(row + 1) - rho.part(col + 1) - row + col;
            if (k < 0) continue;  // h of negative degree vanishes
            int inversions = 0;
            for (int c2 = col + 1; c2 < l; ++c2) inversions += used[c2] ? 1 : 0;
            used[col] = true;
            if (k > 0) hs.push_back(k);
            rec(row + 1, inversions % 2 == 0 ? sign : -sign);
            if (k > 0) hs.pop_back();
            used[col] = false;
        }
    };
    rec(0, 1);
    return total;
}

inline SymFunc schur_to_power(const Partition& lambda) {
    static Cache<Partition, std::shared_ptr<SymFunc>> cache;
    auto ptr = cache.get_or_compute(lambda, [&lambda]() {
        return std::make_shared<SymFunc>(schur_skew_power_impl(lambda, Partition()));
    });
    return *ptr;
}

inline const QMatrix& p2s_matrix(int d) {
    static Cache<int, std::shared_ptr<QMatrix>> cache;
    auto ptr = cache.get_or_compute(d, [d]() {
        const DegreeTables& tb = degree_tables(d);
        size_t n = tb.partitions.size();
        QMatrix s2p(n, std::vector<Rat>(n, 0));
        for (size_t i = 0; i < n; ++i) {
            SymFunc s = schur_to_power(tb.partitions[i]);
            for (const auto& [mu, c] : s.terms()) s2p[i][tb.index.at(mu)] = c.constant_value();
        }
        return std::make_shared<QMatrix>(q_inverse(s2p));
    });
    return *ptr;
}

inline SymFunc power_to_schur(const SymFunc& f) {
    SymFunc r(Basis::schur);
    for (const auto& [lam, c] : f.terms()) {
        if (lam.empty()) {
            r.add_term(lam, c);
            continue;
        }
        const DegreeTables& tb = degree_tables(lam.weight());
        const auto& row = p2s_matrix(lam.weight())[tb.index.at(lam)];
        for (size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) r.add_term(tb.partitions[j], c * RatFunc(row[j]));
    }
    return r;
}

}  // namespace detail

inline SymFunc convert(const SymFunc& f, Basis target) {
    ensure_degree(f.max_degree());
    if (f.basis() == target) return f;
    SymFunc p = detail::to_power(f);
    switch (target) {
        case Basis::power: return p;
        case Basis::monomial: return detail::power_to_monomial(p);
        default: return detail::power_to_schur(p);
    }
}

/// Skew Schur function in the power basis (Jacobi-Trudi).
inline SymFunc schur_skew_power(const Partition& lambda, const Partition& rho) {
    static Cache<std::pair<Partition, Partition>, std::shared_ptr<SymFunc>> cache;
    auto ptr = cache.get_or_compute({lambda, rho}, [&]() {
        return std::make_shared<SymFunc>(detail::schur_skew_power_impl(lambda, rho));
    });
    return *ptr;
}

// ---------------------------------------------------------------------------
// Inner products (diagonal in the power basis)

inline RatFunc inner_qt(const SymFunc& f, const SymFunc& g) {
    SymFunc a = detail::to_power(f), b = detail::to_power(g);
    RatFunc r;
    for (const auto& [lam, c] : a.terms()) {
        RatFunc d = b.coeff(lam);
        if (!d.is_zero()) r += c * d * z_qt(lam);
    }
    return r;
}

inline RatFunc inner_t(const SymFunc& f, const SymFunc& g) {
    SymFunc a = detail::to_power(f), b = detail::to_power(g);
    RatFunc r;
    for (const auto& [lam, c] : a.terms()) {
        RatFunc d = b.coeff(lam);
        if (!d.is_zero()) r += c * d * z_t(lam);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Alphabets and lambda-ring evaluation

struct Alphabet {
    std::string name;
    std::function<RatFunc(int)> power_value;  // n >= 1

    RatFunc operator()(int n) const { return power_value(n); }

    static Alphabet unit() {
        return {"1", [](int) { return RatFunc(1); }};
    }
    static Alphabet zero() {
        return {"0", [](int) { return RatFunc(); }};
    }
    static Alphabet singleton(const RatFunc& x, std::string name = "x") {
        return {std::move(name), [x](int n) { return x.pow(n); }};
    }
    /// x - y as a difference of singleton alphabets: p_n = x^n - y^n.
    static Alphabet difference(const RatFunc& x, const RatFunc& y, std::string name = "x-y") {
        return {std::move(name), [x, y](int n) { return x.pow(n) - y.pow(n); }};
    }
    /// 1/(1-v): p_n = 1/(1-v^n).
    static Alphabet geometric(Var v) {
        return {std::string("1/(1-") + var_name(v) + ")",
                [v](int n) { return RatFunc(1) / (RatFunc(1) - RatFunc::variable(v, n)); }};
    }
    /// (1-q/t)/(1-t): p_n = (1-(q/t)^n)/(1-t^n).
    static Alphabet one_minus_q_over_t_over_one_minus_t() {
        return {"(1-q/t)/(1-t)", [](int n) {
                    RatFunc qt = RatFunc::variable(Var::q, n) / RatFunc::variable(Var::t, n);
                    return (RatFunc(1) - qt) / (RatFunc(1) - RatFunc::variable(Var::t, n));
                }};
    }
    /// Finite list of letters: p_n = sum x_i^n.
    static Alphabet letters(std::vector<RatFunc> xs, std::string name = "letters") {
        return {std::move(name), [xs = std::move(xs)](int n) {
                    RatFunc s;
                    for (const auto& x : xs) s += x.pow(n);
                    return s;
                }};
    }
};

inline RatFunc eval_alphabet(const SymFunc& f, const Alphabet& A) {
    SymFunc p = detail::to_power(f);
    std::map<int, RatFunc> memo;
    auto pv = [&](int n) -> const RatFunc& {
        auto it = memo.find(n);
        if (it == memo.end()) it = memo.emplace(n, A(n)).first;
        return it->second;
    };
    RatFunc total;
    for (const auto& [lam, c] : p.terms()) {
        RatFunc term = c;
        for (int part : lam.parts()) term *= pv(part);
        total += term;
    }
    return total;
}

// ---------------------------------------------------------------------------
// One-row kernels and adjoints

/// Degree-k component of exp(sum_n (1/n) (1-t^n)/(1-q^n) p_n A(n) z^n):
/// the one-row expansion kernel evaluated on the alphabet A.
inline SymFunc g_element(int k, const Alphabet& A) {
    if (k < 0) return SymFunc(Basis::power);
    ensure_degree(k);
    SymFunc f(Basis::power);
    for (const Partition& lam : partitions_of(k)) {
        RatFunc c{Rat(1, lam.z_factor())};
        for (int p : lam.parts()) {
            c *= (RatFunc(1) - RatFunc::variable(Var::t, p)) / (RatFunc(1) - RatFunc::variable(Var::q, p));
            c *= A(p);
            if (c.is_zero()) break;
        }
        f.add_term(lam, c);
    }
    return f;
}

enum class InnerKind { qt, t };

/// Adjoint of multiplication by f under the chosen inner product:
/// p_n^perp = n (1-q^n)/(1-t^n) d/dp_n  (qt)   or   n/(1-t^n) d/dp_n  (t).
inline SymFunc perp(const SymFunc& f, const SymFunc& target, InnerKind kind = InnerKind::qt) {
    SymFunc a = detail::to_power(f), g = detail::to_power(target);
    auto factor = [kind](int n) {
        RatFunc r{Rat(n)};
        if (kind == InnerKind::qt) r *= RatFunc(1) - RatFunc::variable(Var::q, n);
        return r / (RatFunc(1) - RatFunc::variable(Var::t, n));
    };
    SymFunc result(Basis::power);
    for (const auto& [lam, c] : a.terms()) {
        SymFunc cur = g;
        RatFunc scale = c;
        for (int n : lam.parts()) {
            SymFunc next(Basis::power);
            for (const auto& [mu, d] : cur.terms()) {
                int m = mu.multiplicity(n);
                if (m == 0) continue;
                std::vector<int> parts = mu.parts();
                parts.erase(std::find(parts.begin(), parts.end(), n));
                next.add_term(Partition(std::move(parts)), d * RatFunc(Rat(m)));
            }
            cur = std::move(next);
            if (cur.is_zero()) break;
            scale = scale * factor(n);
        }
        if (!cur.is_zero()) result += cur * scale;
    }
    return result;
}

/// p_n -> p_n/(1 - v^n), the geometric plethysm X -> X/(1-v).
inline SymFunc plethysm_geometric(const SymFunc& f, Var v) {
    SymFunc p = detail::to_power(f);
    SymFunc r(Basis::power);
    for (const auto& [lam, c] : p.terms()) {
        RatFunc scaled = c;
        for (int part : lam.parts()) scaled /= RatFunc(1) - RatFunc::variable(v, part);
        r.add_term(lam, scaled);
    }
    return r;
}

}  // namespace mnqt
