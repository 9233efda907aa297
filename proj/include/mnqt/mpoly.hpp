#pragma once

// Sparse multivariate polynomials in (q, t, a) with exact rational
// coefficients. Terms are kept sorted in ascending lex order with
// q > t > a variable priority, so the lowest (q-series leading) term is
// front() and the lex-largest term is back().

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mnqt/cache.hpp"

namespace mnqt {

using Rat = mpq_class;
using Int = mpz_class;

enum class Var : int { q = 0, t = 1, a = 2 };

inline const char* var_name(Var v) {
    switch (v) {
        case Var::q: return "q";
        case Var::t: return "t";
        default: return "a";
    }
}

/// Exponent vector. Default <=> is lexicographic with q > t > a.
struct Exp {
    int32_t q = 0;
    int32_t t = 0;
    int32_t a = 0;

    friend auto operator<=>(const Exp&, const Exp&) = default;

    int32_t operator[](Var v) const {
        switch (v) {
            case Var::q: return q;
            case Var::t: return t;
            default: return a;
        }
    }
    int32_t& operator[](Var v) {
        switch (v) {
            case Var::q: return q;
            case Var::t: return t;
            default: return a;
        }
    }

    bool divides(const Exp& o) const { return q <= o.q && t <= o.t && a <= o.a; }
    bool is_zero() const { return q == 0 && t == 0 && a == 0; }

    Exp operator+(const Exp& o) const {
        constexpr int32_t cap = 1 << 30;
        if (q > cap - o.q || t > cap - o.t || a > cap - o.a)
            throw std::overflow_error("exponent overflow");
        return Exp{q + o.q, t + o.t, a + o.a};
    }
    Exp operator-(const Exp& o) const { return Exp{q - o.q, t - o.t, a - o.a}; }
};

class MPoly {
  public:
    struct Term {
        Exp exp;
        Rat coeff;
    };

    MPoly() = default;
    MPoly(int v) { if (v != 0) terms_.push_back({Exp{}, Rat(v)}); }
    MPoly(const Rat& v) { if (v != 0) terms_.push_back({Exp{}, v}); }

    static MPoly variable(Var v, int32_t e = 1) {
        if (e < 0) throw std::invalid_argument("negative exponent");
        MPoly p;
        if (e == 0) return MPoly(1);
        Exp x;
        x[v] = e;
        p.terms_.push_back({x, Rat(1)});
        return p;
    }
    static MPoly monomial(Exp e, Rat c) {
        MPoly p;
        if (c != 0) p.terms_.push_back({e, std::move(c)});
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exp.is_zero()); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].exp.is_zero() && terms_[0].coeff == 1; }
    Rat constant_value() const {
        if (terms_.empty()) return Rat(0);
        if (!is_constant()) throw std::logic_error("not a constant");
        return terms_[0].coeff;
    }

    size_t num_terms() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    const Term& leading() const { return terms_.back(); }    // lex-largest
    const Term& trailing() const { return terms_.front(); }  // lowest term

    int32_t degree(Var v) const {
        int32_t d = 0;
        for (const auto& tm : terms_) d = std::max(d, tm.exp[v]);
        return d;
    }
    int32_t min_degree(Var v) const {
        if (terms_.empty()) return 0;
        int32_t d = terms_[0].exp[v];
        for (const auto& tm : terms_) d = std::min(d, tm.exp[v]);
        return d;
    }
    bool depends_on(Var v) const { return degree(v) > 0; }

    MPoly operator-() const {
        MPoly r = *this;
        for (auto& tm : r.terms_) tm.coeff = -tm.coeff;
        return r;
    }

    MPoly operator+(const MPoly& o) const {
        MPoly r;
        r.terms_.reserve(terms_.size() + o.terms_.size());
        auto i = terms_.begin(), j = o.terms_.begin();
        while (i != terms_.end() && j != o.terms_.end()) {
            if (i->exp < j->exp) {
                r.terms_.push_back(*i++);
            } else if (j->exp < i->exp) {
                r.terms_.push_back(*j++);
            } else {
                Rat c = i->coeff + j->coeff;
                if (c != 0) r.terms_.push_back({i->exp, std::move(c)});
                ++i, ++j;
            }
        }
        r.terms_.insert(r.terms_.end(), i, terms_.end());
        r.terms_.insert(r.terms_.end(), j, o.terms_.end());
        return r;
    }
    MPoly operator-(const MPoly& o) const { return *this + (-o); }

    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }

    MPoly mul_term(const Exp& e, const Rat& c) const {
        if (c == 0) return MPoly();
        MPoly r;
        r.terms_.reserve(terms_.size());
        for (const auto& tm : terms_) r.terms_.push_back({tm.exp + e, tm.coeff * c});
        return r;
    }

    MPoly operator*(const MPoly& o) const {
        if (is_zero() || o.is_zero()) return MPoly();
        if (o.terms_.size() == 1) return mul_term(o.terms_[0].exp, o.terms_[0].coeff);
        if (terms_.size() == 1) return o.mul_term(terms_[0].exp, terms_[0].coeff);
        std::vector<Term> prods;
        prods.reserve(terms_.size() * o.terms_.size());
        for (const auto& x : terms_)
            for (const auto& y : o.terms_) prods.push_back({x.exp + y.exp, x.coeff * y.coeff});
        return from_terms(std::move(prods));
    }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    MPoly operator*(const Rat& c) const {
        if (c == 0) return MPoly();
        MPoly r = *this;
        for (auto& tm : r.terms_) tm.coeff *= c;
        return r;
    }

    MPoly pow(int32_t n) const {
        if (n < 0) throw std::invalid_argument("negative power");
        MPoly r(1), b = *this;
        while (n > 0) {
            if (n & 1) r *= b;
            b = (n >>= 1) ? b * b : MPoly();
        }
        return r;
    }

    friend bool operator==(const MPoly& x, const MPoly& y) {
        if (x.terms_.size() != y.terms_.size()) return false;
        for (size_t i = 0; i < x.terms_.size(); ++i)
            if (x.terms_[i].exp != y.terms_[i].exp || x.terms_[i].coeff != y.terms_[i].coeff) return false;
        return true;
    }

    // Total order usable as a map key: by term list, lex from the top.
    friend bool operator<(const MPoly& x, const MPoly& y) {
        size_t n = std::min(x.terms_.size(), y.terms_.size());
        for (size_t i = 0; i < n; ++i) {
            size_t ix = x.terms_.size() - 1 - i, iy = y.terms_.size() - 1 - i;
            if (x.terms_[ix].exp != y.terms_[iy].exp) return x.terms_[ix].exp < y.terms_[iy].exp;
            if (x.terms_[ix].coeff != y.terms_[iy].coeff) return x.terms_[ix].coeff < y.terms_[iy].coeff;
        }
        return x.terms_.size() < y.terms_.size();
    }

    /// Substitute a rational constant for one variable.
    MPoly eval_var(Var v, const Rat& value) const {
        std::map<Exp, Rat> acc;
        for (const auto& tm : terms_) {
            Exp e = tm.exp;
            int32_t k = e[v];
            e[v] = 0;
            Rat c = tm.coeff;
            if (k > 0) {
                Rat p;
                mpz_pow_ui(p.get_num_mpz_t(), value.get_num_mpz_t(), k);
                mpz_pow_ui(p.get_den_mpz_t(), value.get_den_mpz_t(), k);
                p.canonicalize();
                c *= p;
            }
            if (c != 0) acc[e] += c;
        }
        MPoly r;
        for (auto& [e, c] : acc)
            if (c != 0) r.terms_.push_back({e, std::move(c)});
        return r;
    }

    MPoly derivative(Var v) const {
        MPoly r;
        for (const auto& tm : terms_) {
            int32_t k = tm.exp[v];
            if (k == 0) continue;
            Exp e = tm.exp;
            e[v] = k - 1;
            r.terms_.push_back({e, tm.coeff * k});
        }
        std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return x.exp < y.exp; });
        return r;
    }

    /// Dense coefficient list in one variable: result[k] = coeff of v^k.
    std::vector<MPoly> coeffs_in(Var v) const {
        std::vector<MPoly> out(static_cast<size_t>(degree(v)) + 1);
        for (const auto& tm : terms_) {
            Exp e = tm.exp;
            int32_t k = e[v];
            e[v] = 0;
            out[k].terms_.push_back({e, tm.coeff});
        }
        for (auto& p : out)
            std::sort(p.terms_.begin(), p.terms_.end(), [](const Term& x, const Term& y) { return x.exp < y.exp; });
        return out;
    }

    static MPoly from_coeffs_in(Var v, const std::vector<MPoly>& cs) {
        MPoly r;
        for (size_t k = 0; k < cs.size(); ++k) {
            Exp e;
            e[v] = static_cast<int32_t>(k);
            r += cs[k].mul_term(e, Rat(1));
        }
        return r;
    }

    /// Exact division; nullopt if the division leaves a remainder. The
    /// working remainder is an ordered map so each reduction step touches
    /// only |divisor| entries.
    std::optional<MPoly> divexact(const MPoly& d) const {
        if (d.is_zero()) throw std::domain_error("division by zero");
        if (is_zero()) return MPoly();
        if (d.is_constant()) {
            Rat inv = 1 / d.constant_value();
            return *this * inv;
        }
        std::map<Exp, Rat> r;
        for (const auto& tm : terms_) r.emplace(tm.exp, tm.coeff);
        const Term& lead = d.leading();
        std::vector<Term> qterms;
        while (!r.empty()) {
            auto it = std::prev(r.end());
            if (!lead.exp.divides(it->first)) return std::nullopt;
            Exp e = it->first - lead.exp;
            Rat c = it->second / lead.coeff;
            for (const auto& tm : d.terms()) {
                auto [jt, fresh] = r.try_emplace(tm.exp + e, 0);
                jt->second -= c * tm.coeff;
                if (jt->second == 0) r.erase(jt);
            }
            qterms.push_back({e, std::move(c)});
        }
        std::sort(qterms.begin(), qterms.end(), [](const Term& x, const Term& y) { return x.exp < y.exp; });
        MPoly quo;
        quo.terms_ = std::move(qterms);
        return quo;
    }

    /// Rational content: c such that (*this)/c has coprime integer
    /// coefficients. Zero polynomial has content 0.
    Rat rational_content() const {
        if (terms_.empty()) return Rat(0);
        Int num_gcd = 0, den_lcm = 1;
        for (const auto& tm : terms_) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), tm.coeff.get_num_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), tm.coeff.get_den_mpz_t());
        }
        return Rat(num_gcd, den_lcm);
    }

    static MPoly from_terms(std::vector<Term> ts) {
        std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) { return x.exp < y.exp; });
        MPoly r;
        for (auto& tm : ts) {
            if (tm.coeff == 0) continue;
            if (!r.terms_.empty() && r.terms_.back().exp == tm.exp)
                r.terms_.back().coeff += tm.coeff;
            else
                r.terms_.push_back(std::move(tm));
        }
        std::erase_if(r.terms_, [](const Term& tm) { return tm.coeff == 0; });
        return r;
    }

  private:
    std::vector<Term> terms_;
};

inline MPoly operator*(const Rat& c, const MPoly& p) { return p * c; }

namespace detail {

/// Strips the common monomial factor (per-variable min exponent).
inline Exp monomial_content(const MPoly& p) {
    Exp m{};
    bool first = true;
    for (const auto& tm : p.terms()) {
        if (first) {
            m = tm.exp;
            first = false;
        } else {
            m.q = std::min(m.q, tm.exp.q);
            m.t = std::min(m.t, tm.exp.t);
            m.a = std::min(m.a, tm.exp.a);
        }
    }
    return m;
}

inline MPoly shift_down(const MPoly& p, const Exp& m) {
    if (m.is_zero()) return p;
    std::vector<MPoly::Term> ts;
    ts.reserve(p.num_terms());
    for (const auto& tm : p.terms()) ts.push_back({tm.exp - m, tm.coeff});
    return MPoly::from_terms(std::move(ts));
}

MPoly gcd_zz(MPoly A, MPoly B);

/// Content of A viewed in Z[rest][v]: gcd of its v-coefficients.
inline MPoly content_in(const MPoly& A, Var v) {
    MPoly c;
    for (const auto& part : A.coeffs_in(v)) {
        if (part.is_zero()) continue;
        c = gcd_zz(c, part);
        if (c.is_constant()) break;
    }
    return c;
}

/// Pseudo-remainder of A by B in variable v (both nonzero, degA >= degB).
inline MPoly prem(const MPoly& A, const MPoly& B, Var v) {
    auto bs = B.coeffs_in(v);
    int32_t db = B.degree(v);
    MPoly lb = bs[db];
    MPoly R = A;
    while (!R.is_zero() && R.degree(v) >= db) {
        int32_t dr = R.degree(v);
        MPoly lr = R.coeffs_in(v)[dr];
        Exp sh{};
        sh[v] = dr - db;
        R = R * lb - B.mul_term(sh, Rat(1)) * lr;
    }
    return R;
}

// Modular degree bounds. Specializing all-but-one variable at a point mod
// a prime can only grow the gcd, so a constant specialized gcd proves the
// true gcd is free of that variable (when the leading coefficient of one
// input survives the specialization).

constexpr uint64_t kPrime = 2305843009213693951ull;  // 2^61 - 1

inline uint64_t mulmod(uint64_t a, uint64_t b) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

inline uint64_t coeff_mod(const Rat& c) {
    // gcd-layer polynomials are integer; reduce the numerator.
    uint64_t m = mpz_fdiv_ui(c.get_num_mpz_t(), kPrime);
    return m;
}

/// Dense univariate image of p in variable v with the other two variables
/// fixed at x, y (matching the non-v variables in (q,t,a) order).
inline std::vector<uint64_t> univariate_image(const MPoly& p, Var v, uint64_t x, uint64_t y) {
    Var others[2];
    int k = 0;
    for (Var w : {Var::q, Var::t, Var::a})
        if (w != v) others[k++] = w;
    int d0 = p.degree(others[0]), d1 = p.degree(others[1]);
    std::vector<uint64_t> pow0(d0 + 1, 1), pow1(d1 + 1, 1);
    for (int i = 1; i <= d0; ++i) pow0[i] = mulmod(pow0[i - 1], x);
    for (int i = 1; i <= d1; ++i) pow1[i] = mulmod(pow1[i - 1], y);
    std::vector<uint64_t> img(p.degree(v) + 1, 0);
    for (const auto& tm : p.terms()) {
        uint64_t val = mulmod(coeff_mod(tm.coeff), mulmod(pow0[tm.exp[others[0]]], pow1[tm.exp[others[1]]]));
        img[tm.exp[v]] = (img[tm.exp[v]] + val) % kPrime;
    }
    while (!img.empty() && img.back() == 0) img.pop_back();
    return img;
}

inline uint64_t powmod(uint64_t b, uint64_t e) {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, b);
        b = mulmod(b, b);
        e >>= 1;
    }
    return r;
}

inline int univariate_gcd_degree(std::vector<uint64_t> u, std::vector<uint64_t> v) {
    while (!v.empty()) {
        // u mod v
        uint64_t lead_inv = powmod(v.back(), kPrime - 2);
        while (u.size() >= v.size()) {
            uint64_t c = mulmod(u.back(), lead_inv);
            size_t off = u.size() - v.size();
            for (size_t i = 0; i < v.size(); ++i) {
                uint64_t sub = mulmod(c, v[i]);
                u[off + i] = (u[off + i] + kPrime - sub) % kPrime;
            }
            while (!u.empty() && u.back() == 0) u.pop_back();
            if (u.empty()) break;
        }
        std::swap(u, v);
    }
    return static_cast<int>(u.size()) - 1;
}

/// Proves gcd(A, B) has degree 0 in v; false negatives only cost time.
inline bool gcd_free_of_var(const MPoly& A, const MPoly& B, Var v) {
    uint64_t seed = 0x9e3779b97f4a7c15ull;
    for (int attempt = 0; attempt < 2; ++attempt) {
        seed = seed * 6364136223846793005ull + 1442695040888963407ull;
        uint64_t x = 2 + (seed >> 17) % 100000;
        seed = seed * 6364136223846793005ull + 1442695040888963407ull;
        uint64_t y = 2 + (seed >> 17) % 100000;
        auto ia = univariate_image(A, v, x, y);
        auto ib = univariate_image(B, v, x, y);
        bool lead_ok = (static_cast<int>(ia.size()) - 1 == A.degree(v)) ||
                       (static_cast<int>(ib.size()) - 1 == B.degree(v));
        if (!lead_ok || ia.empty() || ib.empty()) continue;
        if (univariate_gcd_degree(std::move(ia), std::move(ib)) == 0) return true;
    }
    return false;
}

/// Primitive PRS gcd over Z[q,t,a]; the last-resort path, assumed to see
/// only small residuals after binomial peeling.
inline MPoly gcd_prs(MPoly A, MPoly B) {
    if (A.is_constant() || B.is_constant()) {
        Int g;
        mpz_gcd(g.get_mpz_t(), A.rational_content().get_num_mpz_t(), B.rational_content().get_num_mpz_t());
        return MPoly(Rat(g));
    }
    Var v = Var::a;
    if (A.depends_on(Var::q) || B.depends_on(Var::q))
        v = Var::q;
    else if (A.depends_on(Var::t) || B.depends_on(Var::t))
        v = Var::t;
    MPoly ca = content_in(A, v), cb = content_in(B, v);
    MPoly cont = gcd_zz(ca, cb);
    MPoly pa = *A.divexact(ca), pb = *B.divexact(cb);
    if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
    while (true) {
        MPoly r = prem(pa, pb, v);
        if (r.is_zero()) return cont * *pb.divexact(content_in(pb, v));
        if (r.degree(v) == 0) return cont;
        pa = std::move(pb);
        pb = *r.divexact(content_in(r, v));
    }
}

/// Cyclotomic coefficient vectors, computed by exact division of x^n - 1
/// by the lower-order ones.
inline const std::vector<long>& cyclotomic(int n) {
    static Cache<int, std::shared_ptr<std::vector<long>>> cache;
    auto ptr = cache.get_or_compute(n, [n]() {
        std::vector<long> num(n + 1, 0);
        num[0] = -1;
        num[n] = 1;  // x^n - 1
        for (int d = 1; d < n; ++d) {
            if (n % d != 0) continue;
            const std::vector<long>& phi = cyclotomic(d);
            std::vector<long> quo(num.size() - phi.size() + 1, 0);
            for (int k = static_cast<int>(quo.size()) - 1; k >= 0; --k) {
                long c = num[k + phi.size() - 1] / phi.back();
                quo[k] = c;
                if (c != 0)
                    for (size_t j = 0; j < phi.size(); ++j) num[k + j] -= c * phi[j];
            }
            num = std::move(quo);
        }
        return std::make_shared<std::vector<long>>(std::move(num));
    });
    return *ptr;
}

/// Irreducible factors of (1 - s*m) for a monomial m and sign s: the
/// cyclotomic polynomials evaluated at the primitive monomial underneath.
/// Each atom is returned with positive trailing coefficient.
inline std::vector<MPoly> binomial_atoms(const Exp& m, int sign) {
    int g = 0;
    for (Var v : {Var::q, Var::t, Var::a}) {
        int e = m[v];
        while (e != 0) {
            int r = g % e;
            g = e;
            e = r;
        }
    }
    Exp u{m.q / g, m.t / g, m.a / g};
    auto subst = [&u](const std::vector<long>& phi) {
        std::vector<MPoly::Term> ts;
        for (size_t k = 0; k < phi.size(); ++k) {
            if (phi[k] == 0) continue;
            ts.push_back({Exp{u.q * static_cast<int32_t>(k), u.t * static_cast<int32_t>(k),
                              u.a * static_cast<int32_t>(k)},
                          Rat(phi[k])});
        }
        MPoly p = MPoly::from_terms(std::move(ts));
        if (p.trailing().coeff < 0) p = -p;
        return p;
    };
    std::vector<MPoly> atoms;
    if (sign < 0) {  // 1 - u^g
        for (int d = 1; d <= g; ++d)
            if (g % d == 0) atoms.push_back(subst(cyclotomic(d)));
    } else {  // 1 + u^g = (1 - u^{2g})/(1 - u^g)
        for (int d = 1; d <= 2 * g; ++d)
            if ((2 * g) % d == 0 && g % d != 0) atoms.push_back(subst(cyclotomic(d)));
    }
    return atoms;
}

struct AtomFactors {
    std::map<MPoly, int> atoms;  // pairwise coprime irreducibles, canonical form
    MPoly residual;              // cofactor free of binomial-derived atoms
};

/// Factors out all binomial-derived irreducible factors discovered through
/// support differences; complete for products of (1 +- monomial) factors.
inline AtomFactors factor_atoms_impl(MPoly p) {
    AtomFactors out;
    bool progress = true;
    while (progress && !p.is_constant()) {
        progress = false;
        const Exp base = p.trailing().exp;
        const Exp lead = p.leading().exp - base;
        std::vector<Exp> diffs;
        for (const auto& tm : p.terms()) {
            if (!base.divides(tm.exp)) continue;  // componentwise >= only
            Exp d = tm.exp - base;
            if (!d.is_zero() && d.divides(lead)) diffs.push_back(d);
        }
        std::sort(diffs.begin(), diffs.end());
        diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());
        for (const Exp& d : diffs) {
            for (int sign : {-1, 1}) {
                MPoly cand = MPoly(1) + MPoly::monomial(d, Rat(sign));
                if (!p.divexact(cand)) continue;
                for (const MPoly& atom : binomial_atoms(d, sign)) {
                    int mult = 0;
                    while (true) {
                        auto quo = p.divexact(atom);
                        if (!quo) break;
                        p = std::move(*quo);
                        ++mult;
                    }
                    if (mult > 0) out.atoms[atom] += mult;
                }
                progress = true;
            }
            if (progress) break;  // support changed; rebuild candidates
        }
    }
    out.residual = std::move(p);
    return out;
}

/// Memoized: the same numerators and denominators recur constantly.
inline std::shared_ptr<const AtomFactors> factor_atoms(const MPoly& p) {
    static Cache<MPoly, std::shared_ptr<const AtomFactors>> cache;
    return cache.get_or_compute(p, [&p]() -> std::shared_ptr<const AtomFactors> {
        return std::make_shared<AtomFactors>(factor_atoms_impl(p));
    });
}

MPoly gcd_via_filter_or_prs(const MPoly& A, const MPoly& B);

/// gcd over Z[q,t,a]. Strips monomial and integer content, probes exact
/// divisibility, extracts common binomial-derived irreducible atoms by
/// trial division, and sends only atom-free residuals to the modular
/// filter / PRS path.
inline MPoly gcd_zz(MPoly A, MPoly B) {
    if (A.is_zero()) return B;
    if (B.is_zero()) return A;

    Exp ma = monomial_content(A), mb = monomial_content(B);
    Exp mg{std::min(ma.q, mb.q), std::min(ma.t, mb.t), std::min(ma.a, mb.a)};
    A = shift_down(A, ma);
    B = shift_down(B, mb);

    Rat ca = A.rational_content(), cb = B.rational_content();
    Int g0;
    mpz_gcd(g0.get_mpz_t(), ca.get_num_mpz_t(), cb.get_num_mpz_t());
    if (ca != 1) A = A * (1 / ca);
    if (cb != 1) B = B * (1 / cb);

    MPoly result(1);
    if (A.is_constant() || B.is_constant()) {
        // primitive constants are units
    } else if (A == B) {
        result = A;
    } else {
        bool maybe_common = false;
        for (Var v : {Var::q, Var::t, Var::a}) {
            if (A.degree(v) == 0 || B.degree(v) == 0) continue;
            if (!gcd_free_of_var(A, B, v)) {
                maybe_common = true;
                break;
            }
        }
        if (maybe_common) {
            // By call convention B is the denominator-like side: a product
            // of small binomial factors in this domain. Factor it once
            // (memoized) and count each atom's multiplicity in A directly.
            auto fb = factor_atoms(B);
            for (const auto& [atom, mult] : fb->atoms) {
                int common = 0;
                while (common < mult) {
                    auto quo = A.divexact(atom);
                    if (!quo) break;
                    A = std::move(*quo);
                    ++common;
                }
                for (int i = 0; i < common; ++i) result *= atom;
            }
            // Leftover atoms are irreducible non-divisors of what remains
            // of A; only the residual can still share factors with it.
            if (!fb->residual.is_constant() && !A.is_constant()) {
                if (auto d1 = A.divexact(fb->residual); d1)
                    result *= fb->residual;
                else if (auto d2 = fb->residual.divexact(A); d2)
                    result *= A;
                else
                    result *= gcd_via_filter_or_prs(A, fb->residual);
            }
        }
    }
    result = shift_down(result, monomial_content(result));
    std::vector<MPoly::Term> ts;
    for (const auto& tm : result.terms()) ts.push_back({tm.exp + mg, tm.coeff * Rat(g0)});
    return MPoly::from_terms(std::move(ts));
}

/// Variable-elimination dispatcher for binomial-free pairs: a proof that
/// the gcd is free of some variable reduces to a content gcd; otherwise
/// fall through to the PRS.
inline MPoly gcd_via_filter_or_prs(const MPoly& A, const MPoly& B) {
    for (Var v : {Var::q, Var::t, Var::a}) {
        int da = A.degree(v), db = B.degree(v);
        if (da == 0 && db == 0) continue;
        if (da == 0 || db == 0 || gcd_free_of_var(A, B, v)) {
            MPoly cva = da == 0 ? A : content_in(A, v);
            MPoly cvb = db == 0 ? B : content_in(B, v);
            return gcd_zz(std::move(cva), std::move(cvb));
        }
    }
    return gcd_prs(A, B);
}

}  // namespace detail

/// gcd over Q[q,t,a], returned as the canonical representative:
/// integer-primitive with positive lowest (first-printed) term.
inline MPoly poly_gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero() && b.is_zero()) return MPoly();
    Rat ca = a.is_zero() ? Rat(1) : a.rational_content();
    Rat cb = b.is_zero() ? Rat(1) : b.rational_content();
#ifdef MNQT_GCD_TRACE
    auto start = std::chrono::steady_clock::now();
#endif
    MPoly g = detail::gcd_zz(a * (1 / ca), b * (1 / cb));
#ifdef MNQT_GCD_TRACE
    double msec = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (msec > 100) {
        extern void mnqt_gcd_trace_report(const MPoly&, const MPoly&, double);
        mnqt_gcd_trace_report(a, b, msec);
    }
#endif
    Rat c = g.rational_content();
    if (g.trailing().coeff < 0) c = -c;
    return g * (1 / c);
}

}  // namespace mnqt
