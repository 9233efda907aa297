#pragma once

// Normalized rational functions in (q, t, a) over Q: the coefficient
// field for everything downstream. Canonical form: gcd(num, den) = 1,
// den integer-primitive with positive lowest term, den = 1 for
// polynomial values. q-series primitives live here too.

#include "mnqt/mpoly.hpp"

#include <cctype>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace mnqt {

class RatFunc {
  public:
    RatFunc() : num_(), den_(1) {}
    RatFunc(int v) : num_(v), den_(1) {}
    RatFunc(const Rat& v) : num_(v), den_(1) {}
    RatFunc(MPoly p) : num_(std::move(p)), den_(1) {}
    RatFunc(MPoly num, MPoly den) { *this = normalize(std::move(num), std::move(den)); }

    static RatFunc variable(Var v, int32_t e = 1) { return RatFunc(MPoly::variable(v, e)); }
    static RatFunc q() { return variable(Var::q); }
    static RatFunc t() { return variable(Var::t); }
    static RatFunc a() { return variable(Var::a); }

    static RatFunc normalize(MPoly num, MPoly den) {
        if (den.is_zero()) throw std::domain_error("division by zero");
        RatFunc r;
        if (num.is_zero()) return r;
        MPoly g = poly_gcd(num, den);
        if (!g.is_one()) {
            num = *num.divexact(g);
            den = *den.divexact(g);
        }
        r.num_ = std::move(num);
        r.den_ = std::move(den);
        r.rescale();
        return r;
    }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }
    Rat constant_value() const {
        if (!is_constant()) throw std::logic_error("not a constant");
        return num_.constant_value();
    }

    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }

    RatFunc operator+(const RatFunc& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        if (den_ == o.den_) {
            MPoly n = num_ + o.num_;
            if (n.is_zero()) return RatFunc();
            MPoly g = poly_gcd(n, den_);
            RatFunc r;
            r.num_ = g.is_one() ? std::move(n) : *n.divexact(g);
            r.den_ = g.is_one() ? den_ : *den_.divexact(g);
            r.rescale();
            return r;
        }
        MPoly g = poly_gcd(den_, o.den_);
        MPoly db = g.is_one() ? den_ : *den_.divexact(g);
        MPoly dd = g.is_one() ? o.den_ : *o.den_.divexact(g);
        MPoly n = num_ * dd + o.num_ * db;
        if (n.is_zero()) return RatFunc();
        MPoly h = poly_gcd(n, g);
        RatFunc r;
        if (h.is_one()) {
            r.num_ = std::move(n);
            r.den_ = db * g * dd;
        } else {
            r.num_ = *n.divexact(h);
            r.den_ = db * *g.divexact(h) * dd;
        }
        r.rescale();
        return r;
    }
    RatFunc operator-(const RatFunc& o) const { return *this + (-o); }

    RatFunc operator*(const RatFunc& o) const {
        if (is_zero() || o.is_zero()) return RatFunc();
        MPoly g1 = poly_gcd(num_, o.den_);
        MPoly g2 = poly_gcd(o.num_, den_);
        RatFunc r;
        r.num_ = (g1.is_one() ? num_ : *num_.divexact(g1)) * (g2.is_one() ? o.num_ : *o.num_.divexact(g2));
        r.den_ = (g2.is_one() ? den_ : *den_.divexact(g2)) * (g1.is_one() ? o.den_ : *o.den_.divexact(g1));
        r.rescale();
        return r;
    }

    RatFunc inverse() const {
        if (is_zero()) throw std::domain_error("division by zero");
        RatFunc r;
        r.num_ = den_;
        r.den_ = num_;
        r.rescale();
        return r;
    }
    RatFunc operator/(const RatFunc& o) const { return *this * o.inverse(); }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    RatFunc pow(int32_t n) const {
        if (n < 0) return inverse().pow(-n);
        RatFunc r(1), b = *this;
        while (n > 0) {
            if (n & 1) r *= b;
            b = (n >>= 1) ? b * b : RatFunc();
        }
        return r;
    }

    friend bool operator==(const RatFunc& x, const RatFunc& y) { return x.num_ == y.num_ && x.den_ == y.den_; }
    friend bool operator<(const RatFunc& x, const RatFunc& y) {
        if (!(x.num_ == y.num_)) return x.num_ < y.num_;
        return x.den_ < y.den_;
    }

    /// Substitute a rational constant for one variable. num and den are
    /// coprime, so a vanishing denominator is a genuine pole.
    RatFunc substitute(Var v, const Rat& value) const {
        MPoly dv = den_.eval_var(v, value);
        if (dv.is_zero()) throw std::domain_error("pole at substitution point");
        return RatFunc(num_.eval_var(v, value), dv);
    }

    /// Evaluate the a-variable at an arbitrary field element.
    RatFunc substitute_a(const RatFunc& value) const {
        auto horner = [&value](const MPoly& p) {
            auto cs = p.coeffs_in(Var::a);
            RatFunc acc;
            for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * value + RatFunc(*it);
            return acc;
        };
        return horner(num_) / horner(den_);
    }

    /// The (q,t) -> (t,q) parameter swap (a ring automorphism, so the
    /// canonical form survives up to the sign convention).
    RatFunc swap_qt() const {
        auto sw = [](const MPoly& p) {
            std::vector<MPoly::Term> ts;
            for (const auto& tm : p.terms()) {
                Exp e{tm.exp.t, tm.exp.q, tm.exp.a};
                ts.push_back({e, tm.coeff});
            }
            return MPoly::from_terms(std::move(ts));
        };
        RatFunc r;
        r.num_ = sw(num_);
        r.den_ = sw(den_);
        r.rescale();
        return r;
    }

    /// Relabel the a-variable as v; input must not involve v already.
    RatFunc rename_a(Var v) const {
        if (v == Var::a) return *this;
        auto relabel = [v](const MPoly& p) {
            if (p.depends_on(v)) throw std::invalid_argument("rename collision");
            std::vector<MPoly::Term> ts;
            for (const auto& tm : p.terms()) {
                Exp e = tm.exp;
                e[v] = e.a;
                e.a = 0;
                ts.push_back({e, tm.coeff});
            }
            return MPoly::from_terms(std::move(ts));
        };
        RatFunc r;
        r.num_ = relabel(num_);
        r.den_ = relabel(den_);
        r.rescale();
        return r;
    }

    bool depends_on(Var v) const { return num_.depends_on(v) || den_.depends_on(v); }

    std::string to_string() const;
    static RatFunc parse(const std::string& s);

  private:
    void rescale() {
        // den integer-primitive, lowest term positive; num carries the scalar.
        Rat c = den_.rational_content();
        if (den_.trailing().coeff < 0) c = -c;
        if (c != 1) {
            Rat inv = 1 / c;
            den_ = den_ * inv;
            num_ = num_ * inv;
        }
    }

    MPoly num_;
    MPoly den_;
};

inline RatFunc operator+(int x, const RatFunc& y) { return RatFunc(x) + y; }
inline RatFunc operator-(int x, const RatFunc& y) { return RatFunc(x) - y; }
inline RatFunc operator*(int x, const RatFunc& y) { return RatFunc(x) * y; }

// ---------------------------------------------------------------------------
// q-series primitives

/// Finite q-shifted factorial (x; q)_k = prod_{j=0}^{k-1} (1 - x q^j).
inline RatFunc q_shifted_factorial(const RatFunc& x, int k) {
    if (k < 0) throw std::invalid_argument("negative length");
    RatFunc r(1);
    RatFunc qp(1);
    for (int j = 0; j < k; ++j) {
        r *= RatFunc(1) - x * qp;
        qp *= RatFunc::q();
    }
    return r;
}

/// (x; base)_k for any integer k, with (x; base)_{-m} = 1/prod_{j=1}^{m}(1 - x base^{-j}).
inline RatFunc pochhammer(const RatFunc& x, const RatFunc& base, int k) {
    RatFunc r(1);
    if (k >= 0) {
        RatFunc bp(1);
        for (int j = 0; j < k; ++j) {
            r *= RatFunc(1) - x * bp;
            bp *= base;
        }
    } else {
        RatFunc bp(1);
        for (int j = 1; j <= -k; ++j) {
            bp = bp / base;
            r *= RatFunc(1) - x * bp;
        }
        r = r.inverse();
    }
    return r;
}

/// Gaussian binomial [a, b] in the given base variable; 0 for b < 0 or b > a >= 0.
inline RatFunc gauss_binomial(int a, int b, Var base) {
    if (b < 0 || (a >= 0 && b > a)) return RatFunc();
    if (b == 0) return RatFunc(1);
    RatFunc x = RatFunc::variable(base);
    RatFunc num = pochhammer(x.pow(a - b + 1), x, b);
    RatFunc den = pochhammer(x, x, b);
    return num / den;
}

inline RatFunc q_binomial(int a, int b) { return gauss_binomial(a, b, Var::q); }

/// [r] in an arbitrary base: 1 + base + ... + base^{r-1}.
inline RatFunc base_integer(int r, const RatFunc& base) {
    RatFunc s, p(1);
    for (int i = 0; i < r; ++i) {
        s += p;
        p *= base;
    }
    return s;
}

/// Exact division by (a - 1); the argument must be polynomial in a with
/// a-free denominator and vanish at a = 1.
inline RatFunc exact_divide_a_minus_1(const RatFunc& p) {
    if (p.den().depends_on(Var::a)) throw std::domain_error("not divisible");
    MPoly root = MPoly::variable(Var::a) - MPoly(1);
    auto quo = p.num().divexact(root);
    if (!quo) throw std::domain_error("not divisible");
    return RatFunc(*quo, p.den());
}

/// d/da evaluated at a = 1.
inline RatFunc derivative_at_a1(const RatFunc& p) {
    MPoly n1 = p.num().derivative(Var::a) * p.den() - p.num() * p.den().derivative(Var::a);
    MPoly d1 = p.den() * p.den();
    return RatFunc(n1, d1).substitute(Var::a, Rat(1));
}

// ---------------------------------------------------------------------------
// String form. Terms print lowest-first ("1 - q*t^2"), rationals as "p/r",
// and non-polynomial values as "(num)/(den)". Printing and parsing are
// mutually inverse on canonical forms.

namespace detail {

inline void print_poly(std::ostream& os, const MPoly& p) {
    if (p.is_zero()) {
        os << '0';
        return;
    }
    bool first = true;
    for (const auto& tm : p.terms()) {
        Rat c = tm.coeff;
        bool neg = c < 0;
        if (first) {
            if (neg) os << '-';
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        Rat ac = abs(c);
        std::string vars;
        for (Var v : {Var::q, Var::t, Var::a}) {
            int32_t e = tm.exp[v];
            if (e == 0) continue;
            if (!vars.empty()) vars += '*';
            vars += var_name(v);
            if (e > 1) vars += '^' + std::to_string(e);
        }
        if (vars.empty()) {
            os << ac.get_str();
        } else {
            if (ac != 1) os << ac.get_str() << '*';
            os << vars;
        }
    }
}

struct PolyParser {
    const std::string& s;
    size_t pos = 0;

    explicit PolyParser(const std::string& str) : s(str) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + what);
    }

    long parse_uint() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected integer");
        return std::strtol(s.substr(start, pos - start).c_str(), nullptr, 10);
    }

    // term := [number[/number]] ['*'] factor ('*' factor)* | number[/number]
    MPoly parse_term() {
        skip_ws();
        Rat coeff(1);
        bool saw_number = false;
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            Int n(parse_uint());
            Int d(1);
            size_t save = pos;
            if (eat('/')) {
                skip_ws();
                if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                    d = Int(parse_uint());
                } else {
                    pos = save;  // the '/' separates num and den polys
                }
            }
            coeff = Rat(n, d);
            coeff.canonicalize();
            saw_number = true;
        }
        Exp e;
        bool saw_var = false;
        while (true) {
            size_t save = pos;
            if (saw_number || saw_var) {
                if (!eat('*')) break;
            }
            skip_ws();
            Var v;
            if (pos < s.size() && (s[pos] == 'q' || s[pos] == 't' || s[pos] == 'a')) {
                v = s[pos] == 'q' ? Var::q : (s[pos] == 't' ? Var::t : Var::a);
                ++pos;
            } else {
                pos = save;
                break;
            }
            int32_t k = 1;
            if (eat('^')) k = static_cast<int32_t>(parse_uint());
            e[v] += k;
            saw_var = true;
        }
        if (!saw_number && !saw_var) fail("expected term");
        return MPoly::monomial(e, coeff);
    }

    MPoly parse_poly() {
        MPoly p;
        bool neg = false;
        skip_ws();
        if (eat('-'))
            neg = true;
        else
            eat('+');
        while (true) {
            MPoly tm = parse_term();
            p += neg ? -tm : tm;
            skip_ws();
            if (eat('-'))
                neg = true;
            else if (eat('+'))
                neg = false;
            else
                break;
        }
        return p;
    }
};

}  // namespace detail

inline std::string RatFunc::to_string() const {
    std::ostringstream os;
    if (is_polynomial()) {
        detail::print_poly(os, num_);
    } else {
        os << '(';
        detail::print_poly(os, num_);
        os << ")/(";
        detail::print_poly(os, den_);
        os << ')';
    }
    return os.str();
}

inline RatFunc RatFunc::parse(const std::string& s) {
    detail::PolyParser p(s);
    MPoly num, den(1);
    p.skip_ws();
    bool parenthesized = p.eat('(');
    num = p.parse_poly();
    if (parenthesized && !p.eat(')')) p.fail("expected ')'");
    p.skip_ws();
    if (p.eat('/')) {
        bool paren2 = p.eat('(');
        den = p.parse_poly();
        if (paren2 && !p.eat(')')) p.fail("expected ')'");
    }
    p.skip_ws();
    if (p.pos != p.s.size()) p.fail("trailing input");
    return RatFunc(std::move(num), std::move(den));
}

}  // namespace mnqt
