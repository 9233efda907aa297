#pragma once

// Macdonald bases P, Q, J over Q(q,t): Gram-Schmidt construction against
// dominance order, structure scalars, skew functions, closed-form
// evaluations (phi, psi', sk, the (a-1) expansion), generalized binomial
// coefficients, and the q=0 / (q,t)=(0,-1) specializations.

#include "mnqt/partition.hpp"
#include "mnqt/ratfunc.hpp"
#include "mnqt/skew.hpp"
#include "mnqt/symfunc.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mnqt {

// ---------------------------------------------------------------------------
// Structure scalars

/// b_lambda = 1/<P,P> as the explicit product over 1 <= i <= j <= l.
inline RatFunc b_scalar(const Partition& lambda) {
    RatFunc b(1);
    int l = lambda.length();
    for (int i = 1; i <= l; ++i)
        for (int j = i; j <= l; ++j) {
            int len = lambda.part(j) - lambda.part(j + 1);
            if (len == 0) continue;
            RatFunc x_num = RatFunc(MPoly::monomial(Exp{lambda.part(i) - lambda.part(j), j - i + 1, 0}, Rat(1)));
            RatFunc x_den = RatFunc(MPoly::monomial(Exp{lambda.part(i) - lambda.part(j) + 1, j - i, 0}, Rat(1)));
            b *= pochhammer(x_num, RatFunc::q(), len) / pochhammer(x_den, RatFunc::q(), len);
        }
    return b;
}

/// c_lambda = prod_s (1 - q^{arm} t^{leg+1}).
inline RatFunc c_scalar(const Partition& lambda) {
    RatFunc c(1);
    for (int i = 1; i <= lambda.length(); ++i)
        for (int j = 1; j <= lambda.part(i); ++j)
            c *= RatFunc(1) - RatFunc(MPoly::monomial(Exp{lambda.arm(i, j), lambda.leg(i, j) + 1, 0}, Rat(1)));
    return c;
}

/// c'_lambda = prod_s (1 - q^{arm+1} t^{leg}).
inline RatFunc c_prime_scalar(const Partition& lambda) {
    RatFunc c(1);
    for (int i = 1; i <= lambda.length(); ++i)
        for (int j = 1; j <= lambda.part(i); ++j)
            c *= RatFunc(1) - RatFunc(MPoly::monomial(Exp{lambda.arm(i, j) + 1, lambda.leg(i, j), 0}, Rat(1)));
    return c;
}

struct MacdonaldScalars {
    RatFunc b, c, c_prime, z;
};

inline MacdonaldScalars scalars(const Partition& lambda) {
    return {b_scalar(lambda), c_scalar(lambda), c_prime_scalar(lambda), z_qt(lambda)};
}

// ---------------------------------------------------------------------------
// The P basis, one degree at a time

namespace detail {

struct MacdonaldDegree {
    std::map<Partition, SymFunc> P;     // power basis
    std::map<Partition, RatFunc> norm;  // <P,P>_{q,t} = 1/b
};

/// omega_{q,t}^{-1} in the power basis: p_r -> (-1)^{r-1} (1-t^r)/(1-q^r) p_r.
inline SymFunc omega_qt_inverse(const SymFunc& f) {
    SymFunc r(Basis::power);
    for (const auto& [lam, c] : f.terms()) {
        RatFunc v = c;
        for (int p : lam.parts()) {
            v *= (RatFunc(1) - RatFunc::variable(Var::t, p)) / (RatFunc(1) - RatFunc::variable(Var::q, p));
            if (p % 2 == 0) v = -v;
        }
        r.add_term(lam, v);
    }
    return r;
}

inline SymFunc swap_parameters(const SymFunc& f) {
    SymFunc r(f.basis());
    for (const auto& [lam, c] : f.terms()) r.add_term(lam, c.swap_qt());
    return r;
}

/// Gram-Schmidt against dominance order in the power basis, with the upper
/// half of each degree obtained from the lower half through the duality
/// that sends P_lambda(q,t) to Q_{lambda'}(t,q) under omega.
inline const MacdonaldDegree& macdonald_degree(int n) {
    ensure_degree(n);
    static Cache<int, std::shared_ptr<MacdonaldDegree>> cache;
    auto ptr = cache.get_or_compute(n, [n]() {
        auto deg = std::make_shared<MacdonaldDegree>();
        std::vector<Partition> order = partitions_of(n);
        std::reverse(order.begin(), order.end());  // dominance-compatible, smallest first
        for (const Partition& lam : order) {
            Partition conj = lam.conjugate();
            SymFunc v;
            auto it = deg->P.find(conj);
            if (it != deg->P.end() && !(conj == lam)) {
                v = omega_qt_inverse(swap_parameters(it->second) * b_scalar(conj).swap_qt());
            } else {
                v = detail::to_power(SymFunc::basis_element(Basis::monomial, lam));
                for (const auto& [mu, Pmu] : deg->P) {
                    if (!Partition::dominated(mu, lam)) continue;  // projection vanishes off the ideal
                    RatFunc proj = inner_qt(v, Pmu) * b_scalar(mu);
                    if (!proj.is_zero()) v -= Pmu * proj;
                }
            }
            deg->norm.emplace(lam, b_scalar(lam).inverse());
            deg->P.emplace(lam, std::move(v));
        }
        return deg;
    });
    return *ptr;
}

}  // namespace detail

/// P_lambda in the power-sum basis.
inline SymFunc macdonald_P(const Partition& lambda) {
    return detail::macdonald_degree(lambda.weight()).P.at(lambda);
}

/// P_lambda in the monomial basis (unitriangular form).
inline SymFunc macdonald_P_monomial(const Partition& lambda) {
    static Cache<Partition, std::shared_ptr<SymFunc>> cache;
    auto ptr = cache.get_or_compute(lambda, [&lambda]() {
        return std::make_shared<SymFunc>(convert(macdonald_P(lambda), Basis::monomial));
    });
    return *ptr;
}

/// <P_lambda, P_lambda>_{q,t} = 1/b_lambda.
inline RatFunc macdonald_norm(const Partition& lambda) {
    return detail::macdonald_degree(lambda.weight()).norm.at(lambda);
}

inline SymFunc macdonald_Q(const Partition& lambda) {
    return macdonald_P(lambda) * b_scalar(lambda);
}

inline SymFunc macdonald_J(const Partition& lambda) {
    return macdonald_P(lambda) * c_scalar(lambda);
}

/// f^lambda_{mu nu} = <Q_lambda, P_mu P_nu>_{q,t}.
inline RatFunc f_coeff(const Partition& lambda, const Partition& mu, const Partition& nu) {
    if (mu.weight() + nu.weight() != lambda.weight()) return RatFunc();
    ensure_degree(lambda.weight());
    SymFunc prod = multiply(macdonald_P(mu), macdonald_P(nu));
    return inner_qt(macdonald_Q(lambda), prod);
}

/// Q_{lambda/mu} = sum_nu f^lambda_{mu nu} Q_nu; zero when mu is not
/// contained in lambda.
inline SymFunc skew_Q(const Partition& lambda, const Partition& mu) {
    static Cache<std::pair<Partition, Partition>, std::shared_ptr<SymFunc>> cache;
    auto ptr = cache.get_or_compute({lambda, mu}, [&]() {
        SymFunc f(Basis::power);
        if (lambda.contains(mu)) {
            SymFunc Qlam = macdonald_Q(lambda);
            SymFunc Pmu = macdonald_P(mu);
            for (const Partition& nu : partitions_of(lambda.weight() - mu.weight())) {
                RatFunc coeff = inner_qt(Qlam, multiply(Pmu, macdonald_P(nu)));
                if (!coeff.is_zero()) f += macdonald_Q(nu) * coeff;
            }
        }
        return std::make_shared<SymFunc>(std::move(f));
    });
    return *ptr;
}

// ---------------------------------------------------------------------------
// Closed-form skew evaluations

/// phi_{lambda/mu}: nonzero only on horizontal strips, where it is the
/// telescoped product of shifted-factorial ratios over 1 <= i <= j <= l(lambda).
inline RatFunc phi(const Partition& lambda, const Partition& mu) {
    if (!lambda.contains(mu)) return RatFunc();
    if (!SkewShape(lambda, mu).is_horizontal_strip()) return RatFunc();
    RatFunc r(1);
    int l = lambda.length();
    auto mono = [](int eq, int et) { return RatFunc(MPoly::monomial(Exp{eq, et, 0}, Rat(1))); };
    for (int i = 1; i <= l; ++i)
        for (int j = i; j <= l; ++j) {
            int len1 = lambda.part(j) - mu.part(j);
            if (len1 > 0) {
                r *= pochhammer(mono(lambda.part(i) - lambda.part(j), j - i + 1), RatFunc::q(), len1);
                r /= pochhammer(mono(lambda.part(i) - lambda.part(j) + 1, j - i), RatFunc::q(), len1);
            }
            int len2 = lambda.part(j + 1) - mu.part(j + 1);
            if (len2 > 0) {
                r *= pochhammer(mono(mu.part(i) - lambda.part(j + 1) + 1, j - i), RatFunc::q(), len2);
                r /= pochhammer(mono(mu.part(i) - lambda.part(j + 1), j - i + 1), RatFunc::q(), len2);
            }
        }
    return r;
}

/// psi'_{lambda/mu}: nonzero only on vertical strips; product over pairs
/// i < j with lambda_i = mu_i and lambda_j = mu_j + 1.
inline RatFunc psi_prime(const Partition& lambda, const Partition& mu) {
    if (!lambda.contains(mu)) return RatFunc();
    if (!SkewShape(lambda, mu).is_vertical_strip()) return RatFunc();
    RatFunc r(1);
    int l = lambda.length();
    auto mono = [](int eq, int et) {
        if (et < 0) return RatFunc(MPoly::monomial(Exp{eq, 0, 0}, Rat(1)), MPoly::variable(Var::t, -et));
        return RatFunc(MPoly::monomial(Exp{eq, et, 0}, Rat(1)));
    };
    for (int i = 1; i < l; ++i) {
        if (lambda.part(i) != mu.part(i)) continue;
        for (int j = i + 1; j <= l; ++j) {
            if (lambda.part(j) != mu.part(j) + 1) continue;
            r *= (RatFunc(1) - mono(mu.part(i) - mu.part(j), j - i - 1)) *
                 (RatFunc(1) - mono(lambda.part(i) - lambda.part(j), j - i + 1));
            r /= (RatFunc(1) - mono(mu.part(i) - mu.part(j), j - i)) *
                 (RatFunc(1) - mono(lambda.part(i) - lambda.part(j), j - i));
        }
    }
    return r;
}

/// sk_{lambda/mu}(q,t) = t^{n(lambda)-n(mu)} prod_{i,j=1}^{l(lambda)} of the
/// four-factor shifted-factorial ratio, with missing mu parts read as 0.
/// The second subscript is lambda_i - lambda_j above the diagonal and
/// mu_i - mu_j on or below it; the uniform mu - mu reading breaks the
/// defining skew evaluation already at (1,1)/(1).
inline RatFunc sk_qt(const Partition& lambda, const Partition& mu) {
    int l = lambda.length();
    RatFunc r = RatFunc::t().pow(static_cast<int>(lambda.n_stat() - mu.n_stat()));
    auto qt_mono = [](int et) {
        if (et < 0) return RatFunc(MPoly::variable(Var::q), MPoly::variable(Var::t, -et));
        return RatFunc(MPoly::monomial(Exp{1, et, 0}, Rat(1)));
    };
    for (int i = 1; i <= l; ++i)
        for (int j = 1; j <= l; ++j) {
            RatFunc x1 = qt_mono(j - i - 1), x2 = qt_mono(j - i);
            int la_mu = lambda.part(i) - mu.part(j);
            int other = i < j ? lambda.part(i) - lambda.part(j) : mu.part(i) - mu.part(j);
            r *= pochhammer(x1, RatFunc::q(), la_mu) * pochhammer(x2, RatFunc::q(), other);
            r /= pochhammer(x1, RatFunc::q(), other) * pochhammer(x2, RatFunc::q(), la_mu);
        }
    return r;
}

/// Q_{lambda/mu}(a-1; q,t) as the closed double sum over pairs (eta, nu)
/// with mu <= eta <= nu <= lambda, lambda/nu a horizontal strip and nu/eta
/// a vertical strip.
inline RatFunc skew_eval_a_minus_1(const Partition& lambda, const Partition& mu) {
    if (!lambda.contains(mu)) return RatFunc();
    RatFunc total;
    for (const Partition& nu : horizontal_strip_intermediates(lambda, mu)) {
        RatFunc ph = phi(lambda, nu);
        if (ph.is_zero()) continue;
        RatFunc a_pow = RatFunc::a().pow(lambda.weight() - nu.weight());
        for (const Partition& eta : vertical_strip_intermediates(nu, mu)) {
            RatFunc ps = psi_prime(nu, eta);
            if (ps.is_zero()) continue;
            RatFunc term = ph * a_pow * ps * sk_qt(eta, mu) *
                           RatFunc::t().pow(eta.weight() - mu.weight());
            if ((nu.weight() - eta.weight()) % 2 == 1) term = -term;
            total += term;
        }
    }
    return total;
}

/// Generalized (q,t)-binomial: t^{n(mu)-n(lambda)} (c'_lambda/c'_mu)
/// Q_{lambda/mu}(1/(1-t); q,t); zero when mu is not contained in lambda.
inline RatFunc qt_binomial(const Partition& lambda, const Partition& mu) {
    if (!lambda.contains(mu)) return RatFunc();
    static Cache<std::pair<Partition, Partition>, RatFunc> cache;
    return cache.get_or_compute({lambda, mu}, [&]() {
        RatFunc v = eval_alphabet(skew_Q(lambda, mu), Alphabet::geometric(Var::t));
        v *= c_prime_scalar(lambda) / c_prime_scalar(mu);
        v *= RatFunc::t().pow(static_cast<int>(mu.n_stat() - lambda.n_stat()));
        return v;
    });
}

// ---------------------------------------------------------------------------
// Specializations

enum class SpecPoint { generic, hall_littlewood /* q=0 */, schur_q /* q=0, t=-1 */ };

/// Coefficientwise exact substitution; a pole names the offending term.
inline SymFunc specialize(const SymFunc& f, SpecPoint point) {
    if (point == SpecPoint::generic) return f;
    SymFunc r(f.basis());
    for (const auto& [lam, c] : f.terms()) {
        try {
            RatFunc v = c.substitute(Var::q, Rat(0));
            if (point == SpecPoint::schur_q) v = v.substitute(Var::t, Rat(-1));
            r.add_term(lam, v);
        } catch (const std::domain_error&) {
            throw std::domain_error("pole at specialization point in coefficient of index " + lam.to_string());
        }
    }
    return r;
}

/// Hall-Littlewood P (q=0 specialization, cached per partition).
inline SymFunc hl_P(const Partition& lambda) {
    static Cache<Partition, std::shared_ptr<SymFunc>> cache;
    auto ptr = cache.get_or_compute(lambda, [&]() {
        return std::make_shared<SymFunc>(specialize(macdonald_P(lambda), SpecPoint::hall_littlewood));
    });
    return *ptr;
}

inline SymFunc hl_Q(const Partition& lambda) {
    static Cache<Partition, std::shared_ptr<SymFunc>> cache;
    auto ptr = cache.get_or_compute(lambda, [&]() {
        return std::make_shared<SymFunc>(specialize(macdonald_Q(lambda), SpecPoint::hall_littlewood));
    });
    return *ptr;
}

/// One-row Hall-Littlewood q_r.
inline SymFunc hl_one_row(int r) {
    SymFunc f(Basis::power);
    for (const Partition& lam : partitions_of(r)) {
        RatFunc c{Rat(1, lam.z_factor())};
        for (int p : lam.parts()) c *= RatFunc(1) - RatFunc::variable(Var::t, p);
        f.add_term(lam, c);
    }
    return f;
}

/// Schur Q-function (q=0, t=-1 specialization, cached).
inline SymFunc schurq_Q(const Partition& lambda) {
    static Cache<Partition, std::shared_ptr<SymFunc>> cache;
    auto ptr = cache.get_or_compute(lambda, [&]() {
        return std::make_shared<SymFunc>(specialize(macdonald_Q(lambda), SpecPoint::schur_q));
    });
    return *ptr;
}

}  // namespace mnqt
