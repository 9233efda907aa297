#pragma once

// The expansion operators: multiplication by the one-row kernel on the
// P/Q bases with lambda-ring coefficients, the (a-1)/(a-1) normalized
// variant, the Hecke and Hecke-Clifford specializations with their strip
// weights, the factorized Hall-Littlewood (-1) evaluation, and classical
// symmetric-group characters.

#include "mnqt/macdonald.hpp"
#include "mnqt/partition.hpp"
#include "mnqt/skew.hpp"
#include "mnqt/symfunc.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mnqt {

struct MNTerm {
    Partition lambda;
    RatFunc coeff;
};

struct MNExpansion {
    Partition mu;
    int k = 0;
    std::string alphabet;
    std::vector<MNTerm> terms;
};

/// g_k(A X) P_mu = sum_lambda Q_{lambda/mu}(A) P_lambda over lambda of
/// weight |mu|+k containing mu.
inline MNExpansion mn_expand(const Partition& mu, int k, const Alphabet& A) {
    ensure_degree(mu.weight() + k);
    MNExpansion out{mu, k, A.name, {}};
    for (const Partition& lam : partitions_containing(mu, k)) {
        RatFunc c = eval_alphabet(skew_Q(lam, mu), A);
        if (!c.is_zero()) out.terms.push_back({lam, std::move(c)});
    }
    return out;
}

/// g_k(A X) Q_{mu/rho} = sum_lambda [ sum_tau f^mu_{tau rho} P_{lambda/tau}(A) ] Q_lambda
/// with P_{lambda/tau} = (b_tau/b_lambda) Q_{lambda/tau}.
inline MNExpansion mn_skew_expand(const Partition& mu, const Partition& rho, int k, const Alphabet& A) {
    if (!mu.contains(rho)) throw std::invalid_argument("rho not contained in mu");
    int w = mu.weight() - rho.weight() + k;
    ensure_degree(w);
    MNExpansion out{mu, k, A.name, {}};
    std::vector<std::pair<Partition, RatFunc>> fs;
    for (const Partition& tau : subpartitions_of_weight(mu, mu.weight() - rho.weight())) {
        RatFunc f = f_coeff(mu, tau, rho);
        if (!f.is_zero()) fs.emplace_back(tau, f * b_scalar(tau));
    }
    for (const Partition& lam : partitions_of(w)) {
        RatFunc c;
        for (const auto& [tau, fb] : fs) {
            if (!lam.contains(tau)) continue;
            c += fb * eval_alphabet(skew_Q(lam, tau), A);
        }
        if (c.is_zero()) continue;
        c /= b_scalar(lam);
        out.terms.push_back({lam, std::move(c)});
    }
    return out;
}

/// Dual action on the Q basis: g_k^perp(A X) Q_lambda = sum_mu Q_{lambda/mu}(A) Q_mu.
inline MNExpansion mn_dual(const Partition& lambda, int k, const Alphabet& A) {
    MNExpansion out{lambda, k, A.name, {}};
    for (const Partition& mu : subpartitions_of_weight(lambda, lambda.weight() - k)) {
        RatFunc c = eval_alphabet(skew_Q(lambda, mu), A);
        if (!c.is_zero()) out.terms.push_back({mu, std::move(c)});
    }
    return out;
}

/// Coefficients Q_{lambda/mu}(a-1)/(a-1) of the normalized operator; the
/// division is exact, anything else is an internal error.
inline MNExpansion mn_tilde(const Partition& mu, int k) {
    ensure_degree(mu.weight() + k);
    MNExpansion out{mu, k, "a-1", {}};
    for (const Partition& lam : partitions_containing(mu, k)) {
        RatFunc c = skew_eval_a_minus_1(lam, mu);
        if (c.is_zero()) continue;
        out.terms.push_back({lam, exact_divide_a_minus_1(c)});
    }
    return out;
}

/// Hecke specialization: lambda runs over r-generalized border strips over
/// mu, with weight wt(lambda/mu; q).
inline std::vector<MNTerm> hecke_mn(const Partition& mu, int r) {
    ensure_degree(mu.weight() + r);
    std::vector<MNTerm> out;
    for (const Partition& lam : partitions_containing(mu, r)) {
        SkewShape shape(lam, mu);
        if (shape.has_2x2_block()) continue;
        out.push_back({lam, gbs_weight(shape, RatFunc::q())});
    }
    return out;
}

/// Hecke-Clifford specialization on strict partitions: generalized double
/// strips weighted by (q-1)^{-1} wt~(lambda/mu; q).
inline std::vector<MNTerm> hecke_clifford_mn(const Partition& mu, int r) {
    if (!mu.is_strict()) throw std::invalid_argument("strict partition required");
    ensure_degree(mu.weight() + r);
    std::vector<MNTerm> out;
    RatFunc qm1 = RatFunc::q() - RatFunc(1);
    for (const Partition& lam : partitions_containing(mu, r)) {
        if (!lam.is_strict()) continue;
        ShiftedSkewShape shape(lam, mu);
        DoubleStripDecomposition d = double_strip_decompose(shape);
        if (!d.is_gds) continue;
        out.push_back({lam, gds_weight(shape, RatFunc::q()) / qm1});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hall-Littlewood (-1) evaluation

/// psi'_{lambda/mu}(t) = prod_j [lambda'_j - lambda'_{j+1}, lambda'_j - mu'_j]_t
/// on vertical strips, 0 otherwise.
inline RatFunc psi_prime_t(const Partition& lambda, const Partition& mu) {
    if (!lambda.contains(mu) || !SkewShape(lambda, mu).is_vertical_strip()) return RatFunc();
    RatFunc r(1);
    for (int j = 1; j <= lambda.width(); ++j)
        r *= gauss_binomial(lambda.conj_part(j) - lambda.conj_part(j + 1),
                            lambda.conj_part(j) - mu.conj_part(j), Var::t);
    return r;
}

/// sk_{lambda/mu}(t) = t^{n(lambda/mu)} prod_j [lambda'_j - mu'_{j+1}, m_j(mu)]_t.
inline RatFunc sk_t(const Partition& lambda, const Partition& mu) {
    if (!lambda.contains(mu)) return RatFunc();
    RatFunc r = RatFunc::t().pow(static_cast<int>(SkewShape(lambda, mu).n_stat()));
    for (int j = 1; j <= lambda.width(); ++j)
        r *= gauss_binomial(lambda.conj_part(j) - mu.conj_part(j + 1), mu.multiplicity(j), Var::t);
    return r;
}

/// Q_{lambda/mu}(-1; t) as the unfactorized sum over nu with lambda/nu a
/// vertical strip (the cross-check target for the factorized form).
inline RatFunc hl_q_minus1_sum(const Partition& lambda, const Partition& mu) {
    if (!lambda.contains(mu)) return RatFunc();
    RatFunc total;
    RatFunc neg_t_inv = RatFunc(-1) / RatFunc::t();
    for (const Partition& nu : vertical_strip_intermediates(lambda, mu)) {
        RatFunc term = psi_prime_t(lambda, nu) * sk_t(nu, mu);
        if (term.is_zero()) continue;
        total += term * neg_t_inv.pow(lambda.weight() - nu.weight());
    }
    return total * RatFunc::t().pow(lambda.weight() - mu.weight());
}

/// The factorized form: independent column sums over the removable depths
/// a_j = lambda'_j - max(mu'_j, lambda'_{j+1}).
inline RatFunc hl_q_minus1(const Partition& lambda, const Partition& mu) {
    if (!lambda.contains(mu)) return RatFunc();
    RatFunc total = RatFunc::t().pow(lambda.weight() - mu.weight());
    RatFunc neg_t_inv = RatFunc(-1) / RatFunc::t();
    for (int j = 1; j <= lambda.width(); ++j) {
        int aj = lambda.conj_part(j) - std::max(mu.conj_part(j), lambda.conj_part(j + 1));
        RatFunc col;
        for (int k = 0; k <= aj; ++k) {
            long top = lambda.conj_part(j) - mu.conj_part(j) - k;
            RatFunc term = RatFunc::t().pow(static_cast<int>(top * (top - 1) / 2));
            term *= gauss_binomial(lambda.multiplicity(j), k, Var::t);
            term *= gauss_binomial(lambda.conj_part(j) - mu.conj_part(j + 1) - k, mu.multiplicity(j), Var::t);
            col += term * neg_t_inv.pow(k);
        }
        total *= col;
        if (total.is_zero()) break;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Classical characters by border-strip removal

inline long classical_character(const Partition& lambda, const Partition& rho) {
    if (lambda.weight() != rho.weight()) throw std::invalid_argument("weights differ");
    static Cache<std::pair<Partition, Partition>, long> cache;
    if (lambda.empty()) return 1;
    return cache.get_or_compute({lambda, rho}, [&]() -> long {
        int r = rho.part(1);
        Partition rest = rho.tail();
        long total = 0;
        for (const Partition& nu : subpartitions_of_weight(lambda, lambda.weight() - r)) {
            SkewShape strip(lambda, nu);
            if (strip.has_2x2_block()) continue;
            auto comps = strip.components();
            if (comps.size() != 1) continue;
            std::set<int> rows;
            for (const Cell& c : comps[0]) rows.insert(c.row);
            long sign = (rows.size() - 1) % 2 == 1 ? -1 : 1;
            total += sign * classical_character(nu, rest);
        }
        return total;
    });
}

}  // namespace mnqt
