#pragma once
#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "gg/errors.hpp"

namespace gg {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

// P_G(s) = sum a_n / n^s as an exact coefficient map (a_1 = 1).
struct DirichletPolynomial {
    std::map<long long, cpp_int> coeffs; // n -> a_n (zero entries omitted)
    long long group_order = 1;

    cpp_rational eval_at(long long t) const {
        cpp_rational r = 0;
        for (const auto& [n, a] : coeffs) {
            cpp_int nt = 1;
            for (long long i = 0; i < t; ++i) nt *= n;
            r += cpp_rational(a, nt);
        }
        return r;
    }

    // |G|^t * P(t) = phi_G(t)
    cpp_int phi(long long t) const {
        cpp_int gt = 1;
        for (long long i = 0; i < t; ++i) gt *= group_order;
        cpp_rational v = eval_at(t) * gt;
        if (denominator(v) != 1) fail("BadPolynomial", "phi evaluation is not integral");
        return numerator(v);
    }

    bool operator==(const DirichletPolynomial& o) const {
        return group_order == o.group_order && coeffs == o.coeffs;
    }

    nlohmann::json to_json() const {
        nlohmann::json c = nlohmann::json::object();
        for (const auto& [n, a] : coeffs) c[std::to_string(n)] = a.str();
        return nlohmann::json{{"order", group_order}, {"coeffs", c}};
    }

    static DirichletPolynomial from_json(const nlohmann::json& j) {
        DirichletPolynomial p;
        p.group_order = j.at("order").get<long long>();
        for (auto& [k, v] : j.at("coeffs").items()) {
            cpp_int a = v.is_string() ? cpp_int(v.get<std::string>()) : cpp_int(v.get<long long>());
            if (a != 0) p.coeffs[std::stoll(k)] = a;
        }
        return p;
    }
};

// Multiply P by the factor (1 - c/q^s).
inline DirichletPolynomial dp_multiply_factor(const DirichletPolynomial& P, long long q,
                                              const cpp_int& c) {
    DirichletPolynomial r = P;
    for (const auto& [n, a] : P.coeffs) {
        auto& slot = r.coeffs[n * q];
        slot -= c * a;
        if (slot == 0) r.coeffs.erase(n * q);
    }
    return r;
}

// Exact division of P by (1 - c/q^s): R with R = P + (c/q^s) R.  Fails (nullopt)
// if the quotient has an index not dividing the group order, i.e. the division
// is not exact within the divisor support.
inline std::optional<DirichletPolynomial> dp_divide_factor(const DirichletPolynomial& P,
                                                           long long q, const cpp_int& c) {
    DirichletPolynomial r;
    r.group_order = P.group_order;
    std::map<long long, cpp_int> rc;
    // indices in increasing order; r_m = p_m + c * r_{m/q}
    std::vector<long long> idx;
    for (long long n = 1; n <= P.group_order; ++n)
        if (P.group_order % n == 0) idx.push_back(n);
    for (long long n : idx) {
        cpp_int v = 0;
        auto it = P.coeffs.find(n);
        if (it != P.coeffs.end()) v = it->second;
        if (n % q == 0) {
            auto jt = rc.find(n / q);
            if (jt != rc.end()) v += c * jt->second;
        }
        if (v != 0) rc[n] = v;
    }
    // exactness check: multiplying back must reproduce P (catches mass at
    // indices beyond the divisor support)
    DirichletPolynomial cand;
    cand.group_order = P.group_order;
    cand.coeffs = rc;
    if (!(dp_multiply_factor(cand, q, c) == P)) return std::nullopt;
    return cand;
}

namespace detail {
inline bool is_prime_ll(long long q) {
    if (q < 2) return false;
    for (long long d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}
inline long long prime_power_base(long long n) { // returns p if n = p^k, else 0
    if (n < 2) return 0;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        long long m = n;
        while (m % p == 0) m /= p;
        return m == 1 ? p : 0;
    }
    return n; // prime
}
} // namespace detail

// Try to factor P as a product of factors (1 - c_i / q_i^s) with q_i prime
// powers and c_i >= 1 (the shape of P_G for soluble G).  Returns the factor
// list sorted by (q, c) or nullopt.
inline std::optional<std::vector<std::pair<long long, cpp_int>>> dp_prime_power_factorization(
    const DirichletPolynomial& P) {
    if (P.coeffs.empty() || P.coeffs.begin()->first != 1 || P.coeffs.begin()->second != 1)
        return std::nullopt;
    if (P.coeffs.size() == 1) return std::vector<std::pair<long long, cpp_int>>{};
    // smallest index > 1 with nonzero coefficient must be a prime power q with
    // a_q < 0; try c = 1..-a_q
    auto it = std::next(P.coeffs.begin());
    long long q = it->first;
    cpp_int aq = it->second;
    if (detail::prime_power_base(q) == 0 || aq >= 0) return std::nullopt;
    for (cpp_int c = 1; c <= -aq; ++c) {
        auto quo = dp_divide_factor(P, q, c);
        if (!quo) continue;
        auto rest = dp_prime_power_factorization(*quo);
        if (rest) {
            rest->push_back({q, c});
            std::sort(rest->begin(), rest->end());
            return rest;
        }
    }
    return std::nullopt;
}

// Try to factor P as prod over primes p of Q_{p,delta} where
// Q_{p,delta} = prod_{0<=i<delta} (1 - p^i/p^s): the shape forced on
// nilpotent groups.  Returns p -> delta.
inline std::optional<std::map<long long, int>> dp_q_factorization(const DirichletPolynomial& P) {
    auto fac = dp_prime_power_factorization(P);
    if (!fac) return std::nullopt;
    // group factors by prime base; require q = p for all and c values exactly
    // {p^0, p^1, ..., p^(delta-1)} for each prime
    std::map<long long, std::vector<cpp_int>> by_p;
    for (auto& [q, c] : *fac) {
        if (!detail::is_prime_ll(q)) return std::nullopt;
        by_p[q].push_back(c);
    }
    std::map<long long, int> result;
    for (auto& [p, cs] : by_p) {
        std::sort(cs.begin(), cs.end());
        cpp_int want = 1;
        for (auto& c : cs) {
            if (c != want) return std::nullopt;
            want *= p;
        }
        result[p] = static_cast<int>(cs.size());
    }
    return result;
}

inline std::string dp_product_form_string(const std::vector<std::pair<long long, cpp_int>>& fac) {
    if (fac.empty()) return "1";
    std::string s;
    for (auto& [q, c] : fac) s += "(1 - " + c.str() + "/" + std::to_string(q) + "^s)";
    return s;
}

} // namespace gg
