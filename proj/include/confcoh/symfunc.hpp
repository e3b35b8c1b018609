#pragma once

#include "confcoh/exact.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <mutex>
#include <sstream>

namespace confcoh {

// Laurent polynomial in t over Q.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(Rational c) {  // NOLINT: constants convert implicitly
        if (c != 0) terms_[0] = c;
    }
    static LaurentPoly monomial(Rational c, int e) {
        LaurentPoly p;
        if (c != 0) p.terms_[e] = c;
        return p;
    }
    static LaurentPoly t() { return monomial(1, 1); }

    const std::map<int, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(int e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add(e, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator-(const LaurentPoly& a) { return LaurentPoly() - a; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [e1, c1] : a.terms_)
            for (const auto& [e2, c2] : b.terms_) r.add(e1 + e2, c1 * c2);
        return r;
    }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

    // t -> t^d
    LaurentPoly dilate(int d) const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_[e * d] = c;
        return r;
    }
    LaurentPoly shift(int s) const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_[e + s] = c;
        return r;
    }
    Rational at_one() const {
        Rational s = 0;
        for (const auto& [e, c] : terms_) s += c;
        return s;
    }

    // Monomials by decreasing exponent: "t^4 - 3/2 t + 1".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            out += monomial_str(it->second, it->first, first);
            first = false;
        }
        return out;
    }

    static std::string monomial_str(const Rational& c, int e, bool first) {
        std::string out;
        Rational a = abs(c);
        if (first)
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        std::string tpart = e == 0 ? "" : (e == 1 ? "t" : "t^" + std::to_string(e));
        if (a != 1 || tpart.empty()) {
            out += a.get_str();
            if (!tpart.empty()) out += " ";
        }
        return out + tpart;
    }

private:
    void add(int e, const Rational& c) {
        if (c == 0) return;
        auto& x = terms_[e];
        x += c;
        if (x == 0) terms_.erase(e);
    }
    std::map<int, Rational> terms_;
};

// Parses sums of monomials such as "t^2", "-t + t^3", "3/2 t^-1 - 2", "0".
inline LaurentPoly parse_laurent(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    auto fail = [&]() { throw ValidationError("cannot parse polynomial: " + text); };
    if (s.empty()) fail();
    auto digit = [&](std::size_t i) { return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); };
    LaurentPoly out;
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            fail();
        }
        std::size_t j = i;
        while (digit(j) || (j < s.size() && s[j] == '/')) ++j;
        bool has_coef = j > i;
        Rational c = 1;
        if (has_coef) {
            try {
                c = parse_rational(s.substr(i, j - i));
            } catch (const std::exception&) {
                fail();
            }
        }
        i = j;
        if (has_coef && i < s.size() && s[i] == '*') ++i;
        int e = 0;
        if (i < s.size() && s[i] == 't') {
            ++i;
            e = 1;
            if (i < s.size() && s[i] == '^') {
                std::size_t k = ++i;
                if (k < s.size() && s[k] == '-') ++k;
                if (!digit(k)) fail();
                while (digit(k)) ++k;
                e = std::stoi(s.substr(i, k - i));
                i = k;
            }
        } else if (!has_coef) {
            fail();
        }
        out += LaurentPoly::monomial(c * sign, e);
    }
    return out;
}

using Partition = std::vector<int>;  // weakly decreasing, positive parts

inline int weight(const Partition& p) {
    int s = 0;
    for (int x : p) s += x;
    return s;
}

inline std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int rest, int maxpart) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

inline std::string partition_str(const Partition& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + ")";
}

// z_mu = prod i^{m_i} m_i!
inline Integer z_of(const Partition& mu) {
    std::map<int, int> mult;
    for (int p : mu) ++mult[p];
    Integer z = 1;
    for (const auto& [p, m] : mult)
        for (int i = 1; i <= m; ++i) z *= Integer(p) * i;
    return z;
}

inline int mobius(int n) {
    int r = 1;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            r = -r;
        }
    return n > 1 ? -r : r;
}

// Character of the irreducible S_n-representation lambda at cycle type mu (Murnaghan-Nakayama).
inline Integer irreducible_character(const Partition& lambda, const Partition& mu) {
    require(weight(lambda) == weight(mu), "character arguments of different size");
    static std::mutex mtx;
    static std::map<std::pair<Partition, Partition>, Integer> memo;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = memo.find({lambda, mu});
        if (it != memo.end()) return it->second;
    }
    Integer result;
    if (mu.empty()) {
        result = 1;
    } else {
        int r = mu.front();
        Partition rest(mu.begin() + 1, mu.end());
        int len = static_cast<int>(lambda.size());
        std::vector<int> beta(len);
        for (int i = 0; i < len; ++i) beta[i] = lambda[i] + (len - 1 - i);
        std::set<int> bs(beta.begin(), beta.end());
        result = 0;
        for (int b : beta) {
            int nb = b - r;
            if (nb < 0 || bs.count(nb)) continue;
            int between = 0;
            for (int x : beta)
                if (x > nb && x < b) ++between;
            std::vector<int> nbeta;
            for (int x : beta) nbeta.push_back(x == b ? nb : x);
            std::sort(nbeta.rbegin(), nbeta.rend());
            Partition nl;
            for (int i = 0; i < len; ++i) {
                int part = nbeta[i] - (len - 1 - i);
                if (part > 0) nl.push_back(part);
            }
            Integer v = irreducible_character(nl, rest);
            result += between % 2 ? -v : v;
        }
    }
    std::lock_guard<std::mutex> lock(mtx);
    memo[{lambda, mu}] = result;
    return result;
}

// Truncated symmetric function with Laurent coefficients, stored in the power-sum basis.
class SymFunc {
public:
    explicit SymFunc(int N = 0) : N_(N) { require(N >= 0, "negative truncation"); }

    static SymFunc p(const Partition& mu, int N, LaurentPoly c = Rational(1)) {
        SymFunc f(N);
        if (weight(mu) <= N) f.add(mu, c);
        return f;
    }
    static SymFunc one(int N) { return p({}, N); }

    int truncation() const { return N_; }
    const std::map<Partition, LaurentPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    LaurentPoly coeff(const Partition& mu) const {
        auto it = terms_.find(mu);
        return it == terms_.end() ? LaurentPoly() : it->second;
    }

    void add(const Partition& mu, const LaurentPoly& c) {
        if (weight(mu) > N_ || c.is_zero()) return;
        auto& x = terms_[mu];
        x += c;
        if (x.is_zero()) terms_.erase(mu);
    }

    SymFunc arity(int n) const {
        SymFunc r(N_);
        for (const auto& [mu, c] : terms_)
            if (weight(mu) == n) r.terms_[mu] = c;
        return r;
    }
    int min_arity() const {
        int m = N_ + 1;
        for (const auto& [mu, c] : terms_) m = std::min(m, weight(mu));
        return m;
    }

    friend SymFunc operator+(const SymFunc& a, const SymFunc& b) {
        same(a, b);
        SymFunc r = a;
        for (const auto& [mu, c] : b.terms_) r.add(mu, c);
        return r;
    }
    friend SymFunc operator-(const SymFunc& a, const SymFunc& b) {
        same(a, b);
        SymFunc r = a;
        for (const auto& [mu, c] : b.terms_) r.add(mu, -c);
        return r;
    }
    friend SymFunc operator*(const LaurentPoly& s, const SymFunc& a) {
        SymFunc r(a.N_);
        for (const auto& [mu, c] : a.terms_) r.add(mu, s * c);
        return r;
    }
    friend SymFunc operator*(const SymFunc& a, const SymFunc& b) {
        same(a, b);
        SymFunc r(a.N_);
        for (const auto& [m1, c1] : a.terms_)
            for (const auto& [m2, c2] : b.terms_) {
                if (weight(m1) + weight(m2) > a.N_) continue;
                Partition m(m1);
                m.insert(m.end(), m2.begin(), m2.end());
                std::sort(m.rbegin(), m.rend());
                r.add(m, c1 * c2);
            }
        return r;
    }
    friend bool operator==(const SymFunc& a, const SymFunc& b) { return a.N_ == b.N_ && a.terms_ == b.terms_; }

    // p_d o f: p_k -> p_{dk}, t -> t^d
    SymFunc adams(int d) const {
        SymFunc r(N_);
        for (const auto& [mu, c] : terms_) {
            Partition m;
            for (int x : mu) m.push_back(x * d);
            r.add(m, c.dilate(d));
        }
        return r;
    }

    SymFunc euler() const {
        SymFunc r(N_);
        for (const auto& [mu, c] : terms_) r.add(mu, LaurentPoly(c.at_one()));
        return r;
    }

private:
    static void same(const SymFunc& a, const SymFunc& b) {
        require(a.N_ == b.N_, "symmetric functions with different truncation");
    }
    int N_;
    std::map<Partition, LaurentPoly> terms_;
};

// f o g. Coefficients of f are scalars for the substitution; g must have no arity-0 term.
inline SymFunc plethysm(const SymFunc& f, const SymFunc& g) {
    require(f.truncation() == g.truncation(), "symmetric functions with different truncation");
    require(g.coeff({}).is_zero(), "plethysm needs an inner function without constant term");
    int N = g.truncation();
    std::map<int, SymFunc> adams;
    std::map<Partition, SymFunc> prods;
    std::function<const SymFunc&(const Partition&)> power = [&](const Partition& mu) -> const SymFunc& {
        auto it = prods.find(mu);
        if (it != prods.end()) return it->second;
        SymFunc v = SymFunc::one(N);
        if (!mu.empty()) {
            int d = mu.back();
            if (!adams.count(d)) adams.emplace(d, g.adams(d));
            Partition rest(mu.begin(), mu.end() - 1);
            v = power(rest) * adams.at(d);
        }
        return prods.emplace(mu, std::move(v)).first->second;
    };
    SymFunc r(N);
    int gmin = g.is_zero() ? N + 1 : g.min_arity();
    for (const auto& [mu, c] : f.terms()) {
        if (!mu.empty() && static_cast<long>(weight(mu)) * gmin > N) continue;
        r = r + c * power(mu);
    }
    return r;
}

inline SymFunc schur(const Partition& lambda, int N) {
    int n = weight(lambda);
    require(n <= N, "Schur function beyond truncation");
    SymFunc f(N);
    for (const auto& mu : partitions_of(n)) {
        Integer chi = irreducible_character(lambda, mu);
        if (chi != 0) f.add(mu, LaurentPoly(Rational(chi) / Rational(z_of(mu))));
    }
    return f;
}

// Schur expansion per arity: lambda -> coefficient.
inline std::map<Partition, LaurentPoly> to_schur(const SymFunc& f) {
    std::map<Partition, LaurentPoly> out;
    std::set<int> arities;
    for (const auto& [mu, c] : f.terms()) arities.insert(weight(mu));
    for (int n : arities)
        for (const auto& lambda : partitions_of(n)) {
            LaurentPoly s;
            for (const auto& mu : partitions_of(n)) {
                auto c = f.coeff(mu);
                if (!c.is_zero()) s += Rational(irreducible_character(lambda, mu)) * c;
            }
            if (!s.is_zero()) out[lambda] = s;
        }
    return out;
}

inline SymFunc element_E(int N) {
    SymFunc f(N);
    for (int n = 0; n <= N; ++n)
        for (const auto& mu : partitions_of(n)) f.add(mu, LaurentPoly(Rational(1) / Rational(z_of(mu))));
    return f;
}

inline SymFunc element_L(int N) {
    SymFunc f(N);
    for (int n = 1; n <= N; ++n)
        for (int d = 1; d <= n; ++d) {
            if (n % d) continue;
            int mu = mobius(d);
            if (!mu) continue;
            Rational c = Rational(sign_of_power(n / d - 1) * mu) / Rational(n);
            f.add(Partition(n / d, d), LaurentPoly(c));
        }
    return f;
}

// S_k = -sum_{n >= k} (-t)^{n-k+2} s_{(k,1^{n-k})}
inline SymFunc element_S(int k, int N) {
    require(k >= 2, "S_k needs k >= 2");
    SymFunc f(N);
    for (int n = k; n <= N; ++n) {
        Partition hook{k};
        for (int i = 0; i < n - k; ++i) hook.push_back(1);
        int e = n - k + 2;
        f = f - LaurentPoly::monomial(sign_of_power(e), e) * schur(hook, N);
    }
    return f;
}

inline SymFunc pi_k_char(int k, int N) {
    require(k >= 2 && k <= N, "pi_k_char needs 2 <= k <= N");
    SymFunc s1 = SymFunc::p({1}, N);
    return s1 + LaurentPoly::monomial(1, -1) * plethysm(element_L(N), element_S(k, N));
}

// k = 2 shortcut: sum_n t^{n-1}/n sum_{d|n} (-1)^{n/d-1} mu(d) p_d^{n/d}
inline SymFunc pi_2_direct(int N) {
    SymFunc f(N);
    for (int n = 1; n <= N; ++n)
        for (int d = 1; d <= n; ++d) {
            if (n % d || !mobius(d)) continue;
            Rational c = Rational(sign_of_power(n / d - 1) * mobius(d)) / Rational(n);
            f.add(Partition(n / d, d), LaurentPoly::monomial(c, n - 1));
        }
    return f;
}

inline SymFunc kequals_series(const LaurentPoly& P, int k, int N) {
    require(k >= 2, "k-equals series needs k >= 2");
    SymFunc inner(N);
    if (k <= N)
        inner = P * pi_k_char(k, N);
    else
        inner = P * SymFunc::p({1}, N);
    return plethysm(element_E(N), inner);
}

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }

inline std::ostream& operator<<(std::ostream& os, const SymFunc& f) {
    os << "{";
    bool first = true;
    for (const auto& [mu, c] : f.terms()) {
        os << (first ? "" : ", ") << "p" << partition_str(mu) << ": " << c;
        first = false;
    }
    return os << "}";
}

inline SymFunc euler_specialize(const SymFunc& f) { return f.euler(); }

// Frobenius characteristic sum_i (-t)^i ch(H^i) from per-degree characters at one element per cycle type.
inline SymFunc frobenius(int n, const std::map<int, std::map<Partition, Rational>>& by_degree, int N) {
    SymFunc f(N);
    for (const auto& [deg, row] : by_degree)
        for (const auto& [mu, chi] : row)
            if (chi != 0) f.add(mu, LaurentPoly::monomial(sign_of_power(deg) * chi / Rational(z_of(mu)), deg));
    (void)n;
    return f;
}

// "arity n: t^4 s_(2) - t^3 s_(2)"; partitions in decreasing lexicographic order.
inline std::string render_arity(const SymFunc& f, int n) {
    auto sch = to_schur(f.arity(n));
    std::string out = "arity " + std::to_string(n) + ": ";
    if (sch.empty()) return out + "0";
    bool first = true;
    for (auto it = sch.rbegin(); it != sch.rend(); ++it) {
        const auto& terms = it->second.terms();
        for (auto jt = terms.rbegin(); jt != terms.rend(); ++jt) {
            const Rational& c = jt->second;
            int e = jt->first;
            if (first)
                out += c < 0 ? "-" : "";
            else
                out += c < 0 ? " - " : " + ";
            if (abs(c) != 1) out += Rational(abs(c)).get_str() + " ";
            if (e != 0) out += (e == 1 ? std::string("t") : "t^" + std::to_string(e)) + " ";
            out += "s_" + partition_str(it->first);
            first = false;
        }
    }
    return out;
}

inline std::string render(const SymFunc& f, int from = 1) {
    std::string out;
    for (int n = from; n <= f.truncation(); ++n) out += render_arity(f, n) + "\n";
    return out;
}

}  // namespace confcoh
