#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace confcoh {

using Integer = mpz_class;
using Rational = mpq_class;

enum class Ring { Z, Q };

inline std::string ring_name(Ring r) { return r == Ring::Z ? "Z" : "Q"; }

inline Ring parse_ring(const std::string& s) {
    if (s == "Z") return Ring::Z;
    if (s == "Q") return Ring::Q;
    throw std::invalid_argument("unknown ring: " + s);
}

// Exit-code carrying errors. Validation problems map to 1, scale bounds to 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

class ScaleError : public std::runtime_error {
public:
    explicit ScaleError(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw ValidationError(msg);
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw ValidationError("bad rational literal: " + s);
    if (q.get_den() == 0) throw ValidationError("zero denominator: " + s);
    q.canonicalize();
    return q;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline int sign_of_power(long e) { return (e % 2 == 0) ? 1 : -1; }

// Sparse vector keyed by basis index.
using SparseVec = std::map<int, Rational>;

inline void axpy(SparseVec& y, const Rational& a, const SparseVec& x) {
    if (a == 0) return;
    for (const auto& [i, v] : x) {
        auto& slot = y[i];
        slot += a * v;
        if (slot == 0) y.erase(i);
    }
}

inline void add_term(SparseVec& y, int i, const Rational& a) {
    if (a == 0) return;
    auto& slot = y[i];
    slot += a;
    if (slot == 0) y.erase(i);
}

}  // namespace confcoh
