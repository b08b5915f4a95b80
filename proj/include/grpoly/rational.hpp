#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "grpoly/config.hpp"

namespace grpoly {

// Exact rational number. Always stored canonically: reduced, denominator > 0.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(static_cast<signed long>(n)) {}
    Rat(long num, long den) {
        if (den == 0) throw validation_error("rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Parses "p/q" or "p"; p may be negative, q must be positive digits.
    static Rat parse(const std::string& s) {
        auto bad = [&] { return parse_error("bad rational literal: '" + s + "'"); };
        if (s.empty()) throw bad();
        std::string num = s, den = "1";
        if (auto pos = s.find('/'); pos != std::string::npos) {
            num = s.substr(0, pos);
            den = s.substr(pos + 1);
        }
        auto digits = [](const std::string& t, bool sign_ok) {
            if (t.empty()) return false;
            size_t i = (sign_ok && t[0] == '-') ? 1 : 0;
            if (i == t.size()) return false;
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') return false;
            return true;
        };
        if (!digits(num, true) || !digits(den, false)) throw bad();
        mpq_class q;
        if (q.set_str(num + "/" + den, 10) != 0) throw bad();
        if (q.get_den() == 0) throw validation_error("rational with zero denominator");
        q.canonicalize();
        Rat r;
        r.v_ = q;
        return r;
    }

    Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
    Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_)); }
    Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }
    Rat operator/(const Rat& o) const {
        if (o.v_ == 0) throw validation_error("division of rationals by zero");
        return Rat(mpq_class(v_ / o.v_));
    }
    Rat& operator+=(const Rat& o) { v_ += o.v_; v_.canonicalize(); return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; v_.canonicalize(); return *this; }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    bool operator!=(const Rat& o) const { return v_ != o.v_; }
    bool operator<(const Rat& o) const { return v_ < o.v_; }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    // Render as "p/q", or "p" when the denominator is 1.
    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    std::string num_str() const { return v_.get_num().get_str(); }
    std::string den_str() const { return v_.get_den().get_str(); }

    const mpq_class& raw() const { return v_; }

private:
    mpq_class v_;
};

inline Rat rat_inverse_of(long n) { return Rat(1, n); }

// n! as an exact integer rational.
inline Rat factorial(int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rat(mpq_class(f));
}

}  // namespace grpoly
