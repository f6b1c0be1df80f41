#pragma once

// Exact scalar tower used throughout the library:
//
//   Rational  --  arbitrary-precision rational numbers (GMP mpq_class)
//   Gaussian  --  Q(i), pairs of rationals
//   Surd     --  the multi-quadratic extension Q(i, sqrt(r_1), ..., sqrt(r_k)),
//                 stored as a sum of terms  c * sqrt(r)  with squarefree
//                 radicands r >= 1 and Gaussian coefficients c.
//
// All structural checks in the library are exact: equality means field
// equality, never an epsilon comparison.  The only place approximation
// enters is the sign of a *real* Surd value (used for signatures), which
// is computed with a large fixed-precision lower bound on sqrt and is
// reliable far beyond the coefficient heights this library produces.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace tighthom {

using Rational = mpq_class;

/// Build num/den with canonicalization (mpq_class(num, den) alone does not
/// reduce the fraction).
inline Rational rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline Rational rat_abs(const Rational& r) { return abs(r); }

inline std::string to_string(const Rational& r) { return r.get_str(); }

// ===================================================================
// Gaussian rationals Q(i)
// ===================================================================

struct Gaussian {
    Rational re;
    Rational im;

    Gaussian() : re(0), im(0) {}
    Gaussian(const Rational& r) : re(r), im(0) {}
    Gaussian(long r) : re(r), im(0) {}
    Gaussian(const Rational& r, const Rational& i) : re(r), im(i) {}
    Gaussian(long r, long i) : re(r), im(i) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    Gaussian conj() const { return Gaussian(re, -im); }

    /// Field norm re^2 + im^2 (a nonnegative rational, zero iff zero).
    Rational norm() const { return re * re + im * im; }

    /// |re| + |im|: exact nonnegative rational, zero iff the value is zero.
    Rational magnitude() const { return abs(re) + abs(im); }

    Gaussian operator-() const { return Gaussian(-re, -im); }

    Gaussian& operator+=(const Gaussian& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Gaussian& operator-=(const Gaussian& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }

    friend Gaussian operator+(const Gaussian& a, const Gaussian& b) {
        return Gaussian(a.re + b.re, a.im + b.im);
    }
    friend Gaussian operator-(const Gaussian& a, const Gaussian& b) {
        return Gaussian(a.re - b.re, a.im - b.im);
    }
    friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
        return Gaussian(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend bool operator==(const Gaussian& a, const Gaussian& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

    Gaussian inverse() const {
        if (is_zero()) throw std::domain_error("Gaussian: division by zero");
        Rational n = norm();
        return Gaussian(re / n, -im / n);
    }

    friend Gaussian operator/(const Gaussian& a, const Gaussian& b) { return a * b.inverse(); }
};

/// i as a Gaussian.
inline Gaussian gaussian_i() { return Gaussian(Rational(0), Rational(1)); }

/// |re| + |im|: an exact nonnegative rational that vanishes iff the value
/// does.  Used as the magnitude proxy in residual reports.
inline Rational magnitude_proxy(const Gaussian& g) { return rat_abs(g.re) + rat_abs(g.im); }

inline std::string to_string(const Gaussian& g) {
    if (sgn(g.im) == 0) return g.re.get_str();
    std::string s = "(" + g.re.get_str();
    if (sgn(g.im) >= 0) s += "+";
    s += g.im.get_str() + "i)";
    return s;
}

// ===================================================================
// Multi-quadratic surd field Q(i, sqrt(r_1), ..., sqrt(r_k))
// ===================================================================

/// Split n = s^2 * f with f squarefree; returns {s, f}.  Radicands in this
/// library stay small (products of binomial-coefficient factors), so trial
/// division is entirely adequate.
inline std::pair<long, long> squarefree_split(long n) {
    if (n <= 0) throw std::invalid_argument("squarefree_split: radicand must be positive");
    long s = 1, f = 1;
    for (long p = 2; p * p <= n; ++p) {
        long e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (long i = 0; i + 1 < e; i += 2) s *= p;
        if (e % 2 == 1) f *= p;
    }
    f *= n;  // leftover prime
    return {s, f};
}

/// Element of the real-radicand multi-quadratic extension of Q(i).
/// Represented as a sorted term list  sum_j coeff_j * sqrt(rad_j)  with
/// strictly increasing squarefree radicands >= 1 and nonzero coefficients.
/// The empty list is zero.
class Surd {
  public:
    using Term = std::pair<long, Gaussian>;  // (radicand, coefficient)

    Surd() = default;
    Surd(const Gaussian& g) {
        if (!g.is_zero()) terms_.push_back({1, g});
    }
    Surd(const Rational& r) : Surd(Gaussian(r)) {}
    Surd(long n) : Surd(Gaussian(n)) {}

    /// c * sqrt(rad); rad need not be squarefree.
    static Surd radical(long rad, const Gaussian& c = Gaussian(1)) {
        auto [s, f] = squarefree_split(rad);
        Surd out;
        Gaussian cc = c * Gaussian(s);
        if (!cc.is_zero()) out.terms_.push_back({f, cc});
        return out;
    }

    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    /// True when the value lies in Q(i) (single radicand-1 term or zero).
    bool is_gaussian() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 1);
    }

    /// The Q(i) value; throws if an irrational term is present.
    Gaussian gaussian_part() const {
        if (terms_.empty()) return Gaussian();
        if (terms_.size() == 1 && terms_[0].first == 1) return terms_[0].second;
        throw std::domain_error("Surd: value has irrational terms");
    }

    bool is_rational() const { return is_gaussian() && (terms_.empty() || terms_[0].second.is_real()); }

    Rational rational_part() const {
        Gaussian g = gaussian_part();
        if (!g.is_real()) throw std::domain_error("Surd: value is not real");
        return g.re;
    }

    /// Complex conjugation (radicands are real, so terms conjugate coefficientwise).
    Surd conj() const {
        Surd out;
        out.terms_.reserve(terms_.size());
        for (const auto& t : terms_) out.terms_.push_back({t.first, t.second.conj()});
        return out;
    }

    /// Real part as a Surd (coefficientwise).
    Surd real() const {
        Surd out;
        for (const auto& t : terms_)
            if (sgn(t.second.re) != 0) out.terms_.push_back({t.first, Gaussian(t.second.re)});
        return out;
    }

    /// True when all coefficients are real.
    bool is_real_valued() const {
        for (const auto& t : terms_)
            if (sgn(t.second.im) != 0) return false;
        return true;
    }

    Surd operator-() const {
        Surd out;
        out.terms_.reserve(terms_.size());
        for (const auto& t : terms_) out.terms_.push_back({t.first, -t.second});
        return out;
    }

    friend Surd operator+(const Surd& a, const Surd& b) {
        Surd out;
        out.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            if (a.terms_[i].first < b.terms_[j].first) {
                out.terms_.push_back(a.terms_[i++]);
            } else if (a.terms_[i].first > b.terms_[j].first) {
                out.terms_.push_back(b.terms_[j++]);
            } else {
                Gaussian c = a.terms_[i].second + b.terms_[j].second;
                if (!c.is_zero()) out.terms_.push_back({a.terms_[i].first, c});
                ++i;
                ++j;
            }
        }
        while (i < a.terms_.size()) out.terms_.push_back(a.terms_[i++]);
        while (j < b.terms_.size()) out.terms_.push_back(b.terms_[j++]);
        return out;
    }

    friend Surd operator-(const Surd& a, const Surd& b) { return a + (-b); }

    Surd& operator+=(const Surd& o) {
        *this = *this + o;
        return *this;
    }
    Surd& operator-=(const Surd& o) {
        *this = *this + (-o);
        return *this;
    }

    friend Surd operator*(const Surd& a, const Surd& b) {
        if (a.terms_.empty() || b.terms_.empty()) return Surd();
        // Fast path: both values in Q(i).
        if (a.is_gaussian() && b.is_gaussian()) {
            Surd out;
            Gaussian c = a.terms_[0].second * b.terms_[0].second;
            if (!c.is_zero()) out.terms_.push_back({1, c});
            return out;
        }
        Surd out;
        for (const auto& ta : a.terms_) {
            Surd partial;
            partial.terms_.reserve(b.terms_.size());
            for (const auto& tb : b.terms_) {
                // sqrt(r)*sqrt(s) = g*sqrt((r/g)*(s/g)) with g = gcd(r,s);
                // both radicands squarefree makes the product radicand squarefree.
                long g = std::gcd(ta.first, tb.first);
                long rad = (ta.first / g) * (tb.first / g);
                Gaussian c = ta.second * tb.second * Gaussian(g);
                partial = partial + term_surd(rad, c);
            }
            out = out + partial;
        }
        return out;
    }

    Surd& operator*=(const Surd& o) {
        *this = *this * o;
        return *this;
    }

    friend bool operator==(const Surd& a, const Surd& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Surd& a, const Surd& b) { return !(a.terms_ == b.terms_); }

    /// Galois conjugation sending sqrt(p) -> -sqrt(p) for one prime p:
    /// negates every term whose radicand p divides.
    Surd galois_flip(long p) const {
        Surd out;
        out.terms_.reserve(terms_.size());
        for (const auto& t : terms_)
            out.terms_.push_back({t.first, (t.first % p == 0) ? -t.second : t.second});
        return out;
    }

    Surd inverse() const {
        if (terms_.empty()) throw std::domain_error("Surd: division by zero");
        if (is_gaussian()) return Surd(terms_[0].second.inverse());
        if (terms_.size() == 1) {
            // (c*sqrt(r))^-1 = sqrt(r) / (c*r)
            long r = terms_[0].first;
            Gaussian c = (terms_[0].second * Gaussian(r)).inverse();
            Surd out;
            out.terms_.push_back({r, c});
            return out;
        }
        // Reduce to Q(i) by multiplying with Galois conjugates over each
        // prime in the radicand support.
        std::vector<long> primes = radicand_primes();
        Surd cof(Gaussian(1));
        Surd acc = *this;
        for (long p : primes) {
            if (acc.is_gaussian()) break;
            Surd flipped = acc.galois_flip(p);
            cof = cof * flipped;
            acc = acc * flipped;
        }
        Gaussian denom = acc.gaussian_part();  // invariant under all flips
        return cof * Surd(denom.inverse());
    }

    friend Surd operator/(const Surd& a, const Surd& b) { return a * b.inverse(); }

    /// Exact nonnegative rational, zero iff the value is zero: sum over terms
    /// of |re| + |im| of the coefficient.
    Rational magnitude() const {
        Rational m(0);
        for (const auto& t : terms_) m += magnitude_proxy(t.second);
        return m;
    }

    /// Sign of a real Surd value (-1, 0, +1).  Exact zero is decided
    /// symbolically; otherwise the value is evaluated with >= 192 fractional
    /// bits of precision per radical, which dwarfs the minimal magnitude of
    /// any nonzero value this library constructs.
    int sign() const {
        if (!is_real_valued()) throw std::domain_error("Surd: sign of a non-real value");
        if (terms_.empty()) return 0;
        if (terms_.size() == 1) return sgn(terms_[0].second.re);
        mpq_class acc(0);
        const long bits = 192;
        mpz_class scale = mpz_class(1) << bits;
        for (const auto& t : terms_) {
            // floor(sqrt(r * 2^(2*bits))) / 2^bits approximates sqrt(r)
            // with absolute error < 2^-bits.
            mpz_class shifted = mpz_class(t.first) * scale * scale;
            mpz_class root = sqrt(shifted);
            mpq_class approx(root, scale);
            approx.canonicalize();
            acc += t.second.re * approx;
        }
        int s = sgn(acc);
        if (s == 0)
            throw std::domain_error("Surd: sign evaluation inconclusive (value too close to zero)");
        return s;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& t : terms_) {
            if (!first) s += " + ";
            first = false;
            s += to_string(t.second);
            if (t.first != 1) s += "*sqrt(" + std::to_string(t.first) + ")";
        }
        return s;
    }

  private:
    static Surd term_surd(long rad, const Gaussian& c) {
        Surd out;
        if (!c.is_zero()) out.terms_.push_back({rad, c});
        return out;
    }

    /// Odd primes dividing some radicand (radicands are squarefree, so the
    /// prime factors are read off by trial division of small numbers).
    std::vector<long> radicand_primes() const {
        std::vector<long> ps;
        for (const auto& t : terms_) {
            long r = t.first;
            for (long p = 2; p * p <= r; ++p) {
                if (r % p == 0) {
                    ps.push_back(p);
                    r /= p;
                }
            }
            if (r > 1) ps.push_back(r);
        }
        std::sort(ps.begin(), ps.end());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        return ps;
    }

    std::vector<Term> terms_;
};

inline Surd surd_i() { return Surd(gaussian_i()); }

inline Surd surd_sqrt(long n) { return Surd::radical(n); }

inline bool is_zero(const Surd& s) { return s.is_zero(); }

inline std::string to_string(const Surd& s) { return s.str(); }

}  // namespace tighthom
