#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace ainfty {

struct ArgumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SignatureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotCocycleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact rational scalar backed by GMP. Never rounds.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long num, long den) : v_(num, den) { v_.canonicalize(); }
    explicit Rational(const mpq_class& v) : v_(v) {}

    static Rational from_string(const std::string& s)
    {
        mpq_class v(s);
        v.canonicalize();
        return Rational(v);
    }
    std::string str() const { return v_.get_str(); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o)
    {
        if (o.is_zero()) throw ArgumentError("division by zero");
        v_ /= o.v_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }

    bool is_zero() const { return v_ == 0; }
    Rational inv() const
    {
        if (is_zero()) throw ArgumentError("inverse of zero");
        return Rational(mpq_class(1) / v_);
    }

  private:
    mpq_class v_;
};

/// Prime field F_p. The modulus is fixed once per session, matching the
/// session-wide field choice of the CLI.
class PrimeField {
  public:
    PrimeField() : v_(0) {}
    PrimeField(long n)
    {
        long p = static_cast<long>(modulus());
        long r = n % p;
        if (r < 0) r += p;
        v_ = static_cast<std::uint64_t>(r);
    }

    static void set_modulus(std::uint64_t p)
    {
        if (p < 2 || !is_prime(p)) throw ArgumentError("modulus must be prime");
        modulus_ref() = p;
    }
    static std::uint64_t modulus() { return modulus_ref(); }

    static PrimeField from_string(const std::string& s)
    {
        // accepts "k" or "k mod p"
        std::size_t pos = s.find(" mod ");
        long k = std::stol(s.substr(0, pos));
        if (pos != std::string::npos) {
            std::uint64_t p = std::stoull(s.substr(pos + 5));
            if (p != modulus()) throw ArgumentError("scalar modulus mismatch: " + s);
        }
        return PrimeField(k);
    }
    std::string str() const { return std::to_string(v_) + " mod " + std::to_string(modulus()); }

    PrimeField operator-() const { return raw(v_ == 0 ? 0 : modulus() - v_); }
    PrimeField& operator+=(const PrimeField& o)
    {
        v_ += o.v_;
        if (v_ >= modulus()) v_ -= modulus();
        return *this;
    }
    PrimeField& operator-=(const PrimeField& o)
    {
        v_ += modulus() - o.v_;
        if (v_ >= modulus()) v_ -= modulus();
        return *this;
    }
    PrimeField& operator*=(const PrimeField& o)
    {
        v_ = (unsigned __int128)v_ * o.v_ % modulus();
        return *this;
    }
    PrimeField& operator/=(const PrimeField& o) { return *this *= o.inv(); }
    friend PrimeField operator+(PrimeField a, const PrimeField& b) { return a += b; }
    friend PrimeField operator-(PrimeField a, const PrimeField& b) { return a -= b; }
    friend PrimeField operator*(PrimeField a, const PrimeField& b) { return a *= b; }
    friend PrimeField operator/(PrimeField a, const PrimeField& b) { return a /= b; }
    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.v_ == b.v_; }
    friend bool operator!=(const PrimeField& a, const PrimeField& b) { return a.v_ != b.v_; }

    bool is_zero() const { return v_ == 0; }
    PrimeField inv() const
    {
        if (v_ == 0) throw ArgumentError("inverse of zero");
        return pow(*this, modulus() - 2);
    }

  private:
    static PrimeField raw(std::uint64_t v)
    {
        PrimeField r;
        r.v_ = v;
        return r;
    }
    static PrimeField pow(PrimeField b, std::uint64_t e)
    {
        PrimeField r(1);
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }
    static bool is_prime(std::uint64_t p)
    {
        if (p < 2) return false;
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }
    static std::uint64_t& modulus_ref()
    {
        static std::uint64_t p = 2;
        return p;
    }
    std::uint64_t v_;
};

template <class K> inline std::string scalar_to_string(const K& x) { return x.str(); }
template <class K> inline K scalar_from_string(const std::string& s) { return K::from_string(s); }

} // namespace ainfty
