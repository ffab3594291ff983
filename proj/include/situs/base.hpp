#ifndef SITUS_BASE_HPP
#define SITUS_BASE_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace situs {

// Input that violates a precondition (bad labels, arity mismatch, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A search exceeded its candidate budget; carries the computed bound.
struct SizeError : std::runtime_error {
    long long bound;
    SizeError(const std::string& msg, long long b) : std::runtime_error(msg), bound(b) {}
};

// An operation needed simplices beyond the stored truncation.
struct DegreeBudgetError : std::runtime_error {
    explicit DegreeBudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

// Subset of {0,..,universe-1} as a bit vector.
class Subset {
public:
    Subset() : n_(0) {}
    explicit Subset(int universe, bool full = false)
        : n_(universe), w_((universe + 63) / 64, full ? ~0ull : 0ull) {
        trim();
    }

    int universe() const { return n_; }
    void add(int i) { w_[i >> 6] |= 1ull << (i & 63); }
    void remove(int i) { w_[i >> 6] &= ~(1ull << (i & 63)); }
    bool contains(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    int count() const {
        int c = 0;
        for (auto x : w_) c += __builtin_popcountll(x);
        return c;
    }
    bool empty() const {
        for (auto x : w_)
            if (x) return false;
        return true;
    }
    bool is_full() const { return count() == n_; }

    bool contains_all(const Subset& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (o.w_[i] & ~w_[i]) return false;
        return true;
    }
    Subset intersect(const Subset& o) const {
        Subset r(n_);
        for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
        return r;
    }
    Subset unite(const Subset& o) const {
        Subset r(n_);
        for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
        return r;
    }
    bool operator==(const Subset& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Subset& o) const { return !(*this == o); }

    std::vector<int> elements() const {
        std::vector<int> out;
        for (int i = 0; i < n_; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }

    // Image under a total map given as a table into {0,..,m-1}.
    Subset image(const std::vector<int>& table, int m) const {
        Subset r(m);
        for (int i = 0; i < n_; ++i)
            if (contains(i)) r.add(table[i]);
        return r;
    }
    // Preimage under a total map {0,..,k-1} -> universe().
    Subset preimage(const std::vector<int>& table) const {
        Subset r((int)table.size());
        for (size_t i = 0; i < table.size(); ++i)
            if (contains(table[i])) r.add((int)i);
        return r;
    }

private:
    void trim() {
        if (n_ % 64 && !w_.empty()) w_.back() &= (1ull << (n_ % 64)) - 1;
    }
    int n_;
    std::vector<uint64_t> w_;
};

// Exact rational arithmetic; desk-scale values, no overflow handling needed.
class Rational {
public:
    Rational() : p_(0), q_(1) {}
    Rational(long long p) : p_(p), q_(1) {}
    Rational(long long p, long long q) : p_(p), q_(q) {
        if (q_ == 0) throw DomainError("rational with zero denominator");
        norm();
    }

    long long num() const { return p_; }
    long long den() const { return q_; }

    Rational operator+(const Rational& o) const { return Rational(p_ * o.q_ + o.p_ * q_, q_ * o.q_); }
    Rational operator-(const Rational& o) const { return Rational(p_ * o.q_ - o.p_ * q_, q_ * o.q_); }
    Rational operator*(const Rational& o) const { return Rational(p_ * o.p_, q_ * o.q_); }
    Rational operator/(const Rational& o) const {
        if (o.p_ == 0) throw DomainError("rational division by zero");
        return Rational(p_ * o.q_, q_ * o.p_);
    }
    bool operator==(const Rational& o) const { return p_ == o.p_ && q_ == o.q_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return p_ * o.q_ < o.p_ * q_; }
    bool operator<=(const Rational& o) const { return p_ * o.q_ <= o.p_ * q_; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    Rational abs() const { return p_ < 0 ? Rational(-p_, q_) : *this; }

    std::string str() const {
        if (q_ == 1) return std::to_string(p_);
        return std::to_string(p_) + "/" + std::to_string(q_);
    }
    // Parses "p", "p/q" or a plain decimal like "0.25".
    static Rational parse(const std::string& s);

private:
    void norm() {
        if (q_ < 0) { p_ = -p_; q_ = -q_; }
        long long g = std::gcd(p_ < 0 ? -p_ : p_, q_);
        if (g > 1) { p_ /= g; q_ /= g; }
        if (p_ == 0) q_ = 1;
    }
    long long p_, q_;
};

} // namespace situs

#endif
