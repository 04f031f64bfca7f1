#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fqrank {

namespace detail {

inline bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Coefficient vectors over GF(p), constant term first, no trailing zeros.
inline void poly_trim(std::vector<std::uint32_t>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<std::uint32_t> poly_mul(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b,
                                           std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = static_cast<std::uint32_t>(
                (out[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    poly_trim(out);
    return out;
}

// Remainder of a mod b, b monic.
inline std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> a,
                                           const std::vector<std::uint32_t>& b,
                                           std::uint32_t p) {
    poly_trim(a);
    while (a.size() >= b.size()) {
        const std::uint32_t c = a.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) {
            const std::uint64_t sub = static_cast<std::uint64_t>(c) * b[j] % p;
            a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + p - sub) % p);
        }
        poly_trim(a);
    }
    return a;
}

// Trial division by every monic polynomial of degree 1..deg/2.
inline bool poly_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
    const std::size_t deg = poly.size() - 1;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t t = 0; t < d; ++t) count *= p;
        for (std::uint64_t c = 0; c < count; ++c) {
            std::vector<std::uint32_t> cand(d + 1, 0);
            std::uint64_t cc = c;
            for (std::size_t t = 0; t < d; ++t) { cand[t] = cc % p; cc /= p; }
            cand[d] = 1;
            if (poly_mod(poly, cand, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace detail

/// GF(p^m) for prime p and q = p^m <= 2^16. An element's canonical integer
/// encoding is the base-p digit vector of its polynomial residue packed into
/// [0, q); the additive identity encodes as 0 and the multiplicative identity
/// as 1. Multiplication and inversion run on log/antilog tables built at
/// construction, which is why the order is capped.
///
/// Immutable after construction; all operations are const and thread-safe.
class Field {
public:
    static constexpr std::uint32_t kMaxOrder = 1u << 16;

    /// Builds GF(characteristic^degree). `reduction_poly` lists coefficients
    /// constant term first and must be a monic irreducible of the right
    /// degree; when omitted for degree > 1, the first monic irreducible in
    /// ascending numeric order of the coefficient vector is used, so the
    /// default field is identical across runs and platforms.
    explicit Field(std::uint32_t characteristic, std::uint32_t degree = 1,
                   std::vector<std::uint32_t> reduction_poly = {})
        : p_(characteristic), m_(degree), poly_(std::move(reduction_poly)) {
        if (!detail::is_prime(p_))
            throw std::invalid_argument("field characteristic " + std::to_string(p_) +
                                        " is not prime");
        if (m_ < 1) throw std::invalid_argument("field degree must be >= 1");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < m_; ++i) {
            q *= p_;
            if (q > kMaxOrder)
                throw std::invalid_argument("field order exceeds the 2^16 table guard");
        }
        q_ = static_cast<std::uint32_t>(q);

        if (m_ == 1) {
            if (!poly_.empty())
                throw std::invalid_argument("prime field takes no reduction polynomial");
        } else {
            if (poly_.empty()) poly_ = default_poly(p_, m_);
            validate_poly();
        }
        build_tables();
    }

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t degree() const { return m_; }
    std::uint32_t order() const { return q_; }
    /// Constant term first; empty for prime fields.
    const std::vector<std::uint32_t>& reduction_poly() const { return poly_; }

    // Arithmetic on canonical encodings; arguments must lie in [0, order()).
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (p_ == 2) return a ^ b;
        if (m_ == 1) return (a + b) % p_;
        std::uint32_t out = 0, pw = 1;
        for (std::uint32_t i = 0; i < m_; ++i) {
            out += (a % p_ + b % p_) % p_ * pw;
            a /= p_; b /= p_; pw *= p_;
        }
        return out;
    }

    std::uint32_t neg(std::uint32_t a) const {
        if (p_ == 2) return a;
        if (m_ == 1) return (p_ - a) % p_;
        std::uint32_t out = 0, pw = 1;
        for (std::uint32_t i = 0; i < m_; ++i) {
            out += (p_ - a % p_) % p_ * pw;
            a /= p_; pw *= p_;
        }
        return out;
    }

    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }

    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw std::domain_error("zero has no multiplicative inverse");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }

    std::uint32_t pow(std::uint32_t a, std::int64_t e) const {
        if (a == 0) {
            if (e == 0) return 1;
            if (e < 0) throw std::domain_error("zero has no multiplicative inverse");
            return 0;
        }
        const std::int64_t span = q_ - 1;
        std::int64_t r = e % span;
        if (r < 0) r += span;
        return exp_[static_cast<std::uint64_t>(log_[a]) * static_cast<std::uint64_t>(r) %
                    static_cast<std::uint64_t>(span)];
    }

    /// "p" for prime fields, otherwise "p^m poly=c0,c1,...,cm".
    std::string designation() const {
        if (m_ == 1) return std::to_string(p_);
        std::ostringstream os;
        os << p_ << '^' << m_ << " poly=";
        for (std::size_t i = 0; i < poly_.size(); ++i) {
            if (i) os << ',';
            os << poly_[i];
        }
        return os.str();
    }

    bool operator==(const Field& o) const {
        return p_ == o.p_ && m_ == o.m_ && poly_ == o.poly_;
    }
    bool operator!=(const Field& o) const { return !(*this == o); }

private:
    static std::vector<std::uint32_t> default_poly(std::uint32_t p, std::uint32_t m) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < m; ++i) count *= p;
        for (std::uint64_t c = 0; c < count; ++c) {
            std::vector<std::uint32_t> cand(m + 1, 0);
            std::uint64_t cc = c;
            for (std::uint32_t t = 0; t < m; ++t) { cand[t] = cc % p; cc /= p; }
            cand[m] = 1;
            if (detail::poly_irreducible(cand, p)) return cand;
        }
        throw std::logic_error("no irreducible polynomial found");  // unreachable
    }

    void validate_poly() const {
        if (poly_.size() != m_ + 1)
            throw std::invalid_argument("reduction polynomial must have degree " +
                                        std::to_string(m_));
        for (std::uint32_t c : poly_)
            if (c >= p_)
                throw std::invalid_argument("reduction polynomial coefficient out of range");
        if (poly_.back() != 1)
            throw std::invalid_argument("reduction polynomial must be monic");
        if (!detail::poly_irreducible(poly_, p_))
            throw std::invalid_argument("reduction polynomial is reducible over GF(" +
                                        std::to_string(p_) + ")");
    }

    std::vector<std::uint32_t> digits(std::uint32_t v) const {
        std::vector<std::uint32_t> d(m_);
        for (std::uint32_t i = 0; i < m_; ++i) { d[i] = v % p_; v /= p_; }
        return d;
    }

    std::uint32_t pack(const std::vector<std::uint32_t>& d) const {
        std::uint32_t v = 0, pw = 1;
        for (std::uint32_t i = 0; i < m_; ++i) {
            if (i < d.size()) v += d[i] * pw;
            pw *= p_;
        }
        return v;
    }

    // Table-free product, used only while building the tables.
    std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
        if (m_ == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
        auto prod = detail::poly_mul(digits(a), digits(b), p_);
        return pack(detail::poly_mod(std::move(prod), poly_, p_));
    }

    std::uint32_t slow_pow(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t r = 1;
        while (e) {
            if (e & 1) r = slow_mul(r, a);
            a = slow_mul(a, a);
            e >>= 1;
        }
        return r;
    }

    std::uint32_t find_generator() const {
        if (q_ == 2) return 1;
        std::vector<std::uint64_t> factors;
        std::uint64_t rest = q_ - 1;
        for (std::uint64_t d = 2; d * d <= rest; ++d)
            while (rest % d == 0) {
                if (factors.empty() || factors.back() != d) factors.push_back(d);
                rest /= d;
            }
        if (rest > 1) factors.push_back(rest);
        for (std::uint32_t g = 2; g < q_; ++g) {
            bool ok = true;
            for (std::uint64_t f : factors)
                if (slow_pow(g, (q_ - 1) / f) == 1) { ok = false; break; }
            if (ok) return g;
        }
        throw std::logic_error("no generator found");  // unreachable
    }

    void build_tables() {
        const std::uint32_t span = q_ - 1;
        const std::uint32_t g = find_generator();
        log_.assign(q_, 0);
        exp_.assign(2 * span, 1);
        std::uint32_t acc = 1;
        for (std::uint32_t i = 0; i < span; ++i) {
            exp_[i] = acc;
            log_[acc] = i;
            acc = slow_mul(acc, g);
        }
        for (std::uint32_t i = span; i < 2 * span; ++i) exp_[i] = exp_[i - span];
    }

    std::uint32_t p_;
    std::uint32_t m_;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> poly_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> exp_;
};

/// One element of a specific Field. Arithmetic between elements of
/// different fields is rejected, never coerced. Holds a pointer to its
/// field, which must outlive the element.
class FieldElement {
public:
    FieldElement(const Field& field, std::uint32_t value) : field_(&field), value_(value) {
        if (value_ >= field.order())
            throw std::out_of_range("element encoding " + std::to_string(value_) +
                                    " outside field of order " + std::to_string(field.order()));
    }

    static FieldElement zero(const Field& f) { return FieldElement(f, 0); }
    static FieldElement one(const Field& f) { return FieldElement(f, 1); }

    std::uint32_t value() const { return value_; }
    const Field& field() const { return *field_; }
    bool is_zero() const { return value_ == 0; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        check_same(a, b);
        return FieldElement(*a.field_, a.field_->add(a.value_, b.value_));
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        check_same(a, b);
        return FieldElement(*a.field_, a.field_->sub(a.value_, b.value_));
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        check_same(a, b);
        return FieldElement(*a.field_, a.field_->mul(a.value_, b.value_));
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        check_same(a, b);
        return FieldElement(*a.field_, a.field_->mul(a.value_, b.field_->inv(b.value_)));
    }
    FieldElement operator-() const { return FieldElement(*field_, field_->neg(value_)); }

    FieldElement inverse() const { return FieldElement(*field_, field_->inv(value_)); }
    FieldElement pow(std::int64_t e) const { return FieldElement(*field_, field_->pow(value_, e)); }

    bool operator==(const FieldElement& o) const {
        return *field_ == *o.field_ && value_ == o.value_;
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

private:
    static void check_same(const FieldElement& a, const FieldElement& b) {
        if (*a.field_ != *b.field_)
            throw std::invalid_argument("operands belong to different fields");
    }

    const Field* field_;
    std::uint32_t value_;
};

/// Parses a field designation: "p" or "p^m", optionally followed by
/// whitespace and "poly=c0,c1,...,cm" (constant term first).
inline Field parse_field(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    if (!(is >> tok)) throw std::invalid_argument("empty field designation");

    std::uint32_t p = 0, m = 1;
    const auto caret = tok.find('^');
    try {
        if (caret == std::string::npos) {
            p = static_cast<std::uint32_t>(std::stoul(tok));
        } else {
            p = static_cast<std::uint32_t>(std::stoul(tok.substr(0, caret)));
            m = static_cast<std::uint32_t>(std::stoul(tok.substr(caret + 1)));
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("bad field designation '" + text + "'");
    }

    std::vector<std::uint32_t> poly;
    if (is >> tok) {
        if (tok.rfind("poly=", 0) != 0)
            throw std::invalid_argument("unexpected token '" + tok + "' in field designation");
        std::istringstream cs(tok.substr(5));
        std::string item;
        while (std::getline(cs, item, ','))
            poly.push_back(static_cast<std::uint32_t>(std::stoul(item)));
        if (poly.empty()) throw std::invalid_argument("empty poly= list");
    }
    if (is >> tok)
        throw std::invalid_argument("trailing token '" + tok + "' in field designation");
    return Field(p, m, std::move(poly));
}

}  // namespace fqrank
