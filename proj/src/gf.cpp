#include "matgeom/gf.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "matgeom/errors.hpp"

namespace matgeom {

namespace {

std::vector<int> to_coeffs(int index, int p, int k) {
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) {
        c[i] = index % p;
        index /= p;
    }
    return c;
}

int from_coeffs(const std::vector<int>& c, int p) {
    int idx = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) idx = idx * p + *it;
    return idx;
}

// Remainder of `a` modulo the monic polynomial `m` over GF(p); both lowest
// degree first.
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m, int p) {
    const int dm = static_cast<int>(m.size()) - 1;
    for (int d = static_cast<int>(a.size()) - 1; d >= dm; --d) {
        const int lead = a[d] % p;
        if (lead == 0) continue;
        for (int i = 0; i <= dm; ++i) {
            a[d - dm + i] = ((a[d - dm + i] - lead * m[i]) % p + p) % p;
        }
    }
    a.resize(dm);
    return a;
}

const std::map<int, std::pair<int, std::vector<int>>>& canonical_moduli() {
    static const std::map<int, std::pair<int, std::vector<int>>> table = {
        {2, {2, {0, 1}}},       {3, {3, {0, 1}}},    {4, {2, {1, 1, 1}}},
        {5, {5, {0, 1}}},       {7, {7, {0, 1}}},    {8, {2, {1, 1, 0, 1}}},
        {9, {3, {1, 0, 1}}},
    };
    return table;
}

}  // namespace

bool is_prime(int n) noexcept {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_irreducible(int p, const std::vector<int>& poly) {
    int deg = static_cast<int>(poly.size()) - 1;
    while (deg >= 0 && poly[deg] % p == 0) --deg;
    if (deg < 1) return false;
    if (deg == 1) return true;
    // Monic divisors of degree d are indexed by their lower coefficients.
    for (int d = 1; 2 * d <= deg; ++d) {
        int count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (int idx = 0; idx < count; ++idx) {
            auto div = to_coeffs(idx, p, d);
            div.push_back(1);
            // Normalise the dividend to monic before reducing.
            std::vector<int> a(poly.begin(), poly.begin() + deg + 1);
            int lead = a[deg] % p;
            int lead_inv = 1;
            while ((lead * lead_inv) % p != 1) ++lead_inv;
            for (auto& c : a) c = (c * lead_inv) % p;
            auto r = poly_mod(a, div, p);
            bool zero = true;
            for (int c : r) zero = zero && (c == 0);
            if (zero) return false;
        }
    }
    return true;
}

const std::vector<int>& Field::supported_orders() {
    static const std::vector<int> orders = [] {
        std::vector<int> v;
        for (const auto& [q, _] : canonical_moduli()) v.push_back(q);
        return v;
    }();
    return orders;
}

FieldPtr Field::make(int q) {
    static std::mutex mu;
    static std::map<int, FieldPtr> cache;
    const auto it = canonical_moduli().find(q);
    if (it == canonical_moduli().end()) {
        throw PreconditionError("unsupported field order " + std::to_string(q) +
                                " (supported: 2, 3, 4, 5, 7, 8, 9)");
    }
    std::lock_guard lock(mu);
    auto& slot = cache[q];
    if (!slot) slot = make(it->second.first, it->second.second);
    return slot;
}

FieldPtr Field::make(int p, std::vector<int> modulus) {
    if (!is_prime(p)) throw PreconditionError("characteristic " + std::to_string(p) + " is not prime");
    if (modulus.size() < 2 || modulus.back() != 1)
        throw PreconditionError("modulus must be monic of degree >= 1");
    for (int c : modulus)
        if (c < 0 || c >= p) throw PreconditionError("modulus coefficient out of range");
    if (!is_irreducible(p, modulus)) throw PreconditionError("modulus is reducible over GF(p)");
    long q = 1;
    for (std::size_t i = 1; i < modulus.size(); ++i) q *= p;
    if (q > 256) throw PreconditionError("field order exceeds 256");
    return FieldPtr(new Field(p, std::move(modulus)));
}

Field::Field(int p, std::vector<int> modulus)
    : p_(p), k_(static_cast<int>(modulus.size()) - 1), q_(1), modulus_(std::move(modulus)) {
    for (int i = 0; i < k_; ++i) q_ *= p_;
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    frob_.resize(k_ * q_);

    for (int a = 0; a < q_; ++a) {
        const auto ca = to_coeffs(a, p_, k_);
        std::vector<int> cn(k_);
        for (int i = 0; i < k_; ++i) cn[i] = (p_ - ca[i]) % p_;
        neg_[a] = static_cast<Elem>(from_coeffs(cn, p_));
        for (int b = 0; b < q_; ++b) {
            const auto cb = to_coeffs(b, p_, k_);
            std::vector<int> s(k_);
            for (int i = 0; i < k_; ++i) s[i] = (ca[i] + cb[i]) % p_;
            add_[a * q_ + b] = static_cast<Elem>(from_coeffs(s, p_));

            std::vector<int> prod(2 * k_ - 1, 0);
            for (int i = 0; i < k_; ++i)
                for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
            mul_[a * q_ + b] = static_cast<Elem>(from_coeffs(poly_mod(prod, modulus_, p_), p_));
        }
    }
    for (int a = 1; a < q_; ++a)
        for (int b = 1; b < q_; ++b)
            if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<Elem>(b);

    for (int a = 0; a < q_; ++a) frob_[a] = static_cast<Elem>(a);
    for (int j = 1; j < k_; ++j) {
        for (int a = 0; a < q_; ++a) {
            Elem x = frob_[(j - 1) * q_ + a];
            Elem y = 1;
            for (int e = 0; e < p_; ++e) y = mul_[y * q_ + x];
            frob_[j * q_ + a] = y;
        }
    }
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw PreconditionError("inverse of zero");
    return inv_[a];
}

std::string Field::modulus_string() const {
    std::ostringstream os;
    bool first = true;
    for (int d = k_; d >= 0; --d) {
        const int c = modulus_[d];
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (d == 0 || c != 1) os << c;
        if (d >= 1) os << "x";
        if (d >= 2) os << "^" << d;
    }
    return os.str();
}

bool same_field(const FieldPtr& a, const FieldPtr& b) noexcept {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

FieldElem::FieldElem(FieldPtr f, int idx) : field(std::move(f)) {
    if (!field || !field->contains(idx))
        throw PreconditionError("element index " + std::to_string(idx) + " out of range");
    index = static_cast<Elem>(idx);
}

namespace {
const Field& common(const FieldElem& a, const FieldElem& b) {
    if (!same_field(a.field, b.field)) throw SpecMismatch("field elements from different fields");
    return *a.field;
}
}  // namespace

FieldElem add(const FieldElem& a, const FieldElem& b) {
    return {a.field, common(a, b).add(a.index, b.index)};
}

FieldElem sub(const FieldElem& a, const FieldElem& b) {
    return {a.field, common(a, b).sub(a.index, b.index)};
}

FieldElem mul(const FieldElem& a, const FieldElem& b) {
    return {a.field, common(a, b).mul(a.index, b.index)};
}

FieldElem inv(const FieldElem& a) { return {a.field, a.field->inv(a.index)}; }

FieldElem apply_automorphism(const FieldAutomorphism& sigma, const FieldElem& a) {
    if (!same_field(sigma.field, a.field)) throw SpecMismatch("automorphism of a different field");
    return {a.field, a.field->frobenius(sigma.frobenius_power, a.index)};
}

FieldAutomorphism FieldAutomorphism::inverse() const {
    return {field, (field->k() - frobenius_power) % field->k()};
}

FieldAutomorphism FieldAutomorphism::after(const FieldAutomorphism& other) const {
    if (!same_field(field, other.field)) throw SpecMismatch("automorphisms of different fields");
    return {field, (frobenius_power + other.frobenius_power) % field->k()};
}

std::vector<FieldElem> enumerate_elements(const FieldPtr& field) {
    std::vector<FieldElem> out;
    out.reserve(field->q());
    for (int i = 0; i < field->q(); ++i) out.emplace_back(field, i);
    return out;
}

std::vector<FieldAutomorphism> automorphism_group(const FieldPtr& field) {
    std::vector<FieldAutomorphism> out;
    for (int j = 0; j < field->k(); ++j) out.push_back({field, j});
    return out;
}

}  // namespace matgeom
