#include "gsds/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gsds {

bool GradedLexGreater::operator()(const Exponents &a, const Exponents &b) const noexcept {
    const unsigned da = std::accumulate(a.begin(), a.end(), 0U);
    const unsigned db = std::accumulate(b.begin(), b.end(), 0U);
    if (da != db) {
        return da > db;
    }
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::uint16_t reduce_exponent(const Field &field, unsigned long long e) noexcept {
    if (e == 0) {
        return 0;
    }
    const unsigned long long period = field.order() - 1;
    return static_cast<std::uint16_t>((e - 1) % period + 1);
}

Polynomial::Polynomial(Field field, std::size_t n_vars) : field_(field), n_vars_(n_vars) {}

Polynomial Polynomial::constant(Field field, std::size_t n_vars, Elem value) {
    Polynomial p(field, n_vars);
    p.add_term(value, Exponents(n_vars, 0));
    return p;
}

Polynomial Polynomial::variable(Field field, std::size_t n_vars, std::size_t index) {
    if (index >= n_vars) {
        throw ArityError("variable index " + std::to_string(index + 1) + " exceeds " + std::to_string(n_vars));
    }
    Polynomial p(field, n_vars);
    Exponents e(n_vars, 0);
    e[index] = 1;
    p.add_term(1, std::move(e));
    return p;
}

unsigned Polynomial::total_degree() const noexcept {
    // terms_ is ordered by descending degree
    if (terms_.empty()) {
        return 0;
    }
    const auto &e = terms_.begin()->first;
    return std::accumulate(e.begin(), e.end(), 0U);
}

Elem Polynomial::coefficient(const Exponents &exps) const {
    const auto it = terms_.find(exps);
    return it == terms_.end() ? Elem{0} : it->second;
}

void Polynomial::add_term(Elem c, Exponents exps) {
    if (exps.size() != n_vars_) {
        throw ArityError("monomial has " + std::to_string(exps.size()) + " exponents, ring has " +
                         std::to_string(n_vars_) + " variables");
    }
    for (auto &e : exps) {
        e = reduce_exponent(field_, e);
    }
    if (c == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(std::move(exps), c);
    if (!inserted) {
        it->second = field_.add(it->second, c);
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

void Polynomial::require_compatible(const Polynomial &other) const {
    if (field_ != other.field_) {
        throw FieldMismatchError("polynomials over GF(" + std::to_string(field_.order()) + ") and GF(" +
                                 std::to_string(other.field_.order()) + ")");
    }
    if (n_vars_ != other.n_vars_) {
        throw ArityError("polynomials in " + std::to_string(n_vars_) + " and " + std::to_string(other.n_vars_) +
                         " variables");
    }
}

Polynomial &Polynomial::operator+=(const Polynomial &other) {
    require_compatible(other);
    for (const auto &[e, c] : other.terms_) {
        add_term(c, e);
    }
    return *this;
}

Polynomial &Polynomial::operator-=(const Polynomial &other) {
    require_compatible(other);
    for (const auto &[e, c] : other.terms_) {
        add_term(field_.neg(c), e);
    }
    return *this;
}

Polynomial operator-(const Polynomial &a) {
    Polynomial r(a.field_, a.n_vars_);
    for (const auto &[e, c] : a.terms_) {
        r.terms_.emplace(e, a.field_.neg(c));
    }
    return r;
}

Polynomial operator*(const Polynomial &a, const Polynomial &b) {
    a.require_compatible(b);
    Polynomial r(a.field_, a.n_vars_);
    Exponents e(a.n_vars_);
    for (const auto &[ea, ca] : a.terms_) {
        for (const auto &[eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
            }
            r.add_term(a.field_.mul(ca, cb), e);
        }
    }
    return r;
}

Polynomial Polynomial::scale(Elem c) const {
    Polynomial r(field_, n_vars_);
    if (c == 0) {
        return r;
    }
    for (const auto &[e, coef] : terms_) {
        r.terms_.emplace(e, field_.mul(coef, c));
    }
    return r;
}

Polynomial Polynomial::pow(unsigned long long e) const {
    Polynomial result = constant(field_, n_vars_, 1);
    if (e == 0) {
        return result;
    }
    // In the reduced ring p^q = p for every function p, so p^e = p^(reduced e).
    // The identity holds pointwise (a^q = a), and normalized forms are unique.
    unsigned long long k = reduce_exponent(field_, e);
    Polynomial base = *this;
    while (k > 0) {
        if (k & 1ULL) {
            result = result * base;
        }
        k >>= 1U;
        if (k > 0) {
            base = base * base;
        }
    }
    return result;
}

Elem Polynomial::eval(std::span<const Elem> point) const {
    Elem acc = 0;
    for (const auto &[e, c] : terms_) {
        Elem term = c;
        for (std::size_t i = 0; i < n_vars_ && term != 0; ++i) {
            if (e[i] != 0) {
                term = field_.mul(term, field_.pow(point[i], e[i]));
            }
        }
        acc = field_.add(acc, term);
    }
    return acc;
}

FieldElement Polynomial::eval(const std::vector<FieldElement> &point) const {
    if (point.size() != n_vars_) {
        throw ArityError("point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                         std::to_string(n_vars_) + " variables");
    }
    std::vector<Elem> raw(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (point[i].field() != field_) {
            throw FieldMismatchError("point coordinate " + std::to_string(i + 1) + " is not in GF(" +
                                     std::to_string(field_.order()) + ")");
        }
        raw[i] = point[i].value();
    }
    return {field_, eval(raw)};
}

std::vector<std::size_t> Polynomial::support() const {
    std::vector<bool> used(n_vars_, false);
    for (const auto &[e, c] : terms_) {
        for (std::size_t i = 0; i < n_vars_; ++i) {
            used[i] = used[i] || e[i] != 0;
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_vars_; ++i) {
        if (used[i]) {
            out.push_back(i);
        }
    }
    return out;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial> &values) const {
    if (values.size() != n_vars_) {
        throw ArityError("substitution needs " + std::to_string(n_vars_) + " polynomials, got " +
                         std::to_string(values.size()));
    }
    if (values.empty()) {
        return *this;
    }
    const std::size_t m = values.front().n_vars();
    for (const auto &v : values) {
        if (v.field() != field_ || v.n_vars() != m) {
            throw ArityError("substituted polynomials must share field and arity");
        }
    }
    // powers[i][k] = values[i]^k, built lazily
    std::vector<std::vector<Polynomial>> powers(n_vars_);
    auto power = [&](std::size_t i, unsigned k) -> const Polynomial & {
        auto &cache = powers[i];
        if (cache.empty()) {
            cache.push_back(constant(field_, m, 1));
        }
        while (cache.size() <= k) {
            cache.push_back(cache.back() * values[i]);
        }
        return cache[k];
    };
    Polynomial result(field_, m);
    for (const auto &[e, c] : terms_) {
        Polynomial term = constant(field_, m, c);
        for (std::size_t i = 0; i < n_vars_ && !term.is_zero(); ++i) {
            if (e[i] != 0) {
                term = term * power(i, e[i]);
            }
        }
        result += term;
    }
    return result;
}

Polynomial Polynomial::remap(std::size_t new_n_vars, const std::vector<std::size_t> &mapping) const {
    if (mapping.size() != n_vars_) {
        throw ArityError("remap needs one target per variable");
    }
    Polynomial r(field_, new_n_vars);
    for (const auto &[e, c] : terms_) {
        Exponents ne(new_n_vars, 0);
        for (std::size_t i = 0; i < n_vars_; ++i) {
            if (mapping[i] >= new_n_vars) {
                throw ArityError("remap target out of range");
            }
            ne[mapping[i]] = static_cast<std::uint16_t>(ne[mapping[i]] + e[i]);
        }
        r.add_term(c, std::move(ne));
    }
    return r;
}

std::string Polynomial::render(Encoding display) const {
    if (terms_.empty()) {
        return "0";
    }
    const bool balanced = display == Encoding::balanced && field_.supports_balanced();
    std::ostringstream os;
    bool first = true;
    for (const auto &[e, c] : terms_) {
        long long value = balanced ? field_.balanced_decode(c) : static_cast<long long>(c);
        const bool negative = value < 0;
        if (negative) {
            value = -value;
        }
        std::string vars;
        for (std::size_t i = 0; i < n_vars_; ++i) {
            if (e[i] == 0) {
                continue;
            }
            if (!vars.empty()) {
                vars += '*';
            }
            vars += 'x' + std::to_string(i + 1);
            if (e[i] > 1) {
                vars += '^' + std::to_string(e[i]);
            }
        }
        std::string piece;
        if (vars.empty()) {
            piece = std::to_string(value);
        } else if (value == 1) {
            piece = vars;
        } else {
            piece = std::to_string(value) + '*' + vars;
        }
        if (first) {
            os << (negative ? "-" : "") << piece;
            first = false;
        } else {
            os << (negative ? " - " : " + ") << piece;
        }
    }
    return os.str();
}

Polynomial normalize(const Field &field, std::size_t n_vars, std::span<const Monomial> raw) {
    Polynomial p(field, n_vars);
    for (const auto &m : raw) {
        if (!field.contains(m.coefficient)) {
            throw EncodingError("coefficient code " + std::to_string(m.coefficient) + " outside GF(" +
                                std::to_string(field.order()) + ")");
        }
        p.add_term(m.coefficient, m.exponents);
    }
    return p;
}

namespace {

// Coefficients of the univariate Lagrange basis polynomial
// L_a(x) = 1 - (x - a)^(q-1) = 1 - sum_k (-1)^k (-a)^(q-1-k) x^k,
// using C(q-1, k) = (-1)^k in characteristic p (true for q prime and q = 4).
std::vector<Elem> lagrange_matrix(const Field &f) {
    const unsigned q = f.order();
    std::vector<Elem> m(static_cast<std::size_t>(q) * q);
    const Elem minus_one = f.neg(1);
    for (unsigned a = 0; a < q; ++a) {
        const Elem minus_a = f.neg(static_cast<Elem>(a));
        for (unsigned k = 0; k < q; ++k) {
            const Elem binom = f.pow(minus_one, k);
            Elem c = f.neg(f.mul(binom, f.pow(minus_a, q - 1 - k)));
            if (k == 0) {
                c = f.add(c, 1);
            }
            m[static_cast<std::size_t>(a) * q + k] = c;
        }
    }
    return m;
}

} // namespace

Polynomial indicator_poly(const Field &field, std::span<const Elem> point) {
    const std::size_t n = point.size();
    const unsigned q = field.order();
    const auto lagrange = lagrange_matrix(field);
    Polynomial result = Polynomial::constant(field, n, 1);
    for (std::size_t j = 0; j < n; ++j) {
        if (!field.contains(point[j])) {
            throw EncodingError("indicator point coordinate outside field");
        }
        Polynomial factor(field, n);
        for (unsigned k = 0; k < q; ++k) {
            Exponents e(n, 0);
            e[j] = static_cast<std::uint16_t>(k);
            factor.add_term(lagrange[static_cast<std::size_t>(point[j]) * q + k], std::move(e));
        }
        result = result * factor;
    }
    return result;
}

ProductDomain::ProductDomain(Field field, std::vector<std::vector<Elem>> factors)
    : field_(field), factors_(std::move(factors)), size_(1) {
    position_.resize(factors_.size());
    stride_.resize(factors_.size());
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        if (factors_[j].empty()) {
            throw StateError("domain factor " + std::to_string(j + 1) + " is empty");
        }
        position_[j].assign(field_.order(), -1);
        for (std::size_t k = 0; k < factors_[j].size(); ++k) {
            const Elem v = factors_[j][k];
            if (!field_.contains(v)) {
                throw StateError("domain value " + std::to_string(v) + " outside GF(" +
                                 std::to_string(field_.order()) + ")");
            }
            if (position_[j][v] != -1) {
                throw StateError("duplicate domain value " + std::to_string(v));
            }
            position_[j][v] = static_cast<std::int32_t>(k);
        }
    }
    for (std::size_t j = factors_.size(); j-- > 0;) {
        stride_[j] = size_;
        const std::uint64_t next = size_ * factors_[j].size();
        if (next / factors_[j].size() != size_) {
            throw LimitError("domain size overflows 64 bits");
        }
        size_ = next;
    }
}

ProductDomain ProductDomain::full(Field field, std::size_t n_vars) {
    return {field, std::vector<std::vector<Elem>>(n_vars, field.elements())};
}

bool ProductDomain::is_full() const noexcept {
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        if (factors_[j].size() != field_.order()) {
            return false;
        }
        for (std::size_t k = 0; k < factors_[j].size(); ++k) {
            if (factors_[j][k] != k) {
                return false;
            }
        }
    }
    return true;
}

void ProductDomain::point(std::uint64_t index, std::span<Elem> out) const {
    for (std::size_t j = factors_.size(); j-- > 0;) {
        const auto radix = factors_[j].size();
        out[j] = factors_[j][index % radix];
        index /= radix;
    }
}

std::vector<Elem> ProductDomain::point(std::uint64_t index) const {
    std::vector<Elem> p(factors_.size());
    point(index, p);
    return p;
}

bool ProductDomain::contains(std::span<const Elem> p) const noexcept {
    if (p.size() != factors_.size()) {
        return false;
    }
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (!field_.contains(p[j]) || position_[j][p[j]] < 0) {
            return false;
        }
    }
    return true;
}

std::uint64_t ProductDomain::index_of(std::span<const Elem> p) const {
    if (!contains(p)) {
        throw StateError("state outside the state space");
    }
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        idx += stride_[j] * static_cast<std::uint64_t>(position_[j][p[j]]);
    }
    return idx;
}

std::vector<Elem> truth_table(const Polynomial &p) {
    return truth_table(p, ProductDomain::full(p.field(), p.n_vars()));
}

std::vector<Elem> truth_table(const Polynomial &p, const ProductDomain &domain) {
    if (domain.n_vars() != p.n_vars()) {
        throw ArityError("domain arity does not match polynomial");
    }
    std::vector<Elem> table(domain.size());
    std::vector<Elem> x(p.n_vars());
    for (std::uint64_t i = 0; i < domain.size(); ++i) {
        domain.point(i, x);
        table[i] = p.eval(x);
    }
    return table;
}

Polynomial interpolate_table(const Field &field, std::size_t n_vars, std::span<const Elem> values) {
    const unsigned q = field.order();
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < n_vars; ++j) {
        total *= q;
    }
    if (values.size() != total) {
        throw ArityError("truth table has " + std::to_string(values.size()) + " entries, expected " +
                         std::to_string(total));
    }
    const auto lagrange = lagrange_matrix(field);
    std::vector<Elem> coeffs(values.begin(), values.end());
    std::vector<Elem> line(q);
    for (std::size_t j = 0; j < n_vars; ++j) {
        std::uint64_t stride = 1;
        for (std::size_t k = j + 1; k < n_vars; ++k) {
            stride *= q;
        }
        const std::uint64_t block = stride * q;
        for (std::uint64_t base = 0; base < total; base += block) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                for (unsigned k = 0; k < q; ++k) {
                    Elem acc = 0;
                    for (unsigned a = 0; a < q; ++a) {
                        const Elem v = coeffs[base + off + a * stride];
                        if (v != 0) {
                            acc = field.add(acc, field.mul(v, lagrange[static_cast<std::size_t>(a) * q + k]));
                        }
                    }
                    line[k] = acc;
                }
                for (unsigned k = 0; k < q; ++k) {
                    coeffs[base + off + k * stride] = line[k];
                }
            }
        }
    }
    Polynomial p(field, n_vars);
    Exponents e(n_vars);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        if (coeffs[idx] == 0) {
            continue;
        }
        std::uint64_t r = idx;
        for (std::size_t j = n_vars; j-- > 0;) {
            e[j] = static_cast<std::uint16_t>(r % q);
            r /= q;
        }
        p.add_term(coeffs[idx], e);
    }
    return p;
}

std::vector<std::size_t> support_vars(const Polynomial &p) { return p.support(); }

std::vector<std::size_t> support_vars(const Polynomial &p, const ProductDomain &domain) {
    if (domain.is_full()) {
        return p.support();
    }
    const auto table = truth_table(p, domain);
    std::vector<std::size_t> out;
    const std::size_t n = domain.n_vars();
    std::vector<std::uint64_t> stride(n);
    std::uint64_t s = 1;
    for (std::size_t j = n; j-- > 0;) {
        stride[j] = s;
        s *= domain.factors()[j].size();
    }
    for (std::size_t j = 0; j < n; ++j) {
        const std::uint64_t radix = domain.factors()[j].size();
        bool depends = false;
        for (std::uint64_t i = 0; i < table.size() && !depends; ++i) {
            // i is the point whose j-th digit is zero; compare against all its siblings
            if ((i / stride[j]) % radix != 0) {
                continue;
            }
            for (std::uint64_t k = 1; k < radix; ++k) {
                if (table[i + k * stride[j]] != table[i]) {
                    depends = true;
                    break;
                }
            }
        }
        if (depends) {
            out.push_back(j);
        }
    }
    return out;
}

} // namespace gsds
