#include "hasse/quadforms.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "hasse/errors.hpp"
#include "hasse/gaussint.hpp"

namespace hasse {

namespace {

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i64 checked_i64(i128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN) throw ResourceError(std::string(what) + ": coefficient overflow");
    return static_cast<i64>(v);
}

void require_definite(i64 disc, const char* what) {
    if (disc >= 0) throw UsageError(std::string(what) + ": discriminant must be negative, got " + std::to_string(disc));
    if (mod(disc, 4) != 0 && mod(disc, 4) != 1)
        throw UsageError(std::string(what) + ": discriminant must be 0 or 1 mod 4, got " + std::to_string(disc));
}

} // namespace

bool QuadForm::is_reduced() const noexcept {
    if (!(std::abs(b) <= a && a <= c)) return false;
    if ((std::abs(b) == a || a == c) && b < 0) return false;
    return true;
}

std::ostream& operator<<(std::ostream& os, const QuadForm& f) {
    return os << "(" << f.a << "," << f.b << "," << f.c << ")";
}

QuadForm principal_form(i64 disc) {
    require_definite(disc, "principal_form");
    i64 b = mod(disc, 2);
    return {1, b, (b * b - disc) / 4};
}

QuadForm inverse(const QuadForm& f) { return reduce_form({f.a, -f.b, f.c}); }

QuadForm reduce_form(QuadForm f) {
    i64 d = f.disc();
    if (d >= 0) throw UsageError("reduce_form: discriminant must be negative");
    if (f.a <= 0) throw UsageError("reduce_form: form must be positive definite");
    for (;;) {
        // Translate b into (-a, a].
        i128 k = floor_div(static_cast<i128>(f.a) - f.b, 2 * static_cast<i128>(f.a));
        if (k != 0) {
            i128 nb = f.b + 2 * f.a * k;
            i128 nc = f.a * k * k + f.b * k + f.c;
            f.b = checked_i64(nb, "reduce_form");
            f.c = checked_i64(nc, "reduce_form");
        }
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        if (f.a == f.c && f.b < 0) f.b = -f.b;
        return f;
    }
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
    i64 d = f.disc();
    if (d != g.disc()) throw UsageError("compose: discriminants differ");
    if (d >= 0) throw UsageError("compose: discriminant must be negative");
    // (a1 a2 / e^2, B, *) with u a1 + v a2 + w (b1 + b2)/2 = e.
    i64 s = (f.b + g.b) / 2;
    ExtGcd g1 = ext_gcd(f.a, g.a);
    ExtGcd g2 = ext_gcd(g1.g, s);
    i128 e = g2.g;
    i128 u = static_cast<i128>(g2.x) * g1.x;
    i128 v = static_cast<i128>(g2.x) * g1.y;
    i128 w = g2.y;
    i128 a3 = static_cast<i128>(f.a) * g.a / (e * e);
    i128 bnum = u * f.a * g.b + v * g.a * f.b + w * ((static_cast<i128>(f.b) * g.b + d) / 2);
    i128 b3 = bnum / e;
    b3 %= 2 * a3;
    i128 c3 = (b3 * b3 - d) / (4 * a3);
    if (b3 * b3 - d != 4 * a3 * c3) throw InternalError("compose: discriminant not preserved");
    return reduce_form({checked_i64(a3, "compose"), checked_i64(b3, "compose"), checked_i64(c3, "compose")});
}

QuadForm power(const QuadForm& f, i64 n) {
    QuadForm result = principal_form(f.disc());
    QuadForm base = reduce_form(f);
    if (n < 0) {
        base = inverse(base);
        n = -n;
    }
    while (n > 0) {
        if (n & 1) result = compose(result, base);
        base = compose(base, base);
        n >>= 1;
    }
    return result;
}

std::vector<i64> invariant_factors_from_orders(const std::vector<i64>& element_orders) {
    i64 n = static_cast<i64>(element_orders.size());
    if (n == 0) throw UsageError("invariant_factors_from_orders: empty group");
    // For each prime l | n, |G[l^k]| = l^(sum_i min(k, e_i)) determines the
    // l-primary exponents e_i.
    std::vector<std::vector<i64>> primary;  // per prime: cyclic factor sizes, descending
    for (auto [l, top] : factorize(n).factors) {
        std::vector<int> at_least;  // at_least[k-1] = #factors with e_i >= k
        int prev = 0;
        i64 lk = 1;
        for (int k = 1; k <= top; ++k) {
            lk *= l;
            i64 count = std::count_if(element_orders.begin(), element_orders.end(), [&](i64 o) { return lk % o == 0; });
            int s = 0;
            for (i64 c = count; c > 1; c /= l) ++s;
            at_least.push_back(s - prev);
            prev = s;
        }
        std::vector<i64> sizes;
        for (int k = static_cast<int>(at_least.size()); k >= 1; --k) {
            int exactly = at_least[k - 1] - (k < static_cast<int>(at_least.size()) ? at_least[k] : 0);
            i64 size = 1;
            for (int j = 0; j < k; ++j) size *= l;
            for (int j = 0; j < exactly; ++j) sizes.push_back(size);
        }
        primary.push_back(std::move(sizes));
    }
    std::size_t rank = 0;
    for (const auto& s : primary) rank = std::max(rank, s.size());
    std::vector<i64> factors(rank, 1);
    for (const auto& s : primary)
        for (std::size_t j = 0; j < s.size(); ++j) factors[rank - 1 - j] *= s[j];
    return factors;
}

std::vector<QuadForm> reduced_forms(i64 disc) {
    require_definite(disc, "reduced_forms");
    std::vector<QuadForm> out;
    i64 limit = static_cast<i64>(std::sqrt(static_cast<double>(-disc) / 3.0)) + 1;
    for (i64 a = 1; a <= limit; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            i128 num = static_cast<i128>(b) * b - disc;
            if (num % (4 * a) != 0) continue;
            i64 c = static_cast<i64>(num / (4 * a));
            QuadForm f{a, b, c};
            if (c < a || !f.is_reduced() || !f.is_primitive()) continue;
            out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ClassGroup::ClassGroup(i64 disc) : disc_(disc), classes_(reduced_forms(disc)) {
    for (std::size_t i = 0; i < classes_.size(); ++i) index_[classes_[i]] = i;
    QuadForm id = principal_form(disc);
    orders_.reserve(classes_.size());
    for (const QuadForm& f : classes_) {
        i64 k = 1;
        QuadForm acc = f;
        while (acc != id) {
            acc = compose(acc, f);
            ++k;
            if (k > static_cast<i64>(classes_.size()))
                throw InternalError("class group: element order exceeds group order");
        }
        orders_.push_back(k);
    }
    invariant_factors_ = invariant_factors_from_orders(orders_);
}

std::size_t ClassGroup::index_of(const QuadForm& f) const {
    if (f.disc() != disc_) throw UsageError("form has the wrong discriminant for this class group");
    auto it = index_.find(reduce_form(f));
    if (it == index_.end()) throw UsageError("form is not primitive");
    return it->second;
}

ClassGroup class_group(i64 disc) { return ClassGroup(disc); }

QuadForm prime_form_class(i64 disc, i64 p) {
    require_definite(disc, "prime_form_class");
    if (!is_prime(p)) throw UsageError("prime_form_class: " + std::to_string(p) + " is not prime");
    if (disc % p == 0) throw DomainError("prime_form_class: p divides the discriminant");
    i64 b = -1;
    if (p == 2) {
        for (i64 cand = 0; cand < 4; ++cand)
            if (mod(cand * cand - disc, 8) == 0) {
                b = cand;
                break;
            }
    } else if (jacobi_symbol(disc, p) == 1) {
        b = sqrt_mod_prime(disc, p);
        if (mod(b - disc, 2) != 0) b = p - b;  // B = D mod 2
    }
    if (b < 0) throw DomainError("prime_form_class: p inert");
    i128 c = (static_cast<i128>(b) * b - disc) / (4 * static_cast<i128>(p));
    return reduce_form({p, b, checked_i64(c, "prime_form_class")});
}

i64 class_order(const ClassGroup& cg, const QuadForm& f) { return cg.element_order(cg.index_of(f)); }

bool is_fourth_power_class(const ClassGroup& cg, const QuadForm& f) {
    QuadForm target = cg.classes()[cg.index_of(f)];
    return std::any_of(cg.classes().begin(), cg.classes().end(),
                       [&](const QuadForm& g) { return power(g, 4) == target; });
}

int GenusCharacter::eval(i64 n) const {
    switch (kind) {
    case Kind::odd_prime:
        return jacobi_symbol(n, prime);
    case Kind::delta:
        return mod(n, 4) == 1 ? 1 : -1;
    case Kind::epsilon: {
        i64 r = mod(n, 8);
        return (r == 1 || r == 7) ? 1 : -1;
    }
    case Kind::delta_epsilon: {
        i64 r = mod(n, 8);
        return (r == 1 || r == 3) ? 1 : -1;
    }
    }
    return 0;
}

std::string GenusCharacter::label() const {
    switch (kind) {
    case Kind::odd_prime:
        return "(.|" + std::to_string(prime) + ")";
    case Kind::delta:
        return "mod4";
    case Kind::epsilon:
        return "mod8";
    case Kind::delta_epsilon:
        return "mod4*mod8";
    }
    return "?";
}

std::vector<GenusCharacter> assigned_characters(i64 disc) {
    require_definite(disc, "assigned_characters");
    std::vector<GenusCharacter> out;
    for (auto [q, e] : factorize(disc).factors) {
        (void)e;
        if (q != 2) out.push_back({GenusCharacter::Kind::odd_prime, q});
    }
    if (mod(disc, 4) == 0) {
        i64 n = -disc / 4;
        using K = GenusCharacter::Kind;
        switch (mod(n, 8)) {
        case 1:
        case 5:
        case 4:
            out.push_back({K::delta});
            break;
        case 2:
            out.push_back({K::delta_epsilon});
            break;
        case 6:
            out.push_back({K::epsilon});
            break;
        case 0:
            out.push_back({K::delta});
            out.push_back({K::epsilon});
            break;
        default:  // n = 3 mod 4: no 2-adic character
            break;
        }
    }
    return out;
}

std::vector<Sign> genus_characters(i64 disc, const QuadForm& f) {
    if (f.disc() != disc) throw UsageError("genus_characters: form has the wrong discriminant");
    i64 two_d = 2 * disc;
    for (i64 box = 8; box <= (i64{1} << 20); box *= 2) {
        for (i64 x = -box; x <= box; ++x) {
            for (i64 y = -box; y <= box; ++y) {
                i128 v = f.eval(x, y);
                if (v == 0 || v > INT64_MAX) continue;
                i64 n = static_cast<i64>(v);
                if (gcd(n, two_d) != 1) continue;
                std::vector<Sign> out;
                for (const auto& ch : assigned_characters(disc)) out.push_back(sign_of(ch.eval(n)));
                return out;
            }
        }
    }
    throw InternalError("genus_characters: form represents no integer coprime to 2D");
}

std::vector<i64> two_sylow_structure(const ClassGroup& cg) {
    std::vector<i64> out;
    for (i64 d : cg.invariant_factors()) {
        i64 t = 1;
        while (d % 2 == 0) {
            d /= 2;
            t *= 2;
        }
        if (t > 1) out.push_back(t);
    }
    return out;
}

std::optional<std::pair<i64, i64>> represent_prime(const QuadForm& f, i64 p, i64 bound) {
    for (i64 y = 0; y <= bound; ++y) {
        for (i64 ax = 0; ax <= bound; ++ax) {
            for (i64 x : {ax, -ax}) {
                if (f.eval(x, y) == p) return std::pair{x, y};
                if (ax == 0) break;
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

ImagQuadRing::ImagQuadRing(i64 field_disc) {
    if (field_disc == -4) d_ = 1;
    else if (field_disc == -8) d_ = 2;
    else throw UsageError("ray class groups are supported for field discriminants -4 and -8 only");
}

ImagQuadInt ImagQuadRing::remainder(ImagQuadInt a, ImagQuadInt b) const {
    i128 n = norm(b);
    if (n == 0) throw UsageError("division by zero");
    // a * conj(b)
    i128 xr = static_cast<i128>(a.x) * b.x + static_cast<i128>(d_) * a.y * b.y;
    i128 xi = static_cast<i128>(a.y) * b.x - static_cast<i128>(a.x) * b.y;
    auto round = [n](i128 v) {
        i128 q = floor_div(2 * v + n, 2 * n);
        return static_cast<i64>(q);
    };
    ImagQuadInt q{round(xr), round(xi)};
    ImagQuadInt qb = mul(q, b);
    return {a.x - qb.x, a.y - qb.y};
}

ImagQuadInt ImagQuadRing::gcd(ImagQuadInt a, ImagQuadInt b) const {
    while (!(b.x == 0 && b.y == 0)) {
        ImagQuadInt r = remainder(a, b);
        a = b;
        b = r;
    }
    return a;
}

std::vector<ImagQuadInt> ImagQuadRing::units() const {
    if (d_ == 1) return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return {{1, 0}, {-1, 0}};
}

ImagQuadInt ImagQuadRing::split_prime(i64 p) const {
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    if (d_ == 1) {
        if (p % 4 != 1) throw DomainError(std::to_string(p) + " does not split in Q(i)");
        GaussianInt g = hasse::split_prime(p);
        return {g.re, g.im};
    }
    if (p % 8 != 1 && p % 8 != 3) throw DomainError(std::to_string(p) + " does not split in Q(sqrt(-2))");
    i64 r = sqrt_mod_prime(-2, p);
    ImagQuadInt g = gcd({p, 0}, {r, 1});
    if (norm(g) != p) throw InternalError("split_prime: gcd has the wrong norm");
    return {std::abs(g.x), std::abs(g.y)};
}

RayClassGroup::RayClassGroup(i64 field_disc, ImagQuadInt modulus) : ring_(field_disc), modulus_(modulus) {
    if (modulus.x == 0 && modulus.y == 0) throw UsageError("ray_class_group: modulus must be nonzero");
    i64 d = ring_.d();
    i64 n = ring_.norm(modulus);
    // The ideal (mu) as a lattice is spanned by mu = (x, y) and mu*w = (-d y, x).
    ExtGcd eg = ext_gcd(modulus.y, modulus.x);
    n2_ = eg.g;
    n1_ = n / n2_;
    t_ = mod(eg.x * modulus.x + eg.y * (-d * modulus.y), n1_);

    for (ImagQuadInt u : ring_.units()) {
        i64 idx = residue_index(u);
        if (std::find(units_mod_.begin(), units_mod_.end(), idx) == units_mod_.end()) units_mod_.push_back(idx);
    }
    std::vector<i64> invertible;
    for (i64 r = 0; r < n; ++r) {
        ImagQuadInt g = ring_.gcd(modulus_, residue_rep(r));
        if (ring_.norm(g) == 1) invertible.push_back(r);
    }
    invertible_count_ = invertible.size();
    auto times = [&](i64 r, i64 s) { return residue_index(ring_.mul(residue_rep(r), residue_rep(s))); };
    std::set<i64> unit_set(units_mod_.begin(), units_mod_.end());
    std::map<i64, std::size_t> coset_of_key;
    for (i64 r : invertible) {
        i64 key = r;
        for (i64 u : units_mod_) key = std::min(key, times(r, u));
        auto [it, inserted] = coset_of_key.emplace(key, coset_orders_.size());
        if (inserted) {
            i64 k = 1;
            i64 acc = r;
            while (!unit_set.contains(acc)) {
                acc = times(acc, r);
                ++k;
            }
            coset_orders_.push_back(k);
        }
        element_index_[r] = it->second;
    }
    invariant_factors_ = invariant_factors_from_orders(coset_orders_);
}

i64 RayClassGroup::residue_index(ImagQuadInt a) const {
    i64 k = static_cast<i64>(floor_div(a.y, n2_));
    i64 y = a.y - k * n2_;
    i64 x = mod(a.x - mod(k, n1_) * t_ % n1_, n1_);
    return x * n2_ + y;
}

ImagQuadInt RayClassGroup::residue_rep(i64 index) const { return {index / n2_, index % n2_}; }

std::size_t RayClassGroup::class_of(ImagQuadInt a) const {
    auto it = element_index_.find(residue_index(a));
    if (it == element_index_.end()) throw DomainError("element is not coprime to the modulus");
    return it->second;
}

RayClassGroup ray_class_group(i64 field_disc, ImagQuadInt modulus) { return RayClassGroup(field_disc, modulus); }

i64 ray_class_order(const RayClassGroup& rcg, i64 p) {
    if (gcd(p, rcg.ring().norm(rcg.modulus())) != 1)
        throw DomainError("ray_class_order: p must be coprime to the modulus");
    ImagQuadInt pi = rcg.ring().split_prime(p);
    return rcg.class_order(rcg.class_of(pi));
}

// ---------------------------------------------------------------------------

FundamentalUnitData fundamental_unit(i64 p) {
    if (p < 2 || !is_prime(p)) throw UsageError("fundamental_unit: p must be prime");
    FundamentalUnitData out;
    out.p = p;
    out.half = (p % 4 == 1);
    i64 root = static_cast<i64>(isqrt(static_cast<i128>(p)));
    // Continued fraction of (P + sqrt p)/Q starting from w = (1 + sqrt p)/2 or sqrt p.
    i64 P = out.half ? 1 : 0;
    i64 Q = out.half ? 2 : 1;
    BigInt h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
    for (int step = 0; step < 1'000'000; ++step) {
        i64 a = (P + root) / Q;
        BigInt h = a * h_prev + h_prev2;
        BigInt k = a * k_prev + k_prev2;
        BigInt u = out.half ? BigInt(2 * h - k) : h;
        BigInt n = u * u - BigInt(p) * k * k;
        BigInt target = out.half ? 4 : 1;
        if (n == target || n == -target) {
            out.u = u;
            out.v = k;
            out.norm = n > 0 ? 1 : -1;
            return out;
        }
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        P = a * Q - P;
        Q = (p - P * P) / Q;
    }
    throw ResourceError("fundamental_unit: continued fraction period too long");
}

BigInt binomial_sqrt_coefficient(i64 p, int h, i64 r2, i64 s2) {
    BigInt total = 0;
    BigInt binom = 1;  // C(h, j)
    for (int j = 0; j <= h; ++j) {
        if (j > 0) binom = binom * (h - j + 1) / j;
        if (j % 2 == 1) total += binom * pow(BigInt(r2), h - j) * pow(BigInt(s2), j) * pow(BigInt(p), (j - 1) / 2);
    }
    return total;
}

bool power_difference_residue_check(i64 p, i64 q, int h, i64 r2, i64 s2) {
    if (p % 2 == 0 || !is_prime(p) || q % 2 == 0 || !is_prime(q))
        throw DomainError("power_difference_residue_check: p and q must be odd primes");
    if (h < 1 || h % 2 == 0) throw DomainError("power_difference_residue_check: h must be odd and positive");
    if (r2 % q == 0 || s2 % q == 0) throw DomainError("power_difference_residue_check: q divides 2r or 2s");
    if (jacobi_symbol(p, q) != 1) throw DomainError("power_difference_residue_check: (p|q) must be +1");
    BigInt lhs = BigInt(r2) * r2 - BigInt(p) * s2 * s2;
    if (lhs != 4 * pow(BigInt(q), static_cast<unsigned>(h)))
        throw DomainError("power_difference_residue_check: r^2 - p s^2 != q^h");
    BigInt t = binomial_sqrt_coefficient(p, h, r2, s2);
    // Cross-check by repeated multiplication in Z[sqrt p].
    BigInt x = 1, y = 0;
    for (int i = 0; i < h; ++i) {
        BigInt nx = x * r2 + y * s2 * p;
        BigInt ny = x * s2 + y * r2;
        x = nx;
        y = ny;
    }
    if (y != t) throw InternalError("power_difference_residue_check: binomial sum disagrees with direct power");
    // With S = T / 2^h and h odd, (S|q) = (s|q) is equivalent to (T|q) = (2s|q).
    BigInt tq = t % q;
    if (tq < 0) tq += q;
    return jacobi_symbol(static_cast<i64>(tq), q) == jacobi_symbol(s2, q);
}

} // namespace hasse
